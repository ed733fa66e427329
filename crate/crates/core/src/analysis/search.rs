//! Search for caterpillars that admit no slide within the caterpillars.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{triangle_strictly_empty, Point, PointSet, Segment, MAX_POINTS};
use crate::reconfig::{all_exchanges, classify_move, OpKind};
use crate::structures::{enumerate_plane_trees, Family, SpanningTree};

use super::sampling::random_point_set;

/// Side of the square the local search moves points in.
const SEARCH_GRID: i64 = 1000;
/// Non-improving steps before a local search restarts.
const PATIENCE: usize = 5000;
/// Probability that a local-search step changes the tree instead of a point.
const TREE_STEP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Every caterpillar on each of a stream of random point sets.
    Exhaustive,
    /// Local search over points and trees, restarted in turn from zigzag
    /// caterpillars, triangle-hull sets with scrambled trees, and random
    /// monotone paths.
    Random,
}

impl SearchStrategy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exhaustive" | "exhaustive-order-types" => Some(SearchStrategy::Exhaustive),
            "random" => Some(SearchStrategy::Random),
            _ => None,
        }
    }
}

/// A caterpillar with no slide to another caterpillar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub point_set: PointSet,
    pub witness: SpanningTree,
    pub neighbor_count: usize,
    pub seed: u64,
    /// Candidates evaluated before the witness was found.
    pub iterations: usize,
}

impl SearchReport {
    /// Recomputes the slide neighbors of the witness by trying every
    /// exchange directly.
    pub fn revalidate(&self) -> Result<bool> {
        Ok(slide_neighbors_brute(&self.point_set, &self.witness)?.is_empty()
            && self.neighbor_count == 0)
    }
}

/// Caterpillars one slide away from `t`, found by trying every pair of a
/// tree edge and a non-edge and classifying the result from scratch.
pub fn slide_neighbors_brute(ps: &PointSet, t: &SpanningTree) -> Result<Vec<SpanningTree>> {
    t.validate(ps)?;
    if !t.is_caterpillar() {
        return Err(Error::Precondition(format!("{t} is not a caterpillar")));
    }
    let mut out = Vec::new();
    for e in t.edges() {
        for &f in ps.segments() {
            if t.contains(f) {
                continue;
            }
            let r = t.exchange(e, f);
            if r.validate(ps).is_err() || !r.is_caterpillar() {
                continue;
            }
            if classify_move(ps, t, &r)?.is_some_and(|m| m.kinds.contains(OpKind::Slide)) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Number of caterpillars one slide away from `t`, visiting only pairs of
/// edges that share a vertex.
pub fn slide_count(ps: &PointSet, t: &SpanningTree) -> usize {
    let adj = t.adjacency();
    let key = t.key().0;
    let mut count = 0;
    for (b, nb) in adj.iter().enumerate() {
        for &a in nb {
            for &c in nb {
                if a == c || !triangle_strictly_empty(a, b, c, ps) {
                    continue;
                }
                let (e, f) = (Segment::new(a, b), Segment::new(a, c));
                let rest = key & !(1u128 << ps.index_of(e));
                if ps.crossing_mask(ps.index_of(f)) & rest == 0 && t.exchange(e, f).is_caterpillar() {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Looks for a point set of size `n` and a caterpillar on it with no slide
/// neighbor in the caterpillars. `budget` counts evaluated candidates: point
/// sets for the exhaustive strategy, local-search states otherwise.
pub fn search_isolated_caterpillar(
    n: usize,
    strategy: SearchStrategy,
    budget: usize,
    seed: u64,
) -> Result<Option<SearchReport>> {
    if budget == 0 {
        return Err(Error::Precondition("budget must be positive".into()));
    }
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    if n > MAX_POINTS {
        return Err(Error::TooManyPoints { got: n, max: MAX_POINTS });
    }
    match strategy {
        SearchStrategy::Exhaustive => exhaustive(n, budget, seed),
        SearchStrategy::Random => local_search(n, budget, seed),
    }
}

fn exhaustive(n: usize, budget: usize, seed: u64) -> Result<Option<SearchReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..budget {
        let ps = random_point_set(n, rng.gen(), SEARCH_GRID)?;
        let cats = enumerate_plane_trees(&ps, Family::Caterpillars)?;
        if let Some(t) = cats.into_iter().find(|t| slide_count(&ps, t) == 0) {
            return Ok(Some(SearchReport {
                point_set: ps,
                witness: t,
                neighbor_count: 0,
                seed,
                iterations: i + 1,
            }));
        }
    }
    Ok(None)
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new(rng.gen_range(0..SEARCH_GRID), rng.gen_range(0..SEARCH_GRID)))
        .collect()
}

/// A monotone path on random points.
fn uniform_start(rng: &mut ChaCha8Rng, n: usize) -> Option<(PointSet, SpanningTree)> {
    let ps = PointSet::new(random_points(rng, n)).ok()?;
    let mut seq: Vec<usize> = (0..n).collect();
    seq.sort_by_key(|&i| (ps.point(i).x, ps.point(i).y));
    let t = SpanningTree::from_path(&ps, &seq).ok()?;
    Some((ps, t))
}

/// Three corner points with the rest inside their triangle, joined by a
/// monotone path and then scrambled by random caterpillar exchanges.
fn triangle_start(rng: &mut ChaCha8Rng, n: usize) -> Option<(PointSet, SpanningTree)> {
    let corners = [Point::new(0, 0), Point::new(SEARCH_GRID, 0), Point::new(SEARCH_GRID / 2, SEARCH_GRID)];
    let mut pts = corners.to_vec();
    while pts.len() < n {
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
        let g = SEARCH_GRID as f64;
        pts.push(Point::new((u * g + v * g / 2.0) as i64, (v * g) as i64));
    }
    let ps = PointSet::new(pts).ok()?;
    let mut seq: Vec<usize> = (0..n).collect();
    seq.sort_by_key(|&i| (ps.point(i).x, ps.point(i).y));
    let mut t = SpanningTree::from_path(&ps, &seq).ok()?;
    for _ in 0..3 * n {
        let moves: Vec<SpanningTree> = all_exchanges(&ps, &t)
            .into_iter()
            .map(|(_, r)| r)
            .filter(SpanningTree::is_caterpillar)
            .collect();
        if !moves.is_empty() {
            t = moves[rng.gen_range(0..moves.len())];
        }
    }
    Some((ps, t))
}

/// A spine zigzagging between two horizontal lines, with each remaining
/// point a short leaf of a random inner spine vertex, pointing away from
/// the spine's other side.
fn zigzag_start(rng: &mut ChaCha8Rng, n: usize) -> Option<(PointSet, SpanningTree)> {
    let k = rng.gen_range(n.div_ceil(2)..=n - 1).max(3);
    let step = SEARCH_GRID / (k as i64 + 1);
    let amp = rng.gen_range(SEARCH_GRID / 8..SEARCH_GRID / 3);
    let mid = SEARCH_GRID / 2;
    let mut pts: Vec<Point> = (0..k)
        .map(|i| {
            let side = if i % 2 == 0 { 1 } else { -1 };
            Point::new(
                step * (i as i64 + 1) + rng.gen_range(-step / 4..=step / 4),
                mid + side * amp + rng.gen_range(-step / 4..=step / 4),
            )
        })
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
    for l in k..n {
        let s = rng.gen_range(1..k - 1);
        let side = if s % 2 == 0 { 1 } else { -1 };
        let p = pts[s];
        let dx = rng.gen_range(-step..=step);
        let dy = side * rng.gen_range(step / 4..=step);
        pts.push(Point::new(
            (p.x + dx).clamp(0, SEARCH_GRID),
            (p.y + dy).clamp(0, SEARCH_GRID),
        ));
        pairs.push((s, l));
    }
    let ps = PointSet::new(pts).ok()?;
    let t = SpanningTree::from_pairs(&ps, &pairs).ok()?;
    t.is_plane(&ps).then_some((ps, t))
}

fn local_search(n: usize, budget: usize, seed: u64) -> Result<Option<SearchReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spent = 0usize;
    let mut restart = 0usize;
    while spent < budget {
        restart += 1;
        let start = loop {
            spent += 1;
            let cand = match restart % 3 {
                1 if n >= 5 => zigzag_start(&mut rng, n),
                2 => triangle_start(&mut rng, n),
                _ => uniform_start(&mut rng, n),
            };
            if let Some(c) = cand {
                break Some(c);
            }
            if spent >= budget {
                break None;
            }
        };
        let Some((mut ps, mut t)) = start else { break };
        let mut cur = slide_count(&ps, &t);
        let mut stale = 0;
        while cur > 0 && stale < PATIENCE && spent < budget {
            spent += 1;
            let cand = if rng.gen_bool(TREE_STEP) {
                let moves: Vec<SpanningTree> = all_exchanges(&ps, &t)
                    .into_iter()
                    .map(|(_, r)| r)
                    .filter(SpanningTree::is_caterpillar)
                    .collect();
                (!moves.is_empty()).then(|| (ps.clone(), moves[rng.gen_range(0..moves.len())]))
            } else {
                nudge(&mut rng, &ps, &t)
            };
            match cand.map(|(q, r)| (slide_count(&q, &r), q, r)) {
                Some((s, q, r)) if s <= cur => {
                    stale = if s < cur { 0 } else { stale + 1 };
                    cur = s;
                    ps = q;
                    t = r;
                }
                _ => stale += 1,
            }
        }
        if cur == 0 {
            return Ok(Some(SearchReport {
                point_set: ps,
                witness: t,
                neighbor_count: 0,
                seed,
                iterations: spent,
            }));
        }
    }
    Ok(None)
}

/// Moves one point by a random offset at a random scale, keeping general
/// position and the planarity of `t`.
fn nudge(rng: &mut ChaCha8Rng, ps: &PointSet, t: &SpanningTree) -> Option<(PointSet, SpanningTree)> {
    let i = rng.gen_range(0..ps.len());
    let r = [400, 100, 25, 6][rng.gen_range(0..4)];
    let mut pts = ps.points().to_vec();
    let p = pts[i];
    pts[i] = Point::new(
        (p.x + rng.gen_range(-r..=r)).clamp(0, SEARCH_GRID),
        (p.y + rng.gen_range(-r..=r)).clamp(0, SEARCH_GRID),
    );
    let q = PointSet::new(pts).ok()?;
    let edges: Vec<Segment> = t.edges();
    let moved = SpanningTree::from_edges(&q, &edges).ok()?;
    moved.is_plane(&q).then_some((q, moved))
}
