//! Per-instance verification of the structural claims, run in parallel.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructive::{
    convex_cat_to_star, convex_path_to_path, double_star_to_star, peeling_connect, radial_path, rotation_to_star,
    star_to_star_general, statement_b, triple_star_to_star, well_separated_to_star, with_detours, Detours,
    MoveSequence,
};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, hull_edges, PointSet, Segment};
use crate::reconfig::{build_graph, OpKind};
use crate::structures::{
    caterpillar_spine, count_peeling_sequences, enumerate_double_stars, enumerate_plane_trees, make_star,
    peeling_sequences, well_separated_orientations, Family, SpanningTree,
};

use super::components::{peeling_component_check, ws_component_check};
use super::fixed_endpoint::{check_degree_one, fixed_endpoint_graph, matches_generic_flip_graph, min_component_check};
use super::sampling::{convex_point_set, instance_seeds, random_point_set, DEFAULT_GRID};
use super::search::{search_isolated_caterpillar, SearchStrategy};

/// Local-search budget used when looking for isolated caterpillars.
pub const ISOLATED_BUDGET: usize = 20_000_000;
/// Peeling pairs connected per instance.
pub const PEELING_PAIRS: usize = 100;

/// A checkable claim, addressed on the command line by a short id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// Convex caterpillar slide graph: connected, diameter at most `3n - 8`,
    /// and every caterpillar reaches the star at each spine end quickly.
    ConvexSlides,
    /// Convex paths slide into each other within `2n - 6` steps.
    ConvexPaths,
    /// Rotations take every caterpillar to a star; the rotation graph is
    /// connected.
    Rotations,
    /// Double stars, stars and hull chains via slides.
    StarMerges,
    /// Well-separated caterpillars slide to a star.
    WellSeparated,
    /// Caterpillars with three spine vertices slide to a star.
    TripleSpines,
    /// Caterpillar slide graph connected for small n; isolated caterpillars
    /// exist from eight points on.
    SmallSlides,
    /// Fixed-endpoint path flip graphs have no component of at most 4.
    FixedEndpointComponents,
    /// Fixed-endpoint path flip graphs have girth at least 6.
    FixedEndpointGirth,
    /// Fixed-endpoint path flip graphs have no isolated vertex.
    FixedEndpointNoIsolated,
    /// Degree-one paths end on three consecutive hull vertices spanning an
    /// empty triangle.
    DegreeOne,
    /// Peeling paths are numerous and share one flip component.
    PeelingComponent,
    /// The path flip graph has no component of at most 7.
    PathComponents,
    /// Well-separated caterpillars share one slide component.
    WellSeparatedComponent,
}

impl Claim {
    pub const ALL: [Claim; 14] = [
        Claim::ConvexSlides,
        Claim::ConvexPaths,
        Claim::Rotations,
        Claim::StarMerges,
        Claim::WellSeparated,
        Claim::TripleSpines,
        Claim::SmallSlides,
        Claim::FixedEndpointComponents,
        Claim::FixedEndpointGirth,
        Claim::FixedEndpointNoIsolated,
        Claim::DegreeOne,
        Claim::PeelingComponent,
        Claim::PathComponents,
        Claim::WellSeparatedComponent,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::ConvexSlides => "T1",
            Claim::ConvexPaths => "C1",
            Claim::Rotations => "P1",
            Claim::StarMerges => "L1",
            Claim::WellSeparated => "T4",
            Claim::TripleSpines => "L4",
            Claim::SmallSlides => "T5",
            Claim::FixedEndpointComponents => "P2",
            Claim::FixedEndpointGirth => "L5",
            Claim::FixedEndpointNoIsolated => "L6",
            Claim::DegreeOne => "L7",
            Claim::PeelingComponent => "T6",
            Claim::PathComponents => "T7",
            Claim::WellSeparatedComponent => "WS",
        }
    }

    pub fn parse(id: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.id().eq_ignore_ascii_case(id))
    }

    /// Smallest n the claim speaks about.
    fn min_n(self) -> usize {
        match self {
            Claim::ConvexSlides => 4,
            Claim::ConvexPaths | Claim::FixedEndpointComponents | Claim::PathComponents => 5,
            _ => 3,
        }
    }

    fn convex_only(self) -> bool {
        matches!(self, Claim::ConvexSlides | Claim::ConvexPaths)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One checked point set, or one search run.
#[derive(Debug, Clone)]
pub struct InstanceResult {
    pub claim: Claim,
    pub n: usize,
    pub label: String,
    pub pass: bool,
    pub detail: String,
    pub detours: Detours,
}

impl fmt::Display for InstanceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} {} {} {}",
            self.claim,
            self.n,
            self.label,
            if self.pass { "pass" } else { "FAIL" },
            self.detail
        )?;
        if self.detours.total() > 0 {
            let d = self.detours;
            write!(
                f,
                " detours(split_retries={} searches={} connector_searches={})",
                d.split_retries, d.searches, d.connector_searches
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub claim: Claim,
    pub instances: Vec<InstanceResult>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        !self.instances.is_empty() && self.instances.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|r| !r.pass).count()
    }

    pub fn detours(&self) -> Detours {
        let mut d = Detours::default();
        for r in &self.instances {
            d.split_retries += r.detours.split_retries;
            d.searches += r.detours.searches;
            d.connector_searches += r.detours.connector_searches;
        }
        d
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {} instances={} failures={}",
            self.claim,
            if self.pass() { "PASS" } else { "FAIL" },
            self.instances.len(),
            self.failures()
        )
    }
}

/// A point set to check, labelled by how it was made.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub ps: PointSet,
}

/// Convex sets for every n in range, then `samples` seeded random sets per
/// n (skipped for claims about convex position).
pub fn instances_for(claim: Claim, n_range: RangeInclusive<usize>, samples: usize, seed: u64) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in n_range {
        if n < claim.min_n() {
            continue;
        }
        out.push(Instance {
            label: "convex".into(),
            ps: convex_point_set(n)?,
        });
        if claim.convex_only() {
            continue;
        }
        for s in instance_seeds(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15), samples) {
            out.push(Instance {
                label: format!("seed={s}"),
                ps: random_point_set(n, s, DEFAULT_GRID)?,
            });
        }
    }
    Ok(out)
}

/// Runs `claim` on every instance in parallel. For the small-slides claim,
/// each n of eight or more is a search for an isolated caterpillar instead.
pub fn verify(claim: Claim, n_range: RangeInclusive<usize>, samples: usize, seed: u64) -> Result<VerifyReport> {
    let (lo, hi) = (*n_range.start(), *n_range.end());
    if lo > hi {
        return Err(Error::Precondition(format!("empty range {lo}..{hi}")));
    }
    let cap = crate::structures::enumeration_cap();
    if hi > cap {
        return Err(Error::CapExceeded { n: hi, cap });
    }
    let mut results: Vec<InstanceResult> = Vec::new();
    let (checked, searched) = if claim == Claim::SmallSlides {
        (lo..=hi.min(7), (lo.max(8)..=hi).collect::<Vec<_>>())
    } else {
        (lo..=hi, Vec::new())
    };
    let inst = if checked.is_empty() { Vec::new() } else { instances_for(claim, checked, samples, seed)? };
    results.extend(inst.par_iter().map(|i| run_instance(claim, i)).collect::<Vec<_>>());
    for n in searched {
        results.push(run_search(n, seed));
    }
    if results.is_empty() {
        return Err(Error::Precondition(format!("no instances for {claim} in {lo}..{hi}")));
    }
    Ok(VerifyReport { claim, instances: results })
}

fn run_instance(claim: Claim, inst: &Instance) -> InstanceResult {
    let (res, detours) = with_detours(|| check_instance(claim, &inst.ps));
    let (pass, detail) = match res {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    InstanceResult {
        claim,
        n: inst.ps.len(),
        label: inst.label.clone(),
        pass,
        detail,
        detours,
    }
}

fn run_search(n: usize, seed: u64) -> InstanceResult {
    let (pass, detail) = match search_isolated_caterpillar(n, SearchStrategy::Random, ISOLATED_BUDGET, seed) {
        Ok(Some(r)) => match r.revalidate() {
            Ok(ok) => (ok, format!("isolated={} iterations={}", r.witness, r.iterations)),
            Err(e) => (false, format!("error: {e}")),
        },
        Ok(None) => (false, format!("none within budget {ISOLATED_BUDGET}")),
        Err(e) => (false, format!("error: {e}")),
    };
    InstanceResult {
        claim: Claim::SmallSlides,
        n,
        label: format!("search seed={seed}"),
        pass,
        detail,
        detours: Detours::default(),
    }
}

/// Checks one claim on one point set: a verdict and a short detail string.
pub fn check_instance(claim: Claim, ps: &PointSet) -> Result<(bool, String)> {
    match claim {
        Claim::ConvexSlides => convex_slides(ps),
        Claim::ConvexPaths => convex_paths(ps),
        Claim::Rotations => rotations(ps),
        Claim::StarMerges => star_merges(ps),
        Claim::WellSeparated => well_separated(ps),
        Claim::TripleSpines => triple_spines(ps),
        Claim::SmallSlides => {
            let g = build_graph(ps, Family::Caterpillars, OpKind::Slide)?;
            let c = g.components().len();
            Ok((c == 1, format!("vertices={} components={c}", g.len())))
        }
        Claim::FixedEndpointComponents
        | Claim::FixedEndpointGirth
        | Claim::FixedEndpointNoIsolated
        | Claim::DegreeOne => fixed_endpoint(claim, ps),
        Claim::PeelingComponent => peeling(ps),
        Claim::PathComponents => {
            let g = build_graph(ps, Family::Paths, OpKind::Flip)?;
            let (ok, w) = min_component_check(&g.adjacency, 7);
            Ok((ok, format!("vertices={} smallest_bad={:?}", g.len(), w.map(|c| c.len()))))
        }
        Claim::WellSeparatedComponent => {
            let w = ws_component_check(ps)?;
            Ok((
                w.one_component,
                format!("count={} bound={} one_component={}", w.count, w.bound, w.one_component),
            ))
        }
    }
}

/// Validates `seq` and checks where it ends.
fn sequence_ok(ps: &PointSet, seq: &MoveSequence, end: impl Fn(&SpanningTree) -> bool) -> bool {
    seq.validate(ps).is_ok() && end(&seq.end())
}

fn convex_slides(ps: &PointSet) -> Result<(bool, String)> {
    let n = ps.len();
    let g = build_graph(ps, Family::Caterpillars, OpKind::Slide)?;
    let diameter = g.diameter();
    let bound = 3 * n - 8;
    let mut bad = 0;
    for c in &g.vertices {
        let spine = caterpillar_spine(c).unwrap();
        if spine.is_empty() {
            continue;
        }
        for s in [spine[0], *spine.last().unwrap()] {
            let ok = convex_cat_to_star(ps, c, s).is_ok_and(|q| {
                q.len() <= n - 1 - c.degree(s) && sequence_ok(ps, &q, |t| *t == make_star(ps, s))
            });
            bad += usize::from(!ok);
        }
    }
    let ok = diameter.is_some_and(|d| d <= bound) && bad == 0;
    Ok((
        ok,
        format!("vertices={} diameter={diameter:?} bound={bound} to_star_violations={bad}", g.len()),
    ))
}

fn convex_paths(ps: &PointSet) -> Result<(bool, String)> {
    let n = ps.len();
    let paths = enumerate_plane_trees(ps, Family::Paths)?;
    let bound = 2 * n - 6;
    let bad: usize = paths
        .par_iter()
        .map(|p| {
            paths
                .iter()
                .filter(|q| {
                    !convex_path_to_path(ps, p, q)
                        .is_ok_and(|s| s.len() <= bound && sequence_ok(ps, &s, |t| t == *q))
                })
                .count()
        })
        .sum();
    Ok((bad == 0, format!("pairs={} bound={bound} violations={bad}", paths.len() * paths.len())))
}

fn rotations(ps: &PointSet) -> Result<(bool, String)> {
    let cats = enumerate_plane_trees(ps, Family::Caterpillars)?;
    let bad = cats
        .iter()
        .filter(|c| !rotation_to_star(ps, c).is_ok_and(|s| sequence_ok(ps, &s, SpanningTree::is_star)))
        .count();
    let g = build_graph(ps, Family::Caterpillars, OpKind::Rotation)?;
    let comps = g.components().len();
    Ok((
        bad == 0 && comps == 1,
        format!("caterpillars={} violations={bad} components={comps}", cats.len()),
    ))
}

fn hull_pairs(ps: &PointSet) -> Vec<(usize, usize)> {
    let h = convex_hull(ps, &ps.all_indices());
    let k = h.len();
    (0..k).flat_map(|i| [(h[i], h[(i + 1) % k]), (h[(i + 1) % k], h[i])]).collect()
}

fn star_merges(ps: &PointSet) -> Result<(bool, String)> {
    let n = ps.len();
    let all = ps.all_indices();
    let (mut checked, mut bad) = (0, 0);
    for (u, v) in hull_pairs(ps) {
        for c in enumerate_double_stars(ps, u, v)? {
            checked += 1;
            let ok = double_star_to_star(ps, &c, u, v).is_ok_and(|s| sequence_ok(ps, &s, |t| *t == make_star(ps, v)));
            bad += usize::from(!ok);
        }
        checked += 1;
        let chain: Vec<Segment> = hull_edges(ps, &all).into_iter().filter(|&e| e != Segment::new(u, v)).collect();
        let ok = radial_path(ps, &all, u, v)
            .and_then(|path| statement_b(ps, &all, u, v, &path))
            .is_ok_and(|s| sequence_ok(ps, &s, |t| chain.iter().all(|&e| t.contains(e))));
        bad += usize::from(!ok);
    }
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            checked += 1;
            let ok = star_to_star_general(ps, u, v).is_ok_and(|s| sequence_ok(ps, &s, |t| *t == make_star(ps, v)));
            bad += usize::from(!ok);
        }
    }
    Ok((bad == 0, format!("sequences={checked} violations={bad}")))
}

fn well_separated(ps: &PointSet) -> Result<(bool, String)> {
    let mut to_zero: HashMap<usize, bool> = HashMap::new();
    let (mut checked, mut bad) = (0, 0);
    for c in enumerate_plane_trees(ps, Family::Caterpillars)? {
        for o in well_separated_orientations(ps, &c) {
            checked += 1;
            let end = well_separated_to_star(ps, &c, &o)
                .ok()
                .filter(|s| sequence_ok(ps, s, SpanningTree::is_star))
                .map(|s| s.end());
            // chain on to one common star
            let ok = end.and_then(|e| e.star_center()).is_some_and(|center| {
                center == 0
                    || *to_zero.entry(center).or_insert_with(|| {
                        star_to_star_general(ps, center, 0)
                            .is_ok_and(|s| sequence_ok(ps, &s, |t| *t == make_star(ps, 0)))
                    })
            });
            bad += usize::from(!ok);
        }
    }
    Ok((bad == 0, format!("orientations={checked} violations={bad}")))
}

fn triple_spines(ps: &PointSet) -> Result<(bool, String)> {
    let (mut checked, mut bad) = (0, 0);
    for c in enumerate_plane_trees(ps, Family::Caterpillars)? {
        if caterpillar_spine(&c).is_some_and(|s| s.len() == 3) {
            checked += 1;
            let ok = triple_star_to_star(ps, &c).is_ok_and(|s| sequence_ok(ps, &s, SpanningTree::is_star));
            bad += usize::from(!ok);
        }
    }
    Ok((bad == 0, format!("caterpillars={checked} violations={bad}")))
}

fn fixed_endpoint(claim: Claim, ps: &PointSet) -> Result<(bool, String)> {
    let mut bad = 0;
    let mut graphs = 0;
    for u in convex_hull(ps, &ps.all_indices()) {
        let g = fixed_endpoint_graph(ps, u)?;
        graphs += 1;
        if !matches_generic_flip_graph(ps, &g)? {
            bad += 1;
            continue;
        }
        let ok = match claim {
            Claim::FixedEndpointComponents => min_component_check(&g.adjacency, 4).0,
            Claim::FixedEndpointGirth => g.girth_at_least(6),
            Claim::FixedEndpointNoIsolated => (0..g.len()).all(|i| g.degree(i) > 0),
            _ => (0..g.len())
                .filter(|&i| g.degree(i) == 1)
                .try_fold(true, |acc, i| check_degree_one(ps, &g, i).map(|b| acc && b))?,
        };
        bad += usize::from(!ok);
    }
    Ok((bad == 0, format!("hull_vertices={graphs} violations={bad}")))
}

fn peeling(ps: &PointSet) -> Result<(bool, String)> {
    let n = ps.len();
    let check = peeling_component_check(ps)?;
    let count = count_peeling_sequences(ps);
    let seqs = peeling_sequences(ps, None);
    let mut by_start: HashMap<usize, Vec<&Vec<usize>>> = HashMap::new();
    for s in &seqs {
        by_start.entry(s[0]).or_default().push(s);
    }
    // seeded by the coordinates so each instance draws its own pairs
    let seed = ps.points().iter().fold(0u64, |h, p| {
        h.wrapping_mul(1_000_003).wrapping_add((p.x as u64) << 20 ^ p.y as u64)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad_pairs = 0;
    for _ in 0..PEELING_PAIRS {
        let p = seqs.choose(&mut rng).unwrap();
        let group = &by_start[&p[0]];
        let q = group[rng.gen_range(0..group.len())];
        let ok = peeling_connect(ps, p, q).is_ok_and(|s| {
            s.validate(ps).is_ok()
                && s.trajectory().iter().all(|t| t.degree(p[0]) == 1)
                && Ok(s.end()) == SpanningTree::from_path(ps, q)
        });
        bad_pairs += usize::from(!ok);
    }
    let lo = 1u64 << (n - 1);
    let ok = check.holds(n) && count >= lo && bad_pairs == 0;
    Ok((
        ok,
        format!(
            "directed={count} bound={lo} undirected={} component={} one_component={} pair_violations={bad_pairs}",
            check.undirected, check.component_size, check.one_component
        ),
    ))
}
