//! Generalized peeling paths and well-separated caterpillars.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, hull_edges, hulls_disjoint, properly_cross, PointSet, Segment};

use super::{caterpillar_spine, SpanningTree};

/// Which segments may block the step `v_(i-1) v_i` of a peeling path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeelingRule {
    /// Only the hull edges of the remaining points.
    #[default]
    HullEdges,
    /// Hull edges and the path edges drawn so far.
    HullAndPath,
}

fn step_allowed(ps: &PointSet, remaining: &[usize], from: usize, to: usize) -> bool {
    let hull = convex_hull(ps, remaining);
    if !hull.contains(&to) {
        return false;
    }
    let step = Segment::new(from, to);
    hull_edges(ps, remaining)
        .iter()
        .all(|&h| !properly_cross(step, h, ps))
}

/// Peeling conditions for a sequence over the point subset it visits.
pub fn is_peeling_order(ps: &PointSet, seq: &[usize]) -> bool {
    let mut seen = 0u32;
    for &v in seq {
        if v >= ps.len() || seen >> v & 1 == 1 {
            return false;
        }
        seen |= 1 << v;
    }
    if seq.is_empty() || !convex_hull(ps, seq).contains(&seq[0]) {
        return false;
    }
    (1..seq.len()).all(|i| step_allowed(ps, &seq[i..], seq[i - 1], seq[i]))
}

/// Checks the peeling conditions on a directed vertex sequence.
pub fn is_generalized_peeling_sequence(ps: &PointSet, seq: &[usize], rule: PeelingRule) -> bool {
    let n = ps.len();
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    if !convex_hull(ps, &ps.all_indices()).contains(&seq[0]) {
        return false;
    }
    for i in 1..n {
        let remaining = &seq[i..];
        if !step_allowed(ps, remaining, seq[i - 1], seq[i]) {
            return false;
        }
        if rule == PeelingRule::HullAndPath {
            let step = Segment::new(seq[i - 1], seq[i]);
            if seq[..i]
                .windows(2)
                .any(|w| properly_cross(step, Segment::new(w[0], w[1]), ps))
            {
                return false;
            }
        }
    }
    true
}

/// Checks that `orientation` traverses the path `t` and satisfies the
/// peeling conditions under the default rule.
pub fn is_generalized_peeling_path(
    ps: &PointSet,
    t: &SpanningTree,
    orientation: &[usize],
) -> Result<bool> {
    let seq = t
        .path_sequence()
        .ok_or_else(|| Error::Precondition("structure is not a path".into()))?;
    let mut rev = seq.clone();
    rev.reverse();
    if orientation != seq.as_slice() && orientation != rev.as_slice() {
        return Err(Error::Precondition(format!(
            "orientation {orientation:?} does not traverse the path"
        )));
    }
    Ok(is_generalized_peeling_sequence(ps, orientation, PeelingRule::HullEdges))
}

fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Next vertices allowed after `last` when `remaining` is still unvisited.
fn peeling_choices(ps: &PointSet, remaining: u32, last: Option<usize>) -> Vec<usize> {
    let rem = mask_to_vec(remaining);
    let hull = convex_hull(ps, &rem);
    match last {
        None => hull,
        Some(p) => hull
            .into_iter()
            .filter(|&v| step_allowed(ps, &rem, p, v))
            .collect(),
    }
}

/// Number of directed peeling sequences on `ps`.
pub fn count_peeling_sequences(ps: &PointSet) -> u64 {
    fn go(
        ps: &PointSet,
        remaining: u32,
        last: Option<usize>,
        memo: &mut HashMap<(u32, usize), u64>,
    ) -> u64 {
        if remaining == 0 {
            return 1;
        }
        if let Some(p) = last {
            if let Some(&c) = memo.get(&(remaining, p)) {
                return c;
            }
        }
        let mut total = 0;
        for v in peeling_choices(ps, remaining, last) {
            total += go(ps, remaining & !(1 << v), Some(v), memo);
        }
        if let Some(p) = last {
            memo.insert((remaining, p), total);
        }
        total
    }
    let all = (1u32 << ps.len()) - 1;
    go(ps, all, None, &mut HashMap::new())
}

/// All directed peeling sequences, in lexicographic order. Optionally
/// restricted to a fixed first vertex.
pub fn peeling_sequences(ps: &PointSet, start: Option<usize>) -> Vec<Vec<usize>> {
    fn go(ps: &PointSet, remaining: u32, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(seq.clone());
            return;
        }
        let mut choices = peeling_choices(ps, remaining, seq.last().copied());
        choices.sort_unstable();
        for v in choices {
            seq.push(v);
            go(ps, remaining & !(1 << v), seq, out);
            seq.pop();
        }
    }
    let all = (1u32 << ps.len()) - 1;
    let mut out = Vec::new();
    match start {
        Some(u) => {
            if convex_hull(ps, &ps.all_indices()).contains(&u) {
                let mut seq = vec![u];
                go(ps, all & !(1 << u), &mut seq, &mut out);
            }
        }
        None => go(ps, all, &mut Vec::new(), &mut out),
    }
    out
}

/// True iff, along the oriented spine, every prefix of spine vertices
/// together with their leaves has a hull disjoint from the hull of the
/// remaining points.
pub fn is_well_separated(ps: &PointSet, t: &SpanningTree, spine_orientation: &[usize]) -> Result<bool> {
    let spine = caterpillar_spine(t)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| Error::Precondition("structure has no spine".into()))?;
    let mut rev = spine.clone();
    rev.reverse();
    if spine_orientation != spine.as_slice() && spine_orientation != rev.as_slice() {
        return Err(Error::Precondition(format!(
            "{spine_orientation:?} is not an orientation of the spine {spine:?}"
        )));
    }
    let adj = t.adjacency();
    let on_spine = |v: usize| spine.contains(&v);
    let mut prefix: Vec<usize> = Vec::new();
    for &s in &spine_orientation[..spine_orientation.len() - 1] {
        prefix.push(s);
        prefix.extend(adj[s].iter().copied().filter(|&w| !on_spine(w)));
        let rest: Vec<usize> = (0..ps.len()).filter(|v| !prefix.contains(v)).collect();
        if !hulls_disjoint(ps, &prefix, &rest) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spine orientations (each spine and its reverse, deduplicated) under
/// which `t` is well separated; empty for non-caterpillars.
pub fn well_separated_orientations(ps: &PointSet, t: &SpanningTree) -> Vec<Vec<usize>> {
    let Some(spine) = caterpillar_spine(t).filter(|s| !s.is_empty()) else {
        return Vec::new();
    };
    let mut rev = spine.clone();
    rev.reverse();
    let mut cands = vec![spine];
    if rev != cands[0] {
        cands.push(rev);
    }
    cands
        .into_iter()
        .filter(|o| is_well_separated(ps, t, o).unwrap_or(false))
        .collect()
}
