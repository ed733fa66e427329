//! Edge exchanges, their operation kinds, and reconfiguration graphs.

mod graph;

pub use graph::{
    bfs_distances, build_graph, build_graph_with_cap, components_of, diameter_of, shortest_cycle_below,
    ReconfigGraph, DEFAULT_VERTEX_CAP,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{properly_cross, triangle_strictly_empty, PointSet, Segment};
use crate::structures::{segment_from_index, Family, SpanningTree};

/// The five exchange operations, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Flip,
    CompatibleFlip,
    Rotation,
    EmptyTriangleRotation,
    Slide,
}

impl OpKind {
    pub const ALL: [OpKind; 5] = [
        OpKind::Flip,
        OpKind::CompatibleFlip,
        OpKind::Rotation,
        OpKind::EmptyTriangleRotation,
        OpKind::Slide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Flip => "flip",
            OpKind::CompatibleFlip => "compatible-flip",
            OpKind::Rotation => "rotation",
            OpKind::EmptyTriangleRotation => "empty-triangle-rotation",
            OpKind::Slide => "slide",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "flip" => Some(OpKind::Flip),
            "compatible-flip" | "comp-flip" => Some(OpKind::CompatibleFlip),
            "rotation" | "rot" => Some(OpKind::Rotation),
            "empty-triangle-rotation" | "emp-rot" => Some(OpKind::EmptyTriangleRotation),
            "slide" => Some(OpKind::Slide),
            _ => None,
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of operation kinds satisfied by one exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OpKinds(u8);

impl OpKinds {
    pub fn empty() -> Self {
        OpKinds(0)
    }

    pub fn insert(&mut self, k: OpKind) {
        self.0 |= 1 << k as u8;
    }

    pub fn contains(self, k: OpKind) -> bool {
        self.0 >> k as u8 & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = OpKind> {
        OpKind::ALL.into_iter().filter(move |&k| self.contains(k))
    }

    /// Strongest kind present.
    pub fn strongest(self) -> Option<OpKind> {
        self.iter().last()
    }

    /// True iff membership is downward closed along the hierarchy.
    pub fn is_downward_closed(self) -> bool {
        OpKind::ALL
            .windows(2)
            .all(|w| !self.contains(w[1]) || self.contains(w[0]))
    }
}

impl fmt::Display for OpKinds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(OpKind::name).collect();
        f.write_str(&names.join(","))
    }
}

/// One edge exchange: `removed` leaves the tree, `added` enters it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MoveStep {
    pub removed: Segment,
    pub added: Segment,
    pub kinds: OpKinds,
}

impl MoveStep {
    pub fn reversed(&self) -> MoveStep {
        MoveStep {
            removed: self.added,
            added: self.removed,
            kinds: self.kinds,
        }
    }
}

/// Kinds satisfied by replacing `e` with `f` in `source`. Each predicate is
/// evaluated from its own definition.
pub fn exchange_kinds(ps: &PointSet, source: &SpanningTree, e: Segment, f: Segment) -> OpKinds {
    let mut kinds = OpKinds::empty();
    kinds.insert(OpKind::Flip);
    if !properly_cross(e, f, ps) {
        kinds.insert(OpKind::CompatibleFlip);
    }
    if let Some(a) = e.shared_endpoint(&f) {
        kinds.insert(OpKind::Rotation);
        let b = e.other(a).unwrap();
        let c = f.other(a).unwrap();
        let empty = triangle_strictly_empty(a, b, c, ps);
        if empty {
            kinds.insert(OpKind::EmptyTriangleRotation);
        }
        // bc is in the source; it is neither e nor f, so it is kept
        if empty && source.contains(Segment::new(b, c)) {
            kinds.insert(OpKind::Slide);
        }
    }
    kinds
}

/// Classifies the exchange between two trees, or `None` if their edge sets
/// do not differ in exactly one edge each.
pub fn classify_move(ps: &PointSet, t1: &SpanningTree, t2: &SpanningTree) -> Result<Option<MoveStep>> {
    if t1.n() != ps.len() || t2.n() != ps.len() {
        return Err(Error::Precondition("trees belong to a different point set".into()));
    }
    let only1 = t1.key().0 & !t2.key().0;
    let only2 = t2.key().0 & !t1.key().0;
    if only1.count_ones() != 1 || only2.count_ones() != 1 {
        return Ok(None);
    }
    let e = segment_from_index(ps.len(), only1.trailing_zeros() as usize);
    let f = segment_from_index(ps.len(), only2.trailing_zeros() as usize);
    Ok(Some(MoveStep {
        removed: e,
        added: f,
        kinds: exchange_kinds(ps, t1, e, f),
    }))
}

/// Vertex mask of the side containing `e.a` once `e` is removed from `t`.
fn split_side(adj: &[Vec<usize>], e: Segment) -> u32 {
    let mut side = 1u32 << e.a;
    let mut stack = vec![e.a];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if (v == e.a && w == e.b) || side >> w & 1 == 1 {
                continue;
            }
            side |= 1 << w;
            stack.push(w);
        }
    }
    side
}

/// All exchanges of `t` into plane trees, as `(step, result)` pairs.
pub fn all_exchanges(ps: &PointSet, t: &SpanningTree) -> Vec<(MoveStep, SpanningTree)> {
    let n = ps.len();
    let adj = t.adjacency();
    let key = t.key().0;
    let mut out = Vec::new();
    for e in t.edges() {
        let side = split_side(&adj, e);
        let e_idx = ps.index_of(e);
        let rest = key & !(1 << e_idx);
        for (j, &f) in ps.segments().iter().enumerate() {
            if j == e_idx || key >> j & 1 == 1 {
                continue;
            }
            if (side >> f.a & 1) == (side >> f.b & 1) {
                continue;
            }
            if ps.crossing_mask(j) & rest != 0 {
                continue;
            }
            let kinds = exchange_kinds(ps, t, e, f);
            let step = MoveStep {
                removed: e,
                added: f,
                kinds,
            };
            out.push((step, t.exchange(e, f)));
        }
    }
    debug_assert!(out.iter().all(|(_, r)| r.n() == n));
    out
}

/// Distinct trees of `family` one `op` move away from `t`, sorted by key.
pub fn neighbors(ps: &PointSet, t: &SpanningTree, op: OpKind, family: Family) -> Vec<SpanningTree> {
    let mut out: Vec<SpanningTree> = all_exchanges(ps, t)
        .into_iter()
        .filter(|(s, r)| s.kinds.contains(op) && family.contains(r))
        .map(|(_, r)| r)
        .collect();
    out.sort_unstable_by_key(|r| r.key());
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{enumerate_plane_trees, make_star};

    fn square() -> PointSet {
        PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let ps = square();
        let path = SpanningTree::from_pairs(&ps, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let t = SpanningTree::from_pairs(&ps, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let step = classify_move(&ps, &path, &t).unwrap().unwrap();
        assert_eq!(step.removed, Segment::new(2, 3));
        assert_eq!(step.added, Segment::new(0, 3));
        for k in [OpKind::Flip, OpKind::CompatibleFlip, OpKind::Rotation, OpKind::EmptyTriangleRotation] {
            assert!(step.kinds.contains(k));
        }
        assert!(!step.kinds.contains(OpKind::Slide));

        let star = make_star(&ps, 0);
        let step = classify_move(&ps, &t, &star).unwrap().unwrap();
        assert_eq!(step.removed, Segment::new(1, 2));
        assert_eq!(step.added, Segment::new(0, 2));
        assert!(OpKind::ALL.iter().all(|&k| step.kinds.contains(k)));

        assert!(classify_move(&ps, &t, &t).unwrap().is_none());
    }

    #[test]
    fn star_slide_neighbors_on_square() {
        // star(0): e = {0,i} is slid along {0,j} to {i,j}; all triangles of
        // the square are empty, and {i,j} must not cross {0,k}.
        let ps = square();
        let star = make_star(&ps, 0);
        let got: Vec<String> = neighbors(&ps, &star, OpKind::Slide, Family::All)
            .iter()
            .map(|t| t.to_string())
            .collect();
        // 0-1 -> 1-2 (along 0-2), 0-3 -> 3-2 (along 0-2), 0-2 -> 2-1 (along
        // 0-1), 0-2 -> 2-3 (along 0-3); 1-3 always crosses 0-2 except when
        // 0-2 is the removed edge, but then no third edge {1,3} exists.
        let mut want = vec!["0,2 0,3 1,2", "0,1 0,2 2,3", "0,1 0,3 1,2", "0,1 0,3 2,3"];
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
    }

    #[test]
    fn stronger_ops_give_fewer_neighbors() {
        let ps = PointSet::from_coords(&[(0, 0), (10, 1), (4, 9), (5, 3), (-2, 6)]).unwrap();
        for t in enumerate_plane_trees(&ps, Family::All).unwrap() {
            for w in OpKind::ALL.windows(2) {
                let weak = neighbors(&ps, &t, w[0], Family::All);
                let strong = neighbors(&ps, &t, w[1], Family::All);
                assert!(strong.iter().all(|s| weak.contains(s)));
            }
        }
    }

    #[test]
    fn reversed_move_has_same_kinds() {
        let ps = PointSet::from_coords(&[(0, 0), (10, 1), (4, 9), (5, 3), (-2, 6)]).unwrap();
        for t in enumerate_plane_trees(&ps, Family::All).unwrap() {
            for (step, r) in all_exchanges(&ps, &t) {
                let back = classify_move(&ps, &r, &t).unwrap().unwrap();
                assert_eq!(back, step.reversed());
            }
        }
    }
}
