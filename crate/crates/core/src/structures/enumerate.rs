use crate::error::{Error, Result};
use crate::geometry::{segment_index, PointSet, Segment};

use super::{CanonicalKey, Family, SpanningTree};

pub const DEFAULT_CAP_N: usize = 10;

/// Enumeration cap, overridable through `PLANE_RECONFIG_CAP_N`.
pub fn enumeration_cap() -> usize {
    std::env::var("PLANE_RECONFIG_CAP_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CAP_N)
}

struct Search<'a> {
    ps: &'a PointSet,
    n: usize,
    m: usize,
    paths_only: bool,
    /// Largest segment index incident to each vertex.
    last_incident: Vec<usize>,
    out: Vec<SpanningTree>,
}

/// All plane spanning trees of `family`, sorted by canonical key.
///
/// Backtracks over segments in lexicographic order keeping a component
/// labelling and the chosen crossing-free edge set; a branch is cut as soon as
/// too few segments remain or some isolated vertex has no segment left.
pub fn enumerate_plane_trees(ps: &PointSet, family: Family) -> Result<Vec<SpanningTree>> {
    let cap = enumeration_cap();
    if ps.len() > cap {
        return Err(Error::CapExceeded { n: ps.len(), cap });
    }
    let n = ps.len();
    let m = ps.segments().len();
    let last_incident = (0..n)
        .map(|v| {
            if v == n - 1 {
                m - 1
            } else {
                segment_index(n, Segment::new(v, n - 1))
            }
        })
        .collect();
    let mut search = Search {
        ps,
        n,
        m,
        paths_only: family == Family::Paths,
        last_incident,
        out: Vec::new(),
    };
    let mut comp = [0u8; 16];
    for (i, c) in comp.iter_mut().enumerate().take(n) {
        *c = i as u8;
    }
    search.run(0, 0, 0, comp, [0u8; 16]);
    let mut out = search.out;
    if family == Family::Caterpillars {
        out.retain(|t| t.is_caterpillar());
    }
    out.sort_unstable_by_key(|t| t.key());
    Ok(out)
}

impl Search<'_> {
    fn run(&mut self, idx: usize, chosen: u128, count: usize, comp: [u8; 16], deg: [u8; 16]) {
        if count == self.n - 1 {
            self.out
                .push(SpanningTree::from_key_unchecked(self.n, CanonicalKey(chosen)));
            return;
        }
        if self.m - idx < self.n - 1 - count {
            return;
        }
        if (0..self.n).any(|v| deg[v] == 0 && self.last_incident[v] < idx) {
            return;
        }
        let s = self.ps.segment_at(idx);
        let (ca, cb) = (comp[s.a], comp[s.b]);
        let deg_ok = !self.paths_only || (deg[s.a] < 2 && deg[s.b] < 2);
        if ca != cb && deg_ok && self.ps.crossing_mask(idx) & chosen == 0 {
            let mut comp2 = comp;
            for c in comp2.iter_mut().take(self.n) {
                if *c == cb {
                    *c = ca;
                }
            }
            let mut deg2 = deg;
            deg2[s.a] += 1;
            deg2[s.b] += 1;
            self.run(idx + 1, chosen | 1 << idx, count + 1, comp2, deg2);
        }
        self.run(idx + 1, chosen, count, comp, deg);
    }
}

/// Plane trees where `{u, v}` is an edge and every other point hangs off `u`
/// or `v`, over all `2^(n-2)` leaf assignments, sorted by key.
pub fn enumerate_double_stars(ps: &PointSet, u: usize, v: usize) -> Result<Vec<SpanningTree>> {
    if u == v || u >= ps.len() || v >= ps.len() {
        return Err(Error::Precondition(format!("invalid centers {u}, {v}")));
    }
    let others: Vec<usize> = (0..ps.len()).filter(|&w| w != u && w != v).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let mut edges = vec![Segment::new(u, v)];
        for (i, &w) in others.iter().enumerate() {
            let c = if mask >> i & 1 == 1 { v } else { u };
            edges.push(Segment::new(c, w));
        }
        if let Ok(t) = SpanningTree::from_edges(ps, &edges) {
            out.push(t);
        }
    }
    out.sort_unstable_by_key(|t| t.key());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PointSet {
        PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn convex_four_counts() {
        let ps = square();
        assert_eq!(enumerate_plane_trees(&ps, Family::All).unwrap().len(), 12);
        assert_eq!(enumerate_plane_trees(&ps, Family::Paths).unwrap().len(), 8);
        assert_eq!(enumerate_plane_trees(&ps, Family::Caterpillars).unwrap().len(), 12);
    }

    #[test]
    fn output_is_sorted_and_valid() {
        let ps = PointSet::from_coords(&[(0, 0), (10, 1), (4, 9), (5, 3), (-2, 6)]).unwrap();
        let trees = enumerate_plane_trees(&ps, Family::All).unwrap();
        assert!(trees.windows(2).all(|w| w[0].key() < w[1].key()));
        for t in &trees {
            t.validate(&ps).unwrap();
        }
    }

    #[test]
    fn double_stars_square() {
        // u = 0, v = 1: leaves 2 and 3. Assigning 2 to 0 and 3 to 1 draws the
        // two crossing diagonals; the remaining three assignments are plane.
        let ps = square();
        let ds = enumerate_double_stars(&ps, 0, 1).unwrap();
        let mut got: Vec<Vec<Segment>> = ds.iter().map(|t| t.edges()).collect();
        got.sort();
        let s = Segment::new;
        let mut want = vec![
            vec![s(0, 1), s(0, 2), s(0, 3)],
            vec![s(0, 1), s(0, 3), s(1, 2)],
            vec![s(0, 1), s(1, 2), s(1, 3)],
        ];
        want.sort();
        assert_eq!(got, want);

        let tri = PointSet::from_coords(&[(0, 0), (4, 0), (1, 3)]).unwrap();
        assert_eq!(enumerate_double_stars(&tri, 0, 1).unwrap().len(), 2);
        assert!(enumerate_double_stars(&tri, 1, 1).is_err());
    }
}
