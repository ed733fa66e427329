//! Plane spanning trees and their subfamilies.

mod enumerate;
mod shapes;

pub use enumerate::{enumerate_double_stars, enumerate_plane_trees, enumeration_cap, DEFAULT_CAP_N};
pub use shapes::{
    count_peeling_sequences, is_generalized_peeling_path, is_generalized_peeling_sequence, is_peeling_order,
    is_well_separated, peeling_sequences, well_separated_orientations, PeelingRule,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{segment_count, segment_index, PointSet, Segment};

/// Bitmask over the lexicographically ordered segments of the point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CanonicalKey(pub u128);

impl CanonicalKey {
    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }
}

impl fmt::LowerHex for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// Inverse of [`segment_index`].
pub fn segment_from_index(n: usize, mut idx: usize) -> Segment {
    let mut a = 0;
    while idx >= n - 1 - a {
        idx -= n - 1 - a;
        a += 1;
    }
    Segment { a, b: a + 1 + idx }
}

/// A spanning tree on `n` points identified by its edge bitmask.
///
/// The value is only meaningful together with the point set it was built on;
/// constructors that take a [`PointSet`] check tree-ness and planarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    n: u8,
    key: CanonicalKey,
}

impl SpanningTree {
    pub fn from_edges(ps: &PointSet, edges: &[Segment]) -> Result<Self> {
        let n = ps.len();
        let mut key = 0u128;
        for e in edges {
            if e.b >= n || e.a >= e.b {
                return Err(Error::InvalidStructure(format!("bad segment {e}")));
            }
            key |= 1 << segment_index(n, *e);
        }
        let t = SpanningTree {
            n: n as u8,
            key: CanonicalKey(key),
        };
        t.validate(ps)?;
        Ok(t)
    }

    pub fn from_pairs(ps: &PointSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges: Vec<Segment> = pairs
            .iter()
            .map(|&(a, b)| {
                if a == b {
                    Err(Error::InvalidStructure(format!("loop at {a}")))
                } else {
                    Ok(Segment::new(a, b))
                }
            })
            .collect::<Result<_>>()?;
        Self::from_edges(ps, &edges)
    }

    /// Path through the given vertex sequence.
    pub fn from_path(ps: &PointSet, seq: &[usize]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = seq.windows(2).map(|w| (w[0], w[1])).collect();
        Self::from_pairs(ps, &pairs)
    }

    pub fn from_key(ps: &PointSet, key: CanonicalKey) -> Result<Self> {
        let t = Self::from_key_unchecked(ps.len(), key);
        t.validate(ps)?;
        Ok(t)
    }

    pub(crate) fn from_key_unchecked(n: usize, key: CanonicalKey) -> Self {
        SpanningTree { n: n as u8, key }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn key(&self) -> CanonicalKey {
        self.key
    }

    pub fn contains(&self, s: Segment) -> bool {
        self.key.0 >> segment_index(self.n(), s) & 1 == 1
    }

    pub fn edges(&self) -> Vec<Segment> {
        let n = self.n();
        let mut out = Vec::with_capacity(n - 1);
        let mut bits = self.key.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out.push(segment_from_index(n, i));
            bits &= bits - 1;
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for e in self.edges() {
            deg[e.a] += 1;
            deg[e.b] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges().iter().filter(|e| e.contains(v)).count()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for e in self.edges() {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// `self` with `removed` replaced by `added`; no validity checks.
    pub fn exchange(&self, removed: Segment, added: Segment) -> Self {
        let n = self.n();
        let key = (self.key.0 & !(1 << segment_index(n, removed))) | 1 << segment_index(n, added);
        SpanningTree {
            n: self.n,
            key: CanonicalKey(key),
        }
    }

    pub fn is_plane(&self, ps: &PointSet) -> bool {
        let mut bits = self.key.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            if ps.crossing_mask(i) & self.key.0 != 0 {
                return false;
            }
            bits &= bits - 1;
        }
        true
    }

    pub fn is_spanning_tree(&self) -> bool {
        let n = self.n();
        if self.key.count() as usize != n - 1 {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn validate(&self, ps: &PointSet) -> Result<()> {
        if self.n() != ps.len() {
            return Err(Error::InvalidStructure(format!(
                "tree on {} points used with a set of {}",
                self.n(),
                ps.len()
            )));
        }
        if self.key.0 >> segment_count(self.n()) != 0 {
            return Err(Error::InvalidStructure("key has bits beyond the segment range".into()));
        }
        if !self.is_spanning_tree() {
            return Err(Error::InvalidStructure(format!(
                "edges {} do not form a spanning tree",
                format_edges(&self.edges())
            )));
        }
        if !self.is_plane(ps) {
            return Err(Error::InvalidStructure(format!(
                "edges {} are not plane",
                format_edges(&self.edges())
            )));
        }
        Ok(())
    }

    pub fn classify(&self) -> StructureClass {
        classify(self)
    }

    pub fn is_path(&self) -> bool {
        self.degrees().iter().all(|&d| d <= 2)
    }

    pub fn is_caterpillar(&self) -> bool {
        caterpillar_spine(self).is_some()
    }

    pub fn is_star(&self) -> bool {
        self.star_center().is_some()
    }

    pub fn star_center(&self) -> Option<usize> {
        let n = self.n();
        self.degrees().iter().position(|&d| d == n - 1)
    }

    /// Vertex sequence of a path, starting at its smaller endpoint.
    pub fn path_sequence(&self) -> Option<Vec<usize>> {
        let deg = self.degrees();
        if deg.iter().any(|&d| d > 2) {
            return None;
        }
        let start = deg.iter().position(|&d| d == 1)?;
        let adj = self.adjacency();
        let mut seq = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            seq.push(next);
            prev = cur;
            cur = next;
        }
        Some(seq)
    }

    /// Non-spine neighbours of a spine vertex `v`.
    pub fn leaves_of(&self, v: usize) -> Vec<usize> {
        let deg = self.degrees();
        self.adjacency()[v]
            .iter()
            .copied()
            .filter(|&w| deg[w] == 1)
            .collect()
    }
}

pub fn format_edges(edges: &[Segment]) -> String {
    edges
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for SpanningTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_edges(&self.edges()))
    }
}

/// The most specific shape of a spanning tree, checked in the order
/// path, star, double star, caterpillar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureClass {
    /// Vertex sequence from the smaller endpoint.
    Path(Vec<usize>),
    Star(usize),
    /// Centers with `u < v`.
    DoubleStar(usize, usize),
    Caterpillar(Vec<usize>),
    OtherTree,
}

impl StructureClass {
    pub fn name(&self) -> &'static str {
        match self {
            StructureClass::Path(_) => "path",
            StructureClass::Star(_) => "star",
            StructureClass::DoubleStar(..) => "double-star",
            StructureClass::Caterpillar(_) => "caterpillar",
            StructureClass::OtherTree => "tree",
        }
    }
}

pub fn classify(t: &SpanningTree) -> StructureClass {
    if let Some(seq) = t.path_sequence() {
        return StructureClass::Path(seq);
    }
    if let Some(c) = t.star_center() {
        return StructureClass::Star(c);
    }
    match caterpillar_spine(t) {
        Some(spine) if spine.len() == 2 => StructureClass::DoubleStar(spine[0], spine[1]),
        Some(spine) => StructureClass::Caterpillar(spine),
        None => StructureClass::OtherTree,
    }
}

/// Path of non-leaf vertices, starting at its smaller end, or `None` when
/// the non-leaf vertices do not form a path. Empty only for a single edge.
pub fn caterpillar_spine(t: &SpanningTree) -> Option<Vec<usize>> {
    let deg = t.degrees();
    let adj = t.adjacency();
    let internal: Vec<usize> = (0..t.n()).filter(|&v| deg[v] >= 2).collect();
    if internal.is_empty() {
        return Some(Vec::new());
    }
    let inner_deg = |v: usize| adj[v].iter().filter(|&&w| deg[w] >= 2).count();
    if internal.iter().any(|&v| inner_deg(v) > 2) {
        return None;
    }
    // non-leaf vertices of a tree induce a subtree, so max degree 2 means a path
    let start = *internal.iter().find(|&&v| inner_deg(v) <= 1)?;
    let mut spine = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev && deg[w] >= 2) {
        spine.push(next);
        prev = cur;
        cur = next;
    }
    Some(spine)
}

/// Spine in the convention used by spine-dependent operations: the interior
/// vertices for a path, the center for a star, both centers for a double star.
pub fn spine(t: &SpanningTree) -> Option<Vec<usize>> {
    caterpillar_spine(t)
}

/// Which trees a reconfiguration graph ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    All,
    Caterpillars,
    Paths,
}

impl Family {
    pub fn contains(self, t: &SpanningTree) -> bool {
        match self {
            Family::All => true,
            Family::Caterpillars => t.is_caterpillar(),
            Family::Paths => t.is_path(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::All => "all",
            Family::Caterpillars => "caterpillars",
            Family::Paths => "paths",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "all" | "trees" => Some(Family::All),
            "caterpillars" | "caterpillar" => Some(Family::Caterpillars),
            "paths" | "path" => Some(Family::Paths),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Spanning star centered at `center`.
pub fn make_star(ps: &PointSet, center: usize) -> SpanningTree {
    let n = ps.len();
    assert!(center < n, "center out of range");
    let mut key = 0u128;
    for i in (0..n).filter(|&i| i != center) {
        key |= 1 << segment_index(n, Segment::new(center, i));
    }
    SpanningTree::from_key_unchecked(n, CanonicalKey(key))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PointSet {
        PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let ps = square();
        let path = SpanningTree::from_pairs(&ps, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(classify(&path), StructureClass::Path(vec![0, 1, 2, 3]));
        let star = SpanningTree::from_pairs(&ps, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(classify(&star), StructureClass::Star(0));

        // hexagon-ish: centers 0 and 3, two leaves each
        let ps6 = PointSet::from_coords(&[(0, 0), (-3, 2), (-3, -2), (4, 1), (7, 3), (7, -2)]).unwrap();
        let ds = SpanningTree::from_pairs(&ps6, &[(0, 3), (0, 1), (0, 2), (3, 4), (3, 5)]).unwrap();
        assert_eq!(classify(&ds), StructureClass::DoubleStar(0, 3));
    }

    #[test]
    fn caterpillar_and_other() {
        let ps = PointSet::from_coords(&[
            (0, 0),
            (10, 0),
            (20, 1),
            (0, 10),
            (10, 11),
            (21, 12),
            (30, 3),
        ])
        .unwrap();
        // spine 0-1-2-6 with leaves 3 (on 0), 4 (on 1), 5 (on 2)
        let cat = SpanningTree::from_pairs(&ps, &[(0, 1), (1, 2), (2, 6), (0, 3), (1, 4), (2, 5)])
            .unwrap();
        assert_eq!(classify(&cat), StructureClass::Caterpillar(vec![0, 1, 2]));
        // spider with three legs of length two is not a caterpillar
        let spider = SpanningTree::from_pairs(&ps, &[(1, 0), (0, 3), (1, 4), (4, 5), (1, 2), (2, 6)])
            .unwrap();
        assert_eq!(classify(&spider), StructureClass::OtherTree);
    }

    #[test]
    fn rejects_crossing_and_non_tree() {
        let ps = square();
        assert!(SpanningTree::from_pairs(&ps, &[(0, 2), (1, 3), (0, 1)]).is_err());
        assert!(SpanningTree::from_pairs(&ps, &[(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(SpanningTree::from_pairs(&ps, &[(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn stars() {
        let ps = square();
        let s = make_star(&ps, 0);
        assert_eq!(s.edges(), vec![Segment::new(0, 1), Segment::new(0, 2), Segment::new(0, 3)]);
        let tri = PointSet::from_coords(&[(0, 0), (4, 0), (1, 3)]).unwrap();
        assert_eq!(make_star(&tri, 1).edges(), vec![Segment::new(0, 1), Segment::new(1, 2)]);
        let ps5 = PointSet::from_coords(&[(0, 0), (20, 0), (20, 20), (0, 20), (11, 8)]).unwrap();
        let s4 = make_star(&ps5, 4);
        assert_eq!(s4.degree(4), 4);
        s4.validate(&ps5).unwrap();
    }

    #[test]
    fn segment_index_roundtrip() {
        for n in 3..=16 {
            for i in 0..segment_count(n) {
                assert_eq!(segment_index(n, segment_from_index(n, i)), i);
            }
        }
    }
}
