//! Flip graphs of plane spanning paths with one endpoint held fixed.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, triangle_strictly_empty, PointSet};
use crate::reconfig::{build_graph, components_of, shortest_cycle_below, OpKind};
use crate::structures::{enumerate_plane_trees, CanonicalKey, Family, SpanningTree};

/// Plane spanning paths starting at `u`, joined when one is a plane suffix
/// reversal of the other.
#[derive(Debug, Clone)]
pub struct FixedEndpointGraph {
    pub u: usize,
    /// Vertex sequences, each starting at `u`, sorted by tree key.
    pub paths: Vec<Vec<usize>>,
    pub adjacency: Vec<Vec<u32>>,
}

impl FixedEndpointGraph {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(&self.adjacency)
    }

    /// True iff there is no cycle shorter than `k`.
    pub fn girth_at_least(&self, k: usize) -> bool {
        shortest_cycle_below(&self.adjacency, k).is_none()
    }
}

/// Orients `t` to start at `u`, if it is a path with `u` as an endpoint.
fn oriented_from(t: &SpanningTree, u: usize) -> Option<Vec<usize>> {
    let mut seq = t.path_sequence()?;
    if seq.last() == Some(&u) {
        seq.reverse();
    }
    (seq.first() == Some(&u)).then_some(seq)
}

pub fn fixed_endpoint_graph(ps: &PointSet, u: usize) -> Result<FixedEndpointGraph> {
    if u >= ps.len() {
        return Err(Error::Precondition(format!("vertex {u} out of range")));
    }
    let mut trees: Vec<SpanningTree> = enumerate_plane_trees(ps, Family::Paths)?
        .into_iter()
        .filter(|t| oriented_from(t, u).is_some())
        .collect();
    trees.sort_unstable_by_key(|t| t.key());
    let index: HashMap<CanonicalKey, u32> =
        trees.iter().enumerate().map(|(i, t)| (t.key(), i as u32)).collect();
    let paths: Vec<Vec<usize>> = trees.iter().map(|t| oriented_from(t, u).unwrap()).collect();
    let n = ps.len();
    let adjacency = paths
        .iter()
        .map(|seq| {
            let mut adj: Vec<u32> = (1..n.saturating_sub(1))
                .filter_map(|k| {
                    let mut r = seq.clone();
                    r[k..].reverse();
                    let t = SpanningTree::from_path(ps, &r).ok()?;
                    index.get(&t.key()).copied()
                })
                .collect();
            adj.sort_unstable();
            adj
        })
        .collect();
    Ok(FixedEndpointGraph { u, paths, adjacency })
}

/// True iff the adjacency equals the generic flip graph of paths restricted
/// to paths that start at `u`.
pub fn matches_generic_flip_graph(ps: &PointSet, g: &FixedEndpointGraph) -> Result<bool> {
    let full = build_graph(ps, Family::Paths, OpKind::Flip)?;
    let to_full: Vec<usize> = g
        .paths
        .iter()
        .map(|seq| {
            let t = SpanningTree::from_path(ps, seq)?;
            full.index_of(&t)
                .ok_or_else(|| Error::InvalidStructure(format!("{t} missing from the flip graph")))
        })
        .collect::<Result<_>>()?;
    let local: HashMap<usize, u32> = to_full.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
    Ok(to_full.iter().zip(&g.adjacency).all(|(&f, adj)| {
        let mut induced: Vec<u32> = full.adjacency[f]
            .iter()
            .filter_map(|w| local.get(&(*w as usize)).copied())
            .collect();
        induced.sort_unstable();
        &induced == adj
    }))
}

/// For a path of degree one: are its last three vertices consecutive on the
/// hull of the whole set, with no point inside their triangle?
pub fn check_degree_one(ps: &PointSet, g: &FixedEndpointGraph, i: usize) -> Result<bool> {
    if g.degree(i) != 1 {
        return Err(Error::Precondition(format!("path {i} has degree {}", g.degree(i))));
    }
    let seq = &g.paths[i];
    let k = seq.len();
    if k < 3 {
        return Err(Error::Precondition("path has fewer than three vertices".into()));
    }
    let (a, b, c) = (seq[k - 3], seq[k - 2], seq[k - 1]);
    let hull = convex_hull(ps, &ps.all_indices());
    let h = hull.len();
    let consecutive = (0..h).any(|s| {
        let mut w = [hull[s], hull[(s + 1) % h], hull[(s + 2) % h]];
        w.sort_unstable();
        let mut t = [a, b, c];
        t.sort_unstable();
        w == t
    });
    Ok(consecutive && triangle_strictly_empty(a, b, c, ps))
}

/// True iff every component has more than `bound` vertices; otherwise the
/// smallest component as a witness.
pub fn min_component_check(adj: &[Vec<u32>], bound: usize) -> (bool, Option<Vec<usize>>) {
    match components_of(adj).pop() {
        Some(c) if c.len() <= bound => (false, Some(c)),
        _ => (true, None),
    }
}
