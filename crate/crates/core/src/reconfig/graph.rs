use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::structures::{enumerate_plane_trees, CanonicalKey, Family, SpanningTree};

use super::{neighbors, OpKind};

pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

/// Reconfiguration graph of one family under one operation. Vertices are
/// ordered by canonical key; adjacency lists are sorted.
#[derive(Debug, Clone)]
pub struct ReconfigGraph {
    pub family: Family,
    pub op: OpKind,
    pub vertices: Vec<SpanningTree>,
    pub adjacency: Vec<Vec<u32>>,
    index: HashMap<CanonicalKey, u32>,
}

pub fn build_graph(ps: &PointSet, family: Family, op: OpKind) -> Result<ReconfigGraph> {
    build_graph_with_cap(ps, family, op, DEFAULT_VERTEX_CAP)
}

pub fn build_graph_with_cap(
    ps: &PointSet,
    family: Family,
    op: OpKind,
    vertex_cap: usize,
) -> Result<ReconfigGraph> {
    let vertices = enumerate_plane_trees(ps, family)?;
    if vertices.len() > vertex_cap {
        return Err(Error::GraphTooLarge {
            got: vertices.len(),
            cap: vertex_cap,
        });
    }
    Ok(ReconfigGraph::from_vertices(ps, family, op, vertices))
}

impl ReconfigGraph {
    /// Builds adjacency over an explicit vertex list, which must be closed
    /// under the family (neighbors outside the list are dropped).
    pub fn from_vertices(ps: &PointSet, family: Family, op: OpKind, mut vertices: Vec<SpanningTree>) -> Self {
        vertices.sort_unstable_by_key(|t| t.key());
        let index: HashMap<CanonicalKey, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, t)| (t.key(), i as u32))
            .collect();
        let adjacency: Vec<Vec<u32>> = vertices
            .par_iter()
            .map(|t| {
                let mut adj: Vec<u32> = neighbors(ps, t, op, family)
                    .iter()
                    .filter_map(|r| index.get(&r.key()).copied())
                    .collect();
                adj.sort_unstable();
                adj
            })
            .collect();
        ReconfigGraph {
            family,
            op,
            vertices,
            adjacency,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of(&self, t: &SpanningTree) -> Option<usize> {
        self.index.get(&t.key()).map(|&i| i as usize)
    }

    /// Connected components, largest first, ties broken by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(&self.adjacency)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        diameter_of(&self.adjacency)
    }

    /// True iff the graph has no cycle shorter than `k`.
    pub fn girth_lower_bound(&self, k: usize) -> bool {
        shortest_cycle_below(&self.adjacency, k).is_none()
    }

    pub fn distance(&self, from: &SpanningTree, to: &SpanningTree) -> Option<usize> {
        let (s, t) = (self.index_of(from)?, self.index_of(to)?);
        bfs_distances(&self.adjacency, s)[t]
    }
}

pub fn bfs_distances(adj: &[Vec<u32>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in &adj[v] {
            let w = w as usize;
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn components_of(adj: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut comps = Vec::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
}

/// Largest BFS eccentricity, `None` if disconnected; 0 for an empty graph.
pub fn diameter_of(adj: &[Vec<u32>]) -> Option<usize> {
    (0..adj.len())
        .into_par_iter()
        .map(|s| {
            let d = bfs_distances(adj, s);
            d.iter().try_fold(0usize, |m, x| x.map(|x| m.max(x)))
        })
        .try_reduce(|| 0, |a, b| Some(a.max(b)))
}

/// Length of a shortest cycle if it is below `k`.
///
/// BFS from every vertex; a non-tree edge `(x, y)` closes a closed walk of
/// length `d(x) + d(y) + 1` containing a cycle, and the minimum over all
/// sources is exactly the girth.
pub fn shortest_cycle_below(adj: &[Vec<u32>], k: usize) -> Option<usize> {
    let best = (0..adj.len())
        .into_par_iter()
        .filter_map(|s| {
            let mut dist = vec![usize::MAX; adj.len()];
            let mut parent = vec![usize::MAX; adj.len()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            let mut best = usize::MAX;
            while let Some(v) = queue.pop_front() {
                if 2 * dist[v] + 1 >= k.min(best) {
                    break;
                }
                for &w in &adj[v] {
                    let w = w as usize;
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        best = best.min(dist[v] + dist[w] + 1);
                    }
                }
            }
            (best < usize::MAX).then_some(best)
        })
        .min()?;
    (best < k).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Vec<Vec<u32>> {
        (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(shortest_cycle_below(&cycle(3), 4), Some(3));
        assert_eq!(shortest_cycle_below(&cycle(6), 6), None);
        assert_eq!(shortest_cycle_below(&cycle(6), 7), Some(6));
        assert_eq!(shortest_cycle_below(&cycle(5), 7), Some(5));
        // a path is a forest
        let path = vec![vec![1], vec![0, 2], vec![1]];
        assert_eq!(shortest_cycle_below(&path, 100), None);
    }

    #[test]
    fn components_and_diameter() {
        let single: Vec<Vec<u32>> = vec![vec![]];
        assert_eq!(diameter_of(&single), Some(0));
        let two = vec![vec![1], vec![0], vec![]];
        assert_eq!(components_of(&two), vec![vec![0, 1], vec![2]]);
        assert_eq!(diameter_of(&two), None);
        assert_eq!(diameter_of(&cycle(7)), Some(3));
    }

    #[test]
    fn square_caterpillar_slide_graph() {
        let ps = PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let g = build_graph(&ps, Family::Caterpillars, OpKind::Slide).unwrap();
        assert_eq!(g.len(), 12);
        assert!(g.is_connected());
        let tri = PointSet::from_coords(&[(0, 0), (4, 0), (1, 3)]).unwrap();
        let g = build_graph(&tri, Family::All, OpKind::Slide).unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.is_connected());
    }
}
