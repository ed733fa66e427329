//! Component checks for peeling paths and well-separated caterpillars.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::reconfig::{build_graph, OpKind};
use crate::geometry::PointSet;
use crate::structures::{
    count_peeling_sequences, enumeration_cap, enumerate_plane_trees, peeling_sequences, well_separated_orientations,
    Family, SpanningTree,
};

fn require_cap(ps: &PointSet) -> Result<()> {
    let cap = enumeration_cap();
    if ps.len() > cap {
        return Err(Error::CapExceeded { n: ps.len(), cap });
    }
    Ok(())
}

/// Outcome of checking that all peeling paths share one flip component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelingCheck {
    /// Directed peeling sequences.
    pub directed: u64,
    /// Distinct paths underlying them.
    pub undirected: usize,
    /// Size of the flip component holding the first of them.
    pub component_size: usize,
    pub one_component: bool,
}

impl PeelingCheck {
    /// One component of at least `2^(n-2)` paths, realized by at least
    /// `2^(n-1)` directed sequences.
    pub fn holds(&self, n: usize) -> bool {
        let lo = 1u64 << n.saturating_sub(2);
        self.one_component
            && self.directed >= 2 * lo
            && self.undirected as u64 >= lo
            && self.component_size as u64 >= lo
    }
}

pub fn peeling_component_check(ps: &PointSet) -> Result<PeelingCheck> {
    require_cap(ps)?;
    let directed = count_peeling_sequences(ps);
    let undirected: HashSet<SpanningTree> = peeling_sequences(ps, None)
        .iter()
        .map(|s| SpanningTree::from_path(ps, s))
        .collect::<Result<_>>()?;
    let g = build_graph(ps, Family::Paths, OpKind::Flip)?;
    let comps = g.components();
    let comp_of = |t: &SpanningTree| g.index_of(t).and_then(|i| comps.iter().position(|c| c.binary_search(&i).is_ok()));
    let ids: HashSet<Option<usize>> = undirected.iter().map(comp_of).collect();
    let one_component = ids.len() == 1 && !ids.contains(&None);
    let component_size = ids.iter().next().copied().flatten().map_or(0, |c| comps[c].len());
    Ok(PeelingCheck {
        directed,
        undirected: undirected.len(),
        component_size,
        one_component,
    })
}

/// Caterpillars with at least one well-separated spine orientation.
pub fn well_separated_caterpillars(ps: &PointSet) -> Result<Vec<SpanningTree>> {
    require_cap(ps)?;
    Ok(enumerate_plane_trees(ps, Family::Caterpillars)?
        .into_iter()
        .filter(|t| !well_separated_orientations(ps, t).is_empty())
        .collect())
}

pub fn count_well_separated(ps: &PointSet) -> Result<usize> {
    well_separated_caterpillars(ps).map(|v| v.len())
}

/// `(3^n - 1) / 2`, the counting bound reported next to the direct count.
pub fn well_separated_bound(n: usize) -> u128 {
    (3u128.pow(n as u32) - 1) / 2
}

/// Outcome of checking that well-separated caterpillars share one slide
/// component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellSeparatedCheck {
    pub count: usize,
    pub bound: u128,
    pub one_component: bool,
}

pub fn ws_component_check(ps: &PointSet) -> Result<WellSeparatedCheck> {
    let ws = well_separated_caterpillars(ps)?;
    let g = build_graph(ps, Family::Caterpillars, OpKind::Slide)?;
    let comps = g.components();
    let ids: HashSet<Option<usize>> = ws
        .iter()
        .map(|t| g.index_of(t).and_then(|i| comps.iter().position(|c| c.binary_search(&i).is_ok())))
        .collect();
    Ok(WellSeparatedCheck {
        count: ws.len(),
        bound: well_separated_bound(ps.len()),
        one_component: ids.len() <= 1 && !ids.contains(&None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{convex_point_set, random_point_set, DEFAULT_GRID};

    #[test]
    fn triangle_counts() {
        let ps = convex_point_set(3).unwrap();
        let w = ws_component_check(&ps).unwrap();
        assert_eq!(w.count, 3);
        assert_eq!(w.bound, 13);
        assert!(w.one_component);
        let p = peeling_component_check(&ps).unwrap();
        assert!(p.directed >= 4);
        assert!(p.holds(3));
    }

    #[test]
    fn peeling_paths_share_a_component() {
        for n in 4..=6 {
            let ps = convex_point_set(n).unwrap();
            assert!(peeling_component_check(&ps).unwrap().holds(n));
            let ps = random_point_set(n, n as u64, DEFAULT_GRID).unwrap();
            assert!(peeling_component_check(&ps).unwrap().holds(n));
            assert!(ws_component_check(&ps).unwrap().one_component);
        }
    }
}
