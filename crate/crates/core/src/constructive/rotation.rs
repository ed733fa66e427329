use crate::error::{Error, Result};
use crate::geometry::{convex_hull, point_in_convex_polygon, PointSet, Segment};
use crate::reconfig::OpKind;
use crate::structures::{caterpillar_spine, Family, SpanningTree};

use super::stars::merge_onto;
use super::{MoveSequence, SequenceBuilder};

/// Rotates a caterpillar to a star, staying within caterpillars.
///
/// While the spine has three or more vertices, the last one is retired:
/// leaves of outer spine vertices that sit inside the hull of the last two
/// spine vertices and their leaves are moved onto inner spine vertices, then
/// the leaves of the last spine vertex are moved away. A two-vertex spine is
/// finished with slides, which are rotations too.
pub fn rotation_to_star(ps: &PointSet, c: &SpanningTree) -> Result<MoveSequence> {
    if !c.is_caterpillar() {
        return Err(Error::Precondition(format!("{c} is not a caterpillar")));
    }
    let mut b = SequenceBuilder::new(ps, *c, OpKind::Rotation, Family::Caterpillars)?;
    loop {
        let t = b.current();
        let spine = caterpillar_spine(&t).unwrap();
        if spine.len() <= 1 {
            return Ok(b.finish());
        }
        let k = spine.len();
        let (vk, vk1) = (spine[k - 1], spine[k - 2]);
        let adj = t.adjacency();
        let mut near = vec![vk, vk1];
        for &s in &[vk, vk1] {
            near.extend(adj[s].iter().copied().filter(|&w| adj[w].len() == 1));
        }
        if k == 2 {
            merge_onto(&mut b, &ps.all_indices(), vk, vk1)?;
            continue;
        }
        let hull = convex_hull(ps, &near);
        let inside: Vec<usize> = (0..ps.len())
            .filter(|w| !near.contains(w) && point_in_convex_polygon(ps, &hull, *w))
            .collect();
        let inner_spine: Vec<usize> = spine
            .iter()
            .copied()
            .filter(|&s| s == vk1 || inside.contains(&s))
            .collect();
        // leaves inside the hull whose spine vertex is outside it
        loop {
            let t = b.current();
            let adj = t.adjacency();
            let stray = inside.iter().copied().find_map(|l| {
                if adj[l].len() != 1 || inner_spine.contains(&adj[l][0]) {
                    return None;
                }
                let e = Segment::new(l, adj[l][0]);
                inner_spine
                    .iter()
                    .map(|&s| Segment::new(l, s))
                    .find(|&f| b.can_apply(e, f))
                    .map(|f| (e, f))
            });
            match stray {
                Some((e, f)) => b.apply(e, f)?,
                None => break,
            }
        }
        // empty the last spine vertex, preferring inner spine vertices
        loop {
            let t = b.current();
            let adj = t.adjacency();
            let leaves: Vec<usize> = adj[vk].iter().copied().filter(|&w| adj[w].len() == 1).collect();
            if leaves.is_empty() {
                break;
            }
            let targets: Vec<usize> = inner_spine
                .iter()
                .chain(spine.iter())
                .copied()
                .filter(|&s| s != vk)
                .collect();
            let mv = leaves.iter().find_map(|&l| {
                let e = Segment::new(l, vk);
                targets
                    .iter()
                    .map(|&s| Segment::new(l, s))
                    .find(|&f| b.can_apply(e, f))
                    .map(|f| (e, f))
            });
            match mv {
                Some((e, f)) => b.apply(e, f)?,
                None => {
                    return Err(Error::Construction(format!(
                        "no leaf of {vk} can rotate onto the spine in {t}"
                    )))
                }
            }
        }
        if caterpillar_spine(&b.current()).map_or(0, |s| s.len()) >= k {
            return Err(Error::Construction(format!("spine did not shrink at {}", b.current())));
        }
    }
}
