use crate::error::{Error, Result};
use crate::geometry::{radial_order, PointSet, Rotation, Segment};
use crate::reconfig::OpKind;
use crate::structures::{caterpillar_spine, make_star, Family, SpanningTree};

use super::{MoveSequence, SequenceBuilder};

fn require_convex(ps: &PointSet) -> Result<()> {
    if !ps.is_convex_position() {
        return Err(Error::Precondition("points are not in convex position".into()));
    }
    Ok(())
}

/// Collapses the caterpillar currently held by `b` onto the spine end `s`,
/// one spine vertex at a time. `spine` is oriented from `s`.
fn collapse_onto(b: &mut SequenceBuilder<'_>, spine: &[usize]) -> Result<()> {
    let s = spine[0];
    let ps = b.ps();
    for (i, &vi) in spine.iter().enumerate().skip(1) {
        let next = spine.get(i + 1).copied();
        loop {
            let t = b.current();
            let adj = t.adjacency();
            let leaves: Vec<usize> = adj[vi]
                .iter()
                .copied()
                .filter(|&w| w != s && Some(w) != next)
                .collect();
            let has_next = next.is_some_and(|w| adj[vi].contains(&w));
            if leaves.is_empty() && !has_next {
                break;
            }
            // leaves visible from s first, nearest to the spine direction first
            let ordered = {
                let mut ccw = radial_order(s, vi, &leaves, ps, Rotation::CounterClockwise);
                let cw = radial_order(s, vi, &leaves, ps, Rotation::Clockwise);
                ccw.extend(cw);
                ccw
            };
            if let Some(&l) = ordered
                .iter()
                .find(|&&l| b.can_apply(Segment::new(vi, l), Segment::new(s, l)))
            {
                b.slide(l, vi, s)?;
                continue;
            }
            match next {
                Some(w) if has_next => b.slide(w, vi, s)?,
                _ => {
                    return Err(Error::Construction(format!(
                        "no slide onto {s} from spine vertex {vi} in {t}"
                    )))
                }
            }
        }
    }
    Ok(())
}

/// Slides a caterpillar on points in convex position to the star centered at
/// the spine end `s` (a leaf hanging off a spine end is accepted too). Each slide makes one more point adjacent to `s`, so the
/// sequence has at most `n - 1 - deg(s)` steps.
pub fn convex_cat_to_star(ps: &PointSet, c: &SpanningTree, s: usize) -> Result<MoveSequence> {
    require_convex(ps)?;
    let spine = caterpillar_spine(c).ok_or_else(|| Error::Precondition(format!("{c} is not a caterpillar")))?;
    let mut b = SequenceBuilder::new(ps, *c, OpKind::Slide, Family::Caterpillars)?;
    if spine.is_empty() {
        // a single edge is already a star on either endpoint
        return Ok(b.finish());
    }
    let (head, tail) = (spine[0], *spine.last().unwrap());
    let adj = c.adjacency();
    let oriented: Vec<usize> = if s == head {
        spine
    } else if s == tail {
        spine.into_iter().rev().collect()
    } else if adj[s] == [head] || adj[s] == [tail] {
        // a head or tail leaf extends the spine by one
        let mut o = if adj[s] == [head] { spine } else { spine.into_iter().rev().collect() };
        o.insert(0, s);
        o
    } else {
        return Err(Error::Precondition(format!("{s} is not a spine end of {c}")));
    };
    collapse_onto(&mut b, &oriented)?;
    debug_assert_eq!(b.current(), make_star(ps, s));
    Ok(b.finish())
}

/// Collapses a path onto an interior vertex `v`, alternating between its two
/// arms; each slide attaches one more point to `v`.
fn path_to_star(ps: &PointSet, p: &SpanningTree, v: usize) -> Result<MoveSequence> {
    let mut b = SequenceBuilder::new(ps, *p, OpKind::Slide, Family::Caterpillars)?;
    let seq = p.path_sequence().expect("caller passes a path");
    let pos = seq.iter().position(|&w| w == v).unwrap();
    let arms: [Vec<usize>; 2] = [
        seq[..=pos].iter().rev().copied().collect(),
        seq[pos..].to_vec(),
    ];
    // arm index -> position of the outermost point already attached to v
    let mut reach = [1usize, 1usize];
    loop {
        let mut progressed = false;
        let mut done = true;
        for a in 0..2 {
            let arm = &arms[a];
            if reach[a] + 1 >= arm.len() {
                continue;
            }
            done = false;
            let (y, z) = (arm[reach[a]], arm[reach[a] + 1]);
            if b.can_apply(Segment::new(y, z), Segment::new(v, z)) {
                b.slide(z, y, v)?;
                reach[a] += 1;
                progressed = true;
                break;
            }
        }
        if done {
            break;
        }
        if !progressed {
            return Err(Error::Construction(format!("path collapse onto {v} is stuck at {}", b.current())));
        }
    }
    Ok(b.finish())
}

/// Slides between two spanning paths on points in convex position while
/// staying within caterpillars; at most `2n - 6` steps for `n >= 5`.
pub fn convex_path_to_path(ps: &PointSet, p: &SpanningTree, q: &SpanningTree) -> Result<MoveSequence> {
    require_convex(ps)?;
    let n = ps.len();
    if n < 5 {
        return Err(Error::Precondition("needs at least five points".into()));
    }
    if !p.is_path() || !q.is_path() {
        return Err(Error::Precondition("both structures must be paths".into()));
    }
    p.validate(ps)?;
    q.validate(ps)?;
    if p == q {
        return SequenceBuilder::new(ps, *p, OpKind::Slide, Family::Caterpillars).map(SequenceBuilder::finish);
    }
    let (dp, dq) = (p.degrees(), q.degrees());
    let v = (0..n)
        .find(|&v| dp[v] >= 2 && dq[v] >= 2)
        .ok_or_else(|| Error::Construction("no common interior vertex".into()))?;
    let to_star = path_to_star(ps, p, v)?;
    let back = path_to_star(ps, q, v)?.reversed();
    let mut steps = to_star.steps;
    steps.extend(back.steps);
    let seq = MoveSequence {
        start: *p,
        steps,
        required_kind: OpKind::Slide,
        family: Family::Caterpillars,
    };
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::enumerate_plane_trees;

    fn convex(n: usize) -> PointSet {
        // points on a parabola are in convex position
        let pts: Vec<(i64, i64)> = (0..n as i64).map(|i| (i * 10, i * i * 3)).collect();
        PointSet::from_coords(&pts).unwrap()
    }

    #[test]
    fn every_convex_caterpillar_reaches_both_end_stars() {
        for n in 3..=7 {
            let ps = convex(n);
            for c in enumerate_plane_trees(&ps, Family::Caterpillars).unwrap() {
                let spine = caterpillar_spine(&c).unwrap();
                if spine.is_empty() {
                    continue;
                }
                for s in [spine[0], *spine.last().unwrap()] {
                    let seq = convex_cat_to_star(&ps, &c, s).unwrap();
                    seq.validate(&ps).unwrap();
                    assert_eq!(seq.end(), make_star(&ps, s));
                    assert!(seq.len() <= n - 1 - c.degree(s), "{c} -> star({s}) took {}", seq.len());
                }
            }
        }
    }

    #[test]
    fn convex_paths_connect_within_bound() {
        for n in 5..=7 {
            let ps = convex(n);
            let paths = enumerate_plane_trees(&ps, Family::Paths).unwrap();
            for p in paths.iter().step_by(3) {
                for q in paths.iter().step_by(5) {
                    let seq = convex_path_to_path(&ps, p, q).unwrap();
                    seq.validate(&ps).unwrap();
                    assert_eq!(seq.end(), *q);
                    assert!(seq.len() <= 2 * n - 6);
                }
            }
        }
    }

    #[test]
    fn head_leaf_as_target() {
        let ps = PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let p = SpanningTree::from_path(&ps, &[0, 1, 2, 3]).unwrap();
        let seq = convex_cat_to_star(&ps, &p, 0).unwrap();
        seq.validate(&ps).unwrap();
        assert_eq!(seq.end(), make_star(&ps, 0));
        assert!(seq.len() <= 2);
        assert!(convex_cat_to_star(&ps, &make_star(&ps, 0), 0).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_convex_input() {
        let ps = PointSet::from_coords(&[(0, 0), (10, 0), (5, 9), (5, 3)]).unwrap();
        let s = make_star(&ps, 0);
        assert!(matches!(convex_cat_to_star(&ps, &s, 0), Err(Error::Precondition(_))));
    }
}
