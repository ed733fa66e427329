use crate::error::{Error, Result};
use crate::geometry::{convex_hull, hull_edges, properly_cross, PointSet, Segment};
use crate::reconfig::OpKind;
use crate::structures::{is_peeling_order, Family, SpanningTree};

use super::{MoveSequence, SequenceBuilder};

/// Builds a path on `set` from `from` to `to` by repeatedly following one
/// of the two boundary arcs of the remaining hull towards `to`.
fn arc_walk(ps: &PointSet, set: &[usize], from: usize, to: usize, longer: bool) -> Option<Vec<usize>> {
    let mut walk = vec![from];
    let mut rest: Vec<usize> = set.iter().copied().filter(|&w| w != from).collect();
    while !rest.is_empty() {
        if rest == [to] {
            walk.push(to);
            break;
        }
        let p = *walk.last().unwrap();
        let mut with_p = rest.clone();
        with_p.push(p);
        let h = convex_hull(ps, &with_p);
        let k = h.len();
        let ip = h.iter().position(|&w| w == p)?;
        let iq = h.iter().position(|&w| w == to)?;
        let arc = |step: usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut i = (ip + step) % k;
            while i != iq {
                out.push(h[i]);
                i = (i + step) % k;
            }
            out
        };
        let (a, b) = (arc(1), arc(k - 1));
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let chosen = if longer || small.is_empty() { big } else { small };
        if chosen.is_empty() {
            return None;
        }
        rest.retain(|w| !chosen.contains(w));
        walk.extend(chosen);
    }
    Some(walk)
}

/// Exhaustive search for a path from `from` to `to` on `set` that is a
/// peeling order in both directions.
fn search_two_way(ps: &PointSet, set: &[usize], from: usize, to: usize) -> Option<Vec<usize>> {
    fn go(ps: &PointSet, rest: &mut Vec<usize>, walk: &mut Vec<usize>, to: usize) -> bool {
        if rest.is_empty() {
            let mut rev = walk.clone();
            rev.reverse();
            return is_peeling_order(ps, &rev);
        }
        let p = *walk.last().unwrap();
        let cands = rest.clone();
        for c in cands {
            if (c == to) != (rest.len() == 1) {
                continue;
            }
            let pos = rest.iter().position(|&w| w == c).unwrap();
            rest.remove(pos);
            walk.push(c);
            let ok = step_ok(ps, p, c, rest);
            if ok && go(ps, rest, walk, to) {
                return true;
            }
            walk.pop();
            rest.insert(pos, c);
        }
        false
    }
    fn step_ok(ps: &PointSet, p: usize, c: usize, rest: &[usize]) -> bool {
        let mut remaining = vec![c];
        remaining.extend_from_slice(rest);
        let h = convex_hull(ps, &remaining);
        h.contains(&c)
            && hull_edges(ps, &remaining)
                .iter()
                .all(|&e| !properly_cross(Segment::new(p, c), e, ps))
    }
    let mut rest: Vec<usize> = set.iter().copied().filter(|&w| w != from).collect();
    let mut walk = vec![from];
    go(ps, &mut rest, &mut walk, to).then_some(walk)
}

/// A path on `set` from `from` to `to` that is a peeling order read either
/// way. The boundary-arc rule (longer arc first, then shorter) is tried
/// before an exhaustive search; the flag reports whether the search ran.
pub fn peeling_connector(ps: &PointSet, set: &[usize], from: usize, to: usize) -> Result<(Vec<usize>, bool)> {
    let two_way = |w: &Vec<usize>| {
        let mut rev = w.clone();
        rev.reverse();
        is_peeling_order(ps, w) && is_peeling_order(ps, &rev)
    };
    for longer in [true, false] {
        if let Some(w) = arc_walk(ps, set, from, to, longer) {
            if two_way(&w) {
                return Ok((w, false));
            }
        }
    }
    search_two_way(ps, set, from, to)
        .map(|w| (w, true))
        .ok_or_else(|| Error::Construction(format!("no two-way peeling path from {from} to {to} on {set:?}")))
}

struct Connector<'a, 'b> {
    b: &'b mut SequenceBuilder<'a>,
}

impl Connector<'_, '_> {
    /// Transforms the path `cur` into `target`; both agree on `..=from`.
    fn connect(&mut self, cur: &[usize], target: &[usize], from: usize) -> Result<()> {
        if cur[from..] == target[from..] {
            return Ok(());
        }
        if cur[from + 1] == target[from + 1] {
            return self.connect(cur, target, from + 1);
        }
        let ps = self.b.ps();
        let u = cur[from];
        let (p2, q2) = (cur[from + 1], target[from + 1]);
        let (f, searched) = peeling_connector(ps, &cur[from + 1..], p2, q2)?;
        if searched {
            self.b.note_connector_search();
        }
        let mid = [&cur[..=from], &f[..]].concat();
        self.connect(cur, &mid, from + 1)?;
        self.b.apply(Segment::new(u, p2), Segment::new(u, q2))?;
        let rf: Vec<usize> = f.iter().rev().copied().collect();
        let after = [&cur[..=from], &rf[..]].concat();
        self.connect(&after, target, from + 1)
    }
}

/// Flips between two generalized peeling paths that start at the same
/// vertex; every intermediate tree is a path starting there.
pub fn peeling_connect(ps: &PointSet, p: &[usize], q: &[usize]) -> Result<MoveSequence> {
    let n = ps.len();
    if p.len() != n || q.len() != n {
        return Err(Error::Precondition("sequences must visit every point".into()));
    }
    if !is_peeling_order(ps, p) || !is_peeling_order(ps, q) {
        return Err(Error::Precondition("both sequences must be peeling orders".into()));
    }
    if p[0] != q[0] {
        return Err(Error::Precondition(format!("paths start at {} and {}", p[0], q[0])));
    }
    let start = SpanningTree::from_path(ps, p)?;
    let mut b = SequenceBuilder::new(ps, start, OpKind::Flip, Family::Paths)?;
    b.fix_endpoint(p[0]);
    if n > 1 {
        Connector { b: &mut b }.connect(p, q, 0)?;
    }
    let seq = b.finish();
    if seq.end() != SpanningTree::from_path(ps, q)? {
        return Err(Error::Construction("flip sequence ended at the wrong path".into()));
    }
    Ok(seq)
}

