//! Conversions between a fan and a radial path.
//!
//! A fan on `u, v, L` is the tree with edge `uv` and every point of `L`
//! attached to `v`. Sorting `L` by the angle swept when the ray `vu` turns
//! around `v` gives the radial path `u, l_1, ..., l_k, v`; consecutive slides
//! along the empty wedges `v l_i l_(i+1)` turn one into the other.

use crate::error::{Error, Result};
use crate::geometry::{radial_order, rotation_towards, PointSet};

use super::SequenceBuilder;

/// The radial path on `subset` from `u` to `v`: the other points in the
/// order a ray from `v` meets them while turning from `u` towards the inside
/// of the subset. `u` and `v` must be adjacent on the hull of `subset`.
pub fn radial_path(ps: &PointSet, subset: &[usize], u: usize, v: usize) -> Result<Vec<usize>> {
    let others: Vec<usize> = subset.iter().copied().filter(|&w| w != u && w != v).collect();
    if u == v || !subset.contains(&u) || !subset.contains(&v) {
        return Err(Error::Precondition(format!("{u} and {v} must be distinct members of the subset")));
    }
    let side = |w: usize| ps.orient(u, v, w).signum();
    if others.windows(2).any(|w| side(w[0]) != side(w[1])) {
        return Err(Error::Precondition(format!("{u} and {v} are not adjacent on the hull")));
    }
    let mut out = vec![u];
    if let Some(&probe) = others.first() {
        let dir = rotation_towards(ps, v, u, probe);
        out.extend(radial_order(v, u, &others, ps, dir));
    }
    out.push(v);
    Ok(out)
}

/// Turns the fan centered at `path.last()` into `path` by slides.
pub(crate) fn fan_to_radial(b: &mut SequenceBuilder<'_>, path: &[usize]) -> Result<()> {
    let k = path.len();
    if k < 3 {
        return Ok(());
    }
    let v = path[k - 1];
    for i in 0..k - 2 {
        // slide path[i] v to path[i] path[i+1] along v path[i+1]
        b.slide(path[i], v, path[i + 1])
            .map_err(|e| Error::Construction(format!("fan to radial path {path:?}: {e}")))?;
    }
    Ok(())
}

/// Turns the path `path` into the fan centered at its last vertex; the exact
/// reverse of [`fan_to_radial`].
pub(crate) fn radial_to_fan(b: &mut SequenceBuilder<'_>, path: &[usize]) -> Result<()> {
    let k = path.len();
    if k < 3 {
        return Ok(());
    }
    let v = path[k - 1];
    for i in (0..k - 2).rev() {
        b.slide(path[i], path[i + 1], v)
            .map_err(|e| Error::Construction(format!("radial path {path:?} to fan: {e}")))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Segment;
    use crate::reconfig::OpKind;
    use crate::structures::{Family, SpanningTree};

    #[test]
    fn fan_and_radial_path_are_inverse() {
        // v = 0 at the origin, u = 1 to the right, leaves spread above
        let ps = PointSet::from_coords(&[(0, 0), (20, 1), (15, 9), (6, 14), (-7, 12), (-16, 3)]).unwrap();
        let path = radial_path(&ps, &[0, 1, 2, 3, 4, 5], 1, 0).unwrap();
        assert_eq!(path, vec![1, 2, 3, 4, 5, 0]);
        let fan = SpanningTree::from_pairs(&ps, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let mut b = SequenceBuilder::new(&ps, fan, OpKind::Slide, Family::All).unwrap();
        fan_to_radial(&mut b, &path).unwrap();
        assert_eq!(b.current(), SpanningTree::from_path(&ps, &path).unwrap());
        radial_to_fan(&mut b, &path).unwrap();
        assert_eq!(b.current(), fan);
        let seq = b.finish();
        seq.validate(&ps).unwrap();
        assert_eq!(seq.len(), 8);
        assert_eq!(seq.steps[0].removed, Segment::new(0, 1));
    }

    #[test]
    fn radial_path_examples() {
        let sq = PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        assert_eq!(radial_path(&sq, &[0, 1, 2, 3], 0, 1).unwrap(), vec![0, 3, 2, 1]);
        assert!(radial_path(&sq, &[0, 1, 2, 3], 0, 2).is_err());
        let tri = PointSet::from_coords(&[(0, 0), (4, 0), (1, 3)]).unwrap();
        assert_eq!(radial_path(&tri, &[0, 1, 2], 0, 1).unwrap(), vec![0, 2, 1]);
    }
}
