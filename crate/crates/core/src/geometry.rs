//! Exact predicates and constructions over integer points.
//!
//! All determinants are evaluated in `i64`; the coordinate bound keeps every
//! intermediate value far below `2^63`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted absolute coordinate value.
pub const COORD_BOUND: i64 = 1_000_000;

/// Largest supported point count. Segment sets are stored as `u128` bitmasks,
/// so `n * (n - 1) / 2` must not exceed 128.
pub const MAX_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the cross product `(q - p) x (r - p)`: `1` for a counter-clockwise
/// turn, `-1` for clockwise, `0` for collinear.
pub fn orientation(p: Point, q: Point, r: Point) -> i32 {
    let det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    det.signum() as i32
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// A straight segment between two point indices, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
}

impl Segment {
    /// Builds the segment with endpoints in canonical order. Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "degenerate segment");
        if a < b {
            Segment { a, b }
        } else {
            Segment { a: b, b: a }
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint other than `v`, if `v` is an endpoint.
    pub fn other(&self, v: usize) -> Option<usize> {
        if self.a == v {
            Some(self.b)
        } else if self.b == v {
            Some(self.a)
        } else {
            None
        }
    }

    /// Common endpoint of two distinct segments.
    pub fn shared_endpoint(&self, other: &Segment) -> Option<usize> {
        if self == other {
            return None;
        }
        if other.contains(self.a) {
            Some(self.a)
        } else if other.contains(self.b) {
            Some(self.b)
        } else {
            None
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

/// Rotation sense for angular sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    Clockwise,
    CounterClockwise,
}

/// Number of segments on `n` points.
pub const fn segment_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Position of segment `{a, b}` in the lexicographic order of all segments on
/// `n` points.
pub fn segment_index(n: usize, s: Segment) -> usize {
    let (a, b) = (s.a, s.b);
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// A validated point set in general position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    segments: Vec<Segment>,
    crossings: Vec<u128>,
}

impl PointSet {
    /// Validates the points (count, coordinate bound, distinctness and general
    /// position) and precomputes the segment crossing table.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::TooFewPoints(n));
        }
        if n > MAX_POINTS {
            return Err(Error::TooManyPoints { got: n, max: MAX_POINTS });
        }
        for (i, p) in points.iter().enumerate() {
            if p.x.abs() > COORD_BOUND || p.y.abs() > COORD_BOUND {
                return Err(Error::CoordinateOutOfRange { index: i });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if orientation(points[i], points[j], points[k]) == 0 {
                        return Err(Error::CollinearTriple(i, j, k));
                    }
                }
            }
        }
        let mut segments = Vec::with_capacity(segment_count(n));
        for a in 0..n {
            for b in a + 1..n {
                segments.push(Segment { a, b });
            }
        }
        let mut crossings = vec![0u128; segments.len()];
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                if segments_cross(&points, segments[i], segments[j]) {
                    crossings[i] |= 1 << j;
                    crossings[j] |= 1 << i;
                }
            }
        }
        Ok(PointSet {
            points,
            segments,
            crossings,
        })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    /// All segments in lexicographic order; position equals [`segment_index`].
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment_at(&self, idx: usize) -> Segment {
        self.segments[idx]
    }

    pub fn index_of(&self, s: Segment) -> usize {
        segment_index(self.len(), s)
    }

    /// Bitmask of segment indices that properly cross the segment at `idx`.
    pub fn crossing_mask(&self, idx: usize) -> u128 {
        self.crossings[idx]
    }

    pub fn orient(&self, a: usize, b: usize, c: usize) -> i32 {
        orientation(self.points[a], self.points[b], self.points[c])
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    pub fn is_convex_position(&self) -> bool {
        convex_hull(self, &self.all_indices()).len() == self.len()
    }
}

fn segments_cross(points: &[Point], s: Segment, t: Segment) -> bool {
    if s.shared_endpoint(&t).is_some() || s == t {
        return false;
    }
    let (p1, p2, q1, q2) = (points[s.a], points[s.b], points[t.a], points[t.b]);
    let o1 = orientation(p1, p2, q1);
    let o2 = orientation(p1, p2, q2);
    let o3 = orientation(q1, q2, p1);
    let o4 = orientation(q1, q2, p2);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// True iff the open segments meet in a single interior point of both.
/// Segments sharing an endpoint never properly cross.
pub fn properly_cross(s1: Segment, s2: Segment, ps: &PointSet) -> bool {
    segments_cross(ps.points(), s1, s2)
}

/// Convex hull of `subset`, counter-clockwise, starting at the
/// lexicographically smallest point. Subsets of at most two points are
/// returned sorted in that same order.
pub fn convex_hull(ps: &PointSet, subset: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_by_key(|&i| ps.point(i));
    idx.dedup();
    if idx.len() <= 2 {
        return idx;
    }
    let pts = ps.points();
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && cross(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[i]) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && cross(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[i]) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Edges of the hull polygon of `subset` (a single segment for two points,
/// nothing for one).
pub fn hull_edges(ps: &PointSet, subset: &[usize]) -> Vec<Segment> {
    let hull = convex_hull(ps, subset);
    match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![Segment::new(hull[0], hull[1])],
        k => (0..k).map(|i| Segment::new(hull[i], hull[(i + 1) % k])).collect(),
    }
}

/// Strict interior test; points on the boundary are outside.
pub fn point_in_triangle(ps: &PointSet, p: usize, a: usize, b: usize, c: usize) -> bool {
    let o = ps.orient(a, b, c);
    o != 0 && ps.orient(a, b, p) == o && ps.orient(b, c, p) == o && ps.orient(c, a, p) == o
}

/// True iff no point other than `a`, `b`, `c` lies inside the triangle.
pub fn triangle_strictly_empty(a: usize, b: usize, c: usize, ps: &PointSet) -> bool {
    (0..ps.len())
        .filter(|&p| p != a && p != b && p != c)
        .all(|p| !point_in_triangle(ps, p, a, b, c))
}

/// Points of `candidates` strictly inside the triangle `abc`.
pub fn points_in_triangle(
    ps: &PointSet,
    a: usize,
    b: usize,
    c: usize,
    candidates: &[usize],
) -> Vec<usize> {
    candidates
        .iter()
        .copied()
        .filter(|&p| p != a && p != b && p != c && point_in_triangle(ps, p, a, b, c))
        .collect()
}

/// True iff segment `ab` properly crosses none of `blockers`.
pub fn segment_visible(a: usize, b: usize, blockers: &[Segment], ps: &PointSet) -> bool {
    let s = Segment::new(a, b);
    blockers.iter().all(|&t| !properly_cross(s, t, ps))
}

/// Point `p` strictly inside the convex polygon `hull` (CCW order).
pub fn point_in_convex_polygon(ps: &PointSet, hull: &[usize], p: usize) -> bool {
    if hull.len() < 3 {
        return false;
    }
    (0..hull.len()).all(|i| ps.orient(hull[i], hull[(i + 1) % hull.len()], p) > 0)
}

/// True iff the convex hulls of the two disjoint index sets do not meet.
pub fn hulls_disjoint(ps: &PointSet, first: &[usize], second: &[usize]) -> bool {
    if first.is_empty() || second.is_empty() {
        return true;
    }
    let h1 = convex_hull(ps, first);
    let h2 = convex_hull(ps, second);
    if second.iter().any(|&p| point_in_convex_polygon(ps, &h1, p))
        || first.iter().any(|&p| point_in_convex_polygon(ps, &h2, p))
    {
        return false;
    }
    let e1 = hull_edges(ps, first);
    let e2 = hull_edges(ps, second);
    !e1.iter().any(|&s| e2.iter().any(|&t| properly_cross(s, t, ps)))
}

/// Orders `subset` by the angle swept when a ray from `pivot` starting at
/// `from_dir` rotates in `direction`. A point on the starting ray comes first.
pub fn radial_order(
    pivot: usize,
    from_dir: usize,
    subset: &[usize],
    ps: &PointSet,
    direction: Rotation,
) -> Vec<usize> {
    let o = ps.point(pivot);
    let d = ps.point(from_dir);
    let sign: i64 = match direction {
        Rotation::CounterClockwise => 1,
        Rotation::Clockwise => -1,
    };
    // (half, point): half 0 = angle in [0, pi), half 1 = [pi, 2pi)
    let half = |w: Point| -> u8 {
        let c = sign * cross(o, d, w);
        let dot = (d.x - o.x) * (w.x - o.x) + (d.y - o.y) * (w.y - o.y);
        if c > 0 || (c == 0 && dot > 0) {
            0
        } else {
            1
        }
    };
    let mut out: Vec<usize> = subset.to_vec();
    out.sort_by(|&i, &j| {
        let (pi, pj) = (ps.point(i), ps.point(j));
        half(pi).cmp(&half(pj)).then_with(|| {
            let c = sign * cross(o, pi, pj);
            0.cmp(&c)
        })
    });
    out
}

/// Rotation sense at `pivot` that sweeps from `from_dir` towards `target`
/// through an angle below pi.
pub fn rotation_towards(ps: &PointSet, pivot: usize, from_dir: usize, target: usize) -> Rotation {
    if ps.orient(pivot, from_dir, target) > 0 {
        Rotation::CounterClockwise
    } else {
        Rotation::Clockwise
    }
}

/// Squared distance comparison of two points to the line through `a`, `b`;
/// exact since the line is fixed.
pub fn cmp_distance_to_line(ps: &PointSet, a: usize, b: usize, p: usize, q: usize) -> Ordering {
    let (pa, pb) = (ps.point(a), ps.point(b));
    cross(pa, pb, ps.point(p))
        .abs()
        .cmp(&cross(pa, pb, ps.point(q)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PointSet {
        PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()
    }

    // The centre (1,1) of the 2x2 square is collinear with both diagonals, so
    // the scaled square with an off-centre interior point stands in for it.
    fn square_center() -> PointSet {
        PointSet::from_coords(&[(0, 0), (20, 0), (20, 20), (0, 20), (11, 8)]).unwrap()
    }

    #[test]
    fn orientation_examples() {
        let p = Point::new;
        assert_eq!(orientation(p(0, 0), p(2, 0), p(2, 2)), 1);
        assert_eq!(orientation(p(0, 0), p(2, 0), p(4, 0)), 0);
        assert_eq!(orientation(p(0, 0), p(2, 2), p(2, 0)), -1);
    }

    #[test]
    fn crossing_examples() {
        let ps = square();
        assert!(properly_cross(Segment::new(0, 2), Segment::new(1, 3), &ps));
        assert!(!properly_cross(Segment::new(0, 1), Segment::new(1, 2), &ps));
        assert!(!properly_cross(Segment::new(0, 1), Segment::new(2, 3), &ps));
    }

    #[test]
    fn hull_examples() {
        let ps = square();
        assert_eq!(convex_hull(&ps, &[0, 1, 2, 3]), vec![0, 1, 2, 3]);
        let ps5 = square_center();
        assert_eq!(convex_hull(&ps5, &[0, 1, 2, 3, 4]), vec![0, 1, 2, 3]);
        assert_eq!(convex_hull(&ps, &[2]), vec![2]);
    }

    #[test]
    fn empty_triangle_examples() {
        let ps = square();
        assert!(triangle_strictly_empty(0, 1, 2, &ps));
        let ps5 = square_center();
        assert!(!triangle_strictly_empty(0, 1, 2, &ps5));
        assert!(triangle_strictly_empty(0, 1, 4, &ps5));
    }

    #[test]
    fn visibility_examples() {
        let ps = square();
        assert!(!segment_visible(0, 2, &[Segment::new(1, 3)], &ps));
        assert!(segment_visible(0, 2, &[Segment::new(0, 1), Segment::new(1, 2)], &ps));
        let ps5 = square_center();
        assert!(!segment_visible(0, 2, &[Segment::new(1, 4), Segment::new(4, 3)], &ps5));
    }

    #[test]
    fn radial_examples() {
        let ps = square();
        // around (2,0) starting towards (0,0); the interior is reached by a
        // clockwise sweep: (0,2) at 135 degrees before (2,2) at 90 degrees
        assert_eq!(rotation_towards(&ps, 1, 0, 2), Rotation::Clockwise);
        assert_eq!(radial_order(1, 0, &[2, 3], &ps, Rotation::Clockwise), vec![3, 2]);
        assert_eq!(radial_order(1, 0, &[2, 3], &ps, Rotation::CounterClockwise), vec![2, 3]);
        assert_eq!(radial_order(1, 0, &[3], &ps, Rotation::Clockwise), vec![3]);
        assert!(radial_order(1, 0, &[], &ps, Rotation::Clockwise).is_empty());
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            PointSet::from_coords(&[(0, 0), (1, 1), (2, 2), (0, 1)]).unwrap_err(),
            Error::CollinearTriple(0, 1, 2)
        );
        assert_eq!(
            PointSet::from_coords(&[(0, 0), (1, 0), (0, 0)]).unwrap_err(),
            Error::DuplicatePoint(0, 2)
        );
        assert_eq!(PointSet::from_coords(&[(0, 0), (1, 0)]).unwrap_err(), Error::TooFewPoints(2));
        assert!(matches!(
            PointSet::from_coords(&[(0, 0), (1, 0), (0, 2_000_000)]),
            Err(Error::CoordinateOutOfRange { index: 2 })
        ));
    }

    #[test]
    fn segment_index_is_lexicographic() {
        let ps = square();
        for (i, s) in ps.segments().iter().enumerate() {
            assert_eq!(ps.index_of(*s), i);
        }
    }
}
