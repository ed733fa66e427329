//! Seeded point-set generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, COORD_BOUND, MAX_POINTS};

/// Default side length of the sampling grid.
pub const DEFAULT_GRID: i64 = 1000;

/// `n` points drawn uniformly from `[0, grid)^2`, redrawing any point that
/// duplicates or is collinear with earlier ones. Fully determined by `seed`.
pub fn random_point_set(n: usize, seed: u64, grid: i64) -> Result<PointSet> {
    if n > MAX_POINTS {
        return Err(Error::TooManyPoints { got: n, max: MAX_POINTS });
    }
    if !(4..=COORD_BOUND).contains(&grid) {
        return Err(Error::Precondition(format!("grid {grid} out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pts.len() < n {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(Error::Precondition(format!("grid {grid} too small for {n} points")));
        }
        let p = Point::new(rng.gen_range(0..grid), rng.gen_range(0..grid));
        if fits(&pts, p) {
            pts.push(p);
        }
    }
    PointSet::new(pts)
}

fn fits(pts: &[Point], p: Point) -> bool {
    if pts.contains(&p) {
        return false;
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if crate::geometry::orientation(pts[i], pts[j], p) == 0 {
                return false;
            }
        }
    }
    true
}

/// `n` points in convex position: a regular polygon of radius 10000,
/// rounded to the grid, starting at angle zero and turning
/// counter-clockwise.
pub fn convex_point_set(n: usize) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    let r = 10_000.0_f64;
    let pts: Vec<Point> = (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            Point::new((r * a.cos()).round() as i64, (r * a.sin()).round() as i64)
        })
        .collect();
    let ps = PointSet::new(pts)?;
    debug_assert!(ps.is_convex_position());
    Ok(ps)
}

/// Seeds for `count` independent instances derived from a base seed.
pub fn instance_seeds(base: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    (0..count).map(|_| rng.gen()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let a = random_point_set(7, 42, DEFAULT_GRID).unwrap();
        let b = random_point_set(7, 42, DEFAULT_GRID).unwrap();
        assert_eq!(a.points(), b.points());
        let c = random_point_set(7, 43, DEFAULT_GRID).unwrap();
        assert_ne!(a.points(), c.points());
    }

    #[test]
    fn convex_sets_are_convex() {
        for n in 3..=12 {
            assert!(convex_point_set(n).unwrap().is_convex_position());
        }
    }
}
