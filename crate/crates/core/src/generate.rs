//! Seeded random instances: points, motions, triangles, circle triples and
//! convex quadrilaterals.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycle::{cycle_through, hyp_circle, GeneralizedCycle};
use crate::disk::{hyp_distance, DiskIsometry, DiskPoint, Triangle};

/// Independent stream for instance `index` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    // splitmix64 finalizer over the pair
    let mut x = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    ChaCha8Rng::seed_from_u64(x)
}

/// Uniform (by Euclidean area) in the disk of radius `max_radius`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> DiskPoint {
    let r = max_radius * rng.random::<f64>().sqrt();
    let theta = rng.random_range(0.0..TAU);
    DiskPoint::new(Complex64::from_polar(r, theta)).expect("max_radius is inside the disk")
}

/// A motion whose translation part moves the origin at most to radius 0.6.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, reflect: bool) -> DiskIsometry {
    let a = random_point(rng, 0.6);
    let theta = rng.random_range(-PI..PI);
    DiskIsometry::new(a.z(), theta, reflect).expect("translation point is inside the disk")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleBox {
    pub max_vertex_radius: f64,
    pub min_angle: f64,
}

impl Default for TriangleBox {
    fn default() -> Self {
        TriangleBox { max_vertex_radius: 0.7, min_angle: 0.15 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drawn<T> {
    pub value: T,
    pub resamples: u32,
}

/// Draws vertices uniformly in the box until every angle clears the minimum.
pub fn random_triangle<R: Rng + ?Sized>(rng: &mut R, b: &TriangleBox) -> Drawn<Triangle> {
    let mut resamples = 0;
    loop {
        let [p, q, r] = [(); 3].map(|_| random_point(rng, b.max_vertex_radius));
        if let Ok(t) = Triangle::new(p, q, r) {
            if t.angles().iter().all(|a| a.abs() >= b.min_angle) {
                return Drawn { value: t, resamples };
            }
        }
        resamples += 1;
    }
}

/// Three pairwise disjoint hyperbolic circles (large, medium, tiny) with
/// centers close to the origin.
///
/// Circles with radii `r > s` at distance `d` have a positive homothetic
/// center iff `sinh r / sinh s > e^d`; the size ranges and the center box
/// make that hold for nearly every pair the box admits.
pub fn random_circle_triple<R: Rng + ?Sized>(rng: &mut R) -> Drawn<[GeneralizedCycle; 3]> {
    let mut resamples = 0;
    loop {
        let radii = [rng.random_range(0.45..0.7), rng.random_range(0.07..0.12), rng.random_range(0.01..0.025)];
        let centers = [(); 3].map(|_| random_point(rng, 0.32));
        let disjoint = (0..3).all(|i| {
            let j = (i + 1) % 3;
            hyp_distance(centers[i], centers[j]) > radii[i] + radii[j] + 0.02
        });
        if disjoint {
            if let (Ok(a), Ok(b), Ok(c)) =
                (hyp_circle(centers[0], radii[0]), hyp_circle(centers[1], radii[1]), hyp_circle(centers[2], radii[2]))
            {
                return Drawn { value: [a, b, c], resamples };
            }
        }
        resamples += 1;
    }
}

/// A cycle with two marked points on it. Two draws in three are hyperbolic
/// circles; the rest pass through three random points and may be of any
/// class.
pub fn random_chord<R: Rng + ?Sized>(rng: &mut R) -> Drawn<(GeneralizedCycle, DiskPoint, DiskPoint)> {
    let mut resamples = 0;
    loop {
        let drawn = if rng.random_range(0..3) < 2 {
            let center = random_point(rng, 0.5);
            let radius = rng.random_range(0.1..1.5);
            hyp_circle(center, radius).ok().and_then(|c| {
                let pts = c.sample(64);
                let i = rng.random_range(0..64);
                let j = (i + rng.random_range(4..60)) % 64;
                Some((c, DiskPoint::new(pts[i]).ok()?, DiskPoint::new(pts[j]).ok()?))
            })
        } else {
            let [p, q, r] = [(); 3].map(|_| random_point(rng, 0.8));
            cycle_through(p, q, r).ok().map(|c| (c, p, q))
        };
        match drawn {
            Some((c, a, b)) if hyp_distance(a, b) > 0.05 => return Drawn { value: (c, a, b), resamples },
            _ => resamples += 1,
        }
    }
}

/// Base `a, b` and apex `x0` for the constant-area locus; neither base
/// point sits near the center, where its absolute inverse runs off.
pub fn random_lexell<R: Rng + ?Sized>(rng: &mut R) -> Drawn<[DiskPoint; 3]> {
    let mut resamples = 0;
    loop {
        let [a, b, x] = [(); 3].map(|_| random_point(rng, 0.7));
        if a.radius() > 0.05
            && b.radius() > 0.05
            && Triangle::new(a, b, x).is_ok_and(|t| t.angles().iter().all(|v| v.abs() > 0.05))
        {
            return Drawn { value: [a, b, x], resamples };
        }
        resamples += 1;
    }
}

/// Two distinct hyperbolic circles, intersecting or not.
pub fn random_circle_pair<R: Rng + ?Sized>(rng: &mut R) -> Drawn<[GeneralizedCycle; 2]> {
    let mut resamples = 0;
    loop {
        let mut one = || hyp_circle(random_point(rng, 0.6), rng.random_range(0.05..1.2));
        if let (Ok(a), Ok(b)) = (one(), one()) {
            if a.coeff_distance(&b) > 1e-6 {
                return Drawn { value: [a, b], resamples };
            }
        }
        resamples += 1;
    }
}

/// A convex quadrilateral `ABCD` (vertices in cyclic order).
pub fn random_convex_quad<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> Drawn<[DiskPoint; 4]> {
    let mut resamples = 0;
    loop {
        let base = rng.random_range(0.0..TAU);
        let mut cuts = [(); 4].map(|_| rng.random_range(0.0..TAU));
        cuts.sort_by(f64::total_cmp);
        let quad = cuts.map(|phi| {
            let r = max_radius * rng.random_range(0.5..1.0);
            DiskPoint::from_polar(r, base + phi).expect("radius below one")
        });
        if crate::theorems::is_convex(&quad) {
            return Drawn { value: quad, resamples };
        }
        resamples += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = instance_rng(42, 3).random();
        let b: u64 = instance_rng(42, 3).random();
        let c: u64 = instance_rng(42, 4).random();
        let d: u64 = instance_rng(43, 3).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn triangles_respect_the_box() {
        let b = TriangleBox::default();
        let mut rng = instance_rng(1, 0);
        for _ in 0..200 {
            let t = random_triangle(&mut rng, &b).value;
            assert!(t.vertices().iter().all(|v| v.radius() <= 0.7));
            assert!(t.angles().iter().all(|a| a.abs() >= 0.15));
        }
    }
}
