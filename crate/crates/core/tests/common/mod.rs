#![allow(dead_code)]

use hypfeuer_core::cycle::GeneralizedCycle;
use hypfeuer_core::{DiskPoint, Triangle};
use num_complex::Complex64;

pub fn pt(re: f64, im: f64) -> DiskPoint {
    DiskPoint::from_parts(re, im).unwrap()
}

pub fn tri(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Triangle {
    Triangle::new(pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1)).unwrap()
}

pub fn scaled(t: &Triangle, s: f64) -> Triangle {
    let [a, b, c] = t.vertices().map(|v| DiskPoint::new(v.z() * s).unwrap());
    Triangle::new(a, b, c).unwrap()
}

/// Area of a hyperbolic triangle from the vertex coordinates alone.
pub fn area_by_arg(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let prod = (one - a * b.conj()) * (one - b * c.conj()) * (one - c * a.conj());
    2.0 * prod.arg().abs()
}

/// Foot of the Euclidean perpendicular from `p` to the line `qr`.
pub fn euclid_foot(p: Complex64, q: Complex64, r: Complex64) -> Complex64 {
    let d = r - q;
    let t = ((p - q) * d.conj()).re / d.norm_sqr();
    q + d * t
}

/// Homothetic center from the pencil spanned by the absolute and
/// `ĉ1 − sign·ĉ2` (`ĉ` = coefficients over `sqrt(Δ)`): its limit point
/// inside the disk.
pub fn pencil_center(c1: &GeneralizedCycle, c2: &GeneralizedCycle, sign: f64) -> Option<Complex64> {
    let (a1, b1, k1) = c1.coeffs();
    let (a2, b2, k2) = c2.coeffs();
    let (s1, s2) = (c1.discriminant().sqrt(), c2.discriminant().sqrt());
    let a = a1 / s1 - sign * a2 / s2;
    let b = b1 / s1 - b2 * (sign / s2);
    let k = k1 / s1 - sign * k2 / s2;
    // λ·(1, 0, −1) + (a, b, k) is a point circle.
    let disc = (a - k) * (a - k) - 4.0 * (b.norm_sqr() - a * k);
    if disc < 0.0 {
        return None;
    }
    [1.0, -1.0]
        .into_iter()
        .map(|s| (-(a - k) + s * disc.sqrt()) / 2.0)
        .map(|lambda| -b / (lambda + a))
        .find(|p| p.norm() < 1.0)
}

/// Coefficient distance up to the overall sign.
pub fn same_cycle(x: &GeneralizedCycle, y: &GeneralizedCycle) -> f64 {
    let (a1, b1, c1) = x.coeffs();
    let (a2, b2, c2) = y.coeffs();
    let dist = |s: f64| (a1 - s * a2).abs().max((b1 - b2 * s).norm()).max((c1 - s * c2).abs());
    dist(1.0).min(dist(-1.0))
}
