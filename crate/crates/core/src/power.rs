//! Pseudolength, power of a point, radical axes, and the disk homothety and
//! inversion centered at an arbitrary point.
//!
//! All of these are defined by moving the center point to the origin with
//! [`isometry_to_origin`], doing the Euclidean operation there, and moving
//! back.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cycle::{
    classify, diameter, geodesic_through, hyp_center_radius, interior_intersection, transform_cycle, CycleClass,
    GeneralizedCycle,
};
use crate::disk::{hyp_distance, isometry_to_origin, pseudo_norm, DiskIsometry, DiskPoint, BOUNDARY_GUARD};
use crate::error::{GeomError, Result};
use crate::generate::random_isometry;

/// Euclidean length of `ab` after moving `a` to the origin; `tanh(d/2)`.
pub fn pseudolength(a: DiskPoint, b: DiskPoint) -> f64 {
    pseudo_norm(a.z(), b.z())
}

/// Signed power of `p`: negative inside the cycle, zero on it.
///
/// Equals the Euclidean power of the origin once `p` is moved there.
pub fn power_of_point(p: DiskPoint, c: &GeneralizedCycle) -> Result<f64> {
    let moved = transform_cycle(&isometry_to_origin(p)?, c);
    let (a, _, c0) = moved.coeffs();
    if a.abs() < 1e-14 {
        return Err(GeomError::UnboundedPower);
    }
    Ok(c0 / a)
}

/// Geodesic of points with equal power with respect to both cycles.
///
/// Clearing denominators in `power(x, c1) = power(x, c2)` leaves the factor
/// `|x|² − 1` times a cycle with `A = C`, which is orthogonal to the
/// absolute.
pub fn radical_axis(c1: &GeneralizedCycle, c2: &GeneralizedCycle) -> Result<GeneralizedCycle> {
    let (a1, b1, k1) = c1.coeffs();
    let (a2, b2, k2) = c2.coeffs();
    let a = a1 * k2 - a2 * k1;
    let b = b2 * (a1 - k1) - b1 * (a2 - k2);
    if a.abs().max(b.norm()) < 1e-13 || b.norm() <= a.abs() {
        return Err(GeomError::ConcentricCycles);
    }
    GeneralizedCycle::from_coeffs(a, b, a).map_err(|_| GeomError::ConcentricCycles)
}

/// Common point of the three radical axes, with the spread of the three
/// powers there as residual.
pub fn radical_center(c1: &GeneralizedCycle, c2: &GeneralizedCycle, c3: &GeneralizedCycle) -> Result<(DiskPoint, f64)> {
    let axes = [radical_axis(c1, c2), radical_axis(c2, c3), radical_axis(c3, c1)];
    let found: Vec<_> = axes.iter().filter_map(|a| a.as_ref().ok()).collect();
    let mut point = None;
    'outer: for i in 0..found.len() {
        for j in i + 1..found.len() {
            if let Ok(p) = interior_intersection(found[i], found[j]) {
                point = Some(p);
                break 'outer;
            }
        }
    }
    let p = point.ok_or(GeomError::NoInteriorCenter)?;
    let powers = [power_of_point(p, c1)?, power_of_point(p, c2)?, power_of_point(p, c3)?];
    let max = powers.iter().cloned().fold(f64::MIN, f64::max);
    let min = powers.iter().cloned().fold(f64::MAX, f64::min);
    Ok((p, max - min))
}

fn inside(w: Complex64) -> Result<Complex64> {
    if w.norm() >= 1.0 - BOUNDARY_GUARD {
        Err(GeomError::ImageOutsideDisk)
    } else {
        Ok(w)
    }
}

/// Homothety with signed ratio `k`; a negative ratio uses the opposite ray.
pub fn homothety(center: DiskPoint, k: f64, p: DiskPoint) -> Result<DiskPoint> {
    let t = isometry_to_origin(center)?;
    let w = inside(t.apply_z(p.z()) * k)?;
    DiskPoint::new(t.invert().apply_z(w))
}

/// Inversion with `pseudolength(center, p) · pseudolength(center, p') = r2`,
/// `p'` on the ray from `center` through `p`.
pub fn inversion(center: DiskPoint, r2: f64, p: DiskPoint) -> Result<DiskPoint> {
    let t = isometry_to_origin(center)?;
    let w = t.apply_z(p.z());
    if w.norm() < 1e-15 {
        return Err(GeomError::CenterInput);
    }
    let w = inside(w * (r2 / w.norm_sqr()))?;
    DiskPoint::new(t.invert().apply_z(w))
}

fn in_frame(
    center: DiskPoint,
    c: &GeneralizedCycle,
    f: impl Fn(f64, Complex64, f64) -> (f64, Complex64, f64),
) -> Result<GeneralizedCycle> {
    let t = isometry_to_origin(center)?;
    let (a, b, k) = transform_cycle(&t, c).coeffs();
    let (a, b, k) = f(a, b, k);
    Ok(transform_cycle(&t.invert(), &GeneralizedCycle::from_coeffs(a, b, k)?))
}

/// Image of a cycle under [`homothety`].
pub fn homothety_cycle(center: DiskPoint, k: f64, c: &GeneralizedCycle) -> Result<GeneralizedCycle> {
    in_frame(center, c, |a, b, c| (a, b * k, c * k * k))
}

/// Image of a cycle under [`inversion`].
pub fn inversion_cycle(center: DiskPoint, r2: f64, c: &GeneralizedCycle) -> Result<GeneralizedCycle> {
    in_frame(center, c, |a, b, c| (c, b * r2, a * r2 * r2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomothetySign {
    Positive,
    Negative,
}

impl HomothetySign {
    fn factor(self) -> f64 {
        match self {
            HomothetySign::Positive => 1.0,
            HomothetySign::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomotheticCenter {
    pub point: DiskPoint,
    /// Largest mismatch of the crossing-angle cosines over the test lines.
    pub angle_spread: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomotheticCenters {
    pub positive: Option<HomotheticCenter>,
    pub negative: Option<HomotheticCenter>,
}

impl HomotheticCenters {
    pub fn get(&self, sign: HomothetySign) -> Option<HomotheticCenter> {
        match sign {
            HomothetySign::Positive => self.positive,
            HomothetySign::Negative => self.negative,
        }
    }
}

const CENTER_TRIES: usize = 8;
const ANGLE_LINES: usize = 8;

enum Attempt {
    Found(Option<DiskPoint>),
    Degenerate,
}

/// One attempt of the two-line construction, in the current frame.
fn construct_center(
    c1: &GeneralizedCycle,
    c2: &GeneralizedCycle,
    centers_line: &GeneralizedCycle,
    sign: HomothetySign,
) -> Result<Attempt> {
    let (k1, r1) = c1.euclidean_circle().ok_or(GeomError::NotACircle)?;
    let (k2, r2) = c2.euclidean_circle().ok_or(GeomError::NotACircle)?;
    let euclid = match sign {
        HomothetySign::Positive => {
            if (r2 - r1).abs() < 1e-9 * r1.max(r2) {
                return Ok(Attempt::Degenerate);
            }
            (k1 * r2 - k2 * r1) / (r2 - r1)
        }
        HomothetySign::Negative => (k1 * r2 + k2 * r1) / (r1 + r2),
    };
    if euclid.norm() < 1e-12 {
        // The Euclidean homothety about the origin is already a hyperbolic one.
        return Ok(Attempt::Found(Some(DiskPoint::ORIGIN)));
    }
    let through = diameter(euclid / euclid.norm())?;
    if through.coeff_distance(centers_line) < 1e-9 || through.coeff_distance(&centers_line.flipped()) < 1e-9 {
        return Ok(Attempt::Degenerate);
    }
    Ok(Attempt::Found(interior_intersection(&through, centers_line).ok()))
}

/// Largest `|I(g, c1) ∓ I(g, c2)|` over geodesics `g` through `p`.
pub fn equal_angle_spread<R: Rng + ?Sized>(
    p: DiskPoint,
    c1: &GeneralizedCycle,
    c2: &GeneralizedCycle,
    sign: HomothetySign,
    rng: &mut R,
) -> Result<f64> {
    let back = isometry_to_origin(p)?.invert();
    let mut spread: f64 = 0.0;
    for _ in 0..ANGLE_LINES {
        let dir = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::PI));
        let g = transform_cycle(&back, &diameter(dir)?);
        let gap = g.inversive_distance(c1) - sign.factor() * g.inversive_distance(c2);
        spread = spread.max(gap.abs());
    }
    Ok(spread)
}

/// Positive and negative homothetic centers of two hyperbolic circles.
///
/// The center lies on the geodesic through the two hyperbolic centers and
/// on the diameter through the Euclidean homothety center of the model
/// circles. When those two lines coincide the pair is moved by a random
/// motion drawn from `rng` and the construction repeated.
pub fn homothetic_centers<R: Rng + ?Sized>(
    c1: &GeneralizedCycle,
    c2: &GeneralizedCycle,
    rng: &mut R,
) -> Result<HomotheticCenters> {
    for c in [c1, c2] {
        if classify(c)? != CycleClass::HypCircle {
            return Err(GeomError::NotACircle);
        }
    }
    let (h1, _) = hyp_center_radius(c1)?;
    let (h2, _) = hyp_center_radius(c2)?;
    if hyp_distance(h1, h2) < 1e-12 {
        if c1.coeff_distance(c2) < 1e-12 {
            return Err(GeomError::IdenticalCycles);
        }
        let both = Some(HomotheticCenter { point: h1, angle_spread: 0.0 });
        return Ok(HomotheticCenters { positive: both, negative: both });
    }

    let mut out = HomotheticCenters { positive: None, negative: None };
    for sign in [HomothetySign::Positive, HomothetySign::Negative] {
        let mut frame = DiskIsometry::IDENTITY;
        let mut found = None;
        for _ in 0..CENTER_TRIES {
            let (m1, m2) = (transform_cycle(&frame, c1), transform_cycle(&frame, c2));
            let line = geodesic_through(frame.apply(h1)?, frame.apply(h2)?)?;
            match construct_center(&m1, &m2, &line, sign)? {
                Attempt::Found(p) => {
                    found = Some(p);
                    break;
                }
                Attempt::Degenerate => frame = random_isometry(rng, false),
            }
        }
        let point = match found {
            Some(Some(p)) => frame.invert().apply(p)?,
            Some(None) => continue,
            None => return Err(GeomError::DegenerateConfiguration("homothetic center stays on a common diameter")),
        };
        let angle_spread = equal_angle_spread(point, c1, c2, sign, rng)?;
        let center = Some(HomotheticCenter { point, angle_spread });
        match sign {
            HomothetySign::Positive => out.positive = center,
            HomothetySign::Negative => out.negative = center,
        }
    }
    Ok(out)
}

/// Pattern of signs for the centers `P1` (of `ω2, ω3`), `P2` (of `ω3, ω1`)
/// and `P3` (of `ω1, ω2`).
pub type SignPattern = [HomothetySign; 3];

pub fn valid_pattern(signs: &SignPattern) -> bool {
    let negatives = signs.iter().filter(|s| **s == HomothetySign::Negative).count();
    negatives == 0 || negatives == 2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MongeLine {
    pub line: GeneralizedCycle,
    pub centers: [DiskPoint; 3],
    /// Hyperbolic distance of `P3` from the geodesic `P1 P2`.
    pub residual: f64,
}

pub fn monge_line<R: Rng + ?Sized>(
    circles: &[GeneralizedCycle; 3],
    signs: SignPattern,
    rng: &mut R,
) -> Result<MongeLine> {
    if !valid_pattern(&signs) {
        return Err(GeomError::InvalidSignPattern);
    }
    let mut centers = [DiskPoint::ORIGIN; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let pair = homothetic_centers(&circles[j], &circles[k], rng)?;
        centers[i] = pair.get(signs[i]).ok_or(GeomError::MissingCenter)?.point;
    }
    let line = geodesic_through(centers[0], centers[1])?;
    let residual = crate::cycle::distance_to_geodesic(centers[2], &line)?;
    Ok(MongeLine { line, centers, residual })
}
