//! Points, motions and metric quantities of the Poincaré disk.
//!
//! Everything here works in the unit disk with the curvature −1 metric
//! `2|dz| / (1 − |z|²)`. Angles at a vertex are measured after moving the
//! vertex to the origin, where geodesics are Euclidean rays.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Default width of the guard band kept between metric points and the absolute.
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// Pseudolength below which two points are treated as the same ray endpoint.
const ANGLE_EPS: f64 = 1e-15;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex64 { re: 0.0, im: 0.0 });

    pub fn new(z: Complex64) -> Result<Self> {
        Self::with_guard(z, BOUNDARY_GUARD)
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn with_guard(z: Complex64, guard: f64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() && z.norm() < 1.0 - guard {
            Ok(DiskPoint(z))
        } else {
            Err(GeomError::BoundaryPoint { re: z.re, im: z.im })
        }
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, theta))
    }

    #[inline]
    pub fn z(self) -> Complex64 {
        self.0
    }

    /// Euclidean distance to the disk center.
    #[inline]
    pub fn radius(self) -> f64 {
        self.0.norm()
    }
}

/// A point of the model plane that is allowed to sit on or beyond the absolute.
///
/// Only used to pin down cycles (for example the inverses `A*`, `B*`);
/// there is deliberately no metric API on this type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsolutePoint(Complex64);

impl AbsolutePoint {
    pub fn new(z: Complex64) -> Self {
        AbsolutePoint(z)
    }

    #[inline]
    pub fn z(self) -> Complex64 {
        self.0
    }
}

impl From<DiskPoint> for AbsolutePoint {
    fn from(p: DiskPoint) -> Self {
        AbsolutePoint(p.0)
    }
}

/// Motion of the disk: `z ↦ e^{iθ} (w − a) / (1 − ā w)` with `w = z̄` when
/// `reflect` is set and `w = z` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskIsometry {
    pub a: Complex64,
    pub theta: f64,
    pub reflect: bool,
}

/// SU(1,1) matrix `[[α, β], [β̄, ᾱ]]` acting by `w ↦ (αw + β) / (β̄w + ᾱ)`.
#[derive(Debug, Clone, Copy)]
struct Su11 {
    alpha: Complex64,
    beta: Complex64,
}

impl Su11 {
    fn mul(self, o: Su11) -> Su11 {
        Su11 {
            alpha: self.alpha * o.alpha + self.beta * o.beta.conj(),
            beta: self.alpha * o.beta + self.beta * o.alpha.conj(),
        }
    }

    fn conj(self) -> Su11 {
        Su11 { alpha: self.alpha.conj(), beta: self.beta.conj() }
    }

    fn inverse(self) -> Su11 {
        Su11 { alpha: self.alpha.conj(), beta: -self.beta }
    }
}

impl DiskIsometry {
    pub const IDENTITY: DiskIsometry = DiskIsometry { a: Complex64 { re: 0.0, im: 0.0 }, theta: 0.0, reflect: false };

    pub fn new(a: Complex64, theta: f64, reflect: bool) -> Result<Self> {
        DiskPoint::new(a)?;
        Ok(DiskIsometry { a, theta, reflect })
    }

    /// Rotation about the disk center.
    pub fn rotation(theta: f64) -> Self {
        DiskIsometry { a: Complex64::new(0.0, 0.0), theta, reflect: false }
    }

    /// Reflection in the real diameter.
    pub fn conjugation() -> Self {
        DiskIsometry { a: Complex64::new(0.0, 0.0), theta: 0.0, reflect: true }
    }

    pub fn is_orientation_preserving(&self) -> bool {
        !self.reflect
    }

    fn matrix(&self) -> Su11 {
        let s = (1.0 - self.a.norm_sqr()).sqrt();
        let half = Complex64::from_polar(1.0, self.theta / 2.0);
        Su11 { alpha: half / s, beta: -half * self.a / s }
    }

    fn from_matrix(m: Su11, reflect: bool) -> Self {
        let a = -m.beta / m.alpha;
        let theta = (m.alpha / m.alpha.conj()).arg();
        DiskIsometry { a, theta, reflect }
    }

    /// Applies the map to an arbitrary model coordinate (possibly outside the disk).
    pub fn apply_z(&self, z: Complex64) -> Complex64 {
        let w = if self.reflect { z.conj() } else { z };
        let num = w - self.a;
        let den = Complex64::new(1.0, 0.0) - self.a.conj() * w;
        Complex64::from_polar(1.0, self.theta) * num / den
    }

    pub fn apply(&self, p: DiskPoint) -> Result<DiskPoint> {
        DiskPoint::new(self.apply_z(p.z()))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DiskIsometry) -> DiskIsometry {
        let m2 = if self.reflect { other.matrix().conj() } else { other.matrix() };
        DiskIsometry::from_matrix(self.matrix().mul(m2), self.reflect ^ other.reflect)
    }

    pub fn invert(&self) -> DiskIsometry {
        let inv = self.matrix().inverse();
        let inv = if self.reflect { inv.conj() } else { inv };
        DiskIsometry::from_matrix(inv, self.reflect)
    }

    /// Möbius coefficients `(p, q, r, s)` of the holomorphic part,
    /// `w ↦ (p w + q) / (r w + s)`, applied after the optional conjugation.
    pub(crate) fn mobius(&self) -> [Complex64; 4] {
        let m = self.matrix();
        [m.alpha, m.beta, m.beta.conj(), m.alpha.conj()]
    }
}

/// The canonical motion sending `p` to the disk center: a pure translation
/// with no rotation or reflection.
pub fn isometry_to_origin(p: DiskPoint) -> Result<DiskIsometry> {
    DiskIsometry::new(p.z(), 0.0, false)
}

/// Euclidean length of `q` after moving `p` to the center; equals
/// `tanh(d(p, q) / 2)`.
#[inline]
pub(crate) fn pseudo_norm(p: Complex64, q: Complex64) -> f64 {
    let num = (q - p).norm();
    let den = (Complex64::new(1.0, 0.0) - p.conj() * q).norm();
    num / den
}

pub fn hyp_distance(p: DiskPoint, q: DiskPoint) -> f64 {
    2.0 * pseudo_norm(p.z(), q.z()).atanh()
}

/// Point at hyperbolic distance `dist` from `from` along the geodesic towards `to`.
pub fn point_towards(from: DiskPoint, to: DiskPoint, dist: f64) -> Result<DiskPoint> {
    let t = isometry_to_origin(from)?;
    let w = t.apply_z(to.z());
    if w.norm() < ANGLE_EPS {
        return Err(GeomError::CoincidentPoints);
    }
    let image = w / w.norm() * (dist / 2.0).tanh();
    DiskPoint::new(t.invert().apply_z(image))
}

pub fn hyp_midpoint(p: DiskPoint, q: DiskPoint) -> Result<DiskPoint> {
    if p == q {
        return Ok(p);
    }
    point_towards(p, q, hyp_distance(p, q) / 2.0)
}

/// Signed angle in `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SignedAngle(f64);

impl SignedAngle {
    pub fn from_radians(value: f64) -> Self {
        SignedAngle(wrap_angle(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

pub(crate) fn wrap_angle(value: f64) -> f64 {
    let mut v = value % (2.0 * PI);
    if v > PI {
        v -= 2.0 * PI;
    } else if v <= -PI {
        v += 2.0 * PI;
    }
    v
}

/// Angle at `y` from the geodesic ray `yx` to the ray `yz`; positive when
/// the shorter rotation is counterclockwise.
pub fn signed_angle(x: DiskPoint, y: DiskPoint, z: DiskPoint) -> Result<SignedAngle> {
    let t = isometry_to_origin(y)?;
    let u = t.apply_z(x.z());
    let v = t.apply_z(z.z());
    if u.norm() < ANGLE_EPS || v.norm() < ANGLE_EPS {
        return Err(GeomError::DegenerateAngle);
    }
    Ok(SignedAngle::from_radians((v * u.conj()).arg()))
}

/// `∠XYZ − ∠ZXY − ∠YZX` with signed angles.
pub fn sigma(x: DiskPoint, y: DiskPoint, z: DiskPoint) -> Result<f64> {
    Ok(signed_angle(x, y, z)?.value() - signed_angle(z, x, y)?.value() - signed_angle(y, z, x)?.value())
}

/// Hyperbolic area of the geodesic triangle `abc` (angle defect).
pub fn area(a: DiskPoint, b: DiskPoint, c: DiskPoint) -> Result<f64> {
    let alpha = signed_angle(b, a, c)?.value().abs();
    let beta = signed_angle(a, b, c)?.value().abs();
    let gamma = signed_angle(a, c, b)?.value().abs();
    Ok((PI - (alpha + beta + gamma)).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

/// A non-degenerate triangle with vertices stored in clockwise order.
///
/// `orientation` records how the vertices were supplied; counterclockwise
/// input is normalized by swapping `b` and `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub a: DiskPoint,
    pub b: DiskPoint,
    pub c: DiskPoint,
    pub orientation: Orientation,
}

const MIN_VERTEX_SEPARATION: f64 = 1e-9;
const MIN_AREA: f64 = 1e-12;

impl Triangle {
    pub fn new(a: DiskPoint, b: DiskPoint, c: DiskPoint) -> Result<Self> {
        for (p, q) in [(a, b), (b, c), (c, a)] {
            if hyp_distance(p, q) <= MIN_VERTEX_SEPARATION {
                return Err(GeomError::DegenerateTriangle);
            }
        }
        let turn = signed_angle(a, b, c).map_err(|_| GeomError::DegenerateTriangle)?;
        if area(a, b, c).map_err(|_| GeomError::DegenerateTriangle)? <= MIN_AREA {
            return Err(GeomError::DegenerateTriangle);
        }
        if turn.value() > 0.0 {
            Ok(Triangle { a, b, c, orientation: Orientation::Clockwise })
        } else {
            Ok(Triangle { a, b: c, c: b, orientation: Orientation::Counterclockwise })
        }
    }

    pub fn vertices(&self) -> [DiskPoint; 3] {
        [self.a, self.b, self.c]
    }

    /// Interior angles at `a`, `b`, `c` (unsigned).
    pub fn angles(&self) -> [f64; 3] {
        let a = signed_angle(self.b, self.a, self.c).map(|s| s.value().abs()).unwrap_or(0.0);
        let b = signed_angle(self.a, self.b, self.c).map(|s| s.value().abs()).unwrap_or(0.0);
        let c = signed_angle(self.a, self.c, self.b).map(|s| s.value().abs()).unwrap_or(0.0);
        [a, b, c]
    }

    /// Applies a motion to all vertices and re-normalizes orientation.
    pub fn transformed(&self, t: &DiskIsometry) -> Result<Triangle> {
        Triangle::new(t.apply(self.a)?, t.apply(self.b)?, t.apply(self.c)?)
    }
}

pub fn triangle_area(t: &Triangle) -> f64 {
    let [a, b, c] = t.angles();
    PI - (a + b + c)
}

/// Inverse of `p` in the absolute: `z / |z|²`. Every geodesic through `p`
/// also passes through this point.
pub fn absolute_inverse(p: DiskPoint) -> Result<AbsolutePoint> {
    let z = p.z();
    if z.norm() < 1e-12 {
        return Err(GeomError::CenterHasNoInverse);
    }
    Ok(AbsolutePoint(z / z.norm_sqr()))
}
