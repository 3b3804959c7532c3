//! Generalized circles of the model plane.
//!
//! A cycle is the locus `A|z|² + 2·Re(conj(B)·z) + C = 0`. One
//! representation covers geodesics, hyperbolic circles, horocycles and
//! equidistants; which one a cycle is depends only on how it meets the
//! unit circle.
//!
//! Angles and tangency are read off the inversive product
//! `⟨c₁, c₂⟩ = (A₁C₂ + A₂C₁)/2 − Re(B₁·conj(B₂))`, which every Möbius map
//! of the disk preserves.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disk::{isometry_to_origin, AbsolutePoint, DiskIsometry, DiskPoint};
use crate::error::{GeomError, Result};

/// Anything with a model-plane coordinate.
pub trait ModelPoint: Copy {
    fn coord(self) -> Complex64;
}

impl ModelPoint for Complex64 {
    fn coord(self) -> Complex64 {
        self
    }
}

impl ModelPoint for DiskPoint {
    fn coord(self) -> Complex64 {
        self.z()
    }
}

impl ModelPoint for AbsolutePoint {
    fn coord(self) -> Complex64 {
        self.z()
    }
}

const DEGENERATE_EPS: f64 = 1e-14;
const SIGN_EPS: f64 = 1e-13;
const COINCIDENT_EPS: f64 = 1e-10;
const TANGENT_EPS: f64 = 1e-12;

/// Distance below which a class-boundary value snaps to the boundary class.
pub const CLASS_SNAP: f64 = 1e-12;
/// Distance to a class boundary below which classification is refused.
pub const CLASS_AMBIGUITY: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleClass {
    Geodesic,
    HypCircle,
    Horocycle,
    Equidistant,
}

/// Normalized cycle coefficients: `max(|A|, |B|, |C|) = 1` and the first
/// non-negligible of `A, Re B, Im B, C` is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedCycle {
    a: f64,
    b: Complex64,
    c: f64,
}

impl GeneralizedCycle {
    pub fn from_coeffs(a: f64, b: Complex64, c: f64) -> Result<Self> {
        let scale = a.abs().max(b.norm()).max(c.abs());
        if !scale.is_finite() || scale == 0.0 {
            return Err(GeomError::DegenerateCycle);
        }
        let (mut a, mut b, mut c) = (a / scale, b / scale, c / scale);
        let lead = [a, b.re, b.im, c].into_iter().find(|v| v.abs() > SIGN_EPS).unwrap_or(a);
        if lead < 0.0 {
            a = -a;
            b = -b;
            c = -c;
        }
        let cycle = GeneralizedCycle { a, b, c };
        if cycle.discriminant() <= DEGENERATE_EPS {
            return Err(GeomError::DegenerateCycle);
        }
        Ok(cycle)
    }

    /// Takes already normalized coefficients verbatim, so stored cycles
    /// read back bit for bit; anything else goes through [`Self::from_coeffs`].
    pub fn from_normalized(a: f64, b: Complex64, c: f64) -> Result<Self> {
        let scale = a.abs().max(b.norm()).max(c.abs());
        let lead = [a, b.re, b.im, c].into_iter().find(|v| v.abs() > SIGN_EPS).unwrap_or(a);
        if (scale - 1.0).abs() > 1e-15 || lead < 0.0 {
            return Self::from_coeffs(a, b, c);
        }
        let cycle = GeneralizedCycle { a, b, c };
        if cycle.discriminant() <= DEGENERATE_EPS {
            return Err(GeomError::DegenerateCycle);
        }
        Ok(cycle)
    }

    /// Euclidean circle with the given center and radius.
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        Self::from_coeffs(1.0, -center, center.norm_sqr() - radius * radius)
    }

    /// The unit circle, i.e. the absolute.
    pub fn absolute() -> Self {
        GeneralizedCycle { a: 1.0, b: Complex64::new(0.0, 0.0), c: -1.0 }
    }

    pub fn coeffs(&self) -> (f64, Complex64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn is_line(&self) -> bool {
        self.a == 0.0
    }

    /// `|B|² − AC`, positive for a real locus.
    pub fn discriminant(&self) -> f64 {
        self.b.norm_sqr() - self.a * self.c
    }

    /// The defining polynomial at `z`.
    pub fn eval(&self, z: Complex64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * (self.b.conj() * z).re + self.c
    }

    /// Euclidean distance from `z` to the locus.
    pub fn distance(&self, z: Complex64) -> f64 {
        let grad = (self.b + z * self.a).norm() + self.discriminant().sqrt();
        self.eval(z).abs() / grad
    }

    /// Euclidean center and radius, when the cycle is a proper circle.
    pub fn euclidean_circle(&self) -> Option<(Complex64, f64)> {
        if self.a == 0.0 {
            return None;
        }
        let center = -self.b / self.a;
        let radius = self.discriminant().sqrt() / self.a.abs();
        (center.norm().is_finite() && radius.is_finite()).then_some((center, radius))
    }

    /// Max-abs difference of normalized coefficient vectors.
    pub fn coeff_distance(&self, other: &GeneralizedCycle) -> f64 {
        (self.a - other.a).abs().max((self.b - other.b).norm()).max((self.c - other.c).abs())
    }

    pub fn contains<P: ModelPoint>(&self, p: P, tol: f64) -> bool {
        self.distance(p.coord()) <= tol
    }

    /// `n` points evenly spread over the locus (a line is sampled over
    /// the stretch that can meet the unit disk).
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        match self.euclidean_circle() {
            Some((center, radius)) => (0..n)
                .map(|k| {
                    let phi = std::f64::consts::TAU * (k as f64 + 0.5) / n as f64;
                    center + Complex64::from_polar(radius, phi)
                })
                .collect(),
            None => {
                let (foot, dir) = self.line_frame();
                (0..n).map(|k| foot + dir * (-1.0 + 2.0 * (k as f64 + 0.5) / n as f64)).collect()
            }
        }
    }

    /// For a line: foot of the perpendicular from the origin and unit direction.
    fn line_frame(&self) -> (Complex64, Complex64) {
        let bn = self.b.norm();
        let foot = -self.b * (self.c / (2.0 * bn * bn));
        (foot, Complex64::i() * self.b / bn)
    }

    pub fn inversive_product(&self, other: &GeneralizedCycle) -> f64 {
        0.5 * (self.a * other.c + other.a * self.c) - (self.b * other.b.conj()).re
    }

    /// Normalized inversive product: the cosine of the crossing angle for
    /// meeting cycles, ±1 at tangency, |·| > 1 for disjoint ones.
    pub fn inversive_distance(&self, other: &GeneralizedCycle) -> f64 {
        self.inversive_product(other) / (self.discriminant() * other.discriminant()).sqrt()
    }

    /// Reverses the orientation encoded by the coefficient signs.
    pub(crate) fn flipped(&self) -> GeneralizedCycle {
        GeneralizedCycle { a: -self.a, b: -self.b, c: -self.c }
    }

    pub(crate) fn raw(a: f64, b: Complex64, c: f64) -> GeneralizedCycle {
        GeneralizedCycle { a, b, c }
    }
}

/// Cycle through three model points (disk points or exterior points).
pub fn cycle_through<P, Q, R>(p: P, q: Q, r: R) -> Result<GeneralizedCycle>
where
    P: ModelPoint,
    Q: ModelPoint,
    R: ModelPoint,
{
    let (p, q, r) = (p.coord(), q.coord(), r.coord());
    if (p - q).norm() < COINCIDENT_EPS || (q - r).norm() < COINCIDENT_EPS || (r - p).norm() < COINCIDENT_EPS {
        return Err(GeomError::CoincidentPoints);
    }
    // Cycle through 0, u, v, then translate by p.
    let u = q - p;
    let v = r - p;
    let (uu, vv) = (u.norm_sqr(), v.norm_sqr());
    let a = 2.0 * (u.conj() * v).im;
    let b0 = Complex64::new(vv * u.im - uu * v.im, uu * v.re - vv * u.re);
    let b = b0 - p * a;
    let c = a * p.norm_sqr() - 2.0 * (b0.conj() * p).re;
    GeneralizedCycle::from_coeffs(a, b, c)
}

/// Diameter of the disk in direction `dir`.
pub fn diameter(dir: Complex64) -> Result<GeneralizedCycle> {
    if dir.norm() == 0.0 {
        return Err(GeomError::CoincidentPoints);
    }
    GeneralizedCycle::from_coeffs(0.0, Complex64::i() * dir / dir.norm(), 0.0)
}

/// Hyperbolic line through two disk points.
pub fn geodesic_through(p: DiskPoint, q: DiskPoint) -> Result<GeneralizedCycle> {
    let t = isometry_to_origin(p)?;
    let w = t.apply_z(q.z());
    if w.norm() < 1e-15 {
        return Err(GeomError::CoincidentPoints);
    }
    Ok(transform_cycle(&t.invert(), &diameter(w)?))
}

/// Hyperbolic circle from its center and hyperbolic radius.
pub fn hyp_circle(center: DiskPoint, radius: f64) -> Result<GeneralizedCycle> {
    let at_origin = GeneralizedCycle::circle(Complex64::new(0.0, 0.0), (radius / 2.0).tanh())?;
    Ok(transform_cycle(&isometry_to_origin(center)?.invert(), &at_origin))
}

pub fn classify(c: &GeneralizedCycle) -> Result<CycleClass> {
    classify_with(c, CLASS_SNAP, CLASS_AMBIGUITY)
}

/// Classification against the absolute with explicit snap and ambiguity bands.
pub fn classify_with(c: &GeneralizedCycle, snap: f64, ambiguity: f64) -> Result<CycleClass> {
    let root = c.discriminant().sqrt();
    let check = |margin: f64| -> Result<()> {
        if margin > snap && margin <= ambiguity {
            Err(GeomError::AmbiguousClass { margin })
        } else {
            Ok(())
        }
    };
    if c.is_line() {
        // Distance of the line from the center.
        let d = c.c.abs() / (2.0 * root);
        check(d)?;
        check((d - 1.0).abs())?;
        return if d <= snap {
            Ok(CycleClass::Geodesic)
        } else if d < 1.0 {
            Ok(CycleClass::Equidistant)
        } else {
            Err(GeomError::ExteriorCycle)
        };
    }
    let inv = c.a.signum() * (c.c - c.a) / (2.0 * root);
    check(inv.abs())?;
    check((inv + 1.0).abs())?;
    check((inv - 1.0).abs())?;
    if inv.abs() <= snap {
        Ok(CycleClass::Geodesic)
    } else if (inv + 1.0).abs() <= snap {
        Ok(CycleClass::Horocycle)
    } else if inv > -1.0 && inv < 1.0 {
        Ok(CycleClass::Equidistant)
    } else if inv < -1.0 && root / c.a.abs() < 1.0 {
        Ok(CycleClass::HypCircle)
    } else {
        Err(GeomError::ExteriorCycle)
    }
}

/// Hyperbolic center and radius of a cycle that is a hyperbolic circle.
pub fn hyp_center_radius(c: &GeneralizedCycle) -> Result<(DiskPoint, f64)> {
    if classify(c)? != CycleClass::HypCircle {
        return Err(GeomError::NotACircle);
    }
    let (center, radius) = c.euclidean_circle().ok_or(GeomError::NotACircle)?;
    let dist = center.norm();
    let dir = if dist < 1e-15 { Complex64::new(1.0, 0.0) } else { center / dist };
    // Diameter endpoints along the ray through the Euclidean center, as signed radii.
    let (near, far) = ((dist - radius).atanh(), (dist + radius).atanh());
    let hyp_center = DiskPoint::new(dir * ((near + far) / 2.0).tanh())?;
    Ok((hyp_center, far - near))
}

/// Points common to two cycles (0, 1 at tangency, or 2), in model coordinates.
pub fn intersect(c1: &GeneralizedCycle, c2: &GeneralizedCycle) -> Result<Vec<Complex64>> {
    if c1.coeff_distance(c2) < 1e-12 || c1.coeff_distance(&c2.flipped()) < 1e-12 {
        return Err(GeomError::IdenticalCycles);
    }
    if c1.is_line() && c2.is_line() {
        let (b1, b2) = (c1.b, c2.b);
        let det = b1.re * b2.im - b1.im * b2.re;
        if det.abs() < 1e-15 {
            return Ok(Vec::new());
        }
        let (r1, r2) = (-c1.c / 2.0, -c2.c / 2.0);
        let x = (r1 * b2.im - r2 * b1.im) / det;
        let y = (b1.re * r2 - b2.re * r1) / det;
        return Ok(vec![Complex64::new(x, y)]);
    }
    // Eliminate |z|² to get the common (radical) line, then cut the
    // better-conditioned cycle with it.
    let line_b = c1.b * c2.a - c2.b * c1.a;
    let line_c = c1.c * c2.a - c2.c * c1.a;
    let line_scale = c1.a.abs().max(c2.a.abs()) * c1.b.norm().max(c2.b.norm());
    if line_b.norm() <= 1e-15 * line_scale {
        return Ok(Vec::new());
    }
    let line = GeneralizedCycle::raw(0.0, line_b, line_c);
    let (foot, dir) = line.line_frame();
    let cyc = if c1.a.abs() >= c2.a.abs() { c1 } else { c2 };
    let qa = cyc.a;
    let qb = (dir.conj() * (foot * cyc.a + cyc.b)).re;
    let qc = cyc.eval(foot);
    let disc = qb * qb - qa * qc;
    let scale = qb * qb + (qa * qc).abs();
    if scale == 0.0 {
        return Ok(vec![foot]);
    }
    let rel = disc / scale;
    if rel < -TANGENT_EPS {
        Ok(Vec::new())
    } else if rel <= TANGENT_EPS {
        Ok(vec![foot + dir * (-qb / qa)])
    } else {
        let q = -(qb + qb.signum() * disc.sqrt());
        let (t1, t2) = if q == 0.0 { (0.0, 0.0) } else { (q / qa, qc / q) };
        Ok(vec![foot + dir * t1, foot + dir * t2])
    }
}

/// The single common point of two cycles that lies inside the disk.
pub fn interior_intersection(c1: &GeneralizedCycle, c2: &GeneralizedCycle) -> Result<DiskPoint> {
    intersect(c1, c2)?
        .into_iter()
        .filter_map(|z| DiskPoint::new(z).ok())
        .min_by(|p, q| p.radius().total_cmp(&q.radius()))
        .ok_or(GeomError::DivergentCevians)
}

/// Zero exactly when the two cycles are tangent; `|1 − I²|` with `I` the
/// inversive distance, i.e. the normalized discriminant of their
/// intersection problem. Invariant under every Möbius map and rescaling.
pub fn tangency_residual(c1: &GeneralizedCycle, c2: &GeneralizedCycle) -> f64 {
    let i = c1.inversive_distance(c2);
    (1.0 - i * i).abs()
}

/// Image of a cycle under a disk motion.
pub fn transform_cycle(t: &DiskIsometry, c: &GeneralizedCycle) -> GeneralizedCycle {
    let b = if t.reflect { c.b.conj() } else { c.b };
    let [p, q, r, s] = t.mobius();
    // Inverse Möbius matrix N = [[s, −q], [−r, p]]; image form is N* H N.
    let n = [[s, -q], [-r, p]];
    let h = [[Complex64::new(c.a, 0.0), b], [b.conj(), Complex64::new(c.c, 0.0)]];
    let mut hn = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            hn[i][j] = h[i][0] * n[0][j] + h[i][1] * n[1][j];
        }
    }
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = n[0][i].conj() * hn[0][j] + n[1][i].conj() * hn[1][j];
        }
    }
    GeneralizedCycle::from_coeffs(out[0][0].re, out[0][1], out[1][1].re)
        .expect("disk motions map non-degenerate cycles to non-degenerate cycles")
}

/// Hyperbolic distance from `p` to a geodesic.
pub fn distance_to_geodesic(p: DiskPoint, g: &GeneralizedCycle) -> Result<f64> {
    let moved = transform_cycle(&isometry_to_origin(p)?, g);
    let (_, b, c) = moved.coeffs();
    let euclid = c.abs() / (b.norm() + moved.discriminant().sqrt());
    Ok(2.0 * euclid.min(1.0 - 1e-16).atanh())
}

/// Midpoint of the closest-approach pair between two near-tangent circles.
pub fn contact_point(c1: &GeneralizedCycle, c2: &GeneralizedCycle) -> Option<Complex64> {
    let (k1, r1) = c1.euclidean_circle()?;
    let (k2, r2) = c2.euclidean_circle()?;
    let sep = (k2 - k1).norm();
    if sep < 1e-14 {
        return None;
    }
    let u = (k2 - k1) / sep;
    let mut best: Option<(f64, Complex64)> = None;
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let p1 = k1 + u * (s1 * r1);
            let p2 = k2 + u * (s2 * r2);
            let d = (p1 - p2).norm();
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, (p1 + p2) / 2.0));
            }
        }
    }
    best.map(|(_, z)| z)
}
