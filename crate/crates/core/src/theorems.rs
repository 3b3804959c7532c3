//! Residual checks for the theorem statements.
//!
//! Each check returns a [`TheoremCheck`]: a non-negative residual compared
//! against a tolerance, or a skip carrying the flag that prevented the
//! check from running. Checks never modify their inputs.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cevians::{concurrency_point, Flag, TriangleConfig, Vertex};
use crate::cycle::{
    classify, contact_point, cycle_through, distance_to_geodesic, geodesic_through, hyp_center_radius,
    interior_intersection, intersect, tangency_residual, transform_cycle, GeneralizedCycle,
};
use crate::disk::{
    absolute_inverse, area, hyp_distance, isometry_to_origin, point_towards, sigma, signed_angle, triangle_area,
    DiskPoint, Triangle,
};
use crate::error::{GeomError, Result};
use crate::power::{
    homothetic_centers, homothety_cycle, inversion_cycle, monge_line, power_of_point, pseudolength, radical_axis,
    radical_center, HomothetySign, SignPattern,
};
use crate::root::bisect;

pub const INSCRIBED_ANGLE: &str = "inscribed_angle";
pub const TRAPEZOID: &str = "trapezoid";
pub const LEXELL: &str = "lexell";
pub const RADICAL_AXIS: &str = "radical_axis";
pub const SIX_POINT: &str = "six_point";
pub const EULER_LINE: &str = "euler_line";
pub const EULER_MAPS: &str = "euler_maps";
pub const RATIOS: &str = "ratios";
pub const FEUERBACH: &str = "feuerbach";
pub const FEUERBACH_POINT: &str = "feuerbach_point";
pub const TANGENT_CEVIANS: &str = "tangent_cevians";
pub const CYCLIC_QUADS: &str = "cyclic_quads";
pub const RADICAL_CENTER: &str = "radical_center";
pub const SIGMA_HALF_AREA: &str = "sigma_half_area";
pub const PARALLEL_LEXELL: &str = "parallel_lexell";
pub const MONGE: &str = "monge";

/// Samples taken along arcs for the constancy checks.
const ARC_SAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Direct constructions: feet, ratios, memberships.
    pub construct: f64,
    /// Single theorem statements.
    pub theorem: f64,
    /// Tangency and concurrency, which sit at the end of long chains.
    pub chain: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { construct: 1e-10, theorem: 1e-9, chain: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Named points, numbers and cycles involved in a check.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Witness {
    pub points: BTreeMap<String, Complex64>,
    pub values: BTreeMap<String, f64>,
    pub cycles: BTreeMap<String, GeneralizedCycle>,
    pub notes: Vec<String>,
}

impl Witness {
    pub fn point(&mut self, name: impl Into<String>, p: DiskPoint) {
        self.points.insert(name.into(), p.z());
    }

    pub fn value(&mut self, name: impl Into<String>, v: f64) {
        self.values.insert(name.into(), v);
    }

    pub fn cycle(&mut self, name: impl Into<String>, c: GeneralizedCycle) {
        self.cycles.insert(name.into(), c);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    pub name: String,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    /// Set exactly when the check was skipped.
    pub flag: Option<String>,
    pub witness: Witness,
}

impl TheoremCheck {
    pub fn evaluate(name: &str, residual: f64, tolerance: f64, witness: Witness) -> Self {
        // NaN residuals fail.
        let status = if residual <= tolerance { Status::Pass } else { Status::Fail };
        TheoremCheck { name: name.into(), residual: Some(residual), tolerance, status, flag: None, witness }
    }

    pub fn skipped(name: &str, tolerance: f64, flag: impl Into<String>) -> Self {
        TheoremCheck {
            name: name.into(),
            residual: None,
            tolerance,
            status: Status::Skipped,
            flag: Some(flag.into()),
            witness: Witness::default(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Snake-case flag name for an error, e.g. `divergent_cevians`.
pub fn error_flag(e: &GeomError) -> String {
    let debug = format!("{e:?}");
    let head = debug.split(['(', ' ', '{']).next().unwrap_or_default();
    let mut out = String::new();
    for (i, ch) in head.chars().enumerate() {
        if ch.is_ascii_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.push(ch.to_ascii_lowercase());
        } else {
            out.push(ch);
        }
    }
    out
}

type Outcome = std::result::Result<(f64, Witness), String>;

fn finish(name: &str, tolerance: f64, outcome: Outcome) -> TheoremCheck {
    match outcome {
        Ok((residual, witness)) => TheoremCheck::evaluate(name, residual, tolerance, witness),
        Err(flag) => TheoremCheck::skipped(name, tolerance, flag),
    }
}

fn flagged<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| error_flag(&e))
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    max - min
}

fn letter(v: Vertex) -> char {
    match v {
        Vertex::A => 'a',
        Vertex::B => 'b',
        Vertex::C => 'c',
    }
}

/// Points of a Euclidean circle on the counterclockwise arc from angle
/// `from` spanning `sweep`, kept away from both ends and inside the disk.
fn arc_points(center: Complex64, radius: f64, from: f64, sweep: f64, margin: f64) -> Vec<DiskPoint> {
    (0..ARC_SAMPLES)
        .map(|j| margin + (1.0 - 2.0 * margin) * j as f64 / (ARC_SAMPLES - 1) as f64)
        .filter_map(|f| DiskPoint::new(center + Complex64::from_polar(radius, from + f * sweep)).ok())
        .collect()
}

fn arg_from(center: Complex64, p: Complex64) -> f64 {
    (p - center).arg()
}

/// σ(a, X, b) is constant as X runs over an arc of `c` between `a` and `b`.
///
/// The arc is the counterclockwise one from `a` to `b` when its midpoint is
/// inside the disk, the other arc otherwise. For a hyperbolic circle with
/// center `O` the constant is also compared with `2∠OAB`.
pub fn check_inscribed_angle(c: &GeneralizedCycle, a: DiskPoint, b: DiskPoint, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let (k, rho) = c.euclidean_circle().ok_or("not_a_circle")?;
        let (pa, pb) = (arg_from(k, a.z()), arg_from(k, b.z()));
        let sweep = (pb - pa).rem_euclid(TAU);
        let mid = k + Complex64::from_polar(rho, pa + sweep / 2.0);
        let (from, sweep, first, second) = if mid.norm() < 1.0 { (pa, sweep, a, b) } else { (pb, TAU - sweep, b, a) };
        let xs = arc_points(k, rho, from, sweep, 0.03);
        if xs.len() < 2 {
            return Err("arc_outside_disk".into());
        }
        let values: Vec<f64> =
            xs.iter().map(|&x| sigma(first, x, second)).collect::<Result<_>>().map_err(|e| error_flag(&e))?;
        let mut w = Witness::default();
        w.point("a", a);
        w.point("b", b);
        w.cycle("cycle", *c);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        w.value("sigma", mean);
        w.value("samples", values.len() as f64);
        let mut residual = spread(&values);
        if let Ok((o, _)) = hyp_center_radius(c) {
            if o.z() != first.z() {
                let target = 2.0 * flagged(signed_angle(o, first, second))?.value();
                w.point("center", o);
                w.value("twice_oab", target);
                residual = residual.max((mean - target).abs());
            }
        }
        Ok((residual, w))
    };
    finish(INSCRIBED_ANGLE, tol, run())
}

/// Convex with vertices in cyclic order (either orientation).
pub fn is_convex(quad: &[DiskPoint; 4]) -> bool {
    let mut sign = 0.0;
    for i in 0..4 {
        let (p, v, n) = (quad[(i + 3) % 4], quad[i], quad[(i + 1) % 4]);
        let Ok(angle) = signed_angle(p, v, n) else { return false };
        let s = angle.value();
        if s.abs() < 1e-12 || s.abs() > std::f64::consts::PI - 1e-12 {
            return false;
        }
        if sign == 0.0 {
            sign = s.signum();
        } else if s.signum() != sign {
            return false;
        }
    }
    true
}

/// `∠A + ∠D − ∠B − ∠C` for the quadrilateral `ABCD`.
pub fn quad_angle_gap(quad: &[DiskPoint; 4]) -> Result<f64> {
    let [a, b, c, d] = *quad;
    let at = |p: DiskPoint, v: DiskPoint, n: DiskPoint| signed_angle(p, v, n).map(|s| s.value().abs());
    Ok(at(d, a, b)? + at(c, d, a)? - at(a, b, c)? - at(b, c, d)?)
}

/// First sign change of `f` over the grid, refined by bisection.
fn grid_root<F>(mut f: F, grid: &[f64]) -> Option<f64>
where
    F: FnMut(f64) -> Option<f64>,
{
    let mut prev: Option<(f64, f64)> = None;
    for &t in grid {
        let v = f(t)?;
        if v == 0.0 {
            return Some(t);
        }
        if let Some((pt, pv)) = prev {
            if (pv > 0.0) != (v > 0.0) {
                return bisect(&mut f, pt, t, pv).map(|r| r.x);
            }
        }
        prev = Some((t, v));
    }
    None
}

/// Slides vertex `moving` (C or D) along the ray from its neighbor on `AB`
/// and measures the opposite side of the equivalence at each root.
fn slide_gaps(quad: &[DiskPoint; 4], moving: usize, w: &mut Witness) -> std::result::Result<Option<f64>, String> {
    let [a, b, _, _] = *quad;
    let (anchor, fixed) = if moving == 3 { (a, quad[2]) } else { (b, quad[3]) };
    let target = flagged(area(a, b, fixed))?;
    let with = |x: DiskPoint| {
        let mut q = *quad;
        q[moving] = x;
        q
    };
    let base = hyp_distance(anchor, quad[moving]);
    // Geometric from 1e-5·base to about 58·base: the equal-area root sits
    // close to the anchor when the target area is small.
    let grid: Vec<f64> = (0..320).map(|k| base * 1e-5 * 1.05f64.powi(k)).collect();
    let slide = |t: f64| point_towards(anchor, quad[moving], t).ok();
    let area_gap = |t: f64| slide(t).and_then(|x| area(a, b, x).ok()).map(|s| s - target);
    let angle_gap = |t: f64| slide(t).and_then(|x| quad_angle_gap(&with(x)).ok());
    let tag = if moving == 3 { "d" } else { "c" };

    let mut residual: Option<f64> = None;
    if let Some(t) = grid_root(area_gap, &grid) {
        let x = slide(t).ok_or("slide_outside_disk")?;
        if is_convex(&with(x)) {
            let gap = flagged(quad_angle_gap(&with(x)))?.abs();
            w.point(format!("equal_area_{tag}"), x);
            w.value(format!("angle_gap_at_equal_area_{tag}"), gap);
            residual = Some(gap);
        }
    }
    if let Some(t) = grid_root(angle_gap, &grid) {
        let x = slide(t).ok_or("slide_outside_disk")?;
        if is_convex(&with(x)) {
            let gap = (flagged(area(a, b, x))? - target).abs();
            w.point(format!("balanced_{tag}"), x);
            w.value(format!("area_gap_at_balance_{tag}"), gap);
            residual = Some(residual.map_or(gap, |r| r.max(gap)));
        }
    }
    Ok(residual)
}

/// Both directions of: `area(ABC) = area(ABD)` iff `∠A + ∠D = ∠B + ∠C`.
///
/// `D` is slid along the ray `AD` (or, failing that, `C` along `BC`). At the
/// position where the areas agree the angle gap is measured, and at the
/// position where the angles balance the area gap is measured; the residual
/// is the larger of the two.
pub fn check_trapezoid(quad: &[DiskPoint; 4], tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        if !is_convex(quad) {
            return Err("non_convex".into());
        }
        let [a, b, c, d] = *quad;
        let mut w = Witness::default();
        w.value("area_gap", flagged(area(a, b, d))? - flagged(area(a, b, c))?);
        w.value("angle_gap", flagged(quad_angle_gap(quad))?);
        let residual = match slide_gaps(quad, 3, &mut w)? {
            Some(r) => Some(r),
            None => slide_gaps(quad, 2, &mut w)?,
        };
        residual.map(|r| (r, w)).ok_or_else(|| "no_parallel_position".into())
    };
    finish(TRAPEZOID, tol, run())
}

/// Area of `abX` is constant for `X` on the in-disk arc of the cycle through
/// `a*`, `b*` and `x0`.
pub fn check_lexell(a: DiskPoint, b: DiskPoint, x0: DiskPoint, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let (sa, sb) = (flagged(absolute_inverse(a))?, flagged(absolute_inverse(b))?);
        let locus = flagged(cycle_through(sa, sb, x0))?;
        let (k, rho) = locus.euclidean_circle().ok_or("straight_locus")?;
        let ends = flagged(intersect(&locus, &GeneralizedCycle::absolute()))?;
        if ends.len() != 2 {
            return Err("locus_misses_absolute".into());
        }
        let (t1, t2, tx) = (arg_from(k, ends[0]), arg_from(k, ends[1]), arg_from(k, x0.z()));
        let span = (t2 - t1).rem_euclid(TAU);
        let (from, sweep) = if (tx - t1).rem_euclid(TAU) < span { (t1, span) } else { (t2, TAU - span) };
        let xs = arc_points(k, rho, from, sweep, 0.02);
        let areas: Vec<f64> = xs.iter().map(|&x| area(a, b, x)).collect::<Result<_>>().map_err(|e| error_flag(&e))?;
        let mut w = Witness::default();
        w.point("a", a);
        w.point("b", b);
        w.point("x0", x0);
        w.cycle("locus", locus);
        w.value("area_x0", flagged(area(a, b, x0))?);
        w.value("samples", areas.len() as f64);
        let base = flagged(area(a, b, x0))?;
        let residual = areas.iter().map(|s| (s - base).abs()).fold(spread(&areas), f64::max);
        Ok((residual, w))
    };
    finish(LEXELL, tol, run())
}

/// In-disk points along a geodesic.
pub fn geodesic_points(g: &GeneralizedCycle, n: usize) -> Result<Vec<DiskPoint>> {
    let foot = match g.euclidean_circle() {
        Some((k, rho)) => k * (1.0 - rho / k.norm()),
        None => Complex64::new(0.0, 0.0),
    };
    let t = isometry_to_origin(DiskPoint::new(foot)?)?;
    let (_, b, _) = transform_cycle(&t, g).coeffs();
    let dir = Complex64::i() * b / b.norm();
    let back = t.invert();
    (0..n)
        .map(|j| {
            let s = -0.9 + 1.8 * j as f64 / (n - 1) as f64;
            DiskPoint::new(back.apply_z(dir * s))
        })
        .collect()
}

/// The radical axis is a geodesic and every point on it has equal powers.
///
/// The residual combines `|I(axis, absolute)|` (zero exactly for a
/// geodesic) with the largest power mismatch over 16 points on the axis.
pub fn check_radical_axis(c1: &GeneralizedCycle, c2: &GeneralizedCycle, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let axis = flagged(radical_axis(c1, c2))?;
        let mut w = Witness::default();
        w.cycle("axis", axis);
        let orthogonality = axis.inversive_distance(&GeneralizedCycle::absolute()).abs();
        w.value("orthogonality", orthogonality);
        w.note(format!("class {:?}", classify(&axis)));
        let mut mismatch: f64 = 0.0;
        for x in flagged(geodesic_points(&axis, 16))? {
            let gap = flagged(power_of_point(x, c1))? - flagged(power_of_point(x, c2))?;
            mismatch = mismatch.max(gap.abs());
        }
        w.value("power_mismatch", mismatch);
        let common = flagged(intersect(c1, c2))?;
        for (i, z) in common.iter().enumerate() {
            w.value(format!("common_point_{i}"), axis.distance(*z));
        }
        Ok((orthogonality.max(mismatch), w))
    };
    finish(RADICAL_AXIS, tol, run())
}

/// Monge collinearity of the three homothetic centers for one sign pattern.
pub fn check_monge<R: Rng + ?Sized>(
    circles: &[GeneralizedCycle; 3],
    signs: SignPattern,
    tol: f64,
    rng: &mut R,
) -> TheoremCheck {
    let name = monge_name(&signs);
    let mut run = || -> Outcome {
        let m = flagged(monge_line(circles, signs, rng))?;
        let mut w = Witness::default();
        for (i, p) in m.centers.iter().enumerate() {
            w.point(format!("p{}", i + 1), *p);
        }
        w.cycle("line", m.line);
        Ok((m.residual, w))
    };
    finish(&name, tol, run())
}

/// `monge_ppp`, `monge_pnn`, ...
pub fn monge_name(signs: &SignPattern) -> String {
    let tag: String = signs
        .iter()
        .map(|s| match s {
            HomothetySign::Positive => 'p',
            HomothetySign::Negative => 'n',
        })
        .collect();
    format!("{MONGE}_{tag}")
}

/// The all-positive pattern and the three two-negative ones.
pub fn monge_patterns() -> [SignPattern; 4] {
    use HomothetySign::{Negative as N, Positive as P};
    [[P, P, P], [P, N, N], [N, P, N], [N, N, P]]
}

fn pseudo_feet(cfg: &TriangleConfig) -> std::result::Result<[DiskPoint; 3], String> {
    cfg.pseudoaltitude_feet().copied().ok_or_else(|| {
        cfg.flags
            .iter()
            .find(|f| matches!(f, Flag::PseudoaltitudeBracket(_)))
            .map(|f| f.to_string())
            .unwrap_or_else(|| "missing_pseudoaltitude".into())
    })
}

fn need<T: Copy>(v: Option<T>, flag: Flag) -> std::result::Result<T, String> {
    v.ok_or_else(|| flag.to_string())
}

/// The pseudoaltitude feet lie on the cycle through the bisector feet.
pub fn check_six_point(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let h = pseudo_feet(cfg)?;
        let mut w = Witness::default();
        w.cycle("euler_circle", cfg.euler_circle);
        let mut residual: f64 = 0.0;
        for v in Vertex::ALL {
            let foot = h[v.index()];
            let d = cfg.euler_circle.distance(foot.z());
            w.point(format!("h_{}", letter(v)), foot);
            w.point(format!("m_{}", letter(v)), cfg.feet.bisector[v.index()]);
            w.value(format!("membership_{}", letter(v)), d);
            residual = residual.max(d);
        }
        Ok((residual, w))
    };
    finish(SIX_POINT, tol, run())
}

/// Second intersections of the Euler circle with the side lines, and the
/// point where the cevians through them meet.
pub fn second_intersection_point(cfg: &TriangleConfig) -> Result<DiskPoint> {
    let t = &cfg.triangle;
    let mut feet = [DiskPoint::ORIGIN; 3];
    for v in Vertex::ALL {
        let (_, p, q) = v.cyclic(t);
        let side = geodesic_through(p, q)?;
        let m = cfg.feet.bisector[v.index()];
        let far = intersect(&cfg.euler_circle, &side)?
            .into_iter()
            .max_by(|x, y| (x - m.z()).norm().total_cmp(&(y - m.z()).norm()))
            .ok_or(GeomError::DivergentCevians)?;
        feet[v.index()] = DiskPoint::new(far)?;
    }
    Ok(concurrency_point(t, &feet)?.0)
}

/// `O`, `E`, `M`, `H` lie on one geodesic.
pub fn check_euler_line(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let o = need(cfg.circumcenter, Flag::NoCircumcenter)?.0;
        let e = need(cfg.euler_center, Flag::NoEulerCenter)?.0;
        let m = need(cfg.bisector_point, Flag::DivergentBisectors)?.0;
        pseudo_feet(cfg)?;
        let h = need(cfg.orthocenter, Flag::DivergentPseudoaltitudes)?.0;
        let mut w = Witness::default();
        for (name, p) in [("o", o), ("e", e), ("m", m), ("h", h)] {
            w.point(name, p);
        }
        if let Ok(k) = second_intersection_point(cfg) {
            w.point("k", k);
            w.value("k_to_h", hyp_distance(k, h));
        }
        let partner = [e, m, h]
            .into_iter()
            .max_by(|x, y| hyp_distance(o, *x).total_cmp(&hyp_distance(o, *y)))
            .expect("three candidates");
        if hyp_distance(o, partner) < 1e-12 {
            w.note("all four points coincide");
            return Ok((hyp_distance(o, partner), w));
        }
        let line = flagged(geodesic_through(o, partner))?;
        w.cycle("line", line);
        let mut residual: f64 = 0.0;
        for p in [e, m, h] {
            residual = residual.max(flagged(distance_to_geodesic(p, &line))?);
        }
        Ok((residual, w))
    };
    finish(EULER_LINE, tol, run())
}

/// Homothety at `M` with ratio `−d_E(M, m_a)/d_E(M, A)`, and the point
/// reflection at `H` followed by inversion with `r² = d_E(H, h_a)·d_E(H, A)`,
/// both carry the circumcircle onto the Euler circle.
///
/// The reflection is applied only when `A` and `h_a` lie on opposite rays
/// from `H`, which keeps the inversion consistent with the point map
/// `A ↦ h_a`.
pub fn check_euler_maps(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let a = cfg.triangle.a;
        let m = need(cfg.bisector_point, Flag::DivergentBisectors)?.0;
        let h_feet = pseudo_feet(cfg)?;
        let h = need(cfg.orthocenter, Flag::DivergentPseudoaltitudes)?.0;
        let (m_a, h_a) = (cfg.feet.bisector[0], h_feet[0]);
        let same = |x: &GeneralizedCycle, y: &GeneralizedCycle| x.coeff_distance(y).min(x.coeff_distance(&y.flipped()));

        let k = -pseudolength(m, m_a) / pseudolength(m, a);
        let by_homothety = flagged(homothety_cycle(m, k, &cfg.circumcircle))?;
        let homothety_gap = same(&by_homothety, &cfg.euler_circle);

        let to_h = flagged(isometry_to_origin(h))?;
        let opposite = (to_h.apply_z(a.z()) * to_h.apply_z(h_a.z()).conj()).re < 0.0;
        let r2 = pseudolength(h, h_a) * pseudolength(h, a);
        let turned = if opposite { flagged(homothety_cycle(h, -1.0, &cfg.circumcircle))? } else { cfg.circumcircle };
        let by_inversion = flagged(inversion_cycle(h, r2, &turned))?;
        let inversion_gap = same(&by_inversion, &cfg.euler_circle);

        let mut w = Witness::default();
        w.value("ratio", k);
        w.value("r2", r2);
        w.value("homothety_gap", homothety_gap);
        w.value("inversion_gap", inversion_gap);
        w.note(if opposite { "point reflection applied" } else { "no point reflection" });
        Ok((homothety_gap.max(inversion_gap), w))
    };
    finish(EULER_MAPS, tol, run())
}

/// `d_E(M, m_x)/d_E(M, X)` and `d_E(H, h_x)·d_E(H, X)` agree over the vertices.
pub fn check_ratios(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let m = need(cfg.bisector_point, Flag::DivergentBisectors)?.0;
        let h_feet = pseudo_feet(cfg)?;
        let h = need(cfg.orthocenter, Flag::DivergentPseudoaltitudes)?.0;
        let vs = cfg.triangle.vertices();
        let ratios: Vec<f64> = (0..3).map(|i| pseudolength(m, cfg.feet.bisector[i]) / pseudolength(m, vs[i])).collect();
        let products: Vec<f64> = (0..3).map(|i| pseudolength(h, h_feet[i]) * pseudolength(h, vs[i])).collect();
        let mut w = Witness::default();
        for (i, v) in Vertex::ALL.iter().enumerate() {
            w.value(format!("ratio_{}", letter(*v)), ratios[i]);
            w.value(format!("product_{}", letter(*v)), products[i]);
        }
        Ok((spread(&ratios).max(spread(&products)), w))
    };
    finish(RATIOS, tol, run())
}

/// The Euler circle is tangent to the incircle and every existing excircle.
pub fn check_feuerbach(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let mut w = Witness::default();
    let inc = tangency_residual(&cfg.euler_circle, &cfg.incircle.cycle);
    w.value("incircle", inc);
    let mut residual = inc;
    for v in Vertex::ALL {
        match &cfg.excircles[v.index()] {
            Some(ex) => {
                let r = tangency_residual(&cfg.euler_circle, &ex.cycle);
                w.value(format!("excircle_{}", letter(v)), r);
                residual = residual.max(r);
            }
            None => w.note(Flag::ExcircleAbsent(v).to_string()),
        }
    }
    TheoremCheck::evaluate(FEUERBACH, residual, tol, w)
}

/// Point minimizing the largest hyperbolic distance to the given geodesics,
/// started from the centroid of their pairwise intersections; returns the
/// point and that largest distance.
pub fn best_common_point(lines: &[GeneralizedCycle]) -> Result<(DiskPoint, f64)> {
    let mut meets = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Ok(p) = interior_intersection(&lines[i], &lines[j]) {
                meets.push(p.z());
            }
        }
    }
    if meets.is_empty() {
        return Err(GeomError::DivergentCevians);
    }
    let cost = |z: Complex64| -> f64 {
        match DiskPoint::new(z) {
            Ok(p) => lines.iter().map(|g| distance_to_geodesic(p, g).unwrap_or(f64::INFINITY)).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        }
    };
    let mut x = meets.iter().sum::<Complex64>() / meets.len() as f64;
    let mut best = cost(x);
    let mut step = meets.iter().map(|m| (m - x).norm()).fold(0.0, f64::max).max(1e-9);
    let dirs: Vec<Complex64> = (0..8).map(|k| Complex64::from_polar(1.0, k as f64 * TAU / 8.0)).collect();
    let mut iterations = 0;
    while step > 1e-17 && iterations < 4000 {
        iterations += 1;
        let trial = dirs.iter().map(|d| x + d * step).map(|z| (cost(z), z)).min_by(|p, q| p.0.total_cmp(&q.0));
        match trial {
            Some((c, z)) if c < best => {
                best = c;
                x = z;
            }
            _ => step /= 2.0,
        }
    }
    Ok((DiskPoint::new(x)?, best))
}

/// A circle tangent to both sides at `vertex` and tangent to `w`, found by
/// sliding its center along the internal angle bisector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayTangentCircle {
    pub center: DiskPoint,
    pub radius: f64,
    pub contact: DiskPoint,
}

pub fn ray_tangent_circle(
    t: &Triangle,
    vertex: Vertex,
    w_center: DiskPoint,
    w_radius: f64,
    external: bool,
) -> Result<RayTangentCircle> {
    let (v, p, q) = vertex.cyclic(t);
    let to = isometry_to_origin(v)?;
    let back = to.invert();
    let (u, z) = (to.apply_z(p.z()), to.apply_z(q.z()));
    let dir = u / u.norm() + z / z.norm();
    let dir = dir / dir.norm();
    let side = geodesic_through(v, p)?;
    let center_at = |s: f64| DiskPoint::new(back.apply_z(dir * (s / 2.0).tanh())).ok();
    let gap = |s: f64| -> Option<f64> {
        let x = center_at(s)?;
        let r = distance_to_geodesic(x, &side).ok()?;
        let d = hyp_distance(x, w_center);
        Some(if external { d - r - w_radius } else { d + r - w_radius })
    };
    let fail = GeomError::DegenerateConfiguration("no tangent circle along the bisector");
    // Zero at the vertex itself; the tangent circle is the next sign change.
    let mut lo = 1e-6;
    let mut g_lo = gap(lo).ok_or(fail.clone())?;
    if g_lo >= 0.0 {
        return Err(fail);
    }
    loop {
        let hi = lo * 1.2;
        if (hi / 2.0).tanh() > 1.0 - 1e-9 {
            return Err(fail);
        }
        let g_hi = gap(hi).ok_or(fail.clone())?;
        if g_hi > 0.0 {
            let root = bisect(gap, lo, hi, g_lo).ok_or(fail.clone())?;
            let center = center_at(root.x).ok_or(fail.clone())?;
            let radius = distance_to_geodesic(center, &side)?;
            let contact = point_towards(w_center, center, w_radius)?;
            return Ok(RayTangentCircle { center, radius, contact });
        }
        lo = hi;
        g_lo = g_hi;
    }
}

/// Lines from the vertices through the contact points of circles inscribed
/// in the vertex angles and tangent to `w` meet in one point, the positive
/// (internal tangency) or negative (external) homothetic center of `w` and
/// the incircle.
pub fn check_tangent_cevians<R: Rng + ?Sized>(
    cfg: &TriangleConfig,
    w: &GeneralizedCycle,
    external: bool,
    tol: f64,
    rng: &mut R,
) -> TheoremCheck {
    let mut run = || -> Outcome {
        let (o, big_r) = flagged(hyp_center_radius(w))?;
        let t = &cfg.triangle;
        let mut lines = Vec::new();
        let mut wit = Witness::default();
        for v in Vertex::ALL {
            let circle = flagged(ray_tangent_circle(t, v, o, big_r, external))?;
            wit.point(format!("p_{}", letter(v)), circle.contact);
            lines.push(flagged(geodesic_through(v.cyclic(t).0, circle.contact))?);
        }
        let (p, concurrency) = flagged(best_common_point(&lines))?;
        wit.point("concurrency", p);
        wit.value("concurrency", concurrency);
        let mut residual = concurrency;
        let sign = if external { HomothetySign::Negative } else { HomothetySign::Positive };
        match homothetic_centers(w, &cfg.incircle.cycle, rng).ok().and_then(|c| c.get(sign)) {
            Some(center) => {
                let d = hyp_distance(p, center.point);
                wit.point("homothetic_center", center.point);
                wit.value("to_homothetic_center", d);
                residual = residual.max(d);
            }
            None => wit.note("homothetic center of w and the incircle is missing"),
        }
        Ok((residual, wit))
    };
    finish(TANGENT_CEVIANS, tol, run())
}

/// `FI`, `AF_a`, `BF_b`, `CF_c` are concurrent.
///
/// The common point of the three vertex lines is located first; the
/// residual is its largest distance from all four lines.
pub fn check_feuerbach_point<R: Rng + ?Sized>(cfg: &TriangleConfig, tol: f64, rng: &mut R) -> TheoremCheck {
    let mut run = || -> Outcome {
        let euler = &cfg.euler_circle;
        let inc = &cfg.incircle;
        let mut w = Witness::default();
        w.point("i", inc.center);
        // For an equilateral triangle the two circles coincide and F is undefined.
        let f = if euler.coeff_distance(&inc.cycle) < 1e-12 {
            w.note("euler circle coincides with the incircle");
            None
        } else {
            let f = contact_point(euler, &inc.cycle).ok_or("missing_contact_point")?;
            let f = flagged(DiskPoint::new(f))?;
            w.point("f", f);
            Some(f)
        };
        let mut lines = Vec::new();
        for v in Vertex::ALL {
            let ex = need(cfg.excircles[v.index()], Flag::ExcircleAbsent(v))?;
            let fv = contact_point(euler, &ex.cycle).ok_or("missing_contact_point")?;
            let fv = flagged(DiskPoint::new(fv))?;
            w.point(format!("f_{}", letter(v)), fv);
            lines.push(flagged(geodesic_through(v.cyclic(&cfg.triangle).0, fv))?);
        }
        let (p, concurrency) = flagged(best_common_point(&lines))?;
        let mut off_fi = 0.0;
        if let Some(f) = f {
            let fi = flagged(geodesic_through(f, inc.center))?;
            off_fi = flagged(distance_to_geodesic(p, &fi))?;
            w.value("distance_to_fi", off_fi);
        }
        w.point("concurrency", p);
        w.value("concurrency", concurrency);
        if let Some(center) =
            homothetic_centers(euler, &inc.cycle, rng).ok().and_then(|c| c.get(HomothetySign::Negative))
        {
            w.point("homothetic_center", center.point);
            w.value("to_homothetic_center", hyp_distance(p, center.point));
        }
        Ok((concurrency.max(off_fi), w))
    };
    finish(FEUERBACH_POINT, tol, run())
}

/// `(A, B, h_a, h_b)`, `(A, C, h_a, h_c)`, `(B, C, h_b, h_c)` are concyclic.
pub fn check_cyclic_quads(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let h = pseudo_feet(cfg)?;
        let [a, b, c] = cfg.triangle.vertices();
        let mut w = Witness::default();
        let mut residual: f64 = 0.0;
        for (name, p, q, x, y) in [("ab", a, b, h[0], h[1]), ("ac", a, c, h[0], h[2]), ("bc", b, c, h[1], h[2])] {
            let cyc = flagged(cycle_through(p, q, x))?;
            let d = cyc.distance(y.z());
            w.value(name, d);
            residual = residual.max(d);
        }
        Ok((residual, w))
    };
    finish(CYCLIC_QUADS, tol, run())
}

/// `H` is the radical center of the circles `ABh_ah_b`, `ACh_ah_c`,
/// `BCh_bh_c`, and `M` that of `A*B*m_am_b`, `A*C*m_am_c`, `B*C*m_bm_c`.
pub fn check_radical_center(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let h_feet = pseudo_feet(cfg)?;
        let h = need(cfg.orthocenter, Flag::DivergentPseudoaltitudes)?.0;
        let m = need(cfg.bisector_point, Flag::DivergentBisectors)?.0;
        let [a, b, c] = cfg.triangle.vertices();
        let [m_a, m_b, m_c] = cfg.feet.bisector;
        let circles = [
            flagged(cycle_through(a, b, h_feet[0]))?,
            flagged(cycle_through(a, c, h_feet[0]))?,
            flagged(cycle_through(b, c, h_feet[1]))?,
        ];
        let (ph, spread_h) = flagged(radical_center(&circles[0], &circles[1], &circles[2]))?;
        let (sa, sb, sc) =
            (flagged(absolute_inverse(a))?, flagged(absolute_inverse(b))?, flagged(absolute_inverse(c))?);
        let circles = [
            flagged(cycle_through(sa, sb, m_a))?,
            flagged(cycle_through(sa, sc, m_a))?,
            flagged(cycle_through(sb, sc, m_b))?,
        ];
        let (pm, spread_m) = flagged(radical_center(&circles[0], &circles[1], &circles[2]))?;
        let mut w = Witness::default();
        w.point("pseudoaltitude_center", ph);
        w.point("bisector_center", pm);
        w.value("power_spread_h", spread_h);
        w.value("power_spread_m", spread_m);
        w.value("m_c_membership", circles[1].distance(m_c.z()));
        let dh = hyp_distance(ph, h);
        let dm = hyp_distance(pm, m);
        w.value("to_h", dh);
        w.value("to_m", dm);
        Ok((dh.max(dm), w))
    };
    finish(RADICAL_CENTER, tol, run())
}

/// All six σ values at the pseudoaltitude feet equal half the area.
pub fn check_sigma_half_area(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let h = pseudo_feet(cfg)?;
        let half = triangle_area(&cfg.triangle) / 2.0;
        let mut w = Witness::default();
        w.value("half_area", half);
        let mut residual: f64 = 0.0;
        for v in Vertex::ALL {
            let (vv, p, q) = v.cyclic(&cfg.triangle);
            let x = h[v.index()];
            for (side, s) in [("left", sigma(p, x, vv)), ("right", sigma(vv, x, q))] {
                let s = flagged(s)?;
                w.value(format!("{side}_{}", letter(v)), s);
                residual = residual.max((s - half).abs());
            }
        }
        Ok((residual, w))
    };
    finish(SIGMA_HALF_AREA, tol, run())
}

/// `m_x m_y` is parallel to `XY`, so `X*`, `Y*`, `m_x`, `m_y` are concyclic.
pub fn check_parallel_lexell(cfg: &TriangleConfig, tol: f64) -> TheoremCheck {
    let run = || -> Outcome {
        let vs = cfg.triangle.vertices();
        let m = cfg.feet.bisector;
        let mut w = Witness::default();
        let mut residual: f64 = 0.0;
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            let (si, sj) = (flagged(absolute_inverse(vs[i]))?, flagged(absolute_inverse(vs[j]))?);
            let cyc = flagged(cycle_through(si, sj, m[i]))?;
            let d = cyc.distance(m[j].z());
            let names = ['a', 'b', 'c'];
            w.value(format!("{}{}", names[i], names[j]), d);
            residual = residual.max(d);
        }
        Ok((residual, w))
    };
    finish(PARALLEL_LEXELL, tol, run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::hyp_circle;
    use std::f64::consts::PI;

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_parts(re, im).unwrap()
    }

    #[test]
    fn flag_names_from_errors() {
        assert_eq!(error_flag(&GeomError::DivergentCevians), "divergent_cevians");
        assert_eq!(error_flag(&GeomError::AmbiguousClass { margin: 1e-11 }), "ambiguous_class");
        assert_eq!(error_flag(&GeomError::BracketFailure(Vertex::A)), "bracket_failure");
    }

    #[test]
    fn skipped_checks_carry_flags() {
        let c = TheoremCheck::skipped(FEUERBACH_POINT, 1e-8, "excircle_absent_a");
        assert_eq!(c.status, Status::Skipped);
        assert!(c.residual.is_none() && c.flag.is_some());
        assert!(TheoremCheck::evaluate("x", f64::NAN, 1.0, Witness::default()).failed());
    }

    #[test]
    fn inscribed_angle_on_centered_circle() {
        let c = GeneralizedCycle::circle(Complex64::new(0.0, 0.0), 0.5).unwrap();
        let check = check_inscribed_angle(&c, pt(0.5, 0.0), pt(-0.5, 0.0), 1e-10);
        assert!(check.passed(), "{check:?}");
        assert!(check.witness.values["sigma"].abs() < 1e-12);
    }

    #[test]
    fn inscribed_angle_on_hyperbolic_circle() {
        let c = hyp_circle(pt(0.2, -0.1), 0.9).unwrap();
        let pts = c.sample(7);
        let check = check_inscribed_angle(&c, DiskPoint::new(pts[1]).unwrap(), DiskPoint::new(pts[4]).unwrap(), 1e-10);
        assert!(check.passed(), "{check:?}");
    }

    #[test]
    fn convexity() {
        let sq = [pt(0.3, 0.3), pt(-0.3, 0.3), pt(-0.3, -0.3), pt(0.3, -0.3)];
        assert!(is_convex(&sq));
        let bow = [sq[0], sq[2], sq[1], sq[3]];
        assert!(!is_convex(&bow));
    }

    #[test]
    fn symmetric_trapezoid() {
        let quad = [pt(-0.4, -0.2), pt(0.4, -0.2), pt(0.2, 0.3), pt(-0.2, 0.3)];
        let check = check_trapezoid(&quad, 1e-9);
        assert!(check.passed(), "{check:?}");
        assert!(check.witness.values["area_gap"].abs() < 1e-12);
        assert!(check.witness.values["angle_gap"].abs() < 1e-12);
    }

    #[test]
    fn lexell_symmetric() {
        let check = check_lexell(pt(-0.4, 0.0), pt(0.4, 0.0), pt(0.0, 0.3), 1e-10);
        assert!(check.passed(), "{check:?}");
    }

    #[test]
    fn best_point_of_concurrent_lines() {
        let p = pt(0.1, -0.2);
        let lines: Vec<_> =
            [pt(0.5, 0.1), pt(-0.3, 0.4), pt(0.0, -0.6)].iter().map(|q| geodesic_through(p, *q).unwrap()).collect();
        let (x, r) = best_common_point(&lines).unwrap();
        assert!(hyp_distance(x, p) < 1e-12 && r < 1e-12);
    }

    #[test]
    fn equilateral_configuration() {
        let v = |k: f64| DiskPoint::from_polar(0.1, PI / 2.0 + k * 2.0 * PI / 3.0).unwrap();
        let cfg = TriangleConfig::build(Triangle::new(v(0.0), v(1.0), v(2.0)).unwrap()).unwrap();
        let tol = Tolerances::default();
        assert!(check_six_point(&cfg, 1e-12).passed());
        assert!(check_euler_line(&cfg, tol.theorem).passed());
        let feuer = check_feuerbach(&cfg, 1e-11);
        assert!(feuer.witness.values["incircle"] < 1e-11, "{feuer:?}");
        let mut rng = crate::generate::instance_rng(0, 0);
        let fp = check_feuerbach_point(&cfg, tol.chain, &mut rng);
        assert!(fp.passed(), "{fp:?}");
        assert!(fp.witness.points["concurrency"].norm() < 1e-9);
        let tc = check_tangent_cevians(&cfg, &cfg.circumcircle, false, tol.chain, &mut rng);
        assert!(tc.passed(), "{tc:?}");
        assert!(tc.witness.points["concurrency"].norm() < 1e-9);
    }
}
