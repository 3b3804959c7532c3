//! Cevian feet, the distinguished points `O`, `M`, `H`, `E`, `I` and the
//! circles of a triangle.
//!
//! Feet are found by bisection along the opposite side. The side is
//! parameterized by moving its first endpoint to the origin, where the side
//! becomes a diameter and `s` is the Euclidean coordinate along it.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cycle::{
    classify, cycle_through, diameter, distance_to_geodesic, geodesic_through, hyp_center_radius, hyp_circle,
    interior_intersection, transform_cycle, CycleClass, GeneralizedCycle,
};
use crate::disk::{area, hyp_distance, isometry_to_origin, sigma, DiskIsometry, DiskPoint, Triangle};
use crate::error::{GeomError, Result};
use crate::root::bisect;

/// Bracket endpoints are not pushed closer than this to the absolute.
const BRACKET_LIMIT: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn index(self) -> usize {
        self as usize
    }

    fn letter(self) -> char {
        match self {
            Vertex::A => 'a',
            Vertex::B => 'b',
            Vertex::C => 'c',
        }
    }

    /// The vertex and the two following it in clockwise order.
    pub fn cyclic(self, t: &Triangle) -> (DiskPoint, DiskPoint, DiskPoint) {
        match self {
            Vertex::A => (t.a, t.b, t.c),
            Vertex::B => (t.b, t.c, t.a),
            Vertex::C => (t.c, t.a, t.b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CevianKind {
    Bisectors,
    Pseudoaltitudes,
}

/// Side line `PQ` with `P` moved to the origin.
struct SideLine {
    back: DiskIsometry,
    dir: Complex64,
    /// Coordinate of `Q` along the diameter.
    end: f64,
}

impl SideLine {
    fn new(p: DiskPoint, q: DiskPoint) -> Result<Self> {
        let t = isometry_to_origin(p)?;
        let w = t.apply_z(q.z());
        Ok(SideLine { back: t.invert(), dir: w / w.norm(), end: w.norm() })
    }

    fn at(&self, s: f64) -> Complex64 {
        self.back.apply_z(self.dir * s)
    }

    fn point(&self, s: f64) -> Option<DiskPoint> {
        DiskPoint::new(self.at(s)).ok()
    }
}

/// Foot of the pseudoaltitude from `vertex`: the point `X` on the opposite
/// side line where `σ(P, X, V) = σ(V, X, Q)` (`V, P, Q` clockwise).
/// Returns the foot and the final bracket width.
pub fn pseudoaltitude_foot(t: &Triangle, vertex: Vertex) -> Result<(DiskPoint, f64)> {
    let (v, p, q) = vertex.cyclic(t);
    let line = SideLine::new(p, q)?;
    // Decreasing in s along P -> Q.
    let f = |s: f64| -> Option<f64> {
        let x = line.point(s)?;
        Some(sigma(p, x, v).ok()? - sigma(v, x, q).ok()?)
    };
    let len = hyp_distance(p, q);
    let to_s = |dist: f64| (dist / 2.0).tanh();
    let fail = GeomError::BracketFailure(vertex);

    let mut step = len / 8.0;
    let mut lo = to_s(-step);
    let mut f_lo = f(lo).ok_or(fail.clone())?;
    while f_lo <= 0.0 {
        step *= 2.0;
        lo = to_s(-step);
        if line.at(lo).norm() > BRACKET_LIMIT {
            return Err(fail);
        }
        f_lo = f(lo).ok_or(fail.clone())?;
    }
    let mut step = len / 8.0;
    let mut hi = to_s(len + step);
    let mut f_hi = f(hi).ok_or(fail.clone())?;
    while f_hi >= 0.0 {
        step *= 2.0;
        hi = to_s(len + step);
        if line.at(hi).norm() > BRACKET_LIMIT {
            return Err(fail);
        }
        f_hi = f(hi).ok_or(fail.clone())?;
    }
    let root = bisect(f, lo, hi, f_lo).ok_or(fail.clone())?;
    Ok((line.point(root.x).ok_or(fail)?, root.width))
}

/// Foot of the area bisector from `vertex` on the opposite side segment.
pub fn bisector_foot(t: &Triangle, vertex: Vertex) -> Result<(DiskPoint, f64)> {
    let (v, p, q) = vertex.cyclic(t);
    let line = SideLine::new(p, q)?;
    let f = |s: f64| -> Option<f64> {
        let x = line.point(s)?;
        Some(area(v, p, x).ok()? - area(v, x, q).ok()?)
    };
    let root = bisect(f, 0.0, line.end, -1.0).ok_or(GeomError::DegenerateTriangle)?;
    Ok((line.point(root.x).ok_or(GeomError::DegenerateTriangle)?, root.width))
}

pub fn feet(t: &Triangle, kind: CevianKind) -> Result<[DiskPoint; 3]> {
    let foot = |v| match kind {
        CevianKind::Bisectors => bisector_foot(t, v),
        CevianKind::Pseudoaltitudes => pseudoaltitude_foot(t, v),
    };
    Ok([foot(Vertex::A)?.0, foot(Vertex::B)?.0, foot(Vertex::C)?.0])
}

/// Intersection of the cevians from `A` and `B`, with the hyperbolic
/// distance from it to the cevian from `C` as the concurrency residual.
pub fn concurrency_point(t: &Triangle, feet: &[DiskPoint; 3]) -> Result<(DiskPoint, f64)> {
    let ga = geodesic_through(t.a, feet[0])?;
    let gb = geodesic_through(t.b, feet[1])?;
    let gc = geodesic_through(t.c, feet[2])?;
    let point = interior_intersection(&ga, &gb)?;
    Ok((point, distance_to_geodesic(point, &gc)?))
}

pub fn cevian_point(t: &Triangle, kind: CevianKind) -> Result<(DiskPoint, f64)> {
    concurrency_point(t, &feet(t, kind)?)
}

pub fn circumcircle(t: &Triangle) -> Result<GeneralizedCycle> {
    cycle_through(t.a, t.b, t.c)
}

pub fn circumcenter(t: &Triangle) -> Result<DiskPoint> {
    hyp_center_radius(&circumcircle(t)?).map(|(c, _)| c).map_err(|_| GeomError::NoHyperbolicCenter)
}

/// The cycle through the three bisector feet.
pub fn euler_circle(bisector_feet: &[DiskPoint; 3]) -> Result<GeneralizedCycle> {
    cycle_through(bisector_feet[0], bisector_feet[1], bisector_feet[2])
}

/// Internal or external angle bisector at `vertex`, built in the tangent
/// space at the vertex.
pub fn angle_bisector(t: &Triangle, vertex: Vertex, external: bool) -> Result<GeneralizedCycle> {
    let (v, p, q) = vertex.cyclic(t);
    let to = isometry_to_origin(v)?;
    let u = to.apply_z(p.z());
    let w = to.apply_z(q.z());
    let (u, w) = (u / u.norm(), w / w.norm());
    let dir = if external { u - w } else { u + w };
    Ok(transform_cycle(&to.invert(), &diameter(dir)?))
}

/// A hyperbolic circle tangent to the three side lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentCircle {
    pub center: DiskPoint,
    pub radius: f64,
    pub cycle: GeneralizedCycle,
    /// Spread of the center's distances to the three side lines.
    pub spread: f64,
}

fn side_lines(t: &Triangle) -> Result<[GeneralizedCycle; 3]> {
    Ok([geodesic_through(t.b, t.c)?, geodesic_through(t.c, t.a)?, geodesic_through(t.a, t.b)?])
}

fn tangent_circle(center: DiskPoint, sides: &[GeneralizedCycle; 3], opposite: usize) -> Result<TangentCircle> {
    let d = [
        distance_to_geodesic(center, &sides[0])?,
        distance_to_geodesic(center, &sides[1])?,
        distance_to_geodesic(center, &sides[2])?,
    ];
    let radius = d[opposite];
    let spread = d.iter().cloned().fold(f64::MIN, f64::max) - d.iter().cloned().fold(f64::MAX, f64::min);
    let cycle = hyp_circle(center, radius)?;
    if classify(&cycle)? != CycleClass::HypCircle {
        return Err(GeomError::NotACircle);
    }
    Ok(TangentCircle { center, radius, cycle, spread })
}

pub fn incircle(t: &Triangle) -> Result<TangentCircle> {
    let center = interior_intersection(&angle_bisector(t, Vertex::A, false)?, &angle_bisector(t, Vertex::B, false)?)?;
    tangent_circle(center, &side_lines(t)?, 0)
}

/// Excircle opposite `vertex`, if the bisectors defining it meet in the disk.
pub fn excircle(t: &Triangle, vertex: Vertex) -> Result<TangentCircle> {
    let (_, p, _) = vertex.cyclic(t);
    let following = match vertex {
        Vertex::A => Vertex::B,
        Vertex::B => Vertex::C,
        Vertex::C => Vertex::A,
    };
    let internal = angle_bisector(t, vertex, false)?;
    let external = angle_bisector(t, following, true)?;
    debug_assert_eq!(following.cyclic(t).0, p);
    let center = interior_intersection(&internal, &external)?;
    tangent_circle(center, &side_lines(t)?, vertex.index())
}

pub fn incircle_excircles(t: &Triangle) -> Result<(TangentCircle, [Option<TangentCircle>; 3])> {
    let inc = incircle(t)?;
    let ex = [excircle(t, Vertex::A).ok(), excircle(t, Vertex::B).ok(), excircle(t, Vertex::C).ok()];
    Ok((inc, ex))
}

/// Soft failures recorded while building a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    PseudoaltitudeBracket(Vertex),
    DivergentBisectors,
    DivergentPseudoaltitudes,
    NoCircumcenter,
    NoEulerCenter,
    ExcircleAbsent(Vertex),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::PseudoaltitudeBracket(v) => write!(f, "pseudoaltitude_bracket_{}", v.letter()),
            Flag::DivergentBisectors => f.write_str("divergent_bisectors"),
            Flag::DivergentPseudoaltitudes => f.write_str("divergent_pseudoaltitudes"),
            Flag::NoCircumcenter => f.write_str("no_circumcenter"),
            Flag::NoEulerCenter => f.write_str("no_euler_center"),
            Flag::ExcircleAbsent(v) => write!(f, "excircle_absent_{}", v.letter()),
        }
    }
}

impl std::str::FromStr for Flag {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Flag> {
        let vertex = |tail: &str| match tail {
            "a" => Some(Vertex::A),
            "b" => Some(Vertex::B),
            "c" => Some(Vertex::C),
            _ => None,
        };
        let flag = match s {
            "divergent_bisectors" => Some(Flag::DivergentBisectors),
            "divergent_pseudoaltitudes" => Some(Flag::DivergentPseudoaltitudes),
            "no_circumcenter" => Some(Flag::NoCircumcenter),
            "no_euler_center" => Some(Flag::NoEulerCenter),
            _ => {
                if let Some(tail) = s.strip_prefix("pseudoaltitude_bracket_") {
                    vertex(tail).map(Flag::PseudoaltitudeBracket)
                } else if let Some(tail) = s.strip_prefix("excircle_absent_") {
                    vertex(tail).map(Flag::ExcircleAbsent)
                } else {
                    None
                }
            }
        };
        flag.ok_or(GeomError::UnknownFlag)
    }
}

impl Serialize for Flag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CevianFeet {
    pub bisector: [DiskPoint; 3],
    pub pseudoaltitude: Option<[DiskPoint; 3]>,
    /// Final bracket widths, bisector feet first; `NaN` for missing feet.
    pub bracket_widths: [f64; 6],
}

/// Everything derived from one triangle. Built once, immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleConfig {
    pub triangle: Triangle,
    pub feet: CevianFeet,
    pub circumcircle: GeneralizedCycle,
    /// `O` with the circumradius.
    pub circumcenter: Option<(DiskPoint, f64)>,
    pub euler_circle: GeneralizedCycle,
    /// `E` with the Euler-circle radius.
    pub euler_center: Option<(DiskPoint, f64)>,
    /// `M` with its concurrency residual.
    pub bisector_point: Option<(DiskPoint, f64)>,
    /// `H` with its concurrency residual.
    pub orthocenter: Option<(DiskPoint, f64)>,
    pub incircle: TangentCircle,
    pub excircles: [Option<TangentCircle>; 3],
    pub flags: BTreeSet<Flag>,
}

impl TriangleConfig {
    pub fn build(triangle: Triangle) -> Result<TriangleConfig> {
        let t = &triangle;
        let mut flags = BTreeSet::new();
        let mut widths = [f64::NAN; 6];

        let mut bisector = [DiskPoint::ORIGIN; 3];
        for v in Vertex::ALL {
            let (x, w) = bisector_foot(t, v)?;
            bisector[v.index()] = x;
            widths[v.index()] = w;
        }
        let mut pseudo = [DiskPoint::ORIGIN; 3];
        let mut pseudo_ok = true;
        for v in Vertex::ALL {
            match pseudoaltitude_foot(t, v) {
                Ok((x, w)) => {
                    pseudo[v.index()] = x;
                    widths[3 + v.index()] = w;
                }
                Err(_) => {
                    flags.insert(Flag::PseudoaltitudeBracket(v));
                    pseudo_ok = false;
                }
            }
        }
        let feet = CevianFeet { bisector, pseudoaltitude: pseudo_ok.then_some(pseudo), bracket_widths: widths };

        let circ = circumcircle(t)?;
        let circumcenter = hyp_center_radius(&circ).ok();
        if circumcenter.is_none() {
            flags.insert(Flag::NoCircumcenter);
        }
        let euler = euler_circle(&feet.bisector)?;
        let euler_center = hyp_center_radius(&euler).ok();
        if euler_center.is_none() {
            flags.insert(Flag::NoEulerCenter);
        }
        let bisector_point = concurrency_point(t, &feet.bisector).ok();
        if bisector_point.is_none() {
            flags.insert(Flag::DivergentBisectors);
        }
        let orthocenter = feet.pseudoaltitude.as_ref().and_then(|h| concurrency_point(t, h).ok());
        if feet.pseudoaltitude.is_some() && orthocenter.is_none() {
            flags.insert(Flag::DivergentPseudoaltitudes);
        }
        let (incircle, excircles) = incircle_excircles(t)?;
        for v in Vertex::ALL {
            if excircles[v.index()].is_none() {
                flags.insert(Flag::ExcircleAbsent(v));
            }
        }

        Ok(TriangleConfig {
            triangle,
            feet,
            circumcircle: circ,
            circumcenter,
            euler_circle: euler,
            euler_center,
            bisector_point,
            orthocenter,
            incircle,
            excircles,
            flags,
        })
    }

    pub fn pseudoaltitude_feet(&self) -> Option<&[DiskPoint; 3]> {
        self.feet.pseudoaltitude.as_ref()
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{hyp_midpoint, triangle_area};
    use std::f64::consts::PI;

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_parts(re, im).unwrap()
    }

    fn equilateral(r: f64) -> Triangle {
        let v = |k: f64| DiskPoint::from_polar(r, PI / 2.0 + k * 2.0 * PI / 3.0).unwrap();
        Triangle::new(v(0.0), v(1.0), v(2.0)).unwrap()
    }

    fn isosceles() -> Triangle {
        Triangle::new(pt(-0.5, 0.0), pt(0.3, 0.35), pt(0.3, -0.35)).unwrap()
    }

    #[test]
    fn isosceles_feet_at_side_midpoint() {
        let t = isosceles();
        let mid = hyp_midpoint(t.b, t.c).unwrap();
        let (h, _) = pseudoaltitude_foot(&t, Vertex::A).unwrap();
        let (m, _) = bisector_foot(&t, Vertex::A).unwrap();
        assert!(h.z().im.abs() < 1e-13, "{h:?}");
        assert!((h.z() - mid.z()).norm() < 1e-13);
        assert!((m.z() - mid.z()).norm() < 1e-13);
    }

    #[test]
    fn foot_sigma_sum_is_area() {
        let t = Triangle::new(pt(0.1, 0.4), pt(0.5, -0.2), pt(-0.4, -0.3)).unwrap();
        let s = triangle_area(&t);
        for v in Vertex::ALL {
            let (vv, p, q) = v.cyclic(&t);
            let (x, _) = pseudoaltitude_foot(&t, v).unwrap();
            let left = sigma(p, x, vv).unwrap();
            let right = sigma(vv, x, q).unwrap();
            assert!((left - right).abs() < 1e-12);
            assert!((left + right - s).abs() < 1e-10);
            let (m, _) = bisector_foot(&t, v).unwrap();
            assert!((area(vv, p, m).unwrap() - s / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn equilateral_centers_at_origin() {
        let cfg = TriangleConfig::build(equilateral(0.1)).unwrap();
        assert!(cfg.flags.is_empty(), "{:?}", cfg.flags);
        for p in [
            cfg.circumcenter.unwrap().0,
            cfg.euler_center.unwrap().0,
            cfg.bisector_point.unwrap().0,
            cfg.orthocenter.unwrap().0,
            cfg.incircle.center,
        ] {
            assert!(p.z().norm() < 1e-12, "{p:?}");
        }
        assert!(cfg.bisector_point.unwrap().1 < 1e-12);
        assert!(cfg.orthocenter.unwrap().1 < 1e-12);
        let radii: Vec<f64> = cfg.excircles.iter().map(|e| e.unwrap().radius).collect();
        assert!((radii[0] - radii[1]).abs() < 1e-10 && (radii[1] - radii[2]).abs() < 1e-10);
    }

    #[test]
    fn flag_names_parse_back() {
        for flag in [
            Flag::PseudoaltitudeBracket(Vertex::C),
            Flag::DivergentBisectors,
            Flag::DivergentPseudoaltitudes,
            Flag::NoCircumcenter,
            Flag::NoEulerCenter,
            Flag::ExcircleAbsent(Vertex::B),
        ] {
            assert_eq!(flag.to_string().parse::<Flag>().unwrap(), flag);
        }
        assert!("excircle_absent_d".parse::<Flag>().is_err());
    }

    #[test]
    fn large_triangles_lose_excircles() {
        let t = equilateral(0.5);
        assert_eq!(excircle(&t, Vertex::A), Err(GeomError::DivergentCevians));
        let cfg = TriangleConfig::build(t).unwrap();
        assert!(cfg.has_flag(Flag::ExcircleAbsent(Vertex::A)));
        assert!(cfg.incircle.spread < 1e-12);
    }

    #[test]
    fn circumcircle_of_symmetric_triangle() {
        let v = |deg: f64| DiskPoint::from_polar(0.4, deg.to_radians()).unwrap();
        let t = Triangle::new(v(90.0), v(210.0), v(330.0)).unwrap();
        let c = circumcircle(&t).unwrap();
        let (center, radius) = c.euclidean_circle().unwrap();
        assert!(center.norm() < 1e-15 && (radius - 0.4).abs() < 1e-15);
        assert!(circumcenter(&t).unwrap().z().norm() < 1e-14);
    }

    #[test]
    fn boundary_vertex_flags_circumcenter() {
        let t = Triangle::new(pt(0.999, 0.0), pt(-0.2, 0.3), pt(-0.2, -0.1)).unwrap();
        let circ = circumcircle(&t).unwrap();
        let class = classify(&circ).unwrap();
        assert_ne!(class, CycleClass::HypCircle);
        assert_eq!(circumcenter(&t), Err(GeomError::NoHyperbolicCenter));
        let cfg = TriangleConfig::build(t).unwrap();
        assert!(cfg.has_flag(Flag::NoCircumcenter));
    }

    #[test]
    fn incircle_touches_all_sides() {
        let t = Triangle::new(pt(0.02, 0.08), pt(0.1, -0.04), pt(-0.08, -0.06)).unwrap();
        let inc = incircle(&t).unwrap();
        assert!(inc.spread < 1e-10);
        for v in Vertex::ALL {
            let ex = excircle(&t, v).unwrap();
            assert!(ex.spread < 1e-10, "{v:?} {}", ex.spread);
        }
    }

    #[test]
    fn flag_names() {
        assert_eq!(Flag::ExcircleAbsent(Vertex::B).to_string(), "excircle_absent_b");
        assert_eq!(Flag::PseudoaltitudeBracket(Vertex::C).to_string(), "pseudoaltitude_bracket_c");
    }
}
