//! SVG figures of a configuration, clipped to the unit disk.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use hypfeuer_core::cycle::{contact_point, geodesic_through, intersect};
use hypfeuer_core::power::monge_line;
use hypfeuer_core::theorems::monge_patterns;
use hypfeuer_core::{DiskPoint, GeneralizedCycle, TriangleConfig};
use num_complex::Complex64;
use rand::Rng;

use crate::error::InputError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureObject {
    Sides,
    Cevians,
    Circumcircle,
    EulerCircle,
    Incircle,
    Excircles,
    EulerLine,
    Monge,
    Feet,
    Contacts,
    Centers,
    Vertices,
}

impl FigureObject {
    /// Drawing order: lines and circles first, markers on top.
    pub const ALL: [FigureObject; 12] = [
        FigureObject::Sides,
        FigureObject::Cevians,
        FigureObject::Circumcircle,
        FigureObject::EulerCircle,
        FigureObject::Incircle,
        FigureObject::Excircles,
        FigureObject::EulerLine,
        FigureObject::Monge,
        FigureObject::Feet,
        FigureObject::Contacts,
        FigureObject::Centers,
        FigureObject::Vertices,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureObject::Sides => "sides",
            FigureObject::Cevians => "cevians",
            FigureObject::Circumcircle => "circumcircle",
            FigureObject::EulerCircle => "euler_circle",
            FigureObject::Incircle => "incircle",
            FigureObject::Excircles => "excircles",
            FigureObject::EulerLine => "euler_line",
            FigureObject::Monge => "monge",
            FigureObject::Feet => "feet",
            FigureObject::Contacts => "contacts",
            FigureObject::Centers => "centers",
            FigureObject::Vertices => "vertices",
        }
    }

    fn color(self) -> &'static str {
        match self {
            FigureObject::Sides | FigureObject::Vertices => "#000000",
            FigureObject::Cevians => "#7f7f7f",
            FigureObject::Circumcircle => "#1f77b4",
            FigureObject::EulerCircle => "#d62728",
            FigureObject::Incircle => "#2ca02c",
            FigureObject::Excircles => "#9467bd",
            FigureObject::EulerLine => "#ff7f0e",
            FigureObject::Monge => "#8c564b",
            FigureObject::Feet => "#17becf",
            FigureObject::Contacts => "#e377c2",
            FigureObject::Centers => "#bcbd22",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub objects: BTreeSet<FigureObject>,
    /// Width and height in pixels.
    pub size: u32,
    pub stroke_width: f64,
    pub marker_radius: f64,
}

impl Default for FigureSpec {
    /// Everything except the Monge figure, which needs its own circles.
    fn default() -> Self {
        let objects = FigureObject::ALL.into_iter().filter(|o| *o != FigureObject::Monge).collect();
        FigureSpec { objects, size: 800, stroke_width: 1.5, marker_radius: 3.0 }
    }
}

/// `all`, or comma-separated object names; empty selects nothing.
pub fn parse_objects(s: &str) -> Result<BTreeSet<FigureObject>, InputError> {
    let mut out = BTreeSet::new();
    for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        if name == "all" {
            out.extend(FigureObject::ALL);
            continue;
        }
        let obj = FigureObject::ALL
            .into_iter()
            .find(|o| o.name() == name)
            .ok_or_else(|| InputError::Setting(format!("unknown figure object {name:?}")))?;
        out.insert(obj);
    }
    Ok(out)
}

/// Margin between the absolute and the image border, in pixels.
const MARGIN: f64 = 10.0;

struct Canvas {
    out: String,
    center: f64,
    scale: f64,
    spec: FigureSpec,
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

impl Canvas {
    fn new(spec: &FigureSpec) -> Self {
        let size = spec.size as f64;
        Canvas { out: String::new(), center: size / 2.0, scale: size / 2.0 - MARGIN, spec: spec.clone() }
    }

    fn xy(&self, z: Complex64) -> String {
        format!("{} {}", num(self.center + self.scale * z.re), num(self.center - self.scale * z.im))
    }

    fn stroke(&self, obj: FigureObject) -> String {
        format!(
            r#"class="{}" fill="none" stroke="{}" stroke-width="{}""#,
            obj.name(),
            obj.color(),
            self.spec.stroke_width
        )
    }

    fn circle(&mut self, obj: FigureObject, k: Complex64, rho: f64) {
        let line = format!(
            "<circle {} cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
            self.stroke(obj),
            num(self.center + self.scale * k.re),
            num(self.center - self.scale * k.im),
            num(self.scale * rho)
        );
        self.out.push_str(&line);
    }

    /// Arc of the Euclidean circle `(k, rho)` from `p` counterclockwise
    /// (in model coordinates) through `span` radians.
    fn arc(&mut self, obj: FigureObject, rho: f64, p: Complex64, q: Complex64, span: f64) {
        let large = u8::from(span > PI);
        // The screen flips y, so a counterclockwise model arc has sweep 0.
        let line = format!(
            "<path {} d=\"M {} A {} {} 0 {} 0 {}\"/>\n",
            self.stroke(obj),
            self.xy(p),
            num(self.scale * rho),
            num(self.scale * rho),
            large,
            self.xy(q)
        );
        self.out.push_str(&line);
    }

    fn segment(&mut self, obj: FigureObject, p: Complex64, q: Complex64) {
        let line = format!("<path {} d=\"M {} L {}\"/>\n", self.stroke(obj), self.xy(p), self.xy(q));
        self.out.push_str(&line);
    }

    fn marker(&mut self, obj: FigureObject, p: DiskPoint, label: &str) {
        let (x, y) = (self.center + self.scale * p.z().re, self.center - self.scale * p.z().im);
        let _ = writeln!(
            self.out,
            "<circle class=\"{}\" data-label=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            obj.name(),
            label,
            num(x),
            num(y),
            self.spec.marker_radius,
            obj.color()
        );
    }

    /// The part of a cycle inside the disk.
    fn cycle(&mut self, obj: FigureObject, c: &GeneralizedCycle) {
        let hits = intersect(c, &GeneralizedCycle::absolute()).unwrap_or_default();
        match c.euclidean_circle() {
            Some((k, rho)) if hits.len() < 2 => {
                if k.norm() + rho <= 1.0 + 1e-12 {
                    self.circle(obj, k, rho);
                }
            }
            Some((k, rho)) => {
                let (t1, t2) = ((hits[0] - k).arg(), (hits[1] - k).arg());
                let span = (t2 - t1).rem_euclid(TAU);
                let mid = k + Complex64::from_polar(rho, t1 + span / 2.0);
                if mid.norm() < 1.0 {
                    self.arc(obj, rho, hits[0], hits[1], span);
                } else {
                    self.arc(obj, rho, hits[1], hits[0], TAU - span);
                }
            }
            None if hits.len() == 2 => self.segment(obj, hits[0], hits[1]),
            None => {}
        }
    }

    /// Geodesic segment `pq`.
    fn geodesic_segment(&mut self, obj: FigureObject, p: DiskPoint, q: DiskPoint) {
        let Ok(g) = geodesic_through(p, q) else { return };
        match g.euclidean_circle() {
            Some((k, rho)) => {
                let span = ((q.z() - k).arg() - (p.z() - k).arg()).rem_euclid(TAU);
                if span <= PI {
                    self.arc(obj, rho, p.z(), q.z(), span);
                } else {
                    self.arc(obj, rho, q.z(), p.z(), TAU - span);
                }
            }
            None => self.segment(obj, p.z(), q.z()),
        }
    }
}

/// Draws the selected objects of `cfg`. Monge lines need `circles`; `rng`
/// only feeds the homothetic-center fallback for those.
pub fn render_svg<R: Rng + ?Sized>(
    cfg: Option<&TriangleConfig>,
    circles: Option<&[GeneralizedCycle; 3]>,
    spec: &FigureSpec,
    rng: &mut R,
) -> String {
    let mut cv = Canvas::new(spec);
    let size = spec.size;
    let _ = writeln!(
        cv.out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        cv.out,
        "<circle class=\"absolute\" cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{w}\"/>",
        c = num(cv.center),
        r = num(cv.scale),
        w = spec.stroke_width
    );
    for obj in spec.objects.iter().copied() {
        match (obj, cfg) {
            (FigureObject::Monge, _) => {
                if let Some(circles) = circles {
                    draw_monge(&mut cv, circles, rng);
                }
            }
            (_, Some(cfg)) => draw(&mut cv, obj, cfg),
            (_, None) => {}
        }
    }
    cv.out.push_str("</svg>\n");
    cv.out
}

fn draw(cv: &mut Canvas, obj: FigureObject, cfg: &TriangleConfig) {
    let t = &cfg.triangle;
    let [a, b, c] = t.vertices();
    match obj {
        FigureObject::Sides => {
            for (p, q) in [(a, b), (b, c), (c, a)] {
                cv.geodesic_segment(obj, p, q);
            }
        }
        FigureObject::Cevians => {
            for (i, v) in [a, b, c].into_iter().enumerate() {
                cv.geodesic_segment(obj, v, cfg.feet.bisector[i]);
                if let Some(h) = cfg.pseudoaltitude_feet() {
                    cv.geodesic_segment(obj, v, h[i]);
                }
            }
        }
        FigureObject::Circumcircle => cv.cycle(obj, &cfg.circumcircle),
        FigureObject::EulerCircle => cv.cycle(obj, &cfg.euler_circle),
        FigureObject::Incircle => cv.cycle(obj, &cfg.incircle.cycle),
        FigureObject::Excircles => {
            for ex in cfg.excircles.iter().flatten() {
                cv.cycle(obj, &ex.cycle);
            }
        }
        FigureObject::EulerLine => {
            let pts: Vec<DiskPoint> = [cfg.circumcenter, cfg.euler_center, cfg.bisector_point, cfg.orthocenter]
                .into_iter()
                .flatten()
                .map(|(p, _)| p)
                .collect();
            let far = pts
                .iter()
                .flat_map(|p| pts.iter().map(move |q| (*p, *q)))
                .max_by(|x, y| (x.0.z() - x.1.z()).norm().total_cmp(&(y.0.z() - y.1.z()).norm()));
            if let Some((p, q)) = far.filter(|(p, q)| (p.z() - q.z()).norm() > 1e-9) {
                if let Ok(g) = geodesic_through(p, q) {
                    cv.cycle(obj, &g);
                }
            }
        }
        FigureObject::Feet => {
            for (i, m) in cfg.feet.bisector.iter().enumerate() {
                cv.marker(obj, *m, &format!("m_{}", letter(i)));
            }
            for (i, h) in cfg.pseudoaltitude_feet().into_iter().flatten().enumerate() {
                cv.marker(obj, *h, &format!("h_{}", letter(i)));
            }
        }
        FigureObject::Contacts => {
            let mut tangent = vec![("f".to_string(), cfg.incircle.cycle)];
            for (i, ex) in cfg.excircles.iter().enumerate() {
                if let Some(ex) = ex {
                    tangent.push((format!("f_{}", letter(i)), ex.cycle));
                }
            }
            for (label, c) in tangent {
                if let Some(p) = contact_point(&cfg.euler_circle, &c).and_then(|z| DiskPoint::new(z).ok()) {
                    cv.marker(obj, p, &label);
                }
            }
        }
        FigureObject::Centers => {
            let named = [
                ("o", cfg.circumcenter),
                ("e", cfg.euler_center),
                ("m", cfg.bisector_point),
                ("h", cfg.orthocenter),
                ("i", Some((cfg.incircle.center, cfg.incircle.radius))),
            ];
            for (label, p) in named {
                if let Some((p, _)) = p {
                    cv.marker(obj, p, label);
                }
            }
        }
        FigureObject::Vertices => {
            for (i, v) in [a, b, c].into_iter().enumerate() {
                cv.marker(obj, v, &letter(i).to_ascii_uppercase().to_string());
            }
        }
        FigureObject::Monge => {}
    }
}

fn draw_monge<R: Rng + ?Sized>(cv: &mut Canvas, circles: &[GeneralizedCycle; 3], rng: &mut R) {
    for c in circles {
        cv.cycle(FigureObject::Monge, c);
    }
    for signs in monge_patterns() {
        if let Ok(m) = monge_line(circles, signs, rng) {
            cv.cycle(FigureObject::Monge, &m.line);
            for (i, p) in m.centers.iter().enumerate() {
                cv.marker(FigureObject::Centers, *p, &format!("p{}", i + 1));
            }
        }
    }
}

fn letter(i: usize) -> char {
    ['a', 'b', 'c'][i]
}
