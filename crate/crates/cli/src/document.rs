//! The configuration document written by `construct` and read back by
//! `verify --config` and `render --config`.
//!
//! Every number is stored in shortest round-trip form, so reading a
//! document restores the configuration bit for bit.

use std::collections::BTreeSet;

use hypfeuer_core::cevians::{CevianFeet, TangentCircle};
use hypfeuer_core::theorems::Tolerances;
use hypfeuer_core::{DiskPoint, Flag, Orientation, Triangle, TriangleConfig};
use serde::{Deserialize, Serialize};

use crate::complex::parse_point;
use crate::error::InputError;
use crate::report::{point_string, CheckRecord, CycleRecord};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    /// How the vertices were supplied before normalizing to clockwise.
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterRecord {
    pub point: String,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcurrencyRecord {
    pub point: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangentRecord {
    pub center: String,
    pub radius: f64,
    pub cycle: CycleRecord,
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub triangle: TriangleRecord,
    pub bisector_feet: [String; 3],
    pub pseudoaltitude_feet: Option<[String; 3]>,
    /// Final root-finder brackets, bisector feet first; `null` where a
    /// foot is missing.
    pub bracket_widths: [Option<f64>; 6],
    pub circumcircle: CycleRecord,
    pub circumcenter: Option<CenterRecord>,
    pub euler_circle: CycleRecord,
    pub euler_center: Option<CenterRecord>,
    pub bisector_point: Option<ConcurrencyRecord>,
    pub orthocenter: Option<ConcurrencyRecord>,
    pub incircle: TangentRecord,
    pub excircles: [Option<TangentRecord>; 3],
    pub flags: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

fn tangent(t: &TangentCircle) -> TangentRecord {
    TangentRecord {
        center: point_string(t.center),
        radius: t.radius,
        cycle: CycleRecord::new(&t.cycle),
        spread: t.spread,
    }
}

fn read_tangent(t: &TangentRecord) -> Result<TangentCircle, InputError> {
    Ok(TangentCircle { center: parse_point(&t.center)?, radius: t.radius, cycle: t.cycle.cycle()?, spread: t.spread })
}

fn read_points(p: &[String; 3]) -> Result<[DiskPoint; 3], InputError> {
    Ok([parse_point(&p[0])?, parse_point(&p[1])?, parse_point(&p[2])?])
}

impl ConfigDocument {
    pub fn new(cfg: &TriangleConfig, seed: u64, tolerances: Tolerances, checks: Vec<CheckRecord>) -> Self {
        let t = &cfg.triangle;
        let center = |c: Option<(DiskPoint, f64)>| c.map(|(p, r)| CenterRecord { point: point_string(p), radius: r });
        let meet =
            |c: Option<(DiskPoint, f64)>| c.map(|(p, r)| ConcurrencyRecord { point: point_string(p), residual: r });
        ConfigDocument {
            seed,
            tolerances,
            triangle: TriangleRecord {
                a: point_string(t.a),
                b: point_string(t.b),
                c: point_string(t.c),
                orientation: t.orientation,
            },
            bisector_feet: cfg.feet.bisector.map(point_string),
            pseudoaltitude_feet: cfg.feet.pseudoaltitude.map(|h| h.map(point_string)),
            bracket_widths: cfg.feet.bracket_widths.map(|w| w.is_finite().then_some(w)),
            circumcircle: CycleRecord::new(&cfg.circumcircle),
            circumcenter: center(cfg.circumcenter),
            euler_circle: CycleRecord::new(&cfg.euler_circle),
            euler_center: center(cfg.euler_center),
            bisector_point: meet(cfg.bisector_point),
            orthocenter: meet(cfg.orthocenter),
            incircle: tangent(&cfg.incircle),
            excircles: cfg.excircles.map(|e| e.as_ref().map(tangent)),
            flags: cfg.flags.iter().map(|f| f.to_string()).collect(),
            checks,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::Document(e.to_string()))?;
        if !value.is_object() {
            return Err(InputError::Document("expected a JSON object".into()));
        }
        serde_json::from_value(value).map_err(|e| InputError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    /// The stored configuration, exactly as it was written.
    pub fn config(&self) -> Result<TriangleConfig, InputError> {
        let r = &self.triangle;
        let (a, b, c) = (parse_point(&r.a)?, parse_point(&r.b)?, parse_point(&r.c)?);
        let rebuilt = Triangle::new(a, b, c)?;
        if rebuilt.vertices() != [a, b, c] {
            return Err(InputError::Document("triangle vertices are not in clockwise order".into()));
        }
        let triangle = Triangle { a, b, c, orientation: r.orientation };
        let center = |c: &Option<CenterRecord>| -> Result<_, InputError> {
            c.as_ref().map(|c| Ok((parse_point(&c.point)?, c.radius))).transpose()
        };
        let meet = |c: &Option<ConcurrencyRecord>| -> Result<_, InputError> {
            c.as_ref().map(|c| Ok((parse_point(&c.point)?, c.residual))).transpose()
        };
        let flags = self
            .flags
            .iter()
            .map(|f| f.parse::<Flag>().map_err(|_| InputError::Document(format!("unknown flag {f:?}"))))
            .collect::<Result<BTreeSet<_>, _>>()?;
        let excircles = [
            self.excircles[0].as_ref().map(read_tangent).transpose()?,
            self.excircles[1].as_ref().map(read_tangent).transpose()?,
            self.excircles[2].as_ref().map(read_tangent).transpose()?,
        ];
        Ok(TriangleConfig {
            triangle,
            feet: CevianFeet {
                bisector: read_points(&self.bisector_feet)?,
                pseudoaltitude: self.pseudoaltitude_feet.as_ref().map(read_points).transpose()?,
                bracket_widths: self.bracket_widths.map(|w| w.unwrap_or(f64::NAN)),
            },
            circumcircle: self.circumcircle.cycle()?,
            circumcenter: center(&self.circumcenter)?,
            euler_circle: self.euler_circle.cycle()?,
            euler_center: center(&self.euler_center)?,
            bisector_point: meet(&self.bisector_point)?,
            orthocenter: meet(&self.orthocenter)?,
            incircle: read_tangent(&self.incircle)?,
            excircles,
            flags,
        })
    }
}
