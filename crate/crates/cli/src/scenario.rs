//! Scenario files: a JSON description of what to run.
//!
//! ```json
//! {
//!   "triangle": ["0.1+0.1i", "0.5", "0.3i"],
//!   "generator": { "seed": 42, "count": 1000, "max_vertex_radius": 0.7, "min_angle": 0.15 },
//!   "suite": ["six_point", "feuerbach"],
//!   "tolerances": { "chain": 1e-8 },
//!   "output": { "report": "report.json", "figure": "figure.svg" }
//! }
//! ```
//!
//! Every field is optional. `suite` is either a list of names or a single
//! string (`"all"` or comma-separated names).

use std::path::PathBuf;

use hypfeuer_core::generate::TriangleBox;
use hypfeuer_core::theorems::Tolerances;
use hypfeuer_core::DiskPoint;
use serde::{Deserialize, Serialize};

use crate::complex::parse_point;
use crate::error::InputError;
use crate::suite::{parse_suite, resolve_suite, CheckId};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub triangle: Option<[String; 3]>,
    #[serde(default)]
    pub generator: GeneratorParams,
    #[serde(default)]
    pub suite: Option<SuiteSpec>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    #[serde(default)]
    pub output: Outputs,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorParams {
    pub seed: Option<u64>,
    pub count: Option<u64>,
    pub max_vertex_radius: Option<f64>,
    pub min_angle: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SuiteSpec {
    Text(String),
    List(Vec<String>),
}

impl SuiteSpec {
    pub fn resolve(&self) -> Result<Vec<CheckId>, InputError> {
        match self {
            SuiteSpec::Text(s) => parse_suite(s),
            SuiteSpec::List(names) => resolve_suite(names),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub construct: Option<f64>,
    pub theorem: Option<f64>,
    pub chain: Option<f64>,
}

impl ToleranceOverrides {
    /// Later overrides win.
    pub fn over(self, base: ToleranceOverrides) -> ToleranceOverrides {
        ToleranceOverrides {
            construct: self.construct.or(base.construct),
            theorem: self.theorem.or(base.theorem),
            chain: self.chain.or(base.chain),
        }
    }

    pub fn apply(self, mut tol: Tolerances) -> Result<Tolerances, InputError> {
        for (name, v) in [("construct", self.construct), ("theorem", self.theorem), ("chain", self.chain)] {
            if let Some(v) = v {
                check_tolerance(name, v)?;
            }
        }
        tol.construct = self.construct.unwrap_or(tol.construct);
        tol.theorem = self.theorem.unwrap_or(tol.theorem);
        tol.chain = self.chain.unwrap_or(tol.chain);
        Ok(tol)
    }
}

pub fn check_tolerance(name: &str, v: f64) -> Result<(), InputError> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(InputError::Setting(format!("{name} tolerance must be a finite non-negative number, got {v}")))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub report: Option<PathBuf>,
    pub figure: Option<PathBuf>,
}

/// Largest allowed minimum angle; beyond this almost no triangle in the
/// box qualifies and the generator would spin.
pub const MAX_MIN_ANGLE: f64 = 0.9;

/// Checks generator parameters so that drawing always terminates.
pub fn generator_box(max_vertex_radius: Option<f64>, min_angle: Option<f64>) -> Result<TriangleBox, InputError> {
    let mut b = TriangleBox::default();
    if let Some(r) = max_vertex_radius {
        if !(1e-3..=0.95).contains(&r) {
            return Err(InputError::Setting(format!("max_vertex_radius must lie in [0.001, 0.95], got {r}")));
        }
        b.max_vertex_radius = r;
    }
    if let Some(a) = min_angle {
        if !(0.0..=MAX_MIN_ANGLE).contains(&a) {
            return Err(InputError::Setting(format!("min_angle must lie in [0, {MAX_MIN_ANGLE}], got {a}")));
        }
        b.min_angle = a;
    }
    Ok(b)
}

pub fn parse_scenario(text: &str) -> Result<Scenario, InputError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::Scenario(e.to_string()))?;
    if !value.is_object() {
        return Err(InputError::Scenario("expected a JSON object".into()));
    }
    let s: Scenario = serde_json::from_value(value).map_err(|e| InputError::Scenario(e.to_string()))?;
    if let Some(suite) = &s.suite {
        suite.resolve()?;
    }
    s.triangle_points()?;
    s.tolerances.apply(Tolerances::default())?;
    generator_box(s.generator.max_vertex_radius, s.generator.min_angle)?;
    Ok(s)
}

impl Scenario {
    pub fn triangle_points(&self) -> Result<Option<[DiskPoint; 3]>, InputError> {
        self.triangle.as_ref().map(|t| Ok([parse_point(&t[0])?, parse_point(&t[1])?, parse_point(&t[2])?])).transpose()
    }
}
