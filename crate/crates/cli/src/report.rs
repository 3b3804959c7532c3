//! Serializable forms of check results and verification runs.

use std::collections::BTreeMap;

use hypfeuer_core::generate::TriangleBox;
use hypfeuer_core::theorems::{Status, TheoremCheck, Tolerances, Witness};
use hypfeuer_core::{DiskPoint, GeneralizedCycle, Triangle};
use serde::{Deserialize, Serialize};

use crate::complex::{format_complex, parse_complex};
use crate::error::InputError;
use crate::suite::InstanceRun;

/// Cycle coefficients with `B` as an `x+yi` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleRecord {
    pub a: f64,
    pub b: String,
    pub c: f64,
}

impl CycleRecord {
    pub fn new(c: &GeneralizedCycle) -> Self {
        let (a, b, c) = c.coeffs();
        CycleRecord { a, b: format_complex(b), c }
    }

    pub fn cycle(&self) -> Result<GeneralizedCycle, InputError> {
        Ok(GeneralizedCycle::from_normalized(self.a, parse_complex(&self.b)?, self.c)?)
    }
}

pub fn point_string(p: DiskPoint) -> String {
    format_complex(p.z())
}

pub fn triangle_strings(t: &Triangle) -> [String; 3] {
    t.vertices().map(point_string)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, String>,
    /// `None` stands for a non-finite value.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, Option<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cycles: BTreeMap<String, CycleRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl WitnessRecord {
    pub fn new(w: &Witness) -> Self {
        WitnessRecord {
            points: w.points.iter().map(|(k, z)| (k.clone(), format_complex(*z))).collect(),
            values: w.values.iter().map(|(k, v)| (k.clone(), finite(*v))).collect(),
            cycles: w.cycles.iter().map(|(k, c)| (k.clone(), CycleRecord::new(c))).collect(),
            notes: w.notes.clone(),
        }
    }
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// Absent for skipped checks and for non-finite residuals (which fail).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    #[serde(default)]
    pub witness: WitnessRecord,
}

impl CheckRecord {
    pub fn new(c: &TheoremCheck) -> Self {
        CheckRecord {
            name: c.name.clone(),
            status: c.status,
            residual: c.residual.and_then(finite),
            tolerance: c.tolerance,
            flag: c.flag.clone(),
            witness: WitnessRecord::new(&c.witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceRecord {
    pub index: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangle: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resamples: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<CheckRecord>,
}

impl InstanceRecord {
    pub fn new(run: &InstanceRun) -> Self {
        InstanceRecord {
            index: run.index,
            triangle: run.triangle.as_ref().map(triangle_strings),
            resamples: run.resamples,
            flags: run.config.iter().flat_map(|c| c.flags.iter().map(|f| f.to_string())).collect(),
            error: run.error.clone(),
            checks: run.checks.iter().map(CheckRecord::new).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances: u64,
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
}

impl Summary {
    pub fn add(&mut self, checks: &[CheckRecord]) {
        self.instances += 1;
        for c in checks {
            match c.status {
                Status::Pass => self.pass += 1,
                Status::Fail => self.fail += 1,
                Status::Skipped => self.skipped += 1,
            }
        }
    }
}

/// One verification run. Wall time is reported on stderr only, so equal
/// inputs give byte-equal reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub seed: u64,
    pub trials: u64,
    pub suite: Vec<String>,
    pub tolerances: Tolerances,
    pub generator: TriangleBox,
    pub instances: Vec<InstanceRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }
}
