//! Named checks and the per-instance runner.

use hypfeuer_core::generate::{
    instance_rng, random_chord, random_circle_pair, random_circle_triple, random_convex_quad, random_lexell,
    random_triangle, TriangleBox,
};
use hypfeuer_core::theorems::{self as th, error_flag, TheoremCheck, Tolerances};
use hypfeuer_core::{Triangle, TriangleConfig};
use rand_chacha::ChaCha8Rng;

use crate::error::InputError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    SixPoint,
    CyclicQuads,
    SigmaHalfArea,
    ParallelLexell,
    EulerLine,
    EulerMaps,
    Ratios,
    RadicalCenter,
    Feuerbach,
    TangentCevians,
    FeuerbachPoint,
    InscribedAngle,
    Trapezoid,
    Lexell,
    RadicalAxis,
    Monge,
}

impl CheckId {
    pub const ALL: [CheckId; 16] = [
        CheckId::SixPoint,
        CheckId::CyclicQuads,
        CheckId::SigmaHalfArea,
        CheckId::ParallelLexell,
        CheckId::EulerLine,
        CheckId::EulerMaps,
        CheckId::Ratios,
        CheckId::RadicalCenter,
        CheckId::Feuerbach,
        CheckId::TangentCevians,
        CheckId::FeuerbachPoint,
        CheckId::InscribedAngle,
        CheckId::Trapezoid,
        CheckId::Lexell,
        CheckId::RadicalAxis,
        CheckId::Monge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::SixPoint => th::SIX_POINT,
            CheckId::CyclicQuads => th::CYCLIC_QUADS,
            CheckId::SigmaHalfArea => th::SIGMA_HALF_AREA,
            CheckId::ParallelLexell => th::PARALLEL_LEXELL,
            CheckId::EulerLine => th::EULER_LINE,
            CheckId::EulerMaps => th::EULER_MAPS,
            CheckId::Ratios => th::RATIOS,
            CheckId::RadicalCenter => th::RADICAL_CENTER,
            CheckId::Feuerbach => th::FEUERBACH,
            CheckId::TangentCevians => th::TANGENT_CEVIANS,
            CheckId::FeuerbachPoint => th::FEUERBACH_POINT,
            CheckId::InscribedAngle => th::INSCRIBED_ANGLE,
            CheckId::Trapezoid => th::TRAPEZOID,
            CheckId::Lexell => th::LEXELL,
            CheckId::RadicalAxis => th::RADICAL_AXIS,
            CheckId::Monge => th::MONGE,
        }
    }

    pub fn from_name(name: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Checks that run on the configuration of the instance triangle; the
    /// rest draw their own random input.
    pub fn needs_triangle(self) -> bool {
        self < CheckId::InscribedAngle
    }

    pub fn tolerance(self, tol: &Tolerances) -> f64 {
        match self {
            CheckId::CyclicQuads
            | CheckId::SigmaHalfArea
            | CheckId::ParallelLexell
            | CheckId::Ratios
            | CheckId::RadicalAxis => tol.construct,
            CheckId::Feuerbach | CheckId::TangentCevians | CheckId::FeuerbachPoint => tol.chain,
            _ => tol.theorem,
        }
    }

    /// Independent random stream of this check for instance `index`.
    fn rng(self, seed: u64, index: u64) -> ChaCha8Rng {
        let salt = (self as u64 + 1).wrapping_mul(0xA24B_AED4_963E_E407);
        instance_rng(seed ^ salt, index)
    }
}

/// `all`, or a comma-separated list of check names. Order is kept,
/// repeats are dropped, and the empty string selects nothing.
pub fn parse_suite(s: &str) -> Result<Vec<CheckId>, InputError> {
    let names: Vec<&str> = s.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
    resolve_suite(&names)
}

pub fn resolve_suite<S: AsRef<str>>(names: &[S]) -> Result<Vec<CheckId>, InputError> {
    let mut out = Vec::new();
    for name in names {
        let name = name.as_ref();
        if name == "all" {
            for id in CheckId::ALL {
                if !out.contains(&id) {
                    out.push(id);
                }
            }
            continue;
        }
        let id = CheckId::from_name(name).ok_or_else(|| InputError::UnknownCheck(name.into()))?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSettings {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub generator: TriangleBox,
}

/// Where an instance's triangle comes from.
#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    Random,
    Fixed(Triangle),
    Config(&'a TriangleConfig),
}

#[derive(Debug, Clone)]
pub struct InstanceRun {
    pub index: u64,
    pub triangle: Option<Triangle>,
    pub resamples: Option<u32>,
    pub config: Option<TriangleConfig>,
    /// Why the configuration could not be built.
    pub error: Option<String>,
    pub checks: Vec<TheoremCheck>,
}

pub fn run_instance(index: u64, source: Source<'_>, checks: &[CheckId], settings: &RunSettings) -> InstanceRun {
    let needs_triangle = checks.iter().any(|c| c.needs_triangle());
    let (triangle, resamples) = match source {
        Source::Random => {
            let drawn = random_triangle(&mut instance_rng(settings.seed, index), &settings.generator);
            (Some(drawn.value), Some(drawn.resamples))
        }
        Source::Fixed(t) => (Some(t), None),
        Source::Config(cfg) => (Some(cfg.triangle), None),
    };
    let built = match (source, triangle) {
        (Source::Config(cfg), _) => Some(Ok(cfg.clone())),
        (_, Some(t)) if needs_triangle => Some(TriangleConfig::build(t)),
        _ => None,
    };
    let (config, error) = match built {
        Some(Ok(cfg)) => (Some(cfg), None),
        Some(Err(e)) => (None, Some(error_flag(&e))),
        None => (None, None),
    };

    let mut results = Vec::new();
    for &id in checks {
        let tol = id.tolerance(&settings.tolerances);
        let mut rng = id.rng(settings.seed, index);
        if id.needs_triangle() {
            match &config {
                Some(cfg) => results.push(triangle_check(id, cfg, tol, &mut rng)),
                None => results.push(TheoremCheck::skipped(
                    id.name(),
                    tol,
                    error.clone().unwrap_or_else(|| "no_configuration".into()),
                )),
            }
        } else {
            results.extend(random_check(id, tol, &mut rng));
        }
    }
    InstanceRun { index, triangle, resamples, config, error, checks: results }
}

fn triangle_check(id: CheckId, cfg: &TriangleConfig, tol: f64, rng: &mut ChaCha8Rng) -> TheoremCheck {
    match id {
        CheckId::SixPoint => th::check_six_point(cfg, tol),
        CheckId::CyclicQuads => th::check_cyclic_quads(cfg, tol),
        CheckId::SigmaHalfArea => th::check_sigma_half_area(cfg, tol),
        CheckId::ParallelLexell => th::check_parallel_lexell(cfg, tol),
        CheckId::EulerLine => th::check_euler_line(cfg, tol),
        CheckId::EulerMaps => th::check_euler_maps(cfg, tol),
        CheckId::Ratios => th::check_ratios(cfg, tol),
        CheckId::RadicalCenter => th::check_radical_center(cfg, tol),
        CheckId::Feuerbach => th::check_feuerbach(cfg, tol),
        CheckId::TangentCevians => th::check_tangent_cevians(cfg, &cfg.circumcircle, false, tol, rng),
        CheckId::FeuerbachPoint => th::check_feuerbach_point(cfg, tol, rng),
        _ => unreachable!("{id:?} draws its own input"),
    }
}

fn random_check(id: CheckId, tol: f64, rng: &mut ChaCha8Rng) -> Vec<TheoremCheck> {
    match id {
        CheckId::InscribedAngle => {
            let (c, a, b) = random_chord(rng).value;
            vec![th::check_inscribed_angle(&c, a, b, tol)]
        }
        CheckId::Trapezoid => vec![th::check_trapezoid(&random_convex_quad(rng, 0.7).value, tol)],
        CheckId::Lexell => {
            let [a, b, x] = random_lexell(rng).value;
            vec![th::check_lexell(a, b, x, tol)]
        }
        CheckId::RadicalAxis => {
            let [c1, c2] = random_circle_pair(rng).value;
            vec![th::check_radical_axis(&c1, &c2, tol)]
        }
        CheckId::Monge => {
            let circles = random_circle_triple(rng).value;
            th::monge_patterns().into_iter().map(|signs| th::check_monge(&circles, signs, tol, rng)).collect()
        }
        _ => unreachable!("{id:?} needs a triangle"),
    }
}
