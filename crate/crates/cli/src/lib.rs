//! Command-line front end for the disk-model triangle library: seeded
//! instances, theorem suites with JSON reports, configuration documents and
//! SVG figures.

pub mod complex;
pub mod document;
pub mod error;
pub mod render;
pub mod report;
pub mod scenario;
pub mod suite;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypfeuer_core::generate::{instance_rng, random_circle_triple, random_triangle};
use hypfeuer_core::theorems::Tolerances;
use hypfeuer_core::{Triangle, TriangleConfig};
use rayon::prelude::*;

use crate::document::ConfigDocument;
use crate::error::InputError;
use crate::render::{parse_objects, render_svg, FigureSpec};
use crate::report::{CheckRecord, InstanceRecord, Summary, VerificationReport};
use crate::scenario::{check_tolerance, generator_box, parse_scenario, Scenario, ToleranceOverrides};
use crate::suite::{parse_suite, run_instance, CheckId, RunSettings, Source};

pub use crate::complex::{format_complex, parse_complex, parse_triangle};

/// Caps the worker threads used by `verify`.
pub const THREADS_ENV: &str = "HYPFEUER_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "hypfeuer",
    version,
    about = "Triangle centers, Euler circle and Feuerbach checks in the Poincaré disk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the configuration of one triangle and write it as JSON (or SVG).
    Construct(CommonArgs),
    /// Run theorem checks over seeded random instances or a given triangle.
    Verify(VerifyArgs),
    /// Draw a configuration as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Seed for instance generation and randomized sub-steps.
    #[arg(long)]
    pub seed: Option<u64>,
    /// `all` or comma-separated check names.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long = "tol-construct", value_name = "FLOAT")]
    pub tol_construct: Option<f64>,
    #[arg(long = "tol-theorem", value_name = "FLOAT")]
    pub tol_theorem: Option<f64>,
    #[arg(long = "tol-chain", value_name = "FLOAT")]
    pub tol_chain: Option<f64>,
    /// Three vertices, e.g. `0.1+0.1i,0.5,0.3i`.
    #[arg(long, allow_hyphen_values = true, value_name = "A,B,C", conflicts_with = "config")]
    pub triangle: Option<String>,
    /// Scenario file (JSON); command-line flags take precedence.
    #[arg(long, value_name = "PATH")]
    pub scenario: Option<PathBuf>,
    /// Configuration document written by `construct`.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Generator box: largest Euclidean vertex radius.
    #[arg(long, value_name = "FLOAT")]
    pub max_vertex_radius: Option<f64>,
    /// Generator box: smallest interior angle in radians.
    #[arg(long, value_name = "FLOAT")]
    pub min_angle: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of instances.
    #[arg(long)]
    pub trials: Option<u64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// `all` or comma-separated objects: sides, cevians, circumcircle,
    /// euler_circle, incircle, excircles, euler_line, monge, feet,
    /// contacts, centers, vertices.
    #[arg(long)]
    pub objects: Option<String>,
    /// Image width and height in pixels.
    #[arg(long)]
    pub size: Option<u32>,
}

/// Whether every non-skipped check passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// Everything a command needs, after merging defaults, the scenario file,
/// the configuration document and the flags (in increasing precedence).
#[derive(Debug, Clone)]
pub struct Plan {
    pub settings: RunSettings,
    pub trials: u64,
    pub checks: Vec<CheckId>,
    pub triangle: Option<Triangle>,
    pub config: Option<TriangleConfig>,
    pub report_path: Option<PathBuf>,
    pub figure_path: Option<PathBuf>,
    pub format: Option<Format>,
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| InputError::Io { path: p.display().to_string(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| InputError::Io { path: "<stdout>".into(), source }),
    }
}

impl Plan {
    pub fn new(args: &CommonArgs, trials: Option<u64>) -> Result<Plan, InputError> {
        let scenario = match &args.scenario {
            Some(p) => parse_scenario(&read(p)?)?,
            None => Scenario::default(),
        };
        let document = args.config.as_ref().map(|p| ConfigDocument::from_json(&read(p)?)).transpose()?;
        if document.is_some() && scenario.triangle.is_some() {
            return Err(InputError::Setting("give either a triangle or a configuration document, not both".into()));
        }

        let flags =
            ToleranceOverrides { construct: args.tol_construct, theorem: args.tol_theorem, chain: args.tol_chain };
        for (name, v) in [("construct", flags.construct), ("theorem", flags.theorem), ("chain", flags.chain)] {
            if let Some(v) = v {
                check_tolerance(name, v)?;
            }
        }
        let base = document.as_ref().map_or_else(Tolerances::default, |d| d.tolerances);
        let tolerances = flags.over(scenario.tolerances).apply(base)?;

        let seed = args.seed.or(document.as_ref().map(|d| d.seed)).or(scenario.generator.seed).unwrap_or(0);
        let generator = generator_box(
            args.max_vertex_radius.or(scenario.generator.max_vertex_radius),
            args.min_angle.or(scenario.generator.min_angle),
        )?;
        let checks = match (&args.suite, &scenario.suite) {
            (Some(s), _) => parse_suite(s)?,
            (None, Some(s)) => s.resolve()?,
            (None, None) => CheckId::ALL.to_vec(),
        };

        let points = match &args.triangle {
            Some(s) => Some(parse_triangle(s)?),
            None => scenario.triangle_points()?,
        };
        let triangle = points.map(|[a, b, c]| Triangle::new(a, b, c)).transpose()?;
        let config = document.as_ref().map(ConfigDocument::config).transpose()?;

        let trials = trials.or(scenario.generator.count).unwrap_or(1);
        Ok(Plan {
            settings: RunSettings { seed, tolerances, generator },
            trials,
            checks,
            triangle,
            config,
            report_path: args.out.clone().or(scenario.output.report),
            figure_path: args.out.clone().or(scenario.output.figure),
            format: args.format,
        })
    }

    fn source(&self) -> Source<'_> {
        match (&self.config, self.triangle) {
            (Some(cfg), _) => Source::Config(cfg),
            (None, Some(t)) => Source::Fixed(t),
            (None, None) => Source::Random,
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, InputError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| InputError::Setting(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| InputError::Setting(e.to_string()))
}

/// Runs every instance of the plan. Instances are evaluated in parallel
/// and collected in index order.
pub fn run_verify(plan: &Plan) -> Result<VerificationReport, InputError> {
    let pool = thread_pool()?;
    let source = plan.source();
    let instances: Vec<InstanceRecord> = pool.install(|| {
        (0..plan.trials)
            .into_par_iter()
            .map(|i| InstanceRecord::new(&run_instance(i, source, &plan.checks, &plan.settings)))
            .collect()
    });
    let mut summary = Summary::default();
    for inst in &instances {
        summary.add(&inst.checks);
    }
    Ok(VerificationReport {
        seed: plan.settings.seed,
        trials: plan.trials,
        suite: plan.checks.iter().map(|c| c.name().to_string()).collect(),
        tolerances: plan.settings.tolerances,
        generator: plan.settings.generator,
        instances,
        summary,
    })
}

pub fn report_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

/// The configuration of the plan's triangle together with its
/// triangle-based checks.
pub fn run_construct(plan: &Plan) -> Result<ConfigDocument, InputError> {
    let cfg = match (&plan.config, plan.triangle) {
        (Some(cfg), _) => cfg.clone(),
        (None, Some(t)) => TriangleConfig::build(t)?,
        (None, None) => {
            return Err(InputError::Setting("construct needs --triangle, a scenario triangle or --config".into()))
        }
    };
    let checks: Vec<CheckId> = plan.checks.iter().copied().filter(|c| c.needs_triangle()).collect();
    let run = run_instance(0, Source::Config(&cfg), &checks, &plan.settings);
    let records = run.checks.iter().map(CheckRecord::new).collect();
    Ok(ConfigDocument::new(&cfg, plan.settings.seed, plan.settings.tolerances, records))
}

/// The figure for the plan: its triangle, or the first random instance.
pub fn run_render(plan: &Plan, spec: &FigureSpec) -> Result<String, InputError> {
    let cfg = match (&plan.config, plan.triangle) {
        (Some(cfg), _) => cfg.clone(),
        (None, Some(t)) => TriangleConfig::build(t)?,
        (None, None) => {
            let t = random_triangle(&mut instance_rng(plan.settings.seed, 0), &plan.settings.generator).value;
            TriangleConfig::build(t)?
        }
    };
    let mut rng = instance_rng(plan.settings.seed ^ 0x5eed_f1a9, 0);
    let circles = spec.objects.contains(&render::FigureObject::Monge).then(|| random_circle_triple(&mut rng).value);
    Ok(render_svg(Some(&cfg), circles.as_ref(), spec, &mut rng))
}

fn figure_spec(args: &RenderArgs) -> Result<FigureSpec, InputError> {
    let mut spec = FigureSpec::default();
    if let Some(objects) = &args.objects {
        spec.objects = parse_objects(objects)?;
    }
    if let Some(size) = args.size {
        if !(64..=8192).contains(&size) {
            return Err(InputError::Setting(format!("size must lie in [64, 8192], got {size}")));
        }
        spec.size = size;
    }
    Ok(spec)
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Verify(args) => {
            if args.common.format == Some(Format::Svg) {
                return Err(InputError::Setting("verify writes JSON reports only".into()));
            }
            let plan = Plan::new(&args.common, args.trials)?;
            let start = Instant::now();
            let report = run_verify(&plan)?;
            write_output(plan.report_path.as_deref(), &report_json(&report))?;
            let s = report.summary;
            eprintln!(
                "verify: {} instances, {} pass, {} fail, {} skipped ({:.2} s)",
                s.instances,
                s.pass,
                s.fail,
                s.skipped,
                start.elapsed().as_secs_f64()
            );
            Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Construct(args) => {
            let plan = Plan::new(args, None)?;
            let doc = run_construct(&plan)?;
            let failed = doc.checks.iter().any(|c| c.status == hypfeuer_core::Status::Fail);
            match plan.format.unwrap_or(Format::Json) {
                Format::Json => write_output(plan.report_path.as_deref(), &doc.to_json())?,
                Format::Svg => {
                    let svg = run_render(&plan, &FigureSpec::default())?;
                    write_output(plan.figure_path.as_deref(), &svg)?;
                }
            }
            Ok(if failed { Outcome::Fail } else { Outcome::Pass })
        }
        Command::Render(args) => {
            if args.common.format == Some(Format::Json) {
                return Err(InputError::Setting("render writes SVG only; use construct for JSON".into()));
            }
            let plan = Plan::new(&args.common, None)?;
            let svg = run_render(&plan, &figure_spec(args)?)?;
            write_output(plan.figure_path.as_deref(), &svg)?;
            Ok(Outcome::Pass)
        }
    }
}
