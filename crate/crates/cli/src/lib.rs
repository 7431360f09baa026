//! The `lvar` command line: risk values, dual bounds, property suites and
//! plots from loss data and profile specifications.

pub mod error;
pub mod input;
pub mod plot;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lvar_core::duality::adaptive_ladder_bound;
use lvar_core::suites::run_suite;
use lvar_core::{lambda_var, Cdf, ExpUtility, LossProfile, RiskMeasure};

use crate::error::{CliError, CliResult};
use crate::input::{load_data, load_profile, require, ProfileSpec};
use crate::report::{
    Diagnostics, DualityDiagnostics, FunctionDescriptor, Inputs, Real, ReportDocument,
};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "lvar", version, about = "ΛV@R and related risk measures on loss distributions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Bisection tolerance for dual bounds.
    #[arg(long, global = true, env = "LVAR_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    LambdaVar,
    Var,
    WorstCase,
    Entropic,
    CertaintyEq,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long, value_enum, default_value_t = MeasureKind::LambdaVar)]
    pub measure: MeasureKind,

    /// Confidence level for `var`.
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Profile specification (JSON) for `lambda-var`.
    #[arg(long)]
    pub profile: Option<PathBuf>,

    /// Rate of the exponential utility for `certainty-eq`.
    #[arg(long, default_value_t = 1.0)]
    pub aversion: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a risk measure.
    Compute {
        /// Outcomes as CSV (one per line, optional `value` header) or a distribution JSON file.
        #[arg(long)]
        data: Option<PathBuf>,
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bound from a ladder of test functions, compared with the risk value.
    Duality {
        #[arg(long)]
        data: Option<PathBuf>,
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long, default_value_t = 200)]
        functions: usize,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded property suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw F_P against Λ as SVG.
    Plot {
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        profile: Option<PathBuf>,
        /// SVG output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Resolved {
    risk: RiskMeasure,
    profile: Option<(ProfileSpec, LossProfile)>,
}

fn resolve(args: &MeasureArgs, inputs: &mut Inputs) -> CliResult<Resolved> {
    let mut profile = None;
    let risk = match args.measure {
        MeasureKind::LambdaVar => {
            let spec = load_profile(&require(&args.profile, "profile")?)?;
            let l = spec.build()?;
            l.ensure_feasible()?;
            inputs.profile = Some(spec.clone());
            profile = Some((spec, l.clone()));
            RiskMeasure::LambdaVar(l)
        }
        MeasureKind::Var => {
            let lambda = args
                .lambda
                .ok_or_else(|| CliError::Usage("--lambda is required for var".into()))?;
            if !(0.0..1.0).contains(&lambda) {
                return Err(CliError::Usage(format!("--lambda {lambda} not in [0, 1)")));
            }
            inputs.lambda = Some(lambda);
            RiskMeasure::Var(lambda)
        }
        MeasureKind::WorstCase => RiskMeasure::WorstCase,
        MeasureKind::Entropic => RiskMeasure::Entropic,
        MeasureKind::CertaintyEq => {
            if !(args.aversion > 0.0 && args.aversion.is_finite()) {
                return Err(CliError::Usage("--aversion must be positive".into()));
            }
            inputs.aversion = Some(args.aversion);
            RiskMeasure::CertaintyEquivalent(ExpUtility::new(args.aversion))
        }
    };
    Ok(Resolved { risk, profile })
}

fn empty_inputs() -> Inputs {
    Inputs {
        data: None,
        profile: None,
        lambda: None,
        aversion: None,
        functions: None,
        delta: None,
        tol: None,
        trials: None,
        seed: None,
    }
}

fn load(data: &Option<PathBuf>, inputs: &mut Inputs) -> CliResult<Cdf> {
    let (p, echo) = load_data(&require(data, "data")?)?;
    inputs.data = Some(echo);
    Ok(p)
}

fn lambda_var_report(
    p: &Cdf,
    profile: &LossProfile,
    inputs: Inputs,
) -> CliResult<ReportDocument> {
    let r = lambda_var(p, profile)?;
    Ok(ReportDocument {
        measure: "lambda-var".into(),
        inputs,
        value: Some(r.value.into()),
        diagnostics: Diagnostics {
            violation_point: r.violation_point,
            finiteness_case: Some(r.finiteness_case.into()),
            duality: None,
        },
        suite: None,
    })
}

pub fn compute(data: &Option<PathBuf>, args: &MeasureArgs) -> CliResult<ReportDocument> {
    let mut inputs = empty_inputs();
    let resolved = resolve(args, &mut inputs)?;
    let p = load(data, &mut inputs)?;
    if let Some((_, l)) = &resolved.profile {
        return lambda_var_report(&p, l, inputs);
    }
    Ok(ReportDocument {
        measure: resolved.risk.name().into(),
        inputs,
        value: Some(resolved.risk.evaluate(&p)?.into()),
        diagnostics: Diagnostics::default(),
        suite: None,
    })
}

pub fn duality(
    data: &Option<PathBuf>,
    args: &MeasureArgs,
    functions: usize,
    delta: f64,
    tol: f64,
) -> CliResult<ReportDocument> {
    if functions == 0 {
        return Err(CliError::Usage("--functions must be at least 1".into()));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(CliError::Usage("--delta must be positive".into()));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let mut inputs = empty_inputs();
    let resolved = resolve(args, &mut inputs)?;
    let p = load(data, &mut inputs)?;
    inputs.functions = Some(functions);
    inputs.delta = Some(delta);
    inputs.tol = Some(tol);
    let (fs, rep) = adaptive_ladder_bound(&p, &resolved.risk, functions, delta, tol)?;
    let argmax_function = rep.argmax_function_index.map(|i| FunctionDescriptor {
        index: i,
        kind: "negated-uniform-cdf".into(),
        c: fs[i].func().first_x().unwrap_or(f64::NAN),
        delta,
    });
    let mut diagnostics = Diagnostics::default();
    if let Some((_, l)) = &resolved.profile {
        let r = lambda_var(&p, l)?;
        diagnostics.violation_point = r.violation_point;
        diagnostics.finiteness_case = Some(r.finiteness_case.into());
    }
    diagnostics.duality = Some(DualityDiagnostics {
        phi_value: rep.phi_value.into(),
        best_lower_bound: Real(rep.best_lower_bound),
        gap: rep.gap.into(),
        argmax_function,
    });
    Ok(ReportDocument {
        measure: resolved.risk.name().into(),
        inputs,
        value: Some(rep.phi_value.into()),
        diagnostics,
        suite: None,
    })
}

pub fn check(suite: &str, trials: usize, seed: u64) -> CliResult<ReportDocument> {
    let r = run_suite(suite, trials, seed)?;
    let mut inputs = empty_inputs();
    inputs.trials = Some(trials);
    inputs.seed = Some(seed);
    Ok(ReportDocument {
        measure: "lambda-var".into(),
        inputs,
        value: None,
        diagnostics: Diagnostics::default(),
        suite: Some(r.into()),
    })
}

/// Computes the report and the SVG; nothing is written here.
pub fn plot(
    data: &Option<PathBuf>,
    profile: &Option<PathBuf>,
) -> CliResult<(ReportDocument, String)> {
    let args = MeasureArgs {
        measure: MeasureKind::LambdaVar,
        lambda: None,
        profile: Some(require(profile, "profile")?),
        aversion: 1.0,
    };
    let mut inputs = empty_inputs();
    let resolved = resolve(&args, &mut inputs)?;
    let p = load(data, &mut inputs)?;
    let (_, l) = resolved.profile.expect("lambda-var resolves a profile");
    let report = lambda_var_report(&p, &l, inputs)?;
    let svg = plot::render(&p, &l, report.diagnostics.violation_point);
    Ok((report, svg))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(report: &ReportDocument, out: &Option<PathBuf>) -> CliResult<()> {
    let json = report.to_json();
    match out {
        Some(path) => write_file(path, &json),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Compute { data, measure, out } => emit(&compute(data, measure)?, out),
        Command::Duality {
            data,
            measure,
            functions,
            delta,
            out,
        } => emit(&duality(data, measure, *functions, *delta, cli.tol)?, out),
        Command::Check {
            suite,
            trials,
            seed,
            out,
        } => emit(&check(suite, *trials, *seed)?, out),
        Command::Plot { data, profile, out } => {
            let out = require(out, "out")?;
            let (report, svg) = plot(data, profile)?;
            write_file(&out, &svg)?;
            emit(&report, &None)
        }
    }
}
