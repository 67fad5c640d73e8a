//! Command-line front end.
//!
//! Exit codes: 0 success or clean verification, 1 verified violation,
//! 2 usage or domain error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::BohrError;
use crate::functionals::{phi0_mobius, psi_functional, Radius, WeightFunction};
use crate::par::Exec;
use crate::series::DEFAULT_ORDER;
use crate::sharp::{astar, lambda_bounds, lambda_phi0, lambda_weighted};
use crate::verify::{
    condition_i_spotcheck, dominance_check, verify_population, ImprovedKind, Inequality,
    VerifyConfig,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Smallest radius accepted by the CLI; `Lambda(R)` grows like `R^-2`.
pub const MIN_CLI_RADIUS: f64 = 1e-4;
/// Inputs this close to `1/3` are taken to be exactly `1/3`.
pub const SNAP_TO_THIRD: f64 = 1e-9;
pub const DEFAULT_STEPS: usize = 200;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Bohr(#[from] BohrError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Parser)]
#[command(
    name = "bohr",
    version,
    about = "Sharp constants and certification for refined Bohr inequalities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format; `verify` defaults to json, everything else to csv.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightChoice {
    /// `g(a) = (9 - a^2)/((2 + a^2)(3 - a))`.
    #[value(name = "paper_example", alias = "paper-example")]
    PaperExample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Classic,
    #[value(name = "improved-16-9")]
    Improved169,
    ImprovedLambda,
    Weighted,
    Psi,
    Dominance,
    ConditionI,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Classic => "classic",
            Suite::Improved169 => "improved-16-9",
            Suite::ImprovedLambda => "improved-lambda",
            Suite::Weighted => "weighted",
            Suite::Psi => "psi",
            Suite::Dominance => "dominance",
            Suite::ConditionI => "condition-i",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Bounds,
    BoundsZoom,
    PsiVsPhi0A,
    PsiVsPhi0R,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sharp constant Lambda(R), optionally weighted or with its envelopes.
    Lambda {
        #[arg(long = "R", value_parser = parse_real)]
        big_r: f64,
        #[arg(long, value_enum)]
        g: Option<WeightChoice>,
        #[arg(long)]
        bounds: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Critical point a*(r) on a grid of radii.
    Astar {
        #[arg(long, value_parser = parse_real)]
        r_min: f64,
        #[arg(long, value_parser = parse_real)]
        r_max: f64,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a certification suite; exits 1 on a certified violation.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Random functions, or grid density for `dominance`.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "R", value_parser = parse_real, default_value = "1/3")]
        big_r: f64,
        #[arg(long, default_value_t = 20)]
        radii: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Data for the envelope and Psi-vs-phi0 figures.
    Plot {
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(long, value_parser = parse_real)]
        a: Option<f64>,
        #[arg(long, value_parser = parse_real)]
        r: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Parses a decimal number or a fraction `p/q`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            let q: f64 = q.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            p / q
        }
        None => s.trim().parse().map_err(|e| format!("{s}: {e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("{s}: not a finite number"))
    }
}

fn snap(r: f64) -> f64 {
    if (r - 1.0 / 3.0).abs() <= SNAP_TO_THIRD {
        1.0 / 3.0
    } else {
        r
    }
}

fn cli_radius(big_r: f64) -> Result<Radius, CliError> {
    let r = snap(big_r);
    if !(MIN_CLI_RADIUS..=1.0 / 3.0).contains(&r) {
        return usage(format!("R = {big_r} outside [{MIN_CLI_RADIUS}, 1/3]"));
    }
    Ok(Radius::new(r)?)
}

/// Formats `x` with 10 significant digits, trailing zeros removed.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..10).contains(&e) {
        let digits = (9 - e).max(0) as usize;
        let s = format!("{x:.digits$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.9e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// Rendered command output.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    pub default_format: Format,
    pub exit_code: u8,
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                let bytes = w.into_inner().map_err(|e| e.into_error())?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

fn cmd_lambda(big_r: f64, g: Option<WeightChoice>, bounds: bool) -> Result<Output, CliError> {
    let r = cli_radius(big_r)?;
    let res = match g {
        Some(WeightChoice::PaperExample) => {
            if bounds {
                return usage("--bounds applies to the unweighted constant only");
            }
            lambda_weighted(&WeightFunction::worked_example(), r)?
        }
        None => lambda_phi0(r)?,
    };
    let pair = if bounds {
        Some(lambda_bounds(r)?)
    } else {
        None
    };
    let method = serde_json::to_value(res.method)?;
    let method_str = method.as_str().unwrap_or_default().to_string();
    Ok(Output {
        header: vec!["R", "lambda", "argmin_a", "method", "tol", "lower", "upper"],
        rows: vec![vec![
            fmt_num(r.get()),
            fmt_num(res.lambda),
            fmt_num(res.argmin_a),
            method_str,
            fmt_num(res.tol),
            fmt_opt(pair.map(|p| p.lower)),
            fmt_opt(pair.map(|p| p.upper)),
        ]],
        json: json!({
            "R": r.get(),
            "lambda": res.lambda,
            "argmin_a": res.argmin_a,
            "method": method,
            "tol": res.tol,
            "weight": g.map(|_| WeightFunction::worked_example().name().to_string()),
            "lower": pair.map(|p| p.lower),
            "upper": pair.map(|p| p.upper),
        }),
        default_format: Format::Csv,
        exit_code: EXIT_OK,
    })
}

/// `steps` points from `lo` to `hi`, both included.
fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 || lo == hi {
        return vec![lo];
    }
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

fn cmd_astar(r_min: f64, r_max: f64, steps: usize) -> Result<Output, CliError> {
    if !(r_min > 0.0 && r_min <= r_max && r_max < 1.0 / 3.0) {
        return usage(format!(
            "need 0 < r-min <= r-max < 1/3, got r-min = {r_min}, r-max = {r_max}"
        ));
    }
    if steps == 0 {
        return usage("--steps must be positive");
    }
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for r in linspace(r_min, r_max, steps) {
        let cp = astar(Radius::new(r)?)?;
        rows.push(vec![
            fmt_num(r),
            fmt_num(cp.a),
            fmt_num(cp.residual),
            fmt_num(cp.m_value),
        ]);
        records.push(json!({
            "r": r,
            "astar": cp.a,
            "p_r_residual": cp.residual,
            "m_value": cp.m_value,
            "roots": cp.roots,
        }));
    }
    Ok(Output {
        header: vec!["r", "astar", "p_r_residual", "m_value"],
        rows,
        json: Value::Array(records),
        default_format: Format::Csv,
        exit_code: EXIT_OK,
    })
}

struct VerifyArgs {
    suite: Suite,
    samples: usize,
    seed: u64,
    big_r: f64,
    radii: usize,
    order: usize,
    exec: Exec,
}

fn cmd_verify(args: VerifyArgs) -> Result<Output, CliError> {
    let r = cli_radius(args.big_r)?;
    if args.samples == 0 || args.radii == 0 || args.order == 0 {
        return usage("--samples, --radii and --order must be positive");
    }
    let cfg = VerifyConfig {
        samples: args.samples,
        seed: args.seed,
        order: args.order,
        radii: args.radii,
        exec: args.exec,
    };
    let (slack_min, max_lhs, violations, details) = match args.suite {
        Suite::Dominance => {
            let rep = dominance_check(args.samples, args.exec);
            let clean = rep.passed;
            let violations = serde_json::to_value(&rep.violations)?;
            let violations = if clean || !rep.violations.is_empty() {
                violations
            } else {
                json!([{ "scalar_min_margin": rep.scalar_min_margin }])
            };
            (
                -rep.max_excess,
                rep.max_excess,
                violations,
                serde_json::to_value(&rep)?,
            )
        }
        Suite::ConditionI => {
            let rep = condition_i_spotcheck(r, &cfg);
            (
                -rep.max_excess,
                rep.max_excess,
                serde_json::to_value(&rep.violations)?,
                serde_json::to_value(&rep)?,
            )
        }
        suite => {
            let ineq = match suite {
                Suite::Classic => Inequality::Classic,
                Suite::Improved169 => Inequality::improved(ImprovedKind::Phi0With169, r)?,
                Suite::ImprovedLambda => Inequality::improved(ImprovedKind::Phi0WithLambdaR, r)?,
                Suite::Weighted => Inequality::improved(ImprovedKind::WeightedG, r)?,
                _ => Inequality::improved(ImprovedKind::PsiWith1, r)?,
            };
            let rep = verify_population(&ineq, r, &cfg);
            (
                rep.slack_min,
                rep.max_lhs,
                serde_json::to_value(&rep.violations)?,
                serde_json::to_value(&rep)?,
            )
        }
    };
    let n_violations = violations.as_array().map_or(0, Vec::len);
    let exit_code = if n_violations == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    Ok(Output {
        header: vec![
            "suite",
            "samples",
            "seed",
            "R",
            "slack_min",
            "max_lhs",
            "violations",
        ],
        rows: vec![vec![
            args.suite.name().to_string(),
            args.samples.to_string(),
            args.seed.to_string(),
            fmt_num(r.get()),
            fmt_num(slack_min),
            fmt_num(max_lhs),
            n_violations.to_string(),
        ]],
        json: json!({
            "suite": args.suite.name(),
            "samples": args.samples,
            "seed": args.seed,
            "R": r.get(),
            "slack_min": slack_min,
            "max_lhs": max_lhs,
            "violations": violations,
            "report": details,
        }),
        default_format: Format::Json,
        exit_code,
    })
}

fn cmd_plot(
    figure: Figure,
    a: Option<f64>,
    r: Option<f64>,
    steps: usize,
) -> Result<Output, CliError> {
    if steps == 0 {
        return usage("--steps must be positive");
    }
    let (header, points): (Vec<&'static str>, Vec<[f64; 3]>) = match figure {
        Figure::Bounds | Figure::BoundsZoom => {
            let lo = if figure == Figure::Bounds { 0.01 } else { 0.25 };
            let mut pts = Vec::new();
            for big_r in linspace(lo, 1.0 / 3.0, steps) {
                let b = lambda_bounds(Radius::new(big_r)?)?;
                pts.push([big_r, b.lower, b.upper]);
            }
            (vec!["R", "lower", "upper"], pts)
        }
        Figure::PsiVsPhi0A => {
            let Some(r) = r else {
                return usage("--figure psi-vs-phi0-a requires --r");
            };
            let r = Radius::new(snap(r))?;
            let pts = linspace(0.0, 1.0, steps)
                .into_iter()
                .map(|a| [a, psi_functional(a, r), phi0_mobius(a, r)])
                .collect();
            (vec!["a", "psi", "phi0"], pts)
        }
        Figure::PsiVsPhi0R => {
            let Some(a) = a else {
                return usage("--figure psi-vs-phi0-r requires --a");
            };
            if !(0.0..=1.0).contains(&a) {
                return usage(format!("a = {a} outside [0, 1]"));
            }
            let mut pts = Vec::new();
            for r in linspace(0.0, 1.0 / 3.0, steps) {
                let r = Radius::new(r)?;
                pts.push([r.get(), psi_functional(a, r), phi0_mobius(a, r)]);
            }
            (vec!["r", "psi", "phi0"], pts)
        }
    };
    let json = Value::Array(
        points
            .iter()
            .map(|p| json!({ header[0]: p[0], header[1]: p[1], header[2]: p[2] }))
            .collect(),
    );
    Ok(Output {
        rows: points
            .iter()
            .map(|p| p.iter().map(|&x| fmt_num(x)).collect())
            .collect(),
        header,
        json,
        default_format: Format::Csv,
        exit_code: EXIT_OK,
    })
}

/// Executes a parsed command without writing anything.
pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Lambda {
            big_r, g, bounds, ..
        } => cmd_lambda(*big_r, *g, *bounds),
        Command::Astar {
            r_min,
            r_max,
            steps,
            ..
        } => cmd_astar(*r_min, *r_max, *steps),
        Command::Verify {
            suite,
            samples,
            seed,
            big_r,
            radii,
            order,
            sequential,
            ..
        } => cmd_verify(VerifyArgs {
            suite: *suite,
            samples: *samples,
            seed: *seed,
            big_r: *big_r,
            radii: *radii,
            order: *order,
            exec: if *sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            },
        }),
        Command::Plot {
            figure,
            a,
            r,
            steps,
            ..
        } => cmd_plot(*figure, *a, *r, *steps),
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Lambda { out, .. }
        | Command::Astar { out, .. }
        | Command::Verify { out, .. }
        | Command::Plot { out, .. } => out,
    }
}

/// Runs the command and writes its output; returns the process exit code.
pub fn run(cli: &Cli) -> Result<u8, CliError> {
    let output = execute(&cli.command)?;
    let args = output_args(&cli.command);
    let text = output.render(args.format.unwrap_or(output.default_format))?;
    match &args.output {
        Some(path) => File::create(path)?.write_all(text.as_bytes())?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(output.exit_code)
}
