//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid or rejected input, 3 unclassified
//! factor present, 4 internal inconsistency or failed verification.

pub mod input;
pub mod report;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;

use crate::curve::{self, CurveError, RationalParametrization};
use crate::numcheck::{self, NumError, PlotFormat, SuiteConfig};
use crate::offset::{structure_report_with, OffsetError, OffsetProblem};
use crate::polycore::MultiPoly;

use input::{parse_curve, parse_distance, rational_text, CurveInputDocument};
use report::{report_json, report_text, InputEcho};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNCLASSIFIED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "offsetal",
    version,
    about = "Implicit equations of offsets of rational plane curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Curve file with `x = ...` and `y = ...` lines
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    /// Offset distance as an exact rational `p` or `p/q`
    #[arg(short = 'd', long = "distance", allow_hyphen_values = true)]
    pub d: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Offset equation with its factor structure
    OffsetEq {
        #[command(flatten)]
        dist: DistanceArgs,
        #[command(flatten)]
        curve: CurveArgs,
        /// JSON report (sorted keys)
        #[arg(long, conflicts_with = "text")]
        json: bool,
        /// Plain text report (the default)
        #[arg(long)]
        text: bool,
        /// Write the report here instead of stdout
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Replaces the extraneous candidates (testing only)
        #[arg(long, hide = true)]
        extraneous_override: Option<String>,
    },
    /// Tracing index of the parametrization
    TracingIndex {
        #[command(flatten)]
        curve: CurveArgs,
        /// JSON output
        #[arg(long)]
        json: bool,
    },
    /// Implicit equation of the curve
    Implicitize {
        #[command(flatten)]
        curve: CurveArgs,
        /// JSON output
        #[arg(long)]
        json: bool,
    },
    /// Whether the curve is itself an offset, from the special component
    IsOffset {
        #[command(flatten)]
        dist: DistanceArgs,
        #[command(flatten)]
        curve: CurveArgs,
        /// JSON output
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        extraneous_override: Option<String>,
    },
    /// Sample the offset for plotting
    Sample {
        #[command(flatten)]
        dist: DistanceArgs,
        #[command(flatten)]
        curve: CurveArgs,
        /// Parameter range `a:b`
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        /// Number of evenly spaced parameters
        #[arg(long)]
        count: usize,
        /// SVG plot (the default)
        #[arg(long, conflicts_with = "csv")]
        svg: bool,
        /// CSV with columns t,branch,x,y
        #[arg(long)]
        csv: bool,
        /// Output file, written atomically
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Numeric consistency checks of the computed structure
    Verify {
        #[command(flatten)]
        dist: DistanceArgs,
        #[command(flatten)]
        curve: CurveArgs,
        /// Number of random parameters to sample
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Specialization value for `y`
        #[arg(long, allow_hyphen_values = true)]
        y0: Option<String>,
        /// JSON output
        #[arg(long)]
        json: bool,
    },
}

/// A failed command with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        let code = if matches!(e, CurveError::Inconsistent(_) | CurveError::Poly(_)) {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<OffsetError> for Failure {
    fn from(e: OffsetError) -> Self {
        let code = if e.is_internal() {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<NumError> for Failure {
    fn from(e: NumError) -> Self {
        match e {
            NumError::Offset(e) => e.into(),
            other => Failure::input(other.to_string()),
        }
    }
}

/// Output of a successful (or soft-failed) command.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Loaded {
    doc: CurveInputDocument,
    rp: RationalParametrization,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let doc = parse_curve(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let rp = doc.parametrization()?;
    Ok(Loaded { doc, rp })
}

fn echo(doc: &CurveInputDocument, d: &BigRational) -> InputEcho {
    let (x, y) = doc.functions();
    InputEcho {
        x: rational_text(&x),
        y: rational_text(&y),
        d: d.clone(),
    }
}

fn distance(s: &str) -> Result<BigRational, Failure> {
    parse_distance(s).map_err(|e| Failure::input(e.to_string()))
}

fn override_poly(s: &Option<String>) -> Result<Option<MultiPoly>, Failure> {
    s.as_deref()
        .map(|s| {
            s.parse::<MultiPoly>()
                .map_err(|e| Failure::input(format!("extraneous override: {e}")))
        })
        .transpose()
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn unclassified_message(count: usize) -> String {
    format!("{count} squarefree part(s) of H could not be classified; F and G are incomplete")
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let ok = |stdout: String| Outcome {
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    };
    match &cli.command {
        Command::OffsetEq {
            dist,
            curve,
            json,
            text: _,
            output,
            extraneous_override,
        } => {
            let d = distance(&dist.d)?;
            let l = load(&curve.input)?;
            let e = override_poly(extraneous_override)?;
            let op = OffsetProblem::new(&l.rp, d.clone())?;
            let r = structure_report_with(&op, e.as_ref())?;
            let input = echo(&l.doc, &d);
            let body = if *json {
                pretty(&report_json(&input, &op.curve.np, &r))
            } else {
                report_text(&input, &r)
            };
            let mut out = Outcome {
                stdout: String::new(),
                stderr: String::new(),
                code: EXIT_OK,
            };
            match output {
                Some(path) => numcheck::write_atomic(path, &body)?,
                None => out.stdout = body,
            }
            let unclassified = r
                .factors
                .iter()
                .filter(|f| f.kind == crate::offset::FactorKind::Unclassified)
                .count();
            if unclassified > 0 {
                out.stderr = unclassified_message(unclassified);
                out.code = EXIT_UNCLASSIFIED;
            }
            Ok(out)
        }
        Command::TracingIndex { curve, json } => {
            let l = load(&curve.input)?;
            let n = curve::tracing_index(&l.rp)?;
            Ok(ok(if *json {
                pretty(&json!({ "tracing_index": n }))
            } else {
                format!("{n}\n")
            }))
        }
        Command::Implicitize { curve, json } => {
            let l = load(&curve.input)?;
            let c = curve::implicitize(&l.rp)?;
            let f = c.f.to_string();
            Ok(ok(if *json {
                pretty(&json!({
                    "implicit": f,
                    "degree": c.f.total_degree(),
                    "tracing_index": c.tracing_index,
                    "constant": c.constant.to_string(),
                }))
            } else {
                format!("{f}\n")
            }))
        }
        Command::IsOffset {
            dist,
            curve,
            json,
            extraneous_override,
        } => {
            let d = distance(&dist.d)?;
            let l = load(&curve.input)?;
            let e = override_poly(extraneous_override)?;
            let op = OffsetProblem::new(&l.rp, d)?;
            let r = structure_report_with(&op, e.as_ref())?;
            let special = r.special_equation().map(|p| p.to_string());
            let body = if *json {
                pretty(&json!({ "is_offset": r.is_offset(), "special_equation": special }))
            } else {
                format!(
                    "is_offset: {}\nspecial_equation: {}\n",
                    r.is_offset(),
                    special.as_deref().unwrap_or("none")
                )
            };
            let mut out = ok(body);
            if r.has_unclassified() {
                out.stderr = unclassified_message(
                    r.factors
                        .iter()
                        .filter(|f| f.kind == crate::offset::FactorKind::Unclassified)
                        .count(),
                );
                out.code = EXIT_UNCLASSIFIED;
            }
            Ok(out)
        }
        Command::Sample {
            dist,
            curve,
            range,
            count,
            svg: _,
            csv,
            output,
        } => {
            let d = distance(&dist.d)?;
            let (a, b) = parse_range(range)?;
            if *count == 0 || a >= b {
                return Err(NumError::EmptyRange.into());
            }
            let l = load(&curve.input)?;
            let op = OffsetProblem::new(&l.rp, d)?;
            let r = structure_report_with(&op, None)?;
            let format = if *csv {
                PlotFormat::Csv
            } else {
                PlotFormat::Svg
            };
            let summary =
                numcheck::emit_plot(&op, &r, &numcheck::linspace(a, b, *count), format, output)?;
            let mut out = ok(format!(
                "{} samples written to {}; {} parameters skipped\n",
                summary.samples,
                output.display(),
                summary.skipped
            ));
            out.stderr = summary.notices.join("\n");
            Ok(out)
        }
        Command::Verify {
            dist,
            curve,
            samples,
            y0,
            json,
        } => {
            let d = distance(&dist.d)?;
            let l = load(&curve.input)?;
            let op = OffsetProblem::new(&l.rp, d)?;
            let r = structure_report_with(&op, None)?;
            let mut cfg = SuiteConfig {
                samples: *samples,
                ..SuiteConfig::default()
            };
            if let Some(y0) = y0 {
                let q = parse_rational(y0)?;
                cfg.y0s = vec![q];
            }
            let checks = numcheck::consistency_suite(&op, &r, &cfg)?;
            let passed = checks.iter().all(|c| c.passed);
            let body = if *json {
                let list: Vec<_> = checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect();
                pretty(&json!({ "checks": list, "passed": passed }))
            } else {
                checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{} {}: {}\n",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.name,
                            c.detail
                        )
                    })
                    .collect()
            };
            let mut out = ok(body);
            if r.has_unclassified() {
                out.code = EXIT_UNCLASSIFIED;
            } else if !passed {
                out.code = EXIT_INTERNAL;
                out.stderr = "numeric verification failed".into();
            }
            Ok(out)
        }
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::input(format!("range `{s}` must be `a:b` with numbers a < b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    let bad = || Failure::input(format!("`{s}` is not an exact rational"));
    let e = input::parse_expr(s, 1, 0).map_err(|_| bad())?;
    let f = e.eval().ok_or_else(bad)?;
    if !f.den.is_constant() || !f.num.is_constant() {
        return Err(bad());
    }
    let n = f.num.coeff(0);
    let d = f.den.coeff(0);
    Ok(n / d)
}

/// Parses `argv`, runs the command and writes its output; returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            if !out.stderr.is_empty() {
                eprintln!("{}", out.stderr);
            }
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-10:10").unwrap(), (-10.0, 10.0));
        assert!(parse_range("1").is_err());
        assert!(parse_range("a:b").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("-3/7").unwrap(),
            BigRational::new((-3).into(), 7.into())
        );
        assert!(parse_rational("t").is_err());
    }

    #[test]
    fn clap_surface() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        let c = Cli::try_parse_from(["offsetal", "offset-eq", "-d", "-1", "-i", "f.txt", "--json"])
            .unwrap();
        assert!(matches!(c.command, Command::OffsetEq { json: true, .. }));
    }
}
