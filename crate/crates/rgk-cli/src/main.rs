//! `rgk` — command-line front end for the relativity groupoid kit.
//!
//! Subcommands: `velocity`, `compose`, `invert`, `algebra`, `check`,
//! `scenario`, `einstein`. Global flags pick the speed of light, the
//! arithmetic mode, the float tolerance, and the output format. Exit
//! status is 0 when every query succeeded, 1 otherwise (2 for usage
//! errors, courtesy of the argument parser).

// Error enums carry exact scalars and offending input by value; they
// are built on cold paths only, so the size is not worth boxing away.
#![allow(clippy::result_large_err)]

use clap::{Parser, Subcommand, ValueEnum};
use report::{
    arrow_is_exact, arrow_value, scalar_value, suite_value, three_velocity_value, QueryOutcome,
    Report,
};
use rgk_cli::{expr, files, report};
use rgk_core::algebra::{frobenius_rank, trace_element, AlgebraError, GramTable};
use rgk_core::einstein::{
    associativity_residual_einstein, einstein_add, gyration_angle, EinsteinError, ThreeVelocity,
};
use rgk_core::groupoid::{GroupoidContext, GroupoidError};
use rgk_core::minkowski::{MetricContext, MinkowskiError};
use rgk_core::scalar::ArithmeticMode;
use rgk_core::suites::{run_suite, SuiteError};
use rgk_core::velocity::{magnitude_sq, VelocityError};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("expected three comma-separated components, got {0:?}")]
    BadTriple(String),
    #[error(transparent)]
    File(#[from] files::FileError),
    #[error(transparent)]
    Syntax(#[from] expr::SyntaxError),
    #[error(transparent)]
    Eval(#[from] expr::EvalError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
    #[error(transparent)]
    Einstein(#[from] EinsteinError),
    #[error(transparent)]
    Velocity(#[from] VelocityError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for ArithmeticMode {
    fn from(mode: ModeArg) -> ArithmeticMode {
        match mode {
            ModeArg::Exact => ArithmeticMode::Exact,
            ModeArg::Float => ArithmeticMode::Float,
        }
    }
}

fn non_negative_f64(text: &str) -> Result<f64, String> {
    let value: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err("tolerance must be a non-negative finite number".to_owned())
    }
}

/// Groupoid velocities, their composition, and the table algebra
/// behind them.
#[derive(Parser)]
#[command(name = "rgk", version, about)]
struct Cli {
    /// Speed of light (integer or a/b in exact mode, decimal in float mode)
    #[arg(long, global = true, default_value = "1")]
    c: String,
    /// Arithmetic mode: exact big rationals or f64
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Comparison tolerance used in float mode
    #[arg(long, global = true, default_value = "1e-9", value_parser = non_negative_f64)]
    tolerance: f64,
    /// Emit the report as JSON
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit the report as aligned text (the default)
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relative velocity arrow between two observers
    Velocity {
        /// JSON array of observers ({id, monad} or {id, velocity})
        #[arg(long, value_name = "FILE")]
        observers: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Compose the arrows along a chain of observers
    Compose {
        /// JSON array of observers ({id, monad} or {id, velocity})
        #[arg(long, value_name = "FILE")]
        observers: PathBuf,
        /// Comma-separated observer ids, e.g. p,q,r
        #[arg(long, value_delimiter = ',', num_args = 1.., value_name = "IDS")]
        chain: Vec<String>,
    },
    /// Groupoid inverse of the arrow between two observers
    Invert {
        /// JSON array of observers ({id, monad} or {id, velocity})
        #[arg(long, value_name = "FILE")]
        observers: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Evaluate an expression in the table algebra
    Algebra {
        /// Expression, e.g. "q*p - tr(q*p)*(p + w(p,q))"
        #[arg(short = 'e', long)]
        expr: String,
        /// Trace table file ({objects, traces})
        #[arg(short = 'g', long, value_name = "FILE")]
        gram: PathBuf,
        /// Reject the degenerate arrow w(p,p); pass false to read it as zero
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set, value_name = "BOOL")]
        strict_arrows: bool,
    },
    /// Run a named invariant suite over sampled configurations
    Check {
        /// One of: observer, velocity, algebra, groupoid, einstein, galilean, all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 64)]
        trials: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Run a scenario file: context, observers, and a query list
    Scenario { file: PathBuf },
    /// One-chart velocity addition, its gyration, and (with --w) its
    /// associativity defect
    Einstein {
        #[arg(long, value_name = "X,Y,Z")]
        u: String,
        #[arg(long, value_name = "X,Y,Z")]
        v: String,
        #[arg(long, value_name = "X,Y,Z")]
        w: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    match run(cli) {
        Ok(report) => {
            print!(
                "{}",
                if as_json {
                    report.render_json()
                } else {
                    report.render_text()
                }
            );
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(1)
        }
    }
}

fn build_context(cli: &Cli) -> Result<MetricContext, CliError> {
    let mode: ArithmeticMode = cli.mode.into();
    let c = files::parse_scalar(&cli.c, mode)?;
    Ok(MetricContext::new(
        MetricContext::default_metric(),
        c,
        mode,
        cli.tolerance,
    )?)
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Velocity {
            observers,
            from,
            to,
        } => {
            let ctx = build_context(&cli)?;
            let family = load_family(observers, &ctx)?;
            let arrow = family.arrow(from, to)?;
            let mut report = family_report(&family);
            report.push(QueryOutcome::ok(
                format!("velocity {from} -> {to}"),
                arrow_value(&arrow),
                arrow_is_exact(&arrow),
            ));
            Ok(report)
        }
        Command::Compose { observers, chain } => {
            let ctx = build_context(&cli)?;
            let family = load_family(observers, &ctx)?;
            let arrow = family.compose_chain(chain)?;
            let mut report = family_report(&family);
            report.push(QueryOutcome::ok(
                format!("compose {}", chain.join(" -> ")),
                arrow_value(&arrow),
                arrow_is_exact(&arrow),
            ));
            Ok(report)
        }
        Command::Invert {
            observers,
            from,
            to,
        } => {
            let ctx = build_context(&cli)?;
            let family = load_family(observers, &ctx)?;
            let arrow = family.inverse(&family.arrow(from, to)?)?;
            let mut report = family_report(&family);
            report.push(QueryOutcome::ok(
                format!("invert {from} -> {to}"),
                arrow_value(&arrow),
                arrow_is_exact(&arrow),
            ));
            Ok(report)
        }
        Command::Algebra {
            expr: text,
            gram,
            strict_arrows,
        } => {
            let ctx = build_context(&cli)?;
            let gram = files::load_gram(gram, &ctx)?;
            let mut report = Report::new(&ctx);
            let (value, exact) = eval_algebra(text, &gram, &ctx, *strict_arrows)?;
            report.push(QueryOutcome::ok(format!("algebra {text}"), value, exact));
            Ok(report)
        }
        Command::Check {
            suite,
            trials,
            seed,
        } => {
            let ctx = build_context(&cli)?;
            let suite_report = run_suite(suite, *trials, *seed, &ctx)?;
            let mut report = Report::new(&ctx);
            let passed = suite_report.passed();
            let value = suite_value(&suite_report);
            let exact = ctx.mode() == ArithmeticMode::Exact;
            report.push(if passed {
                QueryOutcome::ok(format!("check {suite}"), value, exact)
            } else {
                QueryOutcome::failed(format!("check {suite}"), value, exact)
            });
            Ok(report)
        }
        Command::Scenario { file } => run_scenario(file),
        Command::Einstein { u, v, w } => {
            let ctx = build_context(&cli)?;
            let u = parse_triple(u, ctx.mode())?;
            let v = parse_triple(v, ctx.mode())?;
            let w = w
                .as_deref()
                .map(|w| parse_triple(w, ctx.mode()))
                .transpose()?;
            let mut report = Report::new(&ctx);
            let label = if w.is_some() {
                "einstein u+v+w"
            } else {
                "einstein u+v"
            };
            let (value, exact) = einstein_payload(&u, &v, w.as_ref(), &ctx)?;
            report.push(QueryOutcome::ok(label, value, exact));
            Ok(report)
        }
    }
}

fn load_family(path: &Path, ctx: &MetricContext) -> Result<GroupoidContext, CliError> {
    let observers = files::load_observers(path, ctx)?;
    Ok(GroupoidContext::new(observers, ctx.clone())?)
}

fn family_report(family: &GroupoidContext) -> Report {
    Report::new(family.ctx()).with_observers(family.observers().map(|o| (o.id(), o.monad())))
}

fn parse_triple(text: &str, mode: ArithmeticMode) -> Result<ThreeVelocity, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::BadTriple(text.to_owned()));
    }
    Ok(ThreeVelocity::new([
        files::parse_scalar(parts[0], mode)?,
        files::parse_scalar(parts[1], mode)?,
        files::parse_scalar(parts[2], mode)?,
    ]))
}

fn eval_algebra(
    text: &str,
    gram: &GramTable,
    ctx: &MetricContext,
    strict_arrows: bool,
) -> Result<(serde_json::Value, bool), CliError> {
    let ast = expr::parse_expression(text)?;
    let element = expr::evaluate(&ast, gram, ctx, strict_arrows)?;
    let mut terms = serde_json::Map::new();
    let mut exact = true;
    for (basis, coeff) in element.terms() {
        exact &= coeff.is_exact();
        terms.insert(basis.to_string(), scalar_value(coeff));
    }
    // The trace is reported when it exists; elements with a unit
    // component have none (the unit's trace is a free parameter).
    let trace = trace_element(&element, None)
        .ok()
        .map(|t| scalar_value(&t))
        .unwrap_or(serde_json::Value::Null);
    let value = json!({
        "expr": ast.to_string(),
        "element": element.to_string(),
        "terms": terms,
        "trace": trace,
        "is_zero": element.is_zero(),
    });
    Ok((value, exact))
}

fn einstein_payload(
    u: &ThreeVelocity,
    v: &ThreeVelocity,
    w: Option<&ThreeVelocity>,
    ctx: &MetricContext,
) -> Result<(serde_json::Value, bool), CliError> {
    let uv = einstein_add(u, v, ctx)?;
    let vu = einstein_add(v, u, ctx)?;
    let angle = gyration_angle(u, v, ctx)?;
    let speed_sq = uv.norm_sq();
    let mut exact = uv.norm_sq().is_exact() && vu.norm_sq().is_exact() && angle.is_exact();
    let mut map = serde_json::Map::new();
    map.insert("u".to_owned(), three_velocity_value(u));
    map.insert("v".to_owned(), three_velocity_value(v));
    map.insert("u_plus_v".to_owned(), three_velocity_value(&uv));
    map.insert("v_plus_u".to_owned(), three_velocity_value(&vu));
    map.insert("speed_sq".to_owned(), scalar_value(&speed_sq));
    map.insert("gyration_angle".to_owned(), scalar_value(&angle));
    if let Some(w) = w {
        let residual = associativity_residual_einstein(u, v, w, ctx)?;
        exact &= residual.is_exact();
        map.insert("w".to_owned(), three_velocity_value(w));
        map.insert("associativity_residual".to_owned(), scalar_value(&residual));
    }
    Ok((serde_json::Value::Object(map), exact))
}

fn run_scenario(path: &Path) -> Result<Report, CliError> {
    let file = files::load_scenario(path)?;
    let ctx = file.context()?;
    let mut observers = Vec::new();
    for spec in &file.observers {
        observers.push(spec.build(&ctx)?);
    }
    let family = GroupoidContext::new(observers, ctx)?;
    let mut specs = Vec::new();
    for (index, raw) in file.queries.iter().enumerate() {
        specs.push(files::parse_query(index, raw)?);
    }
    let mut report = family_report(&family);
    for spec in &specs {
        report.push(run_query(spec, &family));
    }
    Ok(report)
}

fn run_query(spec: &files::QuerySpec, family: &GroupoidContext) -> QueryOutcome {
    let label = spec.label();
    match eval_query(spec, family) {
        Ok((value, exact, passed)) => {
            if passed {
                QueryOutcome::ok(label, value, exact)
            } else {
                QueryOutcome::failed(label, value, exact)
            }
        }
        Err(error) => QueryOutcome::error(label, error, family.ctx()),
    }
}

fn eval_query(
    spec: &files::QuerySpec,
    family: &GroupoidContext,
) -> Result<(serde_json::Value, bool, bool), CliError> {
    let ctx = family.ctx();
    match spec {
        files::QuerySpec::Velocity { from, to } => {
            let arrow = family.arrow(from, to)?;
            Ok((arrow_value(&arrow), arrow_is_exact(&arrow), true))
        }
        files::QuerySpec::Compose { chain } => {
            let arrow = family.compose_chain(chain)?;
            Ok((arrow_value(&arrow), arrow_is_exact(&arrow), true))
        }
        files::QuerySpec::Invert { from, to } => {
            let arrow = family.inverse(&family.arrow(from, to)?)?;
            Ok((arrow_value(&arrow), arrow_is_exact(&arrow), true))
        }
        files::QuerySpec::Magnitude { from, to } => {
            let arrow = family.arrow(from, to)?;
            let from_table = magnitude_sq(&arrow, family.gram(), ctx)?;
            let geometric = arrow.speed_sq();
            let c_sq = ctx.c_squared();
            let subluminal = (&c_sq - geometric).is_positive();
            let value = json!({
                "speed_sq": scalar_value(geometric),
                "from_table": scalar_value(&from_table),
                "subluminal": subluminal,
            });
            Ok((value, geometric.is_exact() && from_table.is_exact(), true))
        }
        files::QuerySpec::Algebra { expr: text } => {
            let (value, exact) = eval_algebra(text, family.gram(), ctx, true)?;
            Ok((value, exact, true))
        }
        files::QuerySpec::Check {
            suite,
            trials,
            seed,
        } => {
            let suite_report = run_suite(suite, trials.unwrap_or(64), seed.unwrap_or(7), ctx)?;
            let passed = suite_report.passed();
            Ok((
                suite_value(&suite_report),
                ctx.mode() == ArithmeticMode::Exact,
                passed,
            ))
        }
        files::QuerySpec::Einstein { u, v, w } => {
            let u = files::parse_vector3(u, ctx.mode())?;
            let v = files::parse_vector3(v, ctx.mode())?;
            let w = w
                .as_ref()
                .map(|w| files::parse_vector3(w, ctx.mode()))
                .transpose()?;
            let (value, exact) = einstein_payload(&u, &v, w.as_ref(), ctx)?;
            Ok((value, exact, true))
        }
        files::QuerySpec::Frobenius { tau } => {
            let tau = files::parse_scalar(tau, ctx.mode())?;
            let rep = frobenius_rank(family.gram(), ctx, &tau)?;
            let value = json!({
                "objects": rep.objects,
                "dim": rep.dim,
                "tau": scalar_value(&rep.tau),
                "rank": rep.rank,
                "nondegenerate": rep.nondegenerate,
            });
            Ok((value, rep.exact, true))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use rgk_core::scalar::Scalar;

    #[test]
    fn the_command_line_grammar_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn triples_parse_and_misshapen_ones_do_not() {
        let v = parse_triple("3/5, 0, 0", ArithmeticMode::Exact).unwrap();
        assert_eq!(v.components()[0], Scalar::ratio(3, 5));
        assert!(matches!(
            parse_triple("1,2", ArithmeticMode::Exact),
            Err(CliError::BadTriple(_))
        ));
        assert!(parse_triple("0.5,0,0", ArithmeticMode::Exact).is_err());
    }
}
