mod bench;
mod output;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zeta_forge::catalog::{self, Params};
use zeta_forge::dynamic::make_transform_matrix;
use zeta_forge::precision::{constant, zeta_int};
use zeta_forge::quadrature::{integrate, IntegrandId, QuadratureSpec};
use zeta_forge::reversion::{
    build_system, pi_from_zeta3, pi_from_zeta3_centered, pi_series, pi_series_centered, TailModel,
};
use zeta_forge::roots::{continued_root, RootPattern};
use zeta_forge::{make_context, BigReal, ConstantId, PrecisionContext};

use output::{emit, Failure};

#[derive(Parser, Debug)]
#[command(
    name = "zeta-forge",
    version,
    about = "High-precision series, roots and quadrature for ζ(3) and friends"
)]
struct Cli {
    /// Decimal digits of output precision.
    #[arg(long, global = true, env = "ZETA_FORGE_DIGITS", default_value_t = 30)]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the formula registry.
    List {
        /// Only formulas for this target (zeta3, zeta_n, eta_n, constant_identity).
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Evaluate one formula.
    Eval {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        terms: u64,
        /// key=value; repeatable or comma separated.
        #[arg(long = "param")]
        params: Vec<String>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Convergence table across the catalog.
    Bench(bench::BenchArgs),
    /// Print the transform matrix M_n.
    Matrix {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Solve a continued root such as "+|-".
    Root {
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Tanh-sinh quadrature of a registered integrand.
    Integrate {
        #[arg(long)]
        id: String,
        /// Maximum refinement level.
        #[arg(long)]
        levels: Option<u32>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Revert the ζ(3) generating series and evaluate it for π.
    Revert {
        #[arg(long)]
        order: usize,
        /// Expand around the midpoint instead of 0.
        #[arg(long)]
        centered: bool,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Build and solve the triangular α(3) system.
    System {
        #[arg(long)]
        n: usize,
        /// zeros, ones, oracle or leading_one.
        #[arg(long, default_value = "ones")]
        tail: String,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("zeta-forge: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let ctx = make_context(cli.digits)?;
    match cli.command {
        Command::List { target, fmt } => cmd_list(target.as_deref(), fmt.format),
        Command::Eval {
            formula,
            terms,
            params,
            fmt,
        } => cmd_eval(&formula, terms, &params, &ctx, fmt.format),
        Command::Bench(args) => bench::cmd_bench(&args, &ctx),
        Command::Matrix { n, fmt } => cmd_matrix(n, fmt.format),
        Command::Root { pattern, fmt } => cmd_root(&pattern, &ctx, fmt.format),
        Command::Integrate { id, levels, fmt } => cmd_integrate(&id, levels, &ctx, fmt.format),
        Command::Revert {
            order,
            centered,
            fmt,
        } => cmd_revert(order, centered, &ctx, fmt.format),
        Command::System { n, tail, fmt } => cmd_system(n, &tail, &ctx, fmt.format),
    }
}

fn snake<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn parse_params(raw: &[String]) -> Result<Params, Failure> {
    Ok(raw.join(",").parse::<Params>()?)
}

fn cmd_list(target: Option<&str>, format: Format) -> Result<(), Failure> {
    let rows: Vec<_> = catalog::list_formulas()
        .iter()
        .filter(|d| target.is_none_or(|t| snake(&d.target).eq_ignore_ascii_case(t)))
        .collect();
    if rows.is_empty() {
        return Err(Failure::Usage(format!(
            "no formulas for target {:?}",
            target.unwrap_or("")
        )));
    }
    let body = match format {
        Format::Json => output::json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(["id", "target", "convergence", "citation", "summary"])
                .and_then(|_| {
                    rows.iter().try_for_each(|d| {
                        w.write_record([
                            d.id,
                            &snake(&d.target),
                            &snake(&d.convergence),
                            d.citation,
                            d.summary,
                        ])
                    })
                })
                .map_err(output::csv_error)?;
            output::csv_finish(w)?
        }
        Format::Text => {
            let mut s = format!("{:<20} {:<18} {:<10} citation\n", "id", "target", "class");
            for d in &rows {
                let _ = writeln!(
                    s,
                    "{:<20} {:<18} {:<10} {}",
                    d.id,
                    snake(&d.target),
                    snake(&d.convergence),
                    d.citation
                );
            }
            s
        }
    };
    emit(&body, None)
}

fn cmd_eval(
    formula: &str,
    terms: u64,
    params: &[String],
    ctx: &PrecisionContext,
    format: Format,
) -> Result<(), Failure> {
    let p = parse_params(params)?;
    let r = catalog::evaluate(formula, &p, terms, ctx)?;
    let body = match format {
        Format::Json => output::json(&r),
        Format::Csv => bench::rows_csv(&[bench::BenchRow::from(&r)])?,
        Format::Text => format!(
            "formula    {}\nparams     {}\nterms      {}\ndigits     {}\nvalue      {}\nreference  {}\nerror      {:.6}\ncorrect    {:.2}\nelapsed    {:.6}s\n",
            r.id,
            r.params,
            r.terms,
            r.digits_requested,
            r.value,
            r.reference,
            r.abs_error_vs_ref,
            r.correct_digits(),
            r.elapsed_seconds
        ),
    };
    emit(&body, None)
}

fn cmd_matrix(n: u32, format: Format) -> Result<(), Failure> {
    let m = make_transform_matrix(n)?;
    let body = match format {
        Format::Json => output::json(&m),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            for row in &m.entries {
                w.serialize(row).map_err(output::csv_error)?;
            }
            output::csv_finish(w)?
        }
        Format::Text => {
            let mut s = format!("M_{n} (dimension {}, scale {})\n", m.dim(), m.scale);
            for row in &m.entries {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>5}")).collect();
                let _ = writeln!(s, "[{}]", cells.join(","));
            }
            s
        }
    };
    emit(&body, None)
}

fn cmd_root(pattern: &str, ctx: &PrecisionContext, format: Format) -> Result<(), Failure> {
    let p: RootPattern = pattern.parse()?;
    let r = continued_root(&p, ctx)?;
    let body = match format {
        Format::Json => output::json(&r),
        _ => format!(
            "pattern     {}\nvalue       {}\nangle       {}  (value = 2 cos(angle·π))\ncandidates  {}\n",
            r.pattern, r.value, r.angle, r.candidates
        ),
    };
    emit(&body, None)
}

fn cmd_integrate(
    id: &str,
    levels: Option<u32>,
    ctx: &PrecisionContext,
    format: Format,
) -> Result<(), Failure> {
    let id: IntegrandId = id.parse()?;
    let spec = match levels {
        Some(l) => QuadratureSpec::new(l, ctx.digits())?,
        None => QuadratureSpec::for_context(ctx),
    };
    let r = integrate(id, &spec, ctx)?;
    let body = match format {
        Format::Json => output::json(&r),
        _ => format!(
            "integrand   {} = {}\nvalue       {}\nreference   {}\nerror       {:.6}\nestimate    {:.6}\nlevels      {}\nevaluations {}\nelapsed     {:.6}s\n",
            r.id,
            id.expression(),
            r.value,
            r.reference,
            r.abs_error_vs_ref,
            r.error_estimate,
            r.levels_used,
            r.evaluations,
            r.elapsed_seconds
        ),
    };
    emit(&body, None)
}

#[derive(Serialize)]
struct RevertReport {
    order: usize,
    centered: bool,
    series: zeta_forge::reversion::PowerSeries,
    pi: BigReal,
    error: BigReal,
}

fn cmd_revert(
    order: usize,
    centered: bool,
    ctx: &PrecisionContext,
    format: Format,
) -> Result<(), Failure> {
    let (series, pi) = if centered {
        (
            pi_series_centered(order, ctx)?,
            pi_from_zeta3_centered(order, ctx)?,
        )
    } else {
        (pi_series(order, ctx)?, pi_from_zeta3(order, ctx)?)
    };
    let error = pi.diff(&constant(ConstantId::Pi, ctx));
    let rep = RevertReport {
        order,
        centered,
        series,
        pi,
        error,
    };
    let body = match format {
        Format::Json => output::json(&rep),
        _ => {
            let mut s = format!("center  {:.20}\n", rep.series.center());
            for (k, c) in rep.series.coefficients().iter().enumerate() {
                let _ = writeln!(s, "g[{k:>2}]   {c:.20}");
            }
            let _ = write!(s, "pi      {}\nerror   {:.6}\n", rep.pi, rep.error);
            s
        }
    };
    emit(&body, None)
}

#[derive(Serialize)]
struct SystemReport {
    system: zeta_forge::reversion::TriangularSystem,
    solution: Vec<BigReal>,
    alpha3: BigReal,
    error: BigReal,
}

fn cmd_system(n: usize, tail: &str, ctx: &PrecisionContext, format: Format) -> Result<(), Failure> {
    let tail: TailModel = tail.parse()?;
    let system = build_system(n, tail)?;
    let solution = system.solve(ctx);
    let alpha3 = ctx.finish(zeta_int(3, ctx)?.into_float() * 7u32 / 8u32);
    let error = solution[0].diff(&alpha3);
    let rep = SystemReport {
        system,
        solution,
        alpha3,
        error,
    };
    let body = match format {
        Format::Json => output::json(&rep),
        _ => {
            let mut s = format!("n = {n}, tail = {}\n", snake(&tail));
            for row in rep.system.matrix() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>12}")).collect();
                let _ = writeln!(s, "{}", cells.join(" "));
            }
            for (i, x) in rep.solution.iter().enumerate() {
                let _ = writeln!(s, "α({}) ≈ {x:.25}", 2 * i + 3);
            }
            let _ = writeln!(s, "error in α(3): {:.6}", rep.error);
            s
        }
    };
    emit(&body, None)
}
