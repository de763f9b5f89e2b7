use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use zeta_forge::catalog::{self, EvaluationResult, FormulaDescriptor, Params};
use zeta_forge::PrecisionContext;

use crate::output::{self, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma separated term counts, e.g. 10,100,1000.
    #[arg(long)]
    terms_schedule: String,
    /// Restrict to these formula ids (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Restrict to one target class.
    #[arg(long)]
    target: Option<String>,
    /// Output path; "-" is stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = BenchFormat::Csv)]
    format: BenchFormat,
    /// Worker threads; formulas are spread across them, never split.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub formula_id: String,
    pub terms: u64,
    pub digits_requested: u32,
    pub value: String,
    pub abs_error: String,
    pub elapsed_seconds: f64,
}

impl From<&EvaluationResult> for BenchRow {
    fn from(r: &EvaluationResult) -> Self {
        BenchRow {
            formula_id: r.id.clone(),
            terms: r.terms,
            digits_requested: r.digits_requested,
            value: r.value.to_decimal(),
            abs_error: format!("{:.6}", r.abs_error_vs_ref),
            elapsed_seconds: r.elapsed_seconds,
        }
    }
}

pub fn rows_csv(rows: &[BenchRow]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.serialize(r).map_err(output::csv_error)?;
    }
    output::csv_finish(w)
}

fn parse_schedule(s: &str) -> Result<Vec<u64>, Failure> {
    let mut v = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let t: u64 = part
            .parse()
            .map_err(|_| Failure::Usage(format!("bad schedule entry {part:?}")))?;
        if t == 0 {
            return Err(Failure::Usage("schedule entries must be positive".into()));
        }
        v.push(t);
    }
    if v.is_empty() {
        return Err(Failure::Usage("empty terms schedule".into()));
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn select(args: &BenchArgs) -> Result<Vec<&'static FormulaDescriptor>, Failure> {
    let mut chosen: Vec<&'static FormulaDescriptor> = if args.only.is_empty() {
        catalog::list_formulas().iter().collect()
    } else {
        args.only
            .iter()
            .map(|id| catalog::descriptor(id.trim()))
            .collect::<Result<_, _>>()?
    };
    if let Some(t) = &args.target {
        chosen.retain(|d| crate::snake(&d.target).eq_ignore_ascii_case(t));
    }
    chosen.sort_by_key(|d| d.id);
    chosen.dedup_by_key(|d| d.id);
    if chosen.is_empty() {
        return Err(Failure::Usage("no formulas selected".into()));
    }
    Ok(chosen)
}

pub fn cmd_bench(args: &BenchArgs, ctx: &PrecisionContext) -> Result<(), Failure> {
    let schedule = parse_schedule(&args.terms_schedule)?;
    let formulas = select(args)?;
    if args.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    let params = Params::new();
    // points below a formula's minimum index are skipped
    let per_formula: Vec<Result<Vec<BenchRow>, Failure>> = pool.install(|| {
        formulas
            .par_iter()
            .map(|d| {
                schedule
                    .iter()
                    .filter(|&&t| t >= d.min_terms)
                    .map(|&t| Ok(BenchRow::from(&catalog::evaluate(d.id, &params, t, ctx)?)))
                    .collect()
            })
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_formula {
        rows.extend(r?);
    }
    rows.sort_by(|a, b| (&a.formula_id, a.terms).cmp(&(&b.formula_id, b.terms)));
    let body = match args.format {
        BenchFormat::Csv => rows_csv(&rows)?,
        BenchFormat::Json => output::json(&rows),
    };
    output::emit(&body, Some(&args.out))
}
