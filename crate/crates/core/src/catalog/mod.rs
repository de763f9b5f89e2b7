//! Registry of series and limit representations of ζ(3), ζ(k), η(k) and a
//! few constant identities, each evaluated as a plain partial sum.
//!
//! Every formula reads ζ and η values from the reference oracle, so a bad
//! partial sum points at the formula rather than at its inputs.

mod factorial;
mod formulas;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::{BigReal, ConstantId, PrecisionContext};

pub use factorial::{
    binomial_ratio_identity_check, eta_factorial_limit, factorial_ratio, gosper_closed_form,
    gosper_sum,
};
pub(crate) use formulas::bigenergy_term;
use formulas::Env;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Zeta3,
    ZetaN,
    EtaN,
    ConstantIdentity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convergence {
    Geometric,
    PowerLaw,
    Dynamic,
}

/// Inputs a formula draws on besides rational arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Requirement {
    Constant(ConstantId),
    Bernoulli,
    EulerNumbers,
    EtaOracle,
    ZetaOracle,
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::Constant(c) => write!(f, "{c}"),
            Requirement::Bernoulli => f.write_str("bernoulli"),
            Requirement::EulerNumbers => f.write_str("euler_numbers"),
            Requirement::EtaOracle => f.write_str("eta"),
            Requirement::ZetaOracle => f.write_str("zeta"),
        }
    }
}

impl Serialize for Requirement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamKind {
    Integer { min: u32, max: u32 },
    Choice { options: &'static [&'static str] },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    #[serde(flatten)]
    pub kind: ParamKind,
    pub default: &'static str,
}

const P_K: ParamSpec = ParamSpec {
    name: "k",
    kind: ParamKind::Integer { min: 2, max: 200 },
    default: "3",
};

/// Resolved parameter values handed to an evaluator.
#[derive(Clone, Debug, Default)]
pub(crate) struct Args {
    pub k: u32,
    pub form: &'static str,
}

pub(crate) type EvalFn = fn(&Env, &Args, u64) -> Result<Float>;
pub(crate) type RefFn = fn(&Env, &Args) -> Result<Float>;

#[derive(Clone, Debug, Serialize)]
pub struct FormulaDescriptor {
    pub id: &'static str,
    pub target: Target,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    /// Verbatim fragment of the source derivation that locates the formula.
    pub citation: &'static str,
    pub convergence: Convergence,
    pub requires: &'static [Requirement],
    /// Smallest accepted `terms` (the index n for limit formulas).
    pub min_terms: u64,
    #[serde(skip)]
    pub(crate) eval: EvalFn,
    #[serde(skip)]
    pub(crate) reference: RefFn,
    /// Extra working digits per unit of `terms` (cancellation in binomial
    /// weights), plus a fixed offset added to `terms`.
    #[serde(skip)]
    pub(crate) elevation: (f64, u64),
}

impl FormulaDescriptor {
    /// Working digits used for `terms` at the requested precision.
    pub fn working_digits(&self, terms: u64, digits: u32) -> u32 {
        let (rate, off) = self.elevation;
        digits + (rate * (terms + off) as f64).ceil() as u32
    }

    fn resolve(&self, params: &Params) -> Result<Args> {
        for key in params.0.keys() {
            if !self.params.iter().any(|p| p.name == key) {
                return Err(Error::InvalidParams(format!(
                    "{}: unknown parameter {key:?}",
                    self.id
                )));
            }
        }
        let mut args = Args::default();
        for p in self.params {
            let raw = params
                .0
                .get(p.name)
                .map(String::as_str)
                .unwrap_or(p.default);
            match p.kind {
                ParamKind::Integer { min, max } => {
                    let v: u32 = raw.trim().parse().map_err(|_| {
                        Error::InvalidParams(format!(
                            "{}: {}={raw:?} is not an integer",
                            self.id, p.name
                        ))
                    })?;
                    if v < min || v > max {
                        return Err(Error::InvalidParams(format!(
                            "{}: {}={v} outside {min}..={max}",
                            self.id, p.name
                        )));
                    }
                    match p.name {
                        "k" | "j" => args.k = v,
                        _ => unreachable!("integer parameter {}", p.name),
                    }
                }
                ParamKind::Choice { options } => {
                    let hit = options
                        .iter()
                        .find(|o| o.eq_ignore_ascii_case(raw.trim()))
                        .ok_or_else(|| {
                            Error::InvalidParams(format!(
                                "{}: {}={raw:?} not in {options:?}",
                                self.id, p.name
                            ))
                        })?;
                    args.form = hit;
                }
            }
        }
        Ok(args)
    }
}

/// Named parameters as strings, e.g. `k=3,form=bernoulli`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for Params {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Params::new();
        for part in s.split([',', ';']).map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .or_else(|| part.split_once(':'))
                .ok_or_else(|| Error::InvalidParams(format!("expected key=value, got {part:?}")))?;
            p.0.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(p)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvaluationResult {
    pub id: String,
    pub params: Params,
    pub value: BigReal,
    pub reference: BigReal,
    pub terms: u64,
    pub digits_requested: u32,
    pub working_digits: u32,
    /// value − reference.
    pub abs_error_vs_ref: BigReal,
    pub elapsed_seconds: f64,
}

impl EvaluationResult {
    /// −log10 |error|.
    pub fn correct_digits(&self) -> f64 {
        crate::precision::decimal_places(&self.abs_error_vs_ref)
    }
}

/// The full registry.
pub fn list_formulas() -> &'static [FormulaDescriptor] {
    formulas::REGISTRY
}

pub fn descriptor(id: &str) -> Result<&'static FormulaDescriptor> {
    formulas::REGISTRY
        .iter()
        .find(|d| d.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownFormula(id.to_string()))
}

/// Registry as a JSON array.
pub fn registry_json() -> String {
    serde_json::to_string_pretty(formulas::REGISTRY).expect("descriptors serialize")
}

/// Partial sum of formula `id` with `terms` terms (index n for limit forms).
pub fn evaluate(
    id: &str,
    params: &Params,
    terms: u64,
    ctx: &PrecisionContext,
) -> Result<EvaluationResult> {
    let d = descriptor(id)?;
    let args = d.resolve(params)?;
    if terms < d.min_terms {
        return Err(Error::InvalidParams(format!(
            "{}: needs at least {} terms, got {terms}",
            d.id, d.min_terms
        )));
    }
    let start = Instant::now();
    let working = d.working_digits(terms, ctx.digits());
    let wctx = ctx.elevated(working - ctx.digits());
    let env = Env::new(wctx.work_bits());
    let v = (d.eval)(&env, &args, terms)?;
    let r = (d.reference)(&env, &args)?;
    let err = Float::with_val(env.bits, &v - &r);
    Ok(EvaluationResult {
        id: d.id.to_string(),
        params: params.clone(),
        value: ctx.finish(v),
        reference: ctx.finish(r),
        terms,
        digits_requested: ctx.digits(),
        working_digits: working,
        abs_error_vs_ref: ctx.finish(err),
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests;
