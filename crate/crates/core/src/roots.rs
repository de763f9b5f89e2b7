//! Continued roots (infinite nested radicals with coefficient 2), the
//! elementary functions obtained by replacing the innermost √2 with 2x, and
//! the S(x), A_n(x), Ã_n(x) families built from their limits.
//!
//! Angles: a value y ∈ [0, 2] is written y = 2 cos(θπ) with θ ∈ [0, 1/2].
//! √(2 + y) has angle θ/2 and √(2 − y) has angle 1/2 − θ/2.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::dynamic::{angle_of, radical_raw, Sign, SignSequence};
use crate::error::{Error, Result};
use crate::precision::{constant_raw, BigRational, BigReal, ConstantId, PrecisionContext};

/// Nested radical whose sign word is `prefix` followed by `repeat` forever.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootPattern {
    pub prefix: SignSequence,
    pub repeat: SignSequence,
}

impl RootPattern {
    pub fn new(prefix: SignSequence, repeat: SignSequence) -> Self {
        Self { prefix, repeat }
    }

    /// Repeat word with the empty-repeat convention applied.
    fn period(&self) -> Vec<Sign> {
        if self.repeat.depth() == 0 {
            vec![Sign::Plus]
        } else {
            self.repeat.signs().to_vec()
        }
    }
}

fn compact(seq: &SignSequence) -> String {
    seq.signs()
        .iter()
        .map(|s| if *s == Sign::Plus { '+' } else { '-' })
        .collect()
}

impl fmt::Display for RootPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", compact(&self.prefix), compact(&self.repeat))
    }
}

impl FromStr for RootPattern {
    type Err = Error;

    /// "prefix|repeat", e.g. "+|-"; without a bar the whole string is the
    /// prefix and the repeat is empty.
    fn from_str(s: &str) -> Result<Self> {
        let (p, r) = s.split_once('|').unwrap_or((s, ""));
        Ok(Self {
            prefix: p.parse()?,
            repeat: r.parse()?,
        })
    }
}

impl Serialize for RootPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Solved continued root: y = 2 cos(angle·π).
#[derive(Clone, Debug, Serialize)]
pub struct RootSolution {
    pub pattern: RootPattern,
    pub angle: BigRational,
    pub value: BigReal,
    /// Real roots of the unrolled period polynomial lying in [0, 2].
    pub candidates: usize,
}

const MAX_PERIOD: usize = 16;
const ITERATION_PERIODS: usize = 60;

/// θ ↦ aθ + b for the unrolled word: squaring doubles the angle and the
/// sign −1 sends φ to 1 − φ.
fn unrolled_angle_map(word: &[Sign]) -> (Integer, Integer) {
    let mut a = Integer::from(1);
    let mut b = Integer::new();
    for s in word {
        a *= 2;
        b *= 2;
        if *s == Sign::Minus {
            a = -a;
            b = 1 - b;
        }
    }
    (a, b)
}

/// All θ ∈ [0, 1/2] with x = 2cos(θπ) a root of the unrolled equation
/// z_q(z_p(x)) = z_p(x), where z_p unrolls the prefix and z_q one period
/// (each step z ↦ s(z² − 2)). Spurious roots are included.
fn unrolled_roots(prefix: &[Sign], word: &[Sign]) -> BTreeSet<Rational> {
    let (ap, bp) = unrolled_angle_map(prefix);
    let (aq, bq) = unrolled_angle_map(word);
    let half = Rational::from((1, 2));
    let mut roots = BTreeSet::new();
    // a_q φ + b_q ≡ ±φ (mod 2) with φ = a_p θ + b_p
    for d in [Integer::from(&aq - 1), Integer::from(&aq + 1)] {
        let den = Integer::from(&d * &ap);
        let off = &bq + Integer::from(&d * &bp);
        let span = Integer::from(den.abs_ref());
        // θ = (2k − off)/den ∈ [0, 1/2]
        let lo = Integer::from(&off - &span) / 2 - 1;
        let hi = Integer::from(&off + &span) / 2 + 1;
        let mut k = lo;
        while k <= hi {
            let t = Rational::from((Integer::from(2 * &k) - &off, den.clone()));
            if t >= 0 && t <= half {
                roots.insert(t);
            }
            k += 1;
        }
    }
    roots
}

fn two_cos_pi(t: &Rational, bits: u32) -> Float {
    let pi = constant_raw(ConstantId::Pi, bits);
    let x = Float::with_val(bits, &pi * t);
    Float::with_val(bits, x.cos()) * 2u32
}

fn unroll(word: &[Sign], y: &Float) -> Float {
    let mut z = y.clone();
    for s in word {
        z.square_mut();
        z -= 2u32;
        if *s == Sign::Minus {
            z = -z;
        }
    }
    z
}

fn unrolled_residual(prefix: &[Sign], word: &[Sign], x: &Float, bits: u32) -> Float {
    let zp = unroll(prefix, x);
    Float::with_val(bits, unroll(word, &zp) - &zp)
}

/// Numeric nesting: the period applied `periods` times around a seed.
pub fn continued_root_iterate(p: &RootPattern, periods: usize, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.work_bits();
    let word = SignSequence::new(p.period());
    let mut y = Float::with_val(bits, 2).sqrt();
    for _ in 0..periods {
        y = radical_raw(&word, y, bits);
    }
    ctx.finish(radical_raw(&p.prefix, y, bits))
}

/// Solve a continued root exactly: enumerate the roots in [0, 2] of the
/// equation obtained by unrolling the prefix and one period, then keep the
/// one that numeric nesting converges to.
pub fn continued_root(p: &RootPattern, ctx: &PrecisionContext) -> Result<RootSolution> {
    let word = p.period();
    let prefix = p.prefix.signs();
    if word.len() + prefix.len() > MAX_PERIOD {
        return Err(Error::InvalidParams(format!(
            "prefix plus period length {} exceeds {MAX_PERIOD}",
            word.len() + prefix.len()
        )));
    }
    let bits = ctx.work_bits();
    let roots = unrolled_roots(prefix, &word);
    let depth = (word.len() + prefix.len()) as i32;
    let tol = Float::with_val(bits, Float::i_exp(1, 24 + 2 * depth - bits as i32));
    for t in &roots {
        let r = unrolled_residual(prefix, &word, &two_cos_pi(t, bits), bits).abs();
        if r > tol {
            return Err(Error::Inconsistency(format!(
                "angle {t} does not solve the unrolled equation"
            )));
        }
    }
    let it = continued_root_iterate(p, ITERATION_PERIODS, ctx);
    let mut best: Option<(Float, &Rational)> = None;
    for t in &roots {
        let d = Float::with_val(bits, two_cos_pi(t, bits) - it.as_float()).abs();
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, t));
        }
    }
    let (dist, theta) =
        best.ok_or_else(|| Error::Inconsistency(format!("{p}: no root in [0, 2]")))?;
    if dist > 1e-12 {
        return Err(Error::Inconsistency(format!(
            "{p}: nearest root is {} away from the iterated value",
            dist.to_f64()
        )));
    }
    let mut v = two_cos_pi(theta, bits);
    if v.is_sign_negative() {
        v = Float::new(bits);
    }
    Ok(RootSolution {
        pattern: p.clone(),
        value: ctx.finish(v),
        angle: BigRational::from_rational(theta.clone()),
        candidates: roots.len(),
    })
}

pub fn continued_root_value(p: &RootPattern, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(continued_root(p, ctx)?.value)
}

fn check_unit(x: &Float, closed: bool) -> Result<()> {
    let ok = if closed {
        x.clone().abs() <= 1
    } else {
        x.clone().abs() < 1
    };
    if !ok || x.is_nan() {
        let want = if closed { "|x| <= 1" } else { "|x| < 1" };
        return Err(Error::Domain(format!("need {want}, got {}", x.to_f64())));
    }
    Ok(())
}

/// The nested radical with innermost radical √(2 ± 2x); e(x) = 2x for the
/// empty sequence.
pub fn elementary_function(
    seq: &SignSequence,
    x: &BigReal,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    check_unit(x, true)?;
    let bits = ctx.work_bits();
    let inner = Float::with_val(bits, x.as_float() * 2u32);
    Ok(ctx.finish(radical_raw(seq, inner, bits)))
}

/// 2 sin(((−1)^i arcsin x + (2⌊(2i−1)/4⌋ + 1)π/2) / 2^(n−2)) where
/// angle_of(seq) = (2i−1)/2^n. Needs a non-empty sequence.
pub fn elementary_function_closed_form(
    seq: &SignSequence,
    x: &BigReal,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    check_unit(x, true)?;
    if seq.depth() == 0 {
        return Err(Error::Domain(
            "closed form needs a non-empty sequence".into(),
        ));
    }
    let n = seq.depth() as u32 + 2;
    let q = angle_of(seq);
    let odd: Integer = Integer::from(q.numer() << n) / q.denom();
    let i: u64 = (Integer::from(&odd + 1u32) / 2u32)
        .to_u64()
        .expect("index fits");
    let bits = ctx.work_bits();
    let pi = constant_raw(ConstantId::Pi, bits);
    let mut a = Float::with_val(bits, x.as_float().asin_ref());
    if i % 2 == 1 {
        a = -a;
    }
    let k = 2 * ((2 * i - 1) / 4) + 1;
    let phase = Float::with_val(bits, &pi * k) / 2u32;
    let arg = Float::with_val(bits, a + phase) >> (n - 2);
    Ok(ctx.finish(Float::with_val(bits, arg.sin()) * 2u32))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Minus,
    Plus,
}

/// 1/(8((2i−1)π ∓ 2 arcsin x)³).
pub fn limit_function(
    i: u64,
    branch: Branch,
    x: &BigReal,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    check_unit(x, true)?;
    if i == 0 {
        return Err(Error::Domain("limit function index starts at 1".into()));
    }
    let bits = ctx.work_bits();
    let pi = constant_raw(ConstantId::Pi, bits);
    let c = Float::with_val(bits, x.as_float().asin_ref()) * 2u32;
    let base = Float::with_val(bits, &pi * (2 * i - 1));
    let d = match branch {
        Branch::Minus => base - c,
        Branch::Plus => base + c,
    };
    if d.is_zero() {
        return Err(Error::Domain("limit function pole".into()));
    }
    let d3 = crate::dynamic::cube(&d, bits);
    Ok(ctx.finish((d3 * 8u32).recip()))
}

/// A truncated positive series with an upper bound on the omitted tail.
#[derive(Clone, Debug, Serialize)]
pub struct TailedSum {
    pub value: BigReal,
    pub terms: u64,
    pub tail_bound: BigReal,
}

struct OddSum {
    sum: Float,
    tail: Float,
}

/// Σ_{i≤T} [(π(2i−1) − c)^(−n) + (π(2i−1) + c)^(−n)] with c = 2 arcsin x,
/// and the integral bound on Σ_{i>T}.
fn odd_pair_sum(n: u32, x: &Float, terms: u64, bits: u32) -> OddSum {
    let pi = constant_raw(ConstantId::Pi, bits);
    let c = Float::with_val(bits, x.asin_ref()) * 2u32;
    let mut sum = Float::new(bits);
    for i in 1..=terms {
        let base = Float::with_val(bits, &pi * (2 * i - 1));
        for d in [
            Float::with_val(bits, &base - &c),
            Float::with_val(bits, &base + &c),
        ] {
            sum += d.pow_neg(n);
        }
    }
    // Σ_{i>T} (π(2i−1) ∓ c)^(−n) ≤ 1/(2π(n−1)(π(2T−1) ∓ c)^(n−1))
    let base = Float::with_val(bits, &pi * (2 * terms - 1));
    let mut tail = Float::new(bits);
    for d in [
        Float::with_val(bits, &base - &c),
        Float::with_val(bits, &base + &c),
    ] {
        let den = Float::with_val(bits, &pi * (2 * (n - 1))) * d.pow_u(n - 1);
        tail += den.recip();
    }
    OddSum { sum, tail }
}

trait PowExt {
    fn pow_neg(&self, n: u32) -> Float;
    fn pow_u(&self, n: u32) -> Float;
}

impl PowExt for Float {
    fn pow_neg(&self, n: u32) -> Float {
        self.pow_u(n).recip()
    }
    fn pow_u(&self, n: u32) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self.pow(n))
    }
}

fn check_terms(terms: u64) -> Result<()> {
    if terms == 0 {
        return Err(Error::InvalidParams("terms must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn s_raw(x: &Float, terms: u64, bits: u32) -> OddSumPublic {
    let s = odd_pair_sum(3, x, terms, bits);
    OddSumPublic {
        value: s.sum >> 3,
        tail: s.tail >> 3,
    }
}

pub(crate) struct OddSumPublic {
    value: Float,
    tail: Float,
}

/// S(x) = (1/8) Σ [(π(2i−1) − 2 arcsin x)^(−3) + (π(2i−1) + 2 arcsin x)^(−3)].
pub fn s_of_x(x: &BigReal, terms: u64, ctx: &PrecisionContext) -> Result<TailedSum> {
    check_unit(x, false)?;
    check_terms(terms)?;
    let s = s_raw(x, terms, ctx.work_bits());
    Ok(TailedSum {
        value: ctx.finish(s.value),
        terms,
        tail_bound: ctx.finish(s.tail),
    })
}

/// The two functional equations satisfied by S.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalIdentity {
    /// S(x) = (1/8)(S(√(2+2x)/2) + S(√(2−2x)/2))
    Halving,
    /// S(x) = 8 S(1 − 2x²) − S(√(1 − x²))
    Doubling,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub identity: FunctionalIdentity,
    pub residual: BigReal,
    pub bound: BigReal,
}

/// |left − right| with every S truncated at the same number of terms; the
/// bound combines the tail bounds of each truncation with its weight.
pub fn functional_equation_residual(
    x: &BigReal,
    terms: u64,
    identity: FunctionalIdentity,
    ctx: &PrecisionContext,
) -> Result<Residual> {
    check_unit(x, false)?;
    check_terms(terms)?;
    let bits = ctx.work_bits();
    let x = Float::with_val(bits, x.as_float());
    let lhs = s_raw(&x, terms, bits);
    let (args, weights): (Vec<Float>, [i32; 2]) = match identity {
        FunctionalIdentity::Halving => {
            let a = Float::with_val(bits, Float::with_val(bits, &x * 2u32) + 2u32).sqrt() / 2u32;
            let b = Float::with_val(bits, 2u32 - Float::with_val(bits, &x * 2u32)).sqrt() / 2u32;
            (vec![a, b], [1, 1])
        }
        FunctionalIdentity::Doubling => {
            let x2 = Float::with_val(bits, x.square_ref());
            let a = Float::with_val(bits, 1u32 - Float::with_val(bits, &x2 * 2u32));
            let b = Float::with_val(bits, 1u32 - &x2).sqrt();
            if a.clone().abs() >= 1 {
                return Err(Error::Domain("doubling identity needs 0 < |x| < 1".into()));
            }
            (vec![a, b], [64, -8])
        }
    };
    // rhs = (w₁ S(a) + w₂ S(b)) / 8
    let mut rhs = Float::new(bits);
    let mut bound = lhs.tail.clone();
    for (arg, w) in args.iter().zip(weights) {
        let s = s_raw(arg, terms, bits);
        rhs += Float::with_val(bits, &s.value * w);
        bound += Float::with_val(bits, &s.tail * w.abs()) >> 3;
    }
    rhs >>= 3;
    let r = Float::with_val(bits, lhs.value - rhs).abs();
    Ok(Residual {
        identity,
        residual: ctx.finish(r),
        bound: ctx.finish(bound),
    })
}

fn family_prefactor(n: u32, pi: &Float, bits: u32) -> Float {
    let den = (Integer::from(1) << n) - 1u32;
    pi.pow_u(n) / Float::with_val(bits, den)
}

fn check_family(n: u32, x: &Float, terms: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "family exponent must be >= 2, got {n}"
        )));
    }
    check_unit(x, false)?;
    check_terms(terms)
}

/// A_n(x) = π^n/(2^n−1) Σ [(π(2i−1) − 2 arcsin x)^(−n) + (π(2i−1) + 2 arcsin x)^(−n)].
pub fn a_family(n: u32, x: &BigReal, terms: u64, ctx: &PrecisionContext) -> Result<TailedSum> {
    check_family(n, x, terms)?;
    let bits = ctx.work_bits();
    let pi = constant_raw(ConstantId::Pi, bits);
    let f = family_prefactor(n, &pi, bits);
    let s = odd_pair_sum(n, x, terms, bits);
    Ok(TailedSum {
        value: ctx.finish(s.sum * &f),
        terms,
        tail_bound: ctx.finish(s.tail * &f),
    })
}

/// Ã_n(x) = π^n/(2^n−1) Σ (iπ − 2 arcsin x)^(−n).
pub fn a_tilde_family(
    n: u32,
    x: &BigReal,
    terms: u64,
    ctx: &PrecisionContext,
) -> Result<TailedSum> {
    check_family(n, x, terms)?;
    let bits = ctx.work_bits();
    let pi = constant_raw(ConstantId::Pi, bits);
    let c = Float::with_val(bits, x.asin_ref()) * 2u32;
    let mut sum = Float::new(bits);
    for i in 1..=terms {
        let d = Float::with_val(bits, &pi * i) - &c;
        sum += d.pow_neg(n);
    }
    // Σ_{i>T} (iπ − c)^(−n) ≤ 1/(π(n−1)(Tπ − c)^(n−1))
    let d = Float::with_val(bits, &pi * terms) - &c;
    let tail = (Float::with_val(bits, &pi * (n - 1)) * d.pow_u(n - 1)).recip();
    let f = family_prefactor(n, &pi, bits);
    Ok(TailedSum {
        value: ctx.finish(sum * &f),
        terms,
        tail_bound: ctx.finish(tail * &f),
    })
}

/// Coefficient k/π^p · arcsin(x)^a of α(n + 2i) in the expansion of Σ_n(x).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaCoeff {
    #[serde(serialize_with = "crate::precision::serialize_integer")]
    pub k: Integer,
    pub pi_power: u32,
    pub arcsin_power: u32,
}

/// k = 2^(2i+1) C(n+2i−1, n−1), π^(n+2i), arcsin^(2i); i = 0 gives the
/// constant term 2α(n)/π^n.
pub fn sigma_coeff(n_odd: u32, i: u32) -> Result<SigmaCoeff> {
    if n_odd < 3 || n_odd.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "sigma_coeff needs odd n >= 3, got {n_odd}"
        )));
    }
    let b = Integer::from(Integer::binomial_u(n_odd - 1 + 2 * i, n_odd - 1));
    Ok(SigmaCoeff {
        k: b << (2 * i + 1),
        pi_power: n_odd + 2 * i,
        arcsin_power: 2 * i,
    })
}

/// Finite S_n(x) = 2^(−3(n−1)) Σ e(x)^(−3) over the 2^(n−2) elementary
/// functions of depth n − 2; S_n(√2/2) = S_n and S_n(x) → S(x).
pub fn finite_s(n: u32, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_unit(x, false)?;
    if !(2..=24).contains(&n) {
        return Err(Error::Domain(format!(
            "finite S_n needs 2 <= n <= 24, got {n}"
        )));
    }
    let bits = ctx.work_bits();
    let inner = Float::with_val(bits, x.as_float() * 2u32);
    let depth = n - 2;
    let mut sum = Float::new(bits);
    for mask in 0u64..1 << depth {
        let signs = (0..depth)
            .map(|b| {
                if mask >> b & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        let e = radical_raw(&SignSequence::new(signs), inner.clone(), bits);
        sum += crate::dynamic::cube(&e, bits).recip();
    }
    Ok(ctx.finish(sum >> (3 * (n - 1))))
}
