//! Finite differences with step h, binomial-transform limits and the ζ/η
//! accelerations built on them.
//!
//! Every order-n alternating binomial sum loses about log10 C(n, n/2) ≈ 0.3n
//! digits to cancellation, so sums run at digits + ⌈0.31n⌉ + 10.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize, Serializer};

use crate::catalog::bigenergy_term;
use crate::error::{Error, Result};
use crate::precision::{eta_raw, zeta_raw, BigRational, BigReal, Expo, PrecisionContext};

pub const MAX_ORDER: u32 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

/// Order-n difference with exact rational step h > 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceSpec {
    pub direction: Direction,
    pub order: u32,
    pub step: BigRational,
}

impl DifferenceSpec {
    pub fn new(direction: Direction, order: u32, step: BigRational) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::InvalidParams(format!(
                "order {order} exceeds {MAX_ORDER}"
            )));
        }
        if *step.as_rational() <= 0 {
            return Err(Error::InvalidParams(format!(
                "step must be positive, got {step}"
            )));
        }
        Ok(Self {
            direction,
            order,
            step,
        })
    }

    pub fn forward(order: u32, step: BigRational) -> Result<Self> {
        Self::new(Direction::Forward, order, step)
    }

    pub fn backward(order: u32, step: BigRational) -> Result<Self> {
        Self::new(Direction::Backward, order, step)
    }
}

/// Bits used for an order-n sum.
pub fn internal_bits(ctx: &PrecisionContext, n: u64) -> u32 {
    let extra = (0.31 * n as f64).ceil() as u32 + 10;
    ctx.elevated(extra).work_bits()
}

/// C(n, 0..=n) by the multiplicative recurrence.
pub(crate) fn binomial_row(n: u64) -> Vec<Integer> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = Integer::from(1);
    row.push(c.clone());
    for j in 0..n {
        c *= n - j;
        c /= j + 1;
        row.push(c.clone());
    }
    row
}

fn add_signed(acc: &mut Float, v: Float, negative: bool) {
    if negative {
        *acc -= v;
    } else {
        *acc += v;
    }
}

/// Δ_h^n f(x) = Σ (−1)^(n−k) C(n,k) f(x+kh), or ∇_h^n f(x) = Σ (−1)^k C(n,k) f(x−kh).
pub fn nth_difference<F>(
    f: F,
    x: &BigReal,
    spec: &DifferenceSpec,
    ctx: &PrecisionContext,
) -> Result<BigReal>
where
    F: Fn(&Float, u32) -> Result<Float>,
{
    let n = u64::from(spec.order);
    let bits = internal_bits(ctx, n);
    let x = Float::with_val(bits, x.as_float());
    let h = spec.step.to_float(bits);
    let mut acc = Float::new(bits);
    for (k, c) in binomial_row(n).iter().enumerate() {
        let k = k as u64;
        let off = Float::with_val(bits, &h * k);
        let (node, neg) = match spec.direction {
            Direction::Forward => (Float::with_val(bits, &x + off), (n - k) % 2 == 1),
            Direction::Backward => (Float::with_val(bits, &x - off), k % 2 == 1),
        };
        add_signed(&mut acc, f(&node, bits)? * c, neg);
    }
    Ok(ctx.finish(acc))
}

/// Exact Δ_h^n / ∇_h^n of a polynomial with rational coefficients (constant
/// term first).
pub fn nth_difference_poly(
    poly: &[BigRational],
    x: &BigRational,
    spec: &DifferenceSpec,
) -> BigRational {
    let n = u64::from(spec.order);
    let eval = |t: &Rational| -> Rational {
        let mut v = Rational::new();
        for c in poly.iter().rev() {
            v *= t;
            v += c.as_rational();
        }
        v
    };
    let mut acc = Rational::new();
    for (k, c) in binomial_row(n).iter().enumerate() {
        let k = k as u64;
        let off = Rational::from(spec.step.as_rational() * Integer::from(k));
        let (node, neg) = match spec.direction {
            Direction::Forward => (Rational::from(x.as_rational() + &off), (n - k) % 2 == 1),
            Direction::Backward => (Rational::from(x.as_rational() - &off), k % 2 == 1),
        };
        let v = eval(&node) * c;
        if neg {
            acc -= v;
        } else {
            acc += v;
        }
    }
    BigRational::from_rational(acc)
}

/// Σ_{j=1}^n (−1)^(j−1) C(n,j) f(node_j) with caller-supplied nodes.
fn accel_nodes<F, N>(f: F, nodes: N, n: u64, bits: u32) -> Result<Float>
where
    F: Fn(&Float, u32) -> Result<Float>,
    N: Fn(u64, u32) -> Float,
{
    let mut acc = Float::new(bits);
    for (j, c) in binomial_row(n).iter().enumerate().skip(1) {
        let j = j as u64;
        add_signed(&mut acc, f(&nodes(j, bits), bits)? * c, j.is_multiple_of(2));
    }
    Ok(acc)
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 || n > u64::from(MAX_ORDER) {
        return Err(Error::InvalidParams(format!(
            "order n must be in 1..={MAX_ORDER}, got {n}"
        )));
    }
    Ok(())
}

fn check_step(h: &BigRational) -> Result<()> {
    if *h.as_rational() <= 0 {
        return Err(Error::InvalidParams(format!(
            "step must be positive, got {h}"
        )));
    }
    Ok(())
}

/// Σ_{j=1}^n (−1)^(j−1) C(n,j) f(k + jh) = f(k) − (−1)^n Δ_h^n f(k).
pub fn binomial_accel<F>(
    f: F,
    k: &BigReal,
    h: &BigRational,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal>
where
    F: Fn(&Float, u32) -> Result<Float>,
{
    check_n(n)?;
    let bits = internal_bits(ctx, n);
    let k = Float::with_val(bits, k.as_float());
    let hf = h.to_float(bits);
    let v = accel_nodes(
        f,
        |j, b| Float::with_val(b, &k + Float::with_val(b, &hf * j)),
        n,
        bits,
    )?;
    Ok(ctx.finish(v))
}

fn small_int(x: &Float) -> Option<u32> {
    (x.is_integer() && *x >= 0 && *x < 1_000_000)
        .then(|| x.to_u32_saturating())
        .flatten()
}

/// ζ at a real point, via the integer path when possible.
pub(crate) fn zeta_at(s: &Float, bits: u32) -> Result<Float> {
    if !s.is_finite() || *s <= 1 {
        return Err(Error::Domain(format!(
            "zeta(s) needs s > 1, got {}",
            s.to_f64()
        )));
    }
    Ok(match small_int(s) {
        Some(k) => zeta_raw(&Expo::Int(k), bits),
        None => zeta_raw(&Expo::Real(s), bits),
    })
}

pub(crate) fn eta_at(s: &Float, bits: u32) -> Result<Float> {
    if !s.is_finite() || *s < 0 {
        return Err(Error::Domain(format!(
            "eta(s) needs s >= 0, got {}",
            s.to_f64()
        )));
    }
    Ok(match small_int(s) {
        Some(k) => eta_raw(&Expo::Int(k), bits),
        None => eta_raw(&Expo::Real(s), bits),
    })
}

/// Σ_{j=1}^n (−1)^(j−1) C(n,j) ζ(k + jh), k > 1.
pub fn zeta_binomial_accel(
    k: &BigReal,
    h: &BigRational,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if **k <= 1 {
        return Err(Error::Domain(format!(
            "zeta acceleration needs k > 1, got {}",
            k.to_f64()
        )));
    }
    check_step(h)?;
    binomial_accel(zeta_at, k, h, n, ctx)
}

/// Σ_{j=1}^n (−1)^(j−1) C(n,j) η(k + jh), k > 0.
pub fn eta_binomial_accel(
    k: &BigReal,
    h: &BigRational,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if **k <= 0 {
        return Err(Error::Domain(format!(
            "eta acceleration needs k > 0, got {}",
            k.to_f64()
        )));
    }
    check_step(h)?;
    binomial_accel(eta_at, k, h, n, ctx)
}

/// Σ_{j=1}^n (−1)^(j−1) C(n,j) ζ(ln(e^k + jh)).
pub fn zeta_log_shift_accel(
    k: &BigReal,
    h: &BigRational,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if **k <= 1 {
        return Err(Error::Domain(format!(
            "zeta acceleration needs k > 1, got {}",
            k.to_f64()
        )));
    }
    check_step(h)?;
    check_n(n)?;
    let bits = internal_bits(ctx, n);
    let ek = Float::with_val(bits, k.as_float()).exp();
    let hf = h.to_float(bits);
    let node = |j: u64, b: u32| Float::with_val(b, &ek + Float::with_val(b, &hf * j)).ln();
    Ok(ctx.finish(accel_nodes(zeta_at, node, n, bits)?))
}

/// exp(Σ (−1)^(j−1) C(n,j) ln ζ(k + jh)), i.e. the quotient of the odd-j and
/// even-j products ζ(k+jh)^C(n,j).
pub fn zeta_product_accel(
    k: &BigReal,
    h: &BigRational,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if **k <= 1 {
        return Err(Error::Domain(format!(
            "zeta acceleration needs k > 1, got {}",
            k.to_f64()
        )));
    }
    check_step(h)?;
    check_n(n)?;
    let bits = internal_bits(ctx, n);
    let kf = Float::with_val(bits, k.as_float());
    let hf = h.to_float(bits);
    let node = |j: u64, b: u32| Float::with_val(b, &kf + Float::with_val(b, &hf * j));
    let lz = |s: &Float, b: u32| zeta_at(s, b).map(Float::ln);
    Ok(ctx.finish(accel_nodes(lz, node, n, bits)?.exp()))
}

/// Σ_{j=1}^{n−1} (−1)^(j−1) C(n−1,j) ζ(k − j(k−1)/n) − 1/(k−1), the
/// shrinking-step form that steps toward the pole at 1. Experimental.
pub fn zeta_pole_accel(k: u32, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if k < 2 {
        return Err(Error::Domain(format!("pole form needs k >= 2, got {k}")));
    }
    if n < 2 {
        return Err(Error::InvalidParams("pole form needs n >= 2".into()));
    }
    let bits = internal_bits(ctx, n);
    let step = Rational::from((k - 1, n));
    let node = |j: u64, b: u32| {
        Float::with_val(
            b,
            Rational::from(k) - Rational::from(&step * Integer::from(j)),
        )
    };
    let v = accel_nodes(zeta_at, node, n - 1, bits)?;
    Ok(ctx.finish(v - Float::with_val(bits, Rational::from((1, k - 1)))))
}

/// Offsets for step-sequence accelerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Σ_{k≤j} 1/k^m, m ≥ 2.
    InversePower(u32),
    /// Σ_{k≤j} e^(−k).
    ExpDecay,
    /// 1/(1 + e^(−j)), not cumulative.
    Logistic,
    /// Σ_{k≤j} 2^(−k).
    GeometricHalf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StepSequence {
    pub kind: StepKind,
}

impl StepSequence {
    pub fn new(kind: StepKind) -> Result<Self> {
        if let StepKind::InversePower(m) = kind {
            if m < 2 {
                return Err(Error::InvalidParams(format!(
                    "inverse_power needs m >= 2, got {m}"
                )));
            }
        }
        Ok(Self { kind })
    }

    /// offset_1..=offset_n.
    pub fn offsets(&self, n: u64, bits: u32) -> Vec<Float> {
        let mut out = Vec::with_capacity(n as usize);
        let mut acc = Float::new(bits);
        for j in 1..=n {
            let step = match self.kind {
                StepKind::InversePower(m) => Float::with_val(bits, Integer::from(j).pow(m)).recip(),
                StepKind::ExpDecay => Float::with_val(bits, -(j as f64)).exp(),
                StepKind::GeometricHalf => Float::with_val(bits, Float::i_exp(1, -(j as i32))),
                StepKind::Logistic => {
                    let e = Float::with_val(bits, -(j as f64)).exp();
                    out.push(Float::with_val(bits, e + 1u32).recip());
                    continue;
                }
            };
            acc += step;
            out.push(acc.clone());
        }
        out
    }
}

impl fmt::Display for StepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            StepKind::InversePower(m) => write!(f, "inverse_power({m})"),
            StepKind::ExpDecay => f.write_str("exp_decay"),
            StepKind::Logistic => f.write_str("logistic"),
            StepKind::GeometricHalf => f.write_str("geometric_half"),
        }
    }
}

impl FromStr for StepSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let kind = match t.as_str() {
            "exp_decay" => StepKind::ExpDecay,
            "logistic" => StepKind::Logistic,
            "geometric_half" => StepKind::GeometricHalf,
            _ => {
                let m = t
                    .strip_prefix("inverse_power(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|m| m.trim().parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown step sequence {s:?}")))?;
                StepKind::InversePower(m)
            }
        };
        StepSequence::new(kind)
    }
}

impl Serialize for StepSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Σ_{j=1}^n (−1)^(j+1) C(n,j) f(x + h·offset_j).
pub fn step_sequence_accel<F>(
    f: F,
    x: &BigReal,
    h: &BigRational,
    seq: &StepSequence,
    n: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal>
where
    F: Fn(&Float, u32) -> Result<Float>,
{
    check_n(n)?;
    check_step(h)?;
    let bits = internal_bits(ctx, n);
    let x = Float::with_val(bits, x.as_float());
    let hf = h.to_float(bits);
    let offs = seq.offsets(n, bits);
    let node =
        |j: u64, b: u32| Float::with_val(b, &x + Float::with_val(b, &hf * &offs[j as usize - 1]));
    Ok(ctx.finish(accel_nodes(f, node, n, bits)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerExponent {
    /// x^(1−j), converges to x for x > 1.
    OneMinusJ,
    /// x^(1+j), converges to x for 0 < x < 1.
    OnePlusJ,
}

/// Σ_{j=1}^n (−1)^(j+1) C(n,j) x^(1∓j), exact.
pub fn power_identity_check(x: &BigRational, n: u64, dir: PowerExponent) -> Result<BigRational> {
    if x.is_zero() {
        return Err(Error::Domain("power identity needs x != 0".into()));
    }
    check_n(n)?;
    let x = x.as_rational();
    let mut acc = Rational::new();
    for (j, c) in binomial_row(n).iter().enumerate().skip(1) {
        let e = match dir {
            PowerExponent::OneMinusJ => 1 - j as i32,
            PowerExponent::OnePlusJ => 1 + j as i32,
        };
        let t = Rational::from(x.pow(e)) * c;
        if j % 2 == 1 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(BigRational::from_rational(acc))
}

/// Δ_h^n sin(x) = (2 sin(h/2))^n sin(x + n(h+π)/2).
pub fn delta_sin_closed_form(
    x: &BigReal,
    n: u32,
    h: &BigRational,
    ctx: &PrecisionContext,
) -> BigReal {
    let bits = ctx.work_bits();
    let hf = h.to_float(bits);
    let pi = Float::with_val(bits, rug::float::Constant::Pi);
    let base = Float::with_val(bits, &hf / 2u32).sin() * 2u32;
    let arg = Float::with_val(bits, x.as_float()) + (hf + pi) * n / 2u32;
    ctx.finish(base.pow(n) * arg.sin())
}

/// The same with an extra factor (−1)^⌊n/2⌋ at h = 1. This variant agrees
/// with the direct sum only when ⌊n/2⌋ is even.
pub fn delta_sin_floor_sign_form(x: &BigReal, n: u32, ctx: &PrecisionContext) -> BigReal {
    let v = delta_sin_closed_form(x, n, &BigRational::one(), ctx);
    if (n / 2) % 2 == 1 {
        BigReal::from_float(-v.into_float())
    } else {
        v
    }
}

/// ∇_h^n e^x = (1 − e^(−h))^n e^x.
pub fn nabla_exp_closed_form(
    x: &BigReal,
    n: u32,
    h: &BigRational,
    ctx: &PrecisionContext,
) -> BigReal {
    let bits = ctx.work_bits();
    let base = 1u32 - Float::with_val(bits, -h.to_float(bits)).exp();
    let ex = Float::with_val(bits, x.as_float()).exp();
    ctx.finish(base.pow(n) * ex)
}

/// (1/e − 1)^n e^x; differs from the direct sum in sign for odd n.
pub fn nabla_exp_negated_base_form(x: &BigReal, n: u32, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.work_bits();
    let base = Float::with_val(bits, -1).exp() - 1u32;
    let ex = Float::with_val(bits, x.as_float()).exp();
    ctx.finish(base.pow(n) * ex)
}

/// Stirling numbers of the second kind S(a, b) for 0 ≤ b ≤ a ≤ m.
pub fn stirling2_table(m: usize) -> Vec<Vec<Integer>> {
    let mut s = vec![vec![Integer::new(); m + 1]; m + 1];
    s[0][0] = Integer::from(1);
    for a in 1..=m {
        for b in 1..=a {
            let v = Integer::from(&s[a - 1][b] * b as u64) + &s[a - 1][b - 1];
            s[a][b] = v;
        }
    }
    s
}

fn ser_ints<S: Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i.to_string()))
}

/// Both sides of Σ_{j=1}^n (−1)^(j+1) C(n,j)(x+j)^k = x^k + correction as
/// exact integer polynomials (coefficient of x^i at index i).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StirlingCheck {
    pub n: u32,
    pub k: u32,
    #[serde(serialize_with = "ser_ints")]
    pub lhs: Vec<Integer>,
    #[serde(serialize_with = "ser_ints")]
    pub rhs: Vec<Integer>,
    /// (−1)^(n+1) n! Σ_{i=0}^{k−n} C(k,i) S(k−i,n) x^i.
    #[serde(serialize_with = "ser_ints")]
    pub correction: Vec<Integer>,
    pub holds: bool,
}

pub fn stirling_difference_identity(n: u32, k: u32) -> Result<StirlingCheck> {
    if n == 0 {
        return Err(Error::InvalidParams(
            "stirling identity needs n >= 1".into(),
        ));
    }
    let ku = k as usize;
    let binom = |a: u32, b: u32| Integer::from(Integer::binomial_u(a, b));
    let mut lhs = vec![Integer::new(); ku + 1];
    for (j, c) in binomial_row(u64::from(n)).iter().enumerate().skip(1) {
        for (i, slot) in lhs.iter_mut().enumerate() {
            let t = Integer::from(j).pow(k - i as u32) * binom(k, i as u32) * c;
            if j % 2 == 1 {
                *slot += t;
            } else {
                *slot -= t;
            }
        }
    }
    let s = stirling2_table(ku.max(n as usize));
    let mut corr = vec![Integer::new(); ku + 1];
    if k >= n {
        let mut nf = Integer::from(Integer::factorial(n));
        if n.is_multiple_of(2) {
            nf = -nf;
        }
        for (i, slot) in corr.iter_mut().enumerate().take((k - n) as usize + 1) {
            *slot = (&nf * binom(k, i as u32)) * &s[ku - i][n as usize];
        }
    }
    let mut rhs = corr.clone();
    rhs[ku] += 1;
    let holds = lhs == rhs;
    Ok(StirlingCheck {
        n,
        k,
        lhs,
        rhs,
        correction: corr,
        holds,
    })
}

/// Adds terms modulo 1, keeping only fractional parts; returns the
/// representative in [0, 1). Terms come from `gen(j, bits)` for j = 1..=n.
pub fn mod1_sum<G>(gen: G, n: u64, ctx: &PrecisionContext) -> Result<BigReal>
where
    G: Fn(u64, u32) -> Result<Float>,
{
    let bits = internal_bits(ctx, n);
    let frac = |v: Float| {
        let fl = v.clone().floor();
        v - fl
    };
    let mut acc = Float::new(bits);
    for j in 1..=n {
        let t = gen(j, bits)?;
        acc = frac(acc + frac(t));
    }
    Ok(ctx.finish(acc))
}

/// Signed terms of the big binomial η-sum for index n (j = 1..=n−5).
pub fn bigenergy_generator(n: u64) -> impl Fn(u64, u32) -> Result<Float> {
    move |j, bits| Ok(bigenergy_term(n, j, bits))
}

/// 1 + (fractional part of the big binomial η-sum), summed mod 1.
pub fn bigenergy_mod1(n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if n < 6 {
        return Err(Error::InvalidParams(format!(
            "big binomial sum needs n >= 6, got {n}"
        )));
    }
    let g = mod1_sum(
        bigenergy_generator(n),
        n - 5,
        &ctx.elevated((0.31 * n as f64).ceil() as u32),
    )?;
    Ok(ctx.finish(g.into_float() + 1u32))
}

/// Σ_{j=1}^n (−1)^(j+1) C(n,j) w(j) η(k+j) for a weight family w with
/// w(0) = 1. Experimental; no convergence is claimed.
pub fn eta_weighted_accel<W>(k: u32, n: u64, weight: W, ctx: &PrecisionContext) -> Result<BigReal>
where
    W: Fn(u64, u32) -> Float,
{
    check_n(n)?;
    let bits = internal_bits(ctx, n);
    let kf = Float::with_val(bits, k);
    let node = |j: u64, b: u32| Float::with_val(b, &kf + j);
    let f = |s: &Float, b: u32| {
        let j = Float::with_val(b, s - &kf).to_u32_saturating().unwrap_or(0);
        Ok(eta_at(s, b)? * weight(u64::from(j), b))
    };
    Ok(ctx.finish(accel_nodes(f, node, n, bits)?))
}

/// ((u^(m+j) − 1)/v^(r+j))^s.
pub fn power_family_weight(
    u: BigRational,
    v: BigRational,
    s: i32,
    m: i32,
    r: i32,
) -> impl Fn(u64, u32) -> Float {
    move |j, bits| {
        let j = j as i32;
        let num = Rational::from(u.as_rational().pow(m + j)) - 1u32;
        let den = Rational::from(v.as_rational().pow(r + j));
        Float::with_val(bits, (num / den).pow(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{constant, make_context, zeta_int, ConstantId};
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a, b).unwrap()
    }

    fn real(s: &str, c: &PrecisionContext) -> BigReal {
        BigReal::parse(s, c).unwrap()
    }

    fn sin(x: &Float, b: u32) -> Result<Float> {
        Ok(Float::with_val(b, x.sin_ref()))
    }

    fn exp(x: &Float, b: u32) -> Result<Float> {
        Ok(Float::with_val(b, x.exp_ref()))
    }

    #[test]
    fn spec_validation() {
        assert!(DifferenceSpec::forward(3, q(0, 1)).is_err());
        assert!(DifferenceSpec::forward(MAX_ORDER + 1, q(1, 1)).is_err());
        assert!(DifferenceSpec::backward(3, q(1, 2)).is_ok());
    }

    #[test]
    fn square_second_difference() {
        let c = make_context(20).unwrap();
        let sq = |x: &Float, b: u32| Ok(Float::with_val(b, x.square_ref()));
        let d = nth_difference(
            sq,
            &real("0", &c),
            &DifferenceSpec::forward(2, q(1, 1)).unwrap(),
            &c,
        )
        .unwrap();
        assert_eq!(d.to_f64(), 2.0);
        let p = [q(0, 1), q(0, 1), q(1, 1)];
        let s = DifferenceSpec::forward(2, q(3, 1)).unwrap();
        assert_eq!(nth_difference_poly(&p, &q(5, 7), &s), q(18, 1));
    }

    #[test]
    fn sine_and_exp_closed_forms() {
        let c = make_context(30).unwrap();
        for n in [5u32, 20, 50] {
            for xs in ["0", "0.7"] {
                let x = real(xs, &c);
                let s = DifferenceSpec::forward(n, q(1, 1)).unwrap();
                let d = nth_difference(sin, &x, &s, &c).unwrap();
                let cf = delta_sin_closed_form(&x, n, &q(1, 1), &c);
                assert!(d.agreement(&cf) > 25.0, "n={n} x={xs}");
                let alt = delta_sin_floor_sign_form(&x, n, &c);
                assert_eq!(d.agreement(&alt) > 25.0, (n / 2) % 2 == 0, "n={n}");
            }
            let x = real("1", &c);
            let s = DifferenceSpec::backward(n, q(1, 1)).unwrap();
            let d = nth_difference(exp, &x, &s, &c).unwrap();
            assert!(d.agreement(&nabla_exp_closed_form(&x, n, &q(1, 1), &c)) > 25.0);
            assert_eq!(
                d.agreement(&nabla_exp_negated_base_form(&x, n, &c)) > 25.0,
                n % 2 == 0
            );
        }
        // non-unit step
        let x = real("0.3", &c);
        let s = DifferenceSpec::forward(7, q(1, 3)).unwrap();
        let d = nth_difference(sin, &x, &s, &c).unwrap();
        assert!(d.agreement(&delta_sin_closed_form(&x, 7, &q(1, 3), &c)) > 28.0);
    }

    #[test]
    fn log_differences_shrink() {
        let c = make_context(30).unwrap();
        let ln = |x: &Float, b: u32| Ok(Float::with_val(b, x.ln_ref()));
        let x = real("5", &c);
        let d: Vec<f64> = [10u32, 20, 40]
            .iter()
            .map(|&n| {
                nth_difference(ln, &x, &DifferenceSpec::forward(n, q(1, 1)).unwrap(), &c)
                    .unwrap()
                    .to_f64()
                    .abs()
            })
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
        assert!((d[2] - 7.3e-8).abs() < 0.05e-8, "{d:?}");
    }

    #[test]
    fn accel_rearrangement_and_constants() {
        let c = make_context(30).unwrap();
        let k = real("3", &c);
        let h = q(1, 2);
        let n = 12u32;
        let acc = zeta_binomial_accel(&k, &h, u64::from(n), &c).unwrap();
        let d = nth_difference(
            zeta_at,
            &k,
            &DifferenceSpec::forward(n, h.clone()).unwrap(),
            &c,
        )
        .unwrap();
        let z3 = zeta_int(3, &c).unwrap();
        // accel = f(k) − (−1)^n Δⁿ f(k)
        let back = Float::with_val(200, acc.as_float() + d.as_float());
        assert!(BigReal::from_float(back).agreement(&z3) > 29.0);
        let cst = |_: &Float, b: u32| Ok(Float::with_val(b, 7));
        for n in [1u64, 2, 9] {
            assert_eq!(
                binomial_accel(cst, &k, &q(1, 1), n, &c).unwrap().to_f64(),
                7.0
            );
        }
    }

    #[test]
    fn zeta_accelerations_pinned() {
        let c = make_context(40).unwrap();
        let k3 = real("3", &c);
        let z3 = zeta_int(3, &c).unwrap();
        let e = |v: BigReal| v.diff(&z3).to_f64();
        assert!((e(zeta_binomial_accel(&k3, &q(1, 1), 40, &c).unwrap()) - -5.8072e-4).abs() < 1e-8);
        assert!(
            (e(zeta_binomial_accel(&k3, &q(1, 1), 50, &c).unwrap()).abs() - 3.8e-4).abs() < 0.1e-4
        );
        assert!(e(zeta_binomial_accel(&k3, &q(2, 1), 50, &c).unwrap()).abs() < 1e-2);
        assert!(e(zeta_binomial_accel(&k3, &q(1, 2), 50, &c).unwrap()).abs() < 2e-6);
        let z2 = zeta_int(2, &c).unwrap();
        let v = zeta_binomial_accel(&real("2", &c), &q(1, 1), 30, &c).unwrap();
        assert!((v.diff(&z2).to_f64().abs() - 0.032).abs() < 1e-3);
        let ls: Vec<f64> = [10u64, 50]
            .iter()
            .map(|&n| {
                zeta_log_shift_accel(&k3, &q(1, 16), n, &c)
                    .unwrap()
                    .agreement(&z3)
            })
            .collect();
        assert!(ls[0] > 18.0 && ls[1] > 39.0, "{ls:?}");
        let v = zeta_log_shift_accel(&real("2", &c), &q(1, 16), 10, &c).unwrap();
        assert!((v.diff(&z2).to_f64() - -1.9228e-13).abs() < 1e-16);
        let e1 = eta_binomial_accel(&k3, &q(1, 1), 40, &c).unwrap();
        let eta3 = crate::precision::eta_int(3, &c);
        assert!((e1.diff(&eta3).to_f64() - -5.042e-9).abs() < 1e-12);
    }

    #[test]
    fn product_accel() {
        let c = make_context(30).unwrap();
        let k3 = real("3", &c);
        let p1 = zeta_product_accel(&k3, &q(1, 1), 1, &c).unwrap();
        assert!(p1.agreement(&zeta_int(4, &c).unwrap()) > 29.0);
        let p3 = zeta_product_accel(&k3, &q(1, 1), 40, &c).unwrap();
        assert!((p3.diff(&zeta_int(3, &c).unwrap()).to_f64().abs() - 2.2e-4).abs() < 0.1e-4);
        let pi = constant(ConstantId::Pi, &c).to_f64();
        let p4 = zeta_product_accel(&real("4", &c), &q(1, 1), 40, &c).unwrap();
        assert!((p4.to_f64() - pi.powi(4) / 90.0).abs() < 2e-5);
    }

    #[test]
    fn pole_form_converges_fast() {
        let c = make_context(40).unwrap();
        let z2 = zeta_int(2, &c).unwrap();
        let a = zeta_pole_accel(2, 10, &c).unwrap().diff(&z2).to_f64();
        assert!((a - -1.1046e-13).abs() < 1e-16, "{a}");
        assert!(zeta_pole_accel(2, 20, &c).unwrap().agreement(&z2) > 28.0);
    }

    #[test]
    fn step_sequences() {
        let c = make_context(30).unwrap();
        let k3 = real("3", &c);
        let z3 = zeta_int(3, &c).unwrap();
        let run = |s: &str| {
            let seq: StepSequence = s.parse().unwrap();
            step_sequence_accel(zeta_at, &k3, &q(1, 1), &seq, 60, &c)
                .unwrap()
                .diff(&z3)
                .to_f64()
                .abs()
        };
        assert!((run("inverse_power(2)") - 0.037).abs() < 1e-3);
        assert!((run("geometric_half") - 6.3e-4).abs() < 0.1e-4);
        assert!((run("exp_decay") - 7.5e-4).abs() < 0.1e-4);
        assert!((run("logistic") - 0.075).abs() < 1e-3);
        assert!("inverse_power(1)".parse::<StepSequence>().is_err());
        assert!("zigzag".parse::<StepSequence>().is_err());
        let seq = StepSequence::new(StepKind::GeometricHalf).unwrap();
        assert_eq!(seq.to_string(), "geometric_half");
        let offs = seq.offsets(5, 64);
        assert!(offs.windows(2).all(|w| w[0] < w[1]) && offs[4] < 1);
    }

    #[test]
    fn power_identities() {
        let e3 = power_identity_check(&q(3, 1), 30, PowerExponent::OneMinusJ).unwrap() - q(3, 1);
        // exactly −3(2/3)^30
        assert_eq!(
            e3,
            q(-3, 1) * BigRational::from_rational(Rational::from((2, 3)).pow(30))
        );
        let e = power_identity_check(&q(1, 3), 30, PowerExponent::OnePlusJ).unwrap() - q(1, 3);
        assert!((e.to_f64() - -1.738_365_016_948_854_5e-6).abs() < 1e-18);
        for n in 1..=12u64 {
            let v = power_identity_check(&q(2, 1), n, PowerExponent::OnePlusJ).unwrap();
            assert_eq!(v, q(if n % 2 == 0 { 0 } else { 4 }, 1));
        }
        assert!(power_identity_check(&q(0, 1), 3, PowerExponent::OnePlusJ).is_err());
    }

    #[test]
    fn stirling_examples() {
        let a = stirling_difference_identity(3, 2).unwrap();
        assert!(a.holds && a.correction.iter().all(|c| *c == 0));
        let b = stirling_difference_identity(3, 3).unwrap();
        assert!(b.holds && b.correction[0] == 6);
        let c = stirling_difference_identity(2, 4).unwrap();
        let want: Vec<Integer> = [-14, -24, -12, 0, 0]
            .iter()
            .map(|&v| Integer::from(v))
            .collect();
        assert!(c.holds);
        assert_eq!(c.correction, want);
        let s = stirling2_table(4);
        assert_eq!((s[4][2].to_u32(), s[3][2].to_u32()), (Some(7), Some(3)));
        for n in 1..=8 {
            for k in 0..=12 {
                assert!(
                    stirling_difference_identity(n, k).unwrap().holds,
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn mod1_sums() {
        let c = make_context(20).unwrap();
        let ints = |j: u64, b: u32| Ok(Float::with_val(b, j * 3));
        assert!(mod1_sum(ints, 10, &c).unwrap().is_zero());
        let halves = |j: u64, b: u32| Ok(Float::with_val(b, if j % 2 == 1 { 0.5 } else { -0.5 }));
        assert!(mod1_sum(halves, 6, &c).unwrap().is_zero());
        let c = make_context(30).unwrap();
        let m = bigenergy_mod1(40, &c).unwrap();
        let plain =
            crate::catalog::evaluate("Z3_BIGENERGY", &crate::catalog::Params::new(), 40, &c)
                .unwrap();
        let v = plain.value.to_f64();
        assert_eq!(v.floor(), 1.0);
        assert!(m.agreement(&plain.value) > 28.0);
        assert!((m.to_f64() - 1.2020569).abs() < 0.14);
    }

    #[test]
    fn weighted_family_unit_weight_matches_plain() {
        let c = make_context(25).unwrap();
        let w = power_family_weight(q(1, 2), q(1, 1), 0, 1, 0);
        let a = eta_weighted_accel(3, 20, w, &c).unwrap();
        let b = eta_binomial_accel(&real("3", &c), &q(1, 1), 20, &c).unwrap();
        assert!(a.agreement(&b) > 24.0);
    }

    proptest! {
        #[test]
        fn low_degree_polys_vanish(coeffs in proptest::collection::vec(-50i64..50, 1..8), n in 1u32..13, hn in 1i64..5, hd in 1i64..5) {
            prop_assume!(coeffs.len() <= n as usize);
            let p: Vec<BigRational> = coeffs.iter().map(|&c| q(c, 1)).collect();
            for dir in [Direction::Forward, Direction::Backward] {
                let s = DifferenceSpec::new(dir, n, q(hn, hd)).unwrap();
                prop_assert!(nth_difference_poly(&p, &q(2, 3), &s).is_zero());
            }
        }
    }
}
