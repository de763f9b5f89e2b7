//! Reference values of ζ and η.
//!
//! Primary route: the Cohen–Villegas–Zagier acceleration of the alternating
//! series η(s) = Σ (−1)^k (k+1)^(−s), whose weights are fixed rationals; ζ
//! follows from ζ(s) = η(s)/(1 − 2^(1−s)). Second route (for cross-checks):
//! Euler–Maclaurin summation of the Hurwitz series with exact Bernoulli
//! numbers.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::numbers::bernoulli_table;
use super::{BigReal, PrecisionContext, LOG2_10};
use crate::error::{Error, Result};

/// Exponent of an oracle call: exact small integer or arbitrary real.
#[derive(Clone, Debug)]
pub(crate) enum Expo<'a> {
    Int(u32),
    Real(&'a Float),
}

/// Σ_{k≥0} (−1)^k a_k for a totally monotone sequence a_k, accurate to about
/// 2^(−bits) relative to a_0. `term(k, prec)` yields a_k.
pub(crate) fn cvz_alternating<F>(bits: u32, term: F) -> Float
where
    F: Fn(u64, u32) -> Float,
{
    // error ≤ 2·(3+√8)^(−n); log2(3+√8) ≈ 2.543
    let n = (f64::from(bits) / 2.54).ceil() as u64 + 4;
    let p = bits + 48;
    let root8 = Float::with_val(p, 8).sqrt();
    let base = Float::with_val(p, root8 + 3u32);
    let dn = base.pow(n as u32);
    let d = Float::with_val(p, &dn + dn.clone().recip()) / 2u32;
    let mut b = Float::with_val(p, -1);
    let mut c = Float::with_val(p, -&d);
    let mut s = Float::new(p);
    for k in 0..n {
        c = Float::with_val(p, &b - &c);
        s += Float::with_val(p, &c * term(k, p));
        // b ← b (k+n)(k−n) / ((k+1/2)(k+1)) = b·2(k+n)(k−n)/((2k+1)(k+1))
        let num = Integer::from(2) * (k + n) * (Integer::from(k) - n);
        let den = Integer::from(2 * k + 1) * (k + 1);
        b *= num;
        b /= den;
    }
    Float::with_val(bits, s / d)
}

/// η(s) at `bits` precision for s ≥ 0 (η(0) = 1/2 exactly).
pub(crate) fn eta_raw(s: &Expo<'_>, bits: u32) -> Float {
    match s {
        Expo::Int(0) => Float::with_val(bits, 0.5),
        Expo::Int(k) => {
            let k = *k;
            cvz_alternating(bits, |j, p| {
                let v = Integer::from(j + 1).pow(k);
                Float::with_val(p, v).recip()
            })
        }
        Expo::Real(x) => {
            if x.is_zero() {
                return Float::with_val(bits, 0.5);
            }
            let x = (*x).clone();
            cvz_alternating(bits, |j, p| {
                let l = Float::with_val(p, j + 1).ln();
                Float::with_val(p, -(l * &x)).exp()
            })
        }
    }
}

/// 1 − 2^(1−s) and the extra bits its cancellation costs near s = 1.
fn eta_factor(s: &Expo<'_>, bits: u32) -> (Float, u32) {
    match s {
        Expo::Int(k) => {
            let f = Float::with_val(bits, Float::i_exp(1, 1 - *k as i32));
            (Float::with_val(bits, 1 - f), 2)
        }
        Expo::Real(x) => {
            let sm1 = Float::with_val(64, *x - 1u32);
            let extra = if sm1 < 1 {
                (-sm1.to_f64().log2()).ceil().max(0.0) as u32 + 8
            } else {
                2
            };
            let p = bits + extra;
            let e = Float::with_val(p, 1 - Float::with_val(p, *x));
            let two = Float::with_val(p, 2).pow(e);
            (Float::with_val(p, 1 - two), extra)
        }
    }
}

pub(crate) fn zeta_raw(s: &Expo<'_>, bits: u32) -> Float {
    let (_, extra) = eta_factor(s, bits);
    let p = bits + extra;
    let (f, _) = eta_factor(s, p);
    let e = eta_raw(s, p);
    Float::with_val(bits, e / f)
}

fn check_zeta_domain(s: &Float) -> Result<()> {
    if !s.is_finite() || *s <= 1 {
        return Err(Error::Domain(format!(
            "zeta(s) needs s > 1, got {}",
            s.to_f64()
        )));
    }
    Ok(())
}

/// ζ(s) for real s > 1.
pub fn zeta_ref(s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_zeta_domain(s)?;
    let bits = ctx.work_bits();
    let v = match small_int(s) {
        Some(k) => zeta_raw(&Expo::Int(k), bits),
        None => zeta_raw(&Expo::Real(s), bits),
    };
    Ok(ctx.finish(v))
}

/// ζ(k) for integer k ≥ 2.
pub fn zeta_int(k: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "zeta({k}) is not defined by the series"
        )));
    }
    Ok(ctx.finish(zeta_raw(&Expo::Int(k), ctx.work_bits())))
}

/// η(s) for real s ≥ 0.
pub fn eta_ref(s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if !s.is_finite() || s.is_sign_negative() && !s.is_zero() {
        return Err(Error::Domain(format!(
            "eta(s) needs s >= 0, got {}",
            s.to_f64()
        )));
    }
    let bits = ctx.work_bits();
    let v = match small_int(s) {
        Some(k) => eta_raw(&Expo::Int(k), bits),
        None => eta_raw(&Expo::Real(s), bits),
    };
    Ok(ctx.finish(v))
}

/// η(k) for integer k ≥ 0.
pub fn eta_int(k: u32, ctx: &PrecisionContext) -> BigReal {
    ctx.finish(eta_raw(&Expo::Int(k), ctx.work_bits()))
}

/// α(m) = Σ 1/(2i−1)^m = (1 − 2^(−m)) ζ(m), integer m ≥ 2.
pub fn alpha_ref(m: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if m < 2 {
        return Err(Error::Domain(format!("alpha({m}) diverges")));
    }
    let bits = ctx.work_bits();
    let z = zeta_raw(&Expo::Int(m), bits);
    let f = Float::with_val(
        bits,
        1 - Float::with_val(bits, Float::i_exp(1, -(m as i32))),
    );
    Ok(ctx.finish(z * f))
}

fn small_int(s: &Float) -> Option<u32> {
    if s.is_integer() && *s >= 0 && *s < 1_000_000 {
        s.to_u32_saturating()
    } else {
        None
    }
}

/// Hurwitz ζ(s, a) = Σ_{k≥0} (k+a)^(−s) by Euler–Maclaurin; s > 1, a > 0.
pub(crate) fn hurwitz_raw(s: &Float, a: &Float, bits: u32) -> Float {
    let p = bits + 32;
    let digits = (f64::from(p) / LOG2_10).ceil();
    let n_head = (0.6 * digits).ceil() as u64 + 10;
    let s = Float::with_val(p, s);
    let a = Float::with_val(p, a);
    let mut sum = Float::new(p);
    let pw = |x: &Float| -> Float {
        // x^(−s)
        let l = Float::with_val(p, x.ln_ref());
        Float::with_val(p, -(l * &s)).exp()
    };
    for k in 0..n_head {
        let x = Float::with_val(p, &a + k);
        sum += pw(&x);
    }
    let big_n = Float::with_val(p, &a + n_head);
    let inv_n = Float::with_val(p, big_n.recip_ref());
    let n_pow = pw(&big_n); // N^(−s)
    let sm1 = Float::with_val(p, &s - 1u32);
    sum += Float::with_val(p, &n_pow * &big_n) / &sm1;
    sum += Float::with_val(p, &n_pow / 2u32);
    let tol = Float::with_val(p, Float::i_exp(1, -(p as i32)));
    let max_j = (digits as usize + 10).max(20);
    let bern = bernoulli_table(2 * max_j);
    // rising = s(s+1)…(s+2j−2); power = N^(−s−2j+1); fact = (2j)!
    let mut rising = s.clone();
    let mut power = Float::with_val(p, &n_pow * &inv_n);
    let mut fact = Integer::from(2);
    let mut prev = Float::with_val(p, f64::INFINITY);
    for j in 1..=max_j {
        if j > 1 {
            let j = j as u64;
            rising *= Float::with_val(p, &s + (2 * j - 3));
            rising *= Float::with_val(p, &s + (2 * j - 2));
            power *= Float::with_val(p, inv_n.square_ref());
            fact *= (2 * j - 1) * (2 * j);
        }
        let b = bern[2 * j].to_float(p);
        let t = Float::with_val(p, &b * &rising) * &power / &fact;
        let at = Float::with_val(p, t.abs_ref());
        if at > prev {
            break;
        }
        sum += &t;
        if at < Float::with_val(p, &tol * Float::with_val(p, sum.abs_ref())) {
            break;
        }
        prev = at;
    }
    Float::with_val(bits, sum)
}

/// ζ(s) by Euler–Maclaurin, the oracle's independent second method.
pub fn zeta_em(s: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_zeta_domain(s)?;
    let one = Float::with_val(ctx.work_bits(), 1);
    Ok(ctx.finish(hurwitz_raw(s, &one, ctx.work_bits())))
}

/// Hurwitz ζ(s, a) for s > 1, a > 0.
pub fn hurwitz_ref(s: &BigReal, a: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_zeta_domain(s)?;
    if *a.as_float() <= 0 {
        return Err(Error::Domain("hurwitz zeta needs a > 0".into()));
    }
    Ok(ctx.finish(hurwitz_raw(s, a, ctx.work_bits())))
}
