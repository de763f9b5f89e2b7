use std::cell::RefCell;
use std::collections::HashMap;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::factorial::{eta_factorial_raw, ratio_row};
use super::{Args, Convergence, FormulaDescriptor, ParamKind, ParamSpec, Requirement, Target, P_K};
use crate::error::Result;
use crate::precision::{
    bernoulli_table, constant_raw, eta_raw, euler_table, zeta_raw, ConstantId, Expo,
};

/// Evaluation scratch: working precision plus memoised oracle values.
pub(crate) struct Env {
    pub bits: u32,
    consts: RefCell<HashMap<ConstantId, Float>>,
    eta: RefCell<HashMap<u32, Float>>,
    zeta: RefCell<HashMap<u32, Float>>,
}

impl Env {
    pub fn new(bits: u32) -> Self {
        Self {
            bits,
            consts: Default::default(),
            eta: Default::default(),
            zeta: Default::default(),
        }
    }

    fn f<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        let mut x = Float::new(self.bits);
        rug::Assign::assign(&mut x, v);
        x
    }

    fn q(&self, n: impl Into<Integer>, d: impl Into<Integer>) -> Float {
        self.f(&Rational::from((n.into(), d.into())))
    }

    fn constant(&self, id: ConstantId) -> Float {
        self.consts
            .borrow_mut()
            .entry(id)
            .or_insert_with(|| constant_raw(id, self.bits))
            .clone()
    }

    fn pi(&self) -> Float {
        self.constant(ConstantId::Pi)
    }

    fn pi2(&self) -> Float {
        self.pi().square()
    }

    fn ln2(&self) -> Float {
        self.constant(ConstantId::Ln2)
    }

    fn eta(&self, k: u32) -> Float {
        self.eta
            .borrow_mut()
            .entry(k)
            .or_insert_with(|| eta_raw(&Expo::Int(k), self.bits))
            .clone()
    }

    fn zeta(&self, k: u32) -> Float {
        self.zeta
            .borrow_mut()
            .entry(k)
            .or_insert_with(|| zeta_raw(&Expo::Int(k), self.bits))
            .clone()
    }

    /// ln(a/b) for positive integers.
    fn ln_q(&self, a: u64, b: u64) -> Float {
        self.q(a, b).ln()
    }
}

fn alt(j: u64, t: Float, s: &mut Float) {
    if j.is_multiple_of(2) {
        *s += t;
    } else {
        *s -= t;
    }
}

fn k32(j: u64) -> u32 {
    u32::try_from(j).expect("index fits u32")
}

fn binom(n: u64, k: u64) -> Integer {
    Integer::from(Integer::binomial_u(k32(n), k32(k)))
}

// ---- ζ(3) series ----

fn log_alt(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.f(1);
    for j in 1..=t {
        let l = e.ln_q(j, j + 1) * (2 * j * (j + 1));
        alt(j, l + (2 * j + 1), &mut s);
    }
    Ok(s * e.pi2() / 7u32)
}

fn log_pos(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.f(0);
    for j in 1..=t {
        let a = e.ln_q(2 * j - 1, 2 * j + 1);
        let b = e.ln_q(4 * j * j, 4 * j * j - 1) * (2 * j);
        s += (a + b) * (2 * j) + 1u32;
    }
    Ok((s * 2u32 + 1u32) * e.pi2() / 7u32)
}

fn eta_quad_sum(e: &Env, t: u64) -> Float {
    let mut s = e.f(0);
    for j in 1..=t {
        s += e.eta(k32(j)) / ((j + 1) * (j + 2));
    }
    s
}

fn eta_quad(e: &Env, _: &Args, t: u64) -> Result<Float> {
    Ok(eta_quad_sum(e, t) * e.pi2() * 2u32 / 7u32)
}

fn eta_quad_fast(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let head = e.eta(k32(t + 1)) / (t + 2);
    Ok((eta_quad_sum(e, t) + head) * e.pi2() * 2u32 / 7u32)
}

fn eta_even(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.q(1, 4);
    for j in 1..=t {
        s += e.eta(k32(2 * j)) / ((2 * j + 1) * (2 * j + 2));
    }
    Ok(s * e.pi2() * 2u32 / 7u32)
}

fn eta_fast(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.q(3, 8);
    for j in 1..=t {
        let d = (Integer::from(1) << k32(2 * j + 1)) * ((2 * j + 1) * (2 * j + 2));
        s += e.eta(k32(2 * j)) * e.q(2 * j + 3, d);
    }
    Ok(s * e.pi2() * 2u32 / 7u32)
}

fn eta_k2k1(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.ln2() * 2u32;
    for k in 1..=t {
        s += (e.eta(k32(2 * k - 2)) - 1u32) / (k * (2 * k - 1));
    }
    Ok(s * e.pi2() / 7u32)
}

fn eta_jj1(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = (e.pi() / 2u32).ln() - e.q(1, 2);
    for j in 1..=t {
        s += e.eta(k32(2 * j)) / (j * (j + 1));
    }
    Ok(s * e.pi2() / 7u32)
}

/// Σ_{j=4}^{t+3} (±1)^j η(j)/((j+1)(j+2)).
fn self80_sum(e: &Env, t: u64, signed: bool) -> Float {
    let mut s = e.f(0);
    for j in 4..t + 4 {
        let v = e.eta(k32(j)) / ((j + 1) * (j + 2));
        if signed && j % 2 == 1 {
            s -= v;
        } else {
            s += v;
        }
    }
    s
}

fn self_80m(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let p2 = e.pi2();
    let head = e.f(&p2 / 144u32) + e.ln2() / 6u32;
    let pre = e.f(&p2 * 80u32) / (280u32 - e.f(&p2 * 3u32));
    Ok(pre * (head + self80_sum(e, t, false)))
}

fn self_80p(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let p2 = e.pi2();
    let head = e.f(&p2 / 144u32) - e.ln2() / 6u32 + e.q(1, 2);
    let pre = e.f(&p2 * 80u32) / (e.f(&p2 * 3u32) + 280u32);
    Ok(pre * (head + self80_sum(e, t, true)))
}

fn odd_eta_80(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.q(1, 4) - e.ln2() / 6u32;
    for j in 2..t + 2 {
        s -= e.eta(k32(2 * j + 1)) / ((2 * j + 2) * (2 * j + 3));
    }
    Ok(s * 80u32 / 3u32)
}

fn euler_num(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let en = euler_table(t as usize);
    let pi = e.pi();
    let p2 = e.pi2();
    let mut s = e.f(pi.clone().pow(3u32)) / 8u32;
    for j in 1..=t {
        let f2j = Integer::from(Integer::factorial(k32(2 * j)));
        let f2j2 = Integer::from(Integer::factorial(k32(2 * j - 2)));
        let inner =
            e.f(&p2 * &en[j as usize]) / (f2j * 4u32) + e.q(en[j as usize - 1].clone(), f2j2);
        let w = e.f((&pi).pow(k32(2 * j + 1))) / (Integer::from(1) << k32(2 * j + 1)) / (2 * j + 1);
        alt(j, w * inner, &mut s);
    }
    Ok(s * 2u32 / 7u32)
}

fn bern_zeta_even(e: &Env, a: &Args, t: u64) -> Result<Float> {
    let b = bernoulli_table(2 * t as usize);
    let pi = e.pi();
    let p2 = e.pi2();
    if a.form == "bernoulli" {
        // (π²/7)(1 − Σ (−1)^(k+1) π^(2k) B_2k/((k+1)(2k+1)(2k)!))
        let mut s = e.f(1);
        for k in 1..=t {
            let f2k = Integer::from(Integer::factorial(k32(2 * k))) * ((k + 1) * (2 * k + 1));
            let v = e.f((&pi).pow(k32(2 * k))) * b[2 * k as usize].to_float(e.bits) / f2k;
            alt(k, v, &mut s);
        }
        return Ok(s * p2 / 7u32);
    }
    // ζ(2k) = (−1)^(k+1) B_2k (2π)^(2k) / (2 (2k)!)
    let two_pi = e.f(&pi * 2u32);
    let mut s = e.q(1, 4);
    for k in 1..=t {
        let f2k = Integer::from(Integer::factorial(k32(2 * k))) * 2u32;
        let mut z = e.f((&two_pi).pow(k32(2 * k))) * b[2 * k as usize].to_float(e.bits) / f2k;
        if k % 2 == 0 {
            z = -z;
        }
        let d = (Integer::from(1) << k32(2 * k + 1)) * ((k + 1) * (2 * k + 1));
        s -= z / d;
    }
    Ok(s * p2 * 4u32 / 7u32)
}

fn binom_eta(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.ln2() / 3u32;
    for k in 4..t + 4 {
        let mut inner = e.f(0);
        for j in 1..=k - 2 {
            let v = e.eta(k32(j)) * binom(k, j + 2);
            if j % 2 == 0 {
                inner += v;
            } else {
                inner -= v;
            }
        }
        s -= inner / k + e.q(k - 2, 4);
    }
    Ok(s * e.pi2() * 4u32 / 7u32)
}

/// 800 (−1)^(j+1) n!/((j+5)(j+5)!(n−j)!) η(3+j), one term of the big
/// binomial sum.
pub(crate) fn bigenergy_term(n: u64, j: u64, bits: u32) -> Float {
    let fac = |m: u64| Integer::from(Integer::factorial(k32(m)));
    let c = Rational::from((fac(n) * 800u32, fac(j + 5) * fac(n - j) * (j + 5)));
    let v = Float::with_val(bits, &c) * eta_raw(&Expo::Int(k32(3 + j)), bits);
    if j % 2 == 1 {
        v
    } else {
        -v
    }
}

fn bigenergy(e: &Env, _: &Args, n: u64) -> Result<Float> {
    let mut s = e.f(0);
    for j in 1..=n - 5 {
        s += bigenergy_term(n, j, e.bits);
    }
    Ok(s)
}

fn row_f(e: &Env, n: u64) -> Vec<Float> {
    ratio_row(n).iter().map(|r| e.f(r)).collect()
}

fn fact_ln(e: &Env, _: &Args, n: u64) -> Result<Float> {
    let a = row_f(e, n);
    let mut s = e.f(0);
    for j in 2..n {
        let v = e.f(j).ln() * &a[j as usize] * (j * j);
        alt(j, v, &mut s);
    }
    Ok(s * e.pi2() * 4u32 / 7u32)
}

fn fact_logratio(e: &Env, _: &Args, n: u64) -> Result<Float> {
    let a = row_f(e, n);
    let mut s = e.f(0);
    for j in 1..=n {
        let l = e.ln_q(2 * j - 1, 2 * j + 1) + e.ln_q(4 * j * j, 4 * j * j - 1) * j;
        alt(j, l * &a[j as usize] * j, &mut s);
    }
    Ok(s * e.pi2() * 2u32 / 7u32)
}

// ---- ζ(k), η(k) recurrences ----

fn pow2(m: u64) -> Integer {
    Integer::from(1) << k32(m)
}

fn zn_even_step(e: &Env, a: &Args, t: u64) -> Result<Float> {
    let k = u64::from(a.k);
    let mut s = e.f(0);
    for i in 1..=t {
        let c = binom(k + 2 * i - 1, k - 1) * (pow2(2 * i + k) - 1u32);
        s += e.zeta(k32(k + 2 * i)) * e.q(c, pow2(4 * i));
    }
    Ok(s / ((pow2(k - 1) - 1u32) * (pow2(k) - 1u32)))
}

fn zn_all_step(e: &Env, a: &Args, t: u64) -> Result<Float> {
    let k = u64::from(a.k);
    let mut s = e.f(0);
    for i in 1..=t {
        s += e.zeta(k32(k + i)) * e.q(binom(k + i - 1, i), pow2(i + 1));
    }
    Ok(s / (pow2(k - 1) - 1u32))
}

fn eta_odd_21(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.f(0);
    for j in 2..t + 2 {
        let num = (pow2(2 * j + 1) - 1u32) * (2 * j * (2 * j - 1));
        let den = pow2(2 * j - 3) * (pow2(2 * j) - 1u32);
        s += e.eta(k32(2 * j + 1)) * e.q(num, den);
    }
    Ok(s / 21u32)
}

fn eta_step(e: &Env, a: &Args, t: u64) -> Result<Float> {
    let k = u64::from(a.k);
    let mut s = e.f(0);
    for j in 1..=t {
        s += e.eta(k32(k + j)) * e.q(binom(k + j - 1, j), pow2(k + j - 1) - 1u32);
    }
    Ok(s / 2u32)
}

fn zk_minus1(e: &Env, a: &Args, t: u64) -> Result<Float> {
    let k = u64::from(a.k);
    let mut s = e.f(0);
    for j in 1..=t {
        let c = if a.form == "one" {
            binom(j + k - 1, j)
        } else {
            binom(j + k - 1, k - 2)
        };
        s += (e.zeta(k32(k + j)) - 1u32) * c;
    }
    if a.form == "one" {
        Ok(s)
    } else {
        Ok((k - s) / (k - 1))
    }
}

fn eta_geom(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let pi = e.pi();
    let mut s = e.f(&pi * 4u32) - e.ln2() * 8u32 - e.pi2() / 3u32;
    for j in 1..=t {
        s -= e.eta(k32(3 + j)) / pow2(j - 1);
    }
    Ok(s * 2u32 / 3u32)
}

fn gamma_glaisher(e: &Env, a: &Args, t: u64) -> Result<Float> {
    let g = e.constant(ConstantId::EulerGamma);
    let la = e.constant(ConstantId::GlaisherA).ln();
    if a.form == "all" {
        let mut s = e.f(0);
        for j in 4..t + 4 {
            s += e.zeta(k32(j)) / ((j + 1) * (j + 2));
        }
        return Ok(la * 40u32 - e.pi2() * 5u32 / 18u32 - g * 10u32 / 3u32 - s * 20u32);
    }
    let mut s = e.f(0);
    for j in 2..t + 2 {
        s += e.zeta(k32(2 * j + 1)) / ((j + 1) * (j + 2));
    }
    Ok(la * 36u32 - 4u32 - g * 3u32 - s * 6u32)
}

// ---- constant identities ----

fn const_quarter(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.f(0);
    for j in 1..=t {
        s += e.eta(k32(2 * j - 1)) / (2 * j * (2 * j + 1));
    }
    Ok(s)
}

fn const_lnpi2(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.f(0);
    for j in 1..=t {
        s += e.eta(k32(2 * j)) / (2 * j * (2 * j + 1));
    }
    Ok(s)
}

fn const_pi4(e: &Env, _: &Args, t: u64) -> Result<Float> {
    let mut s = e.f(0);
    for j in 1..=t {
        s += e.eta(k32(j)) / pow2(j);
    }
    Ok(s)
}

fn bern_from_eta(e: &Env, a: &Args, n: u64) -> Result<Float> {
    let j = a.k;
    let s = eta_factorial_raw(2 * j, n, e.bits);
    let f2j = Integer::from(Integer::factorial(2 * j));
    let d = e.f(e.pi().pow(2 * j)) * (pow2(u64::from(2 * j - 1)) - 1u32);
    let v = s * f2j / d;
    Ok(if j.is_multiple_of(2) { -v } else { v })
}

// ---- references ----

fn ref_zeta3(e: &Env, _: &Args) -> Result<Float> {
    Ok(e.zeta(3))
}

fn ref_zeta_k(e: &Env, a: &Args) -> Result<Float> {
    Ok(e.zeta(a.k))
}

fn ref_eta_k(e: &Env, a: &Args) -> Result<Float> {
    Ok(e.eta(a.k))
}

fn ref_zk_minus1(e: &Env, a: &Args) -> Result<Float> {
    Ok(if a.form == "one" { e.f(1) } else { e.zeta(a.k) })
}

fn ref_quarter(e: &Env, _: &Args) -> Result<Float> {
    Ok(e.q(1, 4))
}

fn ref_lnpi2(e: &Env, _: &Args) -> Result<Float> {
    Ok((1u32 - (e.pi() / 2u32).ln()) / 2u32)
}

fn ref_pi4(e: &Env, _: &Args) -> Result<Float> {
    Ok(e.pi() / 4u32)
}

fn ref_bernoulli(e: &Env, a: &Args) -> Result<Float> {
    let b = crate::precision::bernoulli(2 * a.k as usize)?;
    Ok(b.to_float(e.bits))
}

// ---- registry ----

use Convergence::{Dynamic, Geometric, PowerLaw};
use Requirement::{Bernoulli, Constant, EtaOracle, EulerNumbers, ZetaOracle};

const PI: Requirement = Constant(ConstantId::Pi);
const LN2: Requirement = Constant(ConstantId::Ln2);

const P_FORM_BERN: ParamSpec = ParamSpec {
    name: "form",
    kind: ParamKind::Choice {
        options: &["zeta", "bernoulli"],
    },
    default: "zeta",
};
const P_FORM_ONE: ParamSpec = ParamSpec {
    name: "form",
    kind: ParamKind::Choice {
        options: &["zeta", "one"],
    },
    default: "zeta",
};
const P_FORM_GG: ParamSpec = ParamSpec {
    name: "form",
    kind: ParamKind::Choice {
        options: &["odd", "all"],
    },
    default: "odd",
};
const P_J: ParamSpec = ParamSpec {
    name: "j",
    kind: ParamKind::Integer { min: 1, max: 60 },
    default: "1",
};

#[allow(clippy::too_many_arguments)]
const fn fd(
    id: &'static str,
    target: Target,
    summary: &'static str,
    params: &'static [ParamSpec],
    citation: &'static str,
    convergence: Convergence,
    requires: &'static [Requirement],
    eval: super::EvalFn,
    reference: super::RefFn,
) -> FormulaDescriptor {
    FormulaDescriptor {
        id,
        target,
        summary,
        params,
        citation,
        convergence,
        requires,
        min_terms: 1,
        eval,
        reference,
        elevation: (0.0, 0),
    }
}

const fn dynamic(mut d: FormulaDescriptor, min_terms: u64, offset: u64) -> FormulaDescriptor {
    d.min_terms = min_terms;
    d.elevation = (0.31, offset);
    d
}

pub(crate) static REGISTRY: &[FormulaDescriptor] = &[
    fd(
        "Z3_LOG_ALT",
        Target::Zeta3,
        "(pi^2/7)(1 + sum (-1)^j ((2j+1) + 2j(j+1) ln(j/(j+1))))",
        &[],
        "(2j+1)+2j(j+1)\\ln",
        PowerLaw,
        &[PI],
        log_alt,
        ref_zeta3,
    ),
    fd(
        "Z3_LOG_POS",
        Target::Zeta3,
        "(pi^2/7)(1 + 2 sum (1 + 2j ln((2j-1)/(2j+1) (4j^2/(4j^2-1))^(2j))))",
        &[],
        "1+2j\\left(   \\ln",
        PowerLaw,
        &[PI],
        log_pos,
        ref_zeta3,
    ),
    fd(
        "Z3_ETA_QUAD",
        Target::Zeta3,
        "(2pi^2/7) sum eta(j)/((j+1)(j+2))",
        &[],
        "converges much more rapidly",
        PowerLaw,
        &[PI, EtaOracle],
        eta_quad,
        ref_zeta3,
    ),
    fd(
        "Z3_ETA_QUAD_FAST",
        Target::Zeta3,
        "(2pi^2/7)(eta(T+1)/(T+2) + sum_{j<=T} eta(j)/((j+1)(j+2)))",
        &[],
        "converges much more rapidly",
        PowerLaw,
        &[PI, EtaOracle],
        eta_quad_fast,
        ref_zeta3,
    ),
    fd(
        "Z3_ETA_EVEN",
        Target::Zeta3,
        "(2pi^2/7)(1/4 + sum eta(2j)/((2j+1)(2j+2)))",
        &[],
        "\\frac{1}{4}+\\sum",
        PowerLaw,
        &[PI, EtaOracle],
        eta_even,
        ref_zeta3,
    ),
    fd(
        "Z3_ETA_FAST",
        Target::Zeta3,
        "(2pi^2/7)(3/8 + sum (2j+3) eta(2j)/(2^(2j+1)(2j+1)(2j+2)))",
        &[],
        "accurate to 7 decimal places",
        Geometric,
        &[PI, EtaOracle],
        eta_fast,
        ref_zeta3,
    ),
    fd(
        "Z3_ETA_K2K1",
        Target::Zeta3,
        "(pi^2/7)(2 ln2 + sum (eta(2k-2) - 1)/(k(2k-1)))",
        &[],
        "2\\ln\\left(2\\right)+\\sum_{k=1}^{\\infty}\\frac{1}{k(2k-1)}",
        Geometric,
        &[PI, LN2, EtaOracle],
        eta_k2k1,
        ref_zeta3,
    ),
    fd(
        "Z3_ETA_JJ1",
        Target::Zeta3,
        "(pi^2/7)(ln(pi/2) - 1/2 + sum eta(2j)/(j(j+1)))",
        &[],
        "\\ln(\\frac{\\pi}{2})-\\frac{1}{2}",
        PowerLaw,
        &[PI, EtaOracle],
        eta_jj1,
        ref_zeta3,
    ),
    fd(
        "Z3_SELF_80P",
        Target::Zeta3,
        "80pi^2/(280+3pi^2) (pi^2/144 - ln2/6 + 1/2 + sum_{j>=4} (-1)^j eta(j)/((j+1)(j+2)))",
        &[],
        "\\frac{80\\pi^2}{280+3\\pi^2}",
        PowerLaw,
        &[PI, LN2, EtaOracle],
        self_80p,
        ref_zeta3,
    ),
    fd(
        "Z3_SELF_80M",
        Target::Zeta3,
        "80pi^2/(280-3pi^2) (pi^2/144 + ln2/6 + sum_{j>=4} eta(j)/((j+1)(j+2)))",
        &[],
        "\\frac{80\\pi^2}{280-3\\pi^2}",
        PowerLaw,
        &[PI, LN2, EtaOracle],
        self_80m,
        ref_zeta3,
    ),
    fd(
        "Z3_ODD_ETA_80",
        Target::Zeta3,
        "(80/3)(1/4 - ln2/6 - sum_{j>=2} eta(2j+1)/((2j+2)(2j+3)))",
        &[],
        "\\frac{80}{3}",
        PowerLaw,
        &[LN2, EtaOracle],
        odd_eta_80,
        ref_zeta3,
    ),
    fd(
        "Z3_EULER_NUM",
        Target::Zeta3,
        "(2/7)(pi^3/8 + sum (-1)^j pi^(2j+1)/((2j+1)2^(2j+1)) (pi^2 E_2j/(4(2j)!) + E_(2j-2)/(2j-2)!))",
        &[],
        "\\frac{\\pi^2}{4(2j)!}E_{2j}",
        Geometric,
        &[PI, EulerNumbers],
        euler_num,
        ref_zeta3,
    ),
    fd(
        "Z3_BERN_ZETA_EVEN",
        Target::Zeta3,
        "(4pi^2/7)(1/4 - sum zeta(2k)/(2^(2k+1)(k+1)(2k+1))), zeta(2k) from B_2k",
        &[P_FORM_BERN],
        "Note: This formula converges quickly.",
        Geometric,
        &[PI, Bernoulli],
        bern_zeta_even,
        ref_zeta3,
    ),
    dynamic(
        fd(
            "Z3_BINOM_ETA",
            Target::Zeta3,
            "(4pi^2/7)(ln2/3 - sum_{k>=4} ((k-2)/4 + (1/k) sum_j (-1)^j C(k,j+2) eta(j)))",
            &[],
            "\\frac{k-2}{4}+\\frac{1}{k}\\sum",
            PowerLaw,
            &[PI, LN2, EtaOracle],
            binom_eta,
            ref_zeta3,
        ),
        1,
        3,
    ),
    dynamic(
        fd(
            "Z3_BIGENERGY",
            Target::Zeta3,
            "lim 800 sum_{j=1}^{n-5} (-1)^(j+1) n!/((j+5)(j+5)!(n-j)!) eta(3+j)",
            &[],
            "800\\sum_{j=1}^{n-5}",
            Dynamic,
            &[EtaOracle],
            bigenergy,
            ref_zeta3,
        ),
        6,
        0,
    ),
    dynamic(
        fd(
            "Z3_FACT_LN",
            Target::Zeta3,
            "(4pi^2/7) lim sum_{j<n} (-1)^j j^2 (n!)^2/((n-j)!(n+j)!) ln j",
            &[],
            "\\frac{(n!)^2j^2}{(n-j)!(n+j)!}\\ln(j)",
            Dynamic,
            &[PI],
            fact_ln,
            ref_zeta3,
        ),
        3,
        0,
    ),
    dynamic(
        fd(
            "Z3_FACT_LOGRATIO",
            Target::Zeta3,
            "(2pi^2/7) lim sum (-1)^j j (n!)^2/((n-j)!(n+j)!) ln((2j-1)/(2j+1) (4j^2/(4j^2-1))^j)",
            &[],
            "j\\ln\\left(1-\\frac{1}{4j^2}\\right)",
            Dynamic,
            &[PI],
            fact_logratio,
            ref_zeta3,
        ),
        1,
        0,
    ),
    fd(
        "ZN_EVEN_STEP",
        Target::ZetaN,
        "zeta(k) = sum (2^(2i+k)-1)/2^(4i) C(k+2i-1,k-1) zeta(k+2i) / ((2^(k-1)-1)(2^k-1))",
        &[P_K],
        "by expanding sums of the form",
        Geometric,
        &[ZetaOracle],
        zn_even_step,
        ref_zeta_k,
    ),
    fd(
        "ZN_ALL_STEP",
        Target::ZetaN,
        "zeta(k) = sum 2^-(i+1) C(k+i-1,i) zeta(k+i) / (2^(k-1)-1)",
        &[P_K],
        "\\frac{1}{2^{i+1}}\\binom{n+i-1}{i}",
        Geometric,
        &[ZetaOracle],
        zn_all_step,
        ref_zeta_k,
    ),
    fd(
        "Z3_ETA_ODD_21",
        Target::Zeta3,
        "(1/21) sum_{j>=2} (2^(2j+1)-1)/(2^(2j-3)(2^(2j)-1)) (2j)(2j-1) eta(2j+1)",
        &[],
        "\\frac{2^{2j+1}-1}{2^{2j-3}",
        Geometric,
        &[EtaOracle],
        eta_odd_21,
        ref_zeta3,
    ),
    fd(
        "ETA_STEP",
        Target::EtaN,
        "eta(k) = (1/2) sum C(k+j-1,j) eta(k+j)/(2^(k+j-1)-1)",
        &[P_K],
        "\\eta(k)&=\\frac{1}{2}\\sum",
        Geometric,
        &[EtaOracle],
        eta_step,
        ref_eta_k,
    ),
    fd(
        "ZK_MINUS1",
        Target::ZetaN,
        "form=one: 1 = sum C(j+k-1,j)(zeta(k+j)-1); form=zeta: zeta(k) = (k - sum C(j+k-1,k-2)(zeta(k+j)-1))/(k-1)",
        &[P_K, P_FORM_ONE],
        "(\\zeta(k+j)-1)",
        Geometric,
        &[ZetaOracle],
        zk_minus1,
        ref_zk_minus1,
    ),
    fd(
        "Z3_ETA_GEOM",
        Target::Zeta3,
        "(2/3)(4pi - 8ln2 - pi^2/3 - sum 2^-(j-1) eta(3+j))",
        &[],
        "4\\pi-8\\ln(2)",
        Geometric,
        &[PI, LN2, EtaOracle],
        eta_geom,
        ref_zeta3,
    ),
    fd(
        "CONST_QUARTER",
        Target::ConstantIdentity,
        "sum eta(2j-1)/((2j)(2j+1)) = 1/4",
        &[],
        "\\eta(2j-1)=\\frac{1}{4}",
        PowerLaw,
        &[EtaOracle],
        const_quarter,
        ref_quarter,
    ),
    fd(
        "CONST_LNPI2",
        Target::ConstantIdentity,
        "sum eta(2j)/((2j)(2j+1)) = (1 - ln(pi/2))/2",
        &[],
        "\\frac{1}{2}\\left(1-\\ln\\left(\\frac{\\pi}{2}\\right)\\right)",
        PowerLaw,
        &[PI, EtaOracle],
        const_lnpi2,
        ref_lnpi2,
    ),
    fd(
        "CONST_PI4",
        Target::ConstantIdentity,
        "sum 2^-j eta(j) = pi/4",
        &[],
        "\\sum_{j=1}^{\\infty}\\frac{1}{2^j}\\eta(j)=\\frac{\\pi}{4}",
        Geometric,
        &[PI, EtaOracle],
        const_pi4,
        ref_pi4,
    ),
    fd(
        "Z3_GAMMA_GLAISHER",
        Target::Zeta3,
        "form=odd: -4 - 3gamma + 36 lnA - 6 sum_{j>=2} zeta(2j+1)/((j+1)(j+2)); form=all: -5pi^2/18 - (10/3)gamma + 40 lnA - 20 sum_{j>=4} zeta(j)/((j+1)(j+2))",
        &[P_FORM_GG],
        "where $\\gamma$ is the Euler gamma constant",
        PowerLaw,
        &[Constant(ConstantId::EulerGamma), Constant(ConstantId::GlaisherA), PI, ZetaOracle],
        gamma_glaisher,
        ref_zeta3,
    ),
    fd(
        "BERN_FROM_ETA",
        Target::ConstantIdentity,
        "B_2j = (-1)^(j+1) (2j)!/((2^(2j-1)-1) pi^(2j)) lim sum (-1)^(i-1) (n!)^2/((n-i)!(n+i)!) / i^(2j)",
        &[P_J],
        "(2^{2j-1}-1)\\pi^{2j}",
        Dynamic,
        &[PI, Bernoulli],
        bern_from_eta,
        ref_bernoulli,
    ),
];
