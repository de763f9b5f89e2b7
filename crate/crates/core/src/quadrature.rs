//! Trigonometric integral representations of ζ(3), ζ(5), ζ(7) and three
//! log-sine lemmas, integrated by tanh-sinh (double exponential) quadrature.
//!
//! Nodes are kept as distances from the nearer endpoint, so integrands see
//! both `x` and `π/2 − x` (or `π − x`) without cancellation. That is what
//! lets ln sin, ln tan and ln(csc + cot) be evaluated at nodes that sit
//! 10^(−60) away from a singular endpoint.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::precision::{constant_raw, zeta_raw, BigReal, ConstantId, Expo, PrecisionContext};

/// Closed set of integrands. Each carries its interval, prefactor, target
/// and a fragment of the source derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntegrandId {
    CscHalf,
    CscFull,
    LnSin,
    LnTanX,
    CotX,
    TanX,
    LnCscCot,
    OnePlusCos,
    LnCos3,
    Z5Cot,
    Z7Cot,
    LemmaLnSin,
    LemmaCatalan,
    LemmaOnePlusCos,
    CotVar4Pi,
    CotVar5Pi,
    CotVar2Pi,
    CotVar213,
    CotVar1255,
    CotVar3815325,
}

/// What an integrand's assembled value should equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralTarget {
    Zeta3,
    Zeta5,
    Zeta7,
    /// −(π/2) ln 2
    LnSinLemma,
    /// 2G
    TwoCatalan,
    /// 2G − (π/2) ln 2
    OnePlusCosLemma,
}

impl IntegrandId {
    pub const ALL: [IntegrandId; 20] = [
        IntegrandId::CscHalf,
        IntegrandId::CscFull,
        IntegrandId::LnSin,
        IntegrandId::LnTanX,
        IntegrandId::CotX,
        IntegrandId::TanX,
        IntegrandId::LnCscCot,
        IntegrandId::OnePlusCos,
        IntegrandId::LnCos3,
        IntegrandId::Z5Cot,
        IntegrandId::Z7Cot,
        IntegrandId::LemmaLnSin,
        IntegrandId::LemmaCatalan,
        IntegrandId::LemmaOnePlusCos,
        IntegrandId::CotVar4Pi,
        IntegrandId::CotVar5Pi,
        IntegrandId::CotVar2Pi,
        IntegrandId::CotVar213,
        IntegrandId::CotVar1255,
        IntegrandId::CotVar3815325,
    ];

    pub fn name(self) -> &'static str {
        use IntegrandId::*;
        match self {
            CscHalf => "CSC_HALF",
            CscFull => "CSC_FULL",
            LnSin => "LNSIN",
            LnTanX => "LNTAN_X",
            CotX => "COT_X",
            TanX => "TAN_X",
            LnCscCot => "LNCSCCOT",
            OnePlusCos => "ONEPLUSCOS",
            LnCos3 => "LNCOS3",
            Z5Cot => "Z5_COT",
            Z7Cot => "Z7_COT",
            LemmaLnSin => "LEMMA_LNSIN",
            LemmaCatalan => "LEMMA_CATALAN",
            LemmaOnePlusCos => "LEMMA_ONEPLUSCOS",
            CotVar4Pi => "COT_VAR_4PI",
            CotVar5Pi => "COT_VAR_5PI",
            CotVar2Pi => "COT_VAR_2PI",
            CotVar213 => "COT_VAR_213",
            CotVar1255 => "COT_VAR_1255",
            CotVar3815325 => "COT_VAR_3815325",
        }
    }

    /// Human-readable form of the assembled integral.
    pub fn expression(self) -> &'static str {
        use IntegrandId::*;
        match self {
            CscHalf => "(2/7) ∫_0^{π/2} x(π−x) csc x dx",
            CscFull => "(1/7) ∫_0^{π} x(π−x) csc x dx",
            LnSin => "(4/7) ∫_0^{π/2} (4x−π) ln sin x dx",
            LnTanX => "(8/7) ∫_0^{π/2} x ln tan x dx",
            CotX => "(4/7) ∫_0^{π/2} x(π−2x) cot x dx",
            TanX => "(4/7) ∫_0^{π/2} x(π−2x) tan x dx",
            LnCscCot => "(2/7) ∫_0^{π/2} (π−2x) ln(csc x + cot x) dx",
            OnePlusCos => "(4/63) (π²(π+3 ln 2)/2 + ∫_0^{π/2} x²(2x−3π)/(1+cos x) dx)",
            LnCos3 => "−(4/(3π)) (π ln³2/2 + π³ ln 2/8 + ∫_0^{π/2} ln³ cos x dx)",
            Z5Cot => "(4/93) ∫_0^{π/2} x²(2x−π)(4x−9π) cot x dx",
            Z7Cot => "−(8/5715) ∫_0^{π/2} x²(2x−π)(16x³−16πx²−8π²x+27π³) cot x dx",
            LemmaLnSin => "∫_0^{π/2} ln sin x dx",
            LemmaCatalan => "∫_0^{π/2} ln(csc x + cot x) dx",
            LemmaOnePlusCos => "∫_0^{π/2} ln(1 + cos x) dx",
            CotVar4Pi => "(4/π) ∫_0^{π/2} x²(π−2x) cot x dx",
            CotVar5Pi => "(4/(5π)) ∫_0^{π/2} x(π−2x)² cot x dx",
            CotVar2Pi => "(2/π) ∫_0^{π/2} x(2x−π)(5x−π) cot x dx",
            CotVar213 => "(4/(213π)) ∫_0^{π/2} x(π−2x)(185x+4π) cot x dx",
            CotVar1255 => "(4/(1255π)) ∫_0^{π/2} x(π−2x)(1311x−8π) cot x dx",
            CotVar3815325 => {
                "(4/(3815325π³)) ∫_0^{π/2} x(π−2x)(8487800x³−6023600πx²+4650613π²x−1984π³) cot x dx"
            }
        }
    }

    pub fn citation(self) -> &'static str {
        use IntegrandId::*;
        match self {
            CscHalf | CscFull => r"(x(\pi-x)) \csc",
            LnSin => r"(4x-\pi)\ln(\sin(x))",
            LnTanX => r"\frac{8}{7}\int_{0}^{\pi/2}x \ln(\tan(x))",
            CotX => r"x(\pi-2x) \cot",
            TanX => r"x(\pi-2x)\tan(x)",
            LnCscCot => r"(\pi-2x)\ln(\csc( x)+\cot(x))",
            OnePlusCos => r"\frac{1}{1+\cos(x)}",
            LnCos3 => "See reference [6]",
            Z5Cot => r"\zeta(5)&=\frac{4}{93}",
            Z7Cot => r"-\frac{8}{5715}",
            LemmaLnSin => r"=-\frac{1}{2}\pi\ln(2)",
            LemmaCatalan => "where $G$ is Catalan's constant",
            LemmaOnePlusCos => r"2G-\frac{1}{2}\pi\ln(2)",
            CotVar4Pi => r"\frac{4}{\pi}\int",
            CotVar5Pi => r"\frac{4}{5\pi}\int",
            CotVar2Pi => r"\frac{2}{\pi}\int",
            CotVar213 => r"\frac{4}{213\pi}\int",
            CotVar1255 => r"\frac{4}{1255\pi}\int",
            CotVar3815325 => r"\frac{4}{3815325\pi^3}\int",
        }
    }

    pub fn target(self) -> IntegralTarget {
        use IntegrandId::*;
        match self {
            Z5Cot => IntegralTarget::Zeta5,
            Z7Cot => IntegralTarget::Zeta7,
            LemmaLnSin => IntegralTarget::LnSinLemma,
            LemmaCatalan => IntegralTarget::TwoCatalan,
            LemmaOnePlusCos => IntegralTarget::OnePlusCosLemma,
            _ => IntegralTarget::Zeta3,
        }
    }

    /// Upper limit is π for CSC_FULL and π/2 otherwise; the lower limit is 0.
    fn full_range(self) -> bool {
        self == IntegrandId::CscFull
    }
}

impl fmt::Display for IntegrandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IntegrandId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IntegrandId::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownFormula(s.to_string()))
    }
}

impl Serialize for IntegrandId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for IntegrandId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Deepest refinement level tried; step at level ℓ is 2^(−ℓ).
    pub levels: u32,
    pub target_digits: u32,
}

impl QuadratureSpec {
    pub const MIN_LEVELS: u32 = 3;
    pub const MAX_LEVELS: u32 = 16;

    pub fn new(levels: u32, target_digits: u32) -> Result<Self> {
        if !(Self::MIN_LEVELS..=Self::MAX_LEVELS).contains(&levels) {
            return Err(Error::InvalidParams(format!(
                "levels must lie in {}..={}, got {levels}",
                Self::MIN_LEVELS,
                Self::MAX_LEVELS
            )));
        }
        if target_digits == 0 {
            return Err(Error::InvalidParams(
                "target_digits must be positive".into(),
            ));
        }
        Ok(Self {
            levels,
            target_digits,
        })
    }

    /// Ten levels, target taken from the context.
    pub fn for_context(ctx: &PrecisionContext) -> Self {
        Self {
            levels: 10,
            target_digits: ctx.digits(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegrationResult {
    pub id: IntegrandId,
    pub value: BigReal,
    pub reference: BigReal,
    /// value − reference.
    pub abs_error_vs_ref: BigReal,
    /// |I_ℓ − I_{ℓ−1}| at the final level, prefactor included.
    pub error_estimate: BigReal,
    pub levels_used: u32,
    /// −log10 of the inter-level difference, one entry per level from 1.
    pub level_digits: Vec<f64>,
    pub evaluations: usize,
    pub target_digits: u32,
    pub working_digits: u32,
    pub elapsed_seconds: f64,
}

impl IntegrationResult {
    pub fn correct_digits(&self) -> f64 {
        crate::precision::decimal_places(self.abs_error_vs_ref.as_float())
    }
}

// ---------------------------------------------------------------------------
// nodes

/// One abscissa pair ±t on the unit interval: the two points sit `near`
/// from 0 and from 1 respectively; `far` = 1 − near.
struct Node {
    near: Float,
    far: Float,
    weight: Float,
    center: bool,
}

type NodeCache = Mutex<HashMap<(u32, u32), Arc<Vec<Node>>>>;

fn cache() -> &'static NodeCache {
    static CACHE: OnceLock<NodeCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Nodes first introduced at `level` (all integer t at level 0, odd
/// multiples of 2^(−level) after that), for `bits` of precision.
fn level_nodes(level: u32, bits: u32) -> Arc<Vec<Node>> {
    if let Some(v) = cache().lock().expect("node cache").get(&(level, bits)) {
        return Arc::clone(v);
    }
    let v = Arc::new(build_level(level, bits));
    cache()
        .lock()
        .expect("node cache")
        .insert((level, bits), Arc::clone(&v));
    v
}

fn t_max(bits: u32) -> f64 {
    // weight ~ π cosh t · e^(−π sinh t); stop once it is below 2^(−bits−40)
    let goal = f64::from(bits + 40) * std::f64::consts::LN_2;
    let mut t = 1.0f64;
    while (std::f64::consts::PI * t.cosh()).ln() - std::f64::consts::PI * t.sinh() > -goal {
        t += 1.0 / 64.0;
    }
    t
}

fn build_level(level: u32, bits: u32) -> Vec<Node> {
    let p = bits + 16;
    let tmax = t_max(bits);
    let half_pi = Float::with_val(p, constant_raw(ConstantId::Pi, p) / 2u32);
    let denom = 1u64 << level;
    let (start, stride) = if level == 0 { (0u64, 1u64) } else { (1, 2) };
    let mut out = Vec::new();
    let mut j = start;
    while (j as f64) / (denom as f64) <= tmax {
        let t = Float::with_val(p, Float::with_val(p, j) / denom);
        let u = Float::with_val(p, t.sinh_ref()) * &half_pi;
        let e2u = Float::with_val(p, Float::with_val(p, &u * 2u32).exp());
        let one_e = Float::with_val(p, &e2u + 1u32);
        let near = Float::with_val(bits, one_e.recip_ref());
        let far = Float::with_val(bits, &e2u / &one_e);
        let cu = Float::with_val(p, u.cosh_ref());
        let w = Float::with_val(p, t.cosh_ref()) * &half_pi / 2u32 / cu.square();
        out.push(Node {
            near,
            far,
            weight: Float::with_val(bits, w),
            center: j == 0,
        });
        j += stride;
    }
    out
}

// ---------------------------------------------------------------------------
// integrands

/// A point of [0, U]: x itself and its distance to U, both accurate.
struct Pt {
    x: Float,
    hi: Float,
}

struct Consts {
    bits: u32,
    pi: Float,
}

impl Consts {
    fn new(bits: u32) -> Self {
        Self {
            bits,
            pi: constant_raw(ConstantId::Pi, bits),
        }
    }
}

fn fl<T>(bits: u32, v: T) -> Float
where
    Float: rug::Assign<T>,
{
    let mut f = Float::new(bits);
    rug::Assign::assign(&mut f, v);
    f
}

fn series_cutoff(bits: u32) -> Float {
    // |t| < 10^(−digits/4): four series terms leave an error below 10^(−1.5 digits)
    Float::with_val(64, Float::i_exp(1, -((bits / 4) as i32)))
}

/// t / sin t.
fn x_over_sin(t: &Float, bits: u32) -> Float {
    if t.clone().abs() < series_cutoff(bits) {
        let t2 = fl(bits, t.square_ref());
        let mut s = fl(bits, &t2 * 31u32) / 15120u32;
        s += 7f64 / 360f64;
        s = s * &t2 + fl(bits, 1) / 6u32;
        return s * t2 + 1u32;
    }
    fl(bits, t / fl(bits, t.sin_ref()))
}

/// t cot t.
fn x_cot(t: &Float, bits: u32) -> Float {
    if t.clone().abs() < series_cutoff(bits) {
        let t2 = fl(bits, t.square_ref());
        let mut s = -fl(bits, &t2 * 2u32) / 945u32;
        s -= fl(bits, 1) / 45u32;
        s = s * &t2 - fl(bits, 1) / 3u32;
        return s * t2 + 1u32;
    }
    let (s, c) = fl(bits, t).sin_cos(fl(bits, 0));
    fl(bits, t * c) / s
}

/// sin x and cos x on [0, π/2], each taken from whichever endpoint is nearer.
fn sin_cos(p: &Pt, bits: u32) -> (Float, Float) {
    if p.x <= p.hi {
        fl(bits, &p.x).sin_cos(fl(bits, 0))
    } else {
        let (s, c) = fl(bits, &p.hi).sin_cos(fl(bits, 0));
        (c, s)
    }
}

fn eval_at(id: IntegrandId, p: &Pt, k: &Consts) -> Float {
    use IntegrandId::*;
    let b = k.bits;
    let pi = &k.pi;
    let x = &p.x;
    // π − 2x on [0, π/2]
    let two_hi = || fl(b, &p.hi * 2u32);
    // x(π − 2x) cot x = (x cot x) · 2(π/2 − x), with x cot x taken near 0
    // and cos x = sin(π/2 − x) near π/2
    let cot_base = || {
        let xc = if *x <= p.hi {
            x_cot(x, b)
        } else {
            let (s, c) = sin_cos(p, b);
            fl(b, x * c) / s
        };
        xc * two_hi()
    };
    match id {
        CscHalf => x_over_sin(x, b) * fl(b, pi - x),
        CscFull => {
            // sin x = sin(π − x); use whichever argument is small
            if *x <= p.hi {
                x_over_sin(x, b) * &p.hi
            } else {
                x_over_sin(&p.hi, b) * x
            }
        }
        LnSin => {
            let (s, _) = sin_cos(p, b);
            (fl(b, x * 4u32) - pi) * s.ln()
        }
        LnTanX => {
            let (s, c) = sin_cos(p, b);
            fl(b, x * (s.ln() - c.ln()))
        }
        CotX => cot_base(),
        TanX => {
            let (s, _) = sin_cos(p, b);
            // (π − 2x)/cos x = 2 (π/2 − x)/sin(π/2 − x)
            fl(b, x * s) * x_over_sin(&p.hi, b) * 2u32
        }
        LnCscCot => {
            let (s, c) = sin_cos(p, b);
            two_hi() * fl(b, (c + 1u32) / s).ln()
        }
        OnePlusCos => {
            let (_, c) = sin_cos(p, b);
            let poly = fl(b, x.square_ref()) * (fl(b, x * 2u32) - fl(b, pi * 3u32));
            poly / (c + 1u32)
        }
        LnCos3 => {
            let (_, c) = sin_cos(p, b);
            c.ln().pow(3u32)
        }
        Z5Cot => {
            // x²(2x−π)(4x−9π) cot x = −x · [x(π−2x) cot x] · (4x − 9π)
            let q = fl(b, x * 4u32) - fl(b, pi * 9u32);
            -(cot_base() * x * q)
        }
        Z7Cot => {
            let pi2 = fl(b, pi.square_ref());
            let mut q = fl(b, x * 16u32) - fl(b, pi * 16u32);
            q = q * x - fl(b, &pi2 * 8u32);
            q = q * x + fl(b, &pi2 * pi) * 27u32;
            -(cot_base() * x * q)
        }
        LemmaLnSin => sin_cos(p, b).0.ln(),
        LemmaCatalan => {
            let (s, c) = sin_cos(p, b);
            fl(b, (c + 1u32) / s).ln()
        }
        LemmaOnePlusCos => (sin_cos(p, b).1 + 1u32).ln(),
        CotVar4Pi => cot_base() * x,
        CotVar5Pi => cot_base() * two_hi(),
        CotVar2Pi => -(cot_base() * (fl(b, x * 5u32) - pi)),
        CotVar213 => cot_base() * (fl(b, x * 185u32) + fl(b, pi * 4u32)),
        CotVar1255 => cot_base() * (fl(b, x * 1311u32) - fl(b, pi * 8u32)),
        CotVar3815325 => {
            let pi2 = fl(b, pi.square_ref());
            let mut q = fl(b, x * 8_487_800u32) - fl(b, pi * 6_023_600u32);
            q = q * x + fl(b, &pi2 * 4_650_613u32);
            q = q * x - fl(b, &pi2 * pi) * 1984u32;
            cot_base() * q
        }
    }
}

/// Prefactor and additive constants: value = prefactor · (shift + ∫).
fn assemble(id: IntegrandId, integral: &Float, k: &Consts) -> Float {
    use IntegrandId::*;
    let b = k.bits;
    let pi = &k.pi;
    let r = |n: i32, d: u32| fl(b, n) / d;
    match id {
        CscHalf | LnCscCot => r(2, 7) * integral,
        CscFull => r(1, 7) * integral,
        LnSin | CotX | TanX => r(4, 7) * integral,
        LnTanX => r(8, 7) * integral,
        OnePlusCos => {
            let ln2 = constant_raw(ConstantId::Ln2, b);
            let shift = fl(b, pi.square_ref()) * (fl(b, &ln2 * 3u32) + pi) / 2u32;
            r(4, 63) * (shift + integral)
        }
        LnCos3 => {
            let ln2 = constant_raw(ConstantId::Ln2, b);
            let a = fl(b, pi * fl(b, (&ln2).pow(3u32))) / 2u32;
            let c = fl(b, (pi).pow(3u32)) * &ln2 / 8u32;
            -(fl(b, 4) / fl(b, pi * 3u32)) * (a + c + integral)
        }
        Z5Cot => r(4, 93) * integral,
        Z7Cot => r(-8, 5715) * integral,
        LemmaLnSin | LemmaCatalan | LemmaOnePlusCos => fl(b, integral),
        CotVar4Pi => fl(b, 4) / pi * integral,
        CotVar5Pi => fl(b, 4) / fl(b, pi * 5u32) * integral,
        CotVar2Pi => fl(b, 2) / pi * integral,
        CotVar213 => fl(b, 4) / fl(b, pi * 213u32) * integral,
        CotVar1255 => fl(b, 4) / fl(b, pi * 1255u32) * integral,
        CotVar3815325 => fl(b, 4) / (fl(b, pi.pow(3u32)) * 3_815_325u32) * integral,
    }
}

fn prefactor_magnitude(id: IntegrandId, k: &Consts) -> Float {
    let one = fl(k.bits, 1);
    let v = assemble(id, &one, k) - assemble(id, &fl(k.bits, 0), k);
    v.abs()
}

fn target_value(t: IntegralTarget, k: &Consts) -> Float {
    let b = k.bits;
    let half_pi_ln2 = || fl(b, &k.pi * constant_raw(ConstantId::Ln2, b)) / 2u32;
    match t {
        IntegralTarget::Zeta3 => zeta_raw(&Expo::Int(3), b),
        IntegralTarget::Zeta5 => zeta_raw(&Expo::Int(5), b),
        IntegralTarget::Zeta7 => zeta_raw(&Expo::Int(7), b),
        IntegralTarget::LnSinLemma => -half_pi_ln2(),
        IntegralTarget::TwoCatalan => constant_raw(ConstantId::CatalanG, b) * 2u32,
        IntegralTarget::OnePlusCosLemma => {
            constant_raw(ConstantId::CatalanG, b) * 2u32 - half_pi_ln2()
        }
    }
}

/// Closed-form or oracle value an integrand should reproduce.
pub fn reference_value(id: IntegrandId, ctx: &PrecisionContext) -> BigReal {
    ctx.finish(target_value(id.target(), &Consts::new(ctx.work_bits())))
}

// ---------------------------------------------------------------------------
// integration

/// Sub-intervals [a, b] of [0, U] as (a, width); CSC_FULL is split at π/2.
fn pieces(id: IntegrandId, k: &Consts) -> Vec<(Float, Float)> {
    let half = fl(k.bits, &k.pi / 2u32);
    if id.full_range() {
        vec![(fl(k.bits, 0), half.clone()), (half.clone(), half)]
    } else {
        vec![(fl(k.bits, 0), half)]
    }
}

/// Sum of weight · f over the nodes new at one level, all pieces.
fn level_sum(id: IntegrandId, nodes: &[Node], k: &Consts, evals: &mut usize) -> Float {
    let b = k.bits;
    let upper = if id.full_range() {
        fl(b, &k.pi)
    } else {
        fl(b, &k.pi / 2u32)
    };
    let mut total = fl(b, 0);
    for (a, w) in pieces(id, k) {
        // distance from the piece's right end b to U
        let tail = fl(b, &upper - &a) - &w;
        let point = |d_left: &Float, d_right: &Float| Pt {
            x: fl(b, &a + d_left),
            hi: fl(b, &tail + d_right),
        };
        let mut s = fl(b, 0);
        for n in nodes {
            let dn = fl(b, &w * &n.near);
            let df = fl(b, &w * &n.far);
            let mut f = eval_at(id, &point(&dn, &df), k);
            *evals += 1;
            if !n.center {
                f += eval_at(id, &point(&df, &dn), k);
                *evals += 1;
            }
            s += f * &n.weight;
        }
        total += s * w;
    }
    total
}

/// prefactor × ∫ over the stored interval by tanh-sinh with step halving.
/// Stops at the first level ≥ 3 whose inter-level difference is below
/// 10^(−target_digits); otherwise reports the best value as an accuracy error.
pub fn integrate(
    id: IntegrandId,
    spec: &QuadratureSpec,
    ctx: &PrecisionContext,
) -> Result<IntegrationResult> {
    let spec = QuadratureSpec::new(spec.levels, spec.target_digits)?;
    let start = Instant::now();
    let working = spec.target_digits.max(ctx.digits()) + 10;
    let wctx = PrecisionContext::with_guard(working, ctx.guard())?;
    let bits = wctx.work_bits();
    let k = Consts::new(bits);
    let scale = prefactor_magnitude(id, &k);
    let tol = fl(bits, 10u32).pow(-(spec.target_digits as i32));

    let mut evals = 0usize;
    let mut sum = level_sum(id, &level_nodes(0, bits), &k, &mut evals);
    let mut prev = fl(bits, &sum);
    let mut level_digits = Vec::new();
    let mut est = fl(bits, 0);
    let mut used = 0;
    let mut converged = false;
    for level in 1..=spec.levels {
        sum += level_sum(id, &level_nodes(level, bits), &k, &mut evals);
        let h = fl(bits, Float::i_exp(1, -(level as i32)));
        let cur = fl(bits, &sum * &h);
        est = fl(bits, &cur - &prev).abs() * &scale;
        level_digits.push(crate::precision::decimal_places(&est));
        prev = cur;
        used = level;
        if level >= QuadratureSpec::MIN_LEVELS && est < tol {
            converged = true;
            break;
        }
    }
    let value = assemble(id, &prev, &k);
    if !converged {
        return Err(Error::Accuracy {
            message: format!(
                "{id}: inter-level difference {} after {} levels exceeds 1e-{}",
                est.to_f64(),
                spec.levels,
                spec.target_digits
            ),
            best: Box::new(ctx.finish(value)),
        });
    }
    let reference = target_value(id.target(), &k);
    let err = fl(bits, &value - &reference);
    Ok(IntegrationResult {
        id,
        value: ctx.finish(value),
        reference: ctx.finish(reference),
        abs_error_vs_ref: ctx.finish(err),
        error_estimate: ctx.finish(est),
        levels_used: used,
        level_digits,
        evaluations: evals,
        target_digits: spec.target_digits,
        working_digits: working,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// The bare integrand (no prefactor) at x. Removable endpoint singularities
/// return their limit; a divergent logarithm or a point outside the interval
/// is a domain error.
pub fn integrand_value(id: IntegrandId, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.work_bits();
    let k = Consts::new(bits);
    let upper = if id.full_range() {
        fl(bits, &k.pi)
    } else {
        fl(bits, &k.pi / 2u32)
    };
    let xv = fl(bits, x.as_float());
    if !xv.is_finite() || xv < 0 || xv > upper {
        return Err(Error::Domain(format!(
            "{id}: x = {} outside the interval",
            x.to_f64()
        )));
    }
    let hi = fl(bits, &upper - &xv);
    let v = eval_at(id, &Pt { x: xv, hi }, &k);
    if !v.is_finite() {
        return Err(Error::Domain(format!(
            "{id}: singular at x = {}",
            x.to_f64()
        )));
    }
    Ok(ctx.finish(v))
}
