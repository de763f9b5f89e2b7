use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};

use super::oracle::cvz_alternating;
use super::{BigReal, PrecisionContext};
use crate::error::{Error, Result};

/// Named constants that appear in catalog identities and integral lemmas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstantId {
    #[serde(rename = "pi")]
    Pi,
    #[serde(rename = "ln2")]
    Ln2,
    #[serde(rename = "euler_gamma")]
    EulerGamma,
    #[serde(rename = "catalan_G")]
    CatalanG,
    #[serde(rename = "glaisher_A")]
    GlaisherA,
}

impl ConstantId {
    pub const ALL: [ConstantId; 5] = [
        ConstantId::Pi,
        ConstantId::Ln2,
        ConstantId::EulerGamma,
        ConstantId::CatalanG,
        ConstantId::GlaisherA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstantId::Pi => "pi",
            ConstantId::Ln2 => "ln2",
            ConstantId::EulerGamma => "euler_gamma",
            ConstantId::CatalanG => "catalan_G",
            ConstantId::GlaisherA => "glaisher_A",
        }
    }
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstantId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConstantId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown constant {s:?}")))
    }
}

// Euler's constant. Primary: mpmath `euler`; second: −ψ(1) through mpmath's
// digamma. Both at 230 working digits.
const GAMMA_A: &str = "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463144724980708248096050401448654283622417399764492353625350033374293733773767394279259525824709491600873520394817";
const GAMMA_B: &str = "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495146314472498070824809605040144865428362241739976449235362535003337429373377376739427925952582470949160087352";

// Glaisher-Kinkelin A. Primary: mpmath `glaisher`; second:
// exp((γ + ln 2π)/12 − ζ'(2)/(2π²)) with ζ'(2) from mpmath's zeta derivative.
const GLAISHER_A: &str = "1.2824271291006226368753425688697917277676889273250011920637400217404063088588264611297364919582023743942064612039900074893315779136277528040415907257386172752214334327143439787335067915257366856907876561146686449998";
const GLAISHER_B: &str = "1.282427129100622636875342568869791727767688927325001192063740021740406308858826461129736491958202374394206461203990007489331577913627752804041590725738617275221433432714343978733506791525736685690787656114668";

/// Digits carried by the stored γ and A literals.
pub const LITERAL_DIGITS: u32 = 200;

/// The constant to ctx.digits (γ and A are capped at [`LITERAL_DIGITS`]).
pub fn constant(id: ConstantId, ctx: &PrecisionContext) -> BigReal {
    ctx.finish(constant_raw(id, ctx.work_bits()))
}

/// The same constant by an independent second route.
pub fn constant_alt(id: ConstantId, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.work_bits();
    let v = match id {
        ConstantId::Pi => pi_machin(bits),
        ConstantId::Ln2 => ln2_euler(bits),
        ConstantId::CatalanG => catalan_beta(bits),
        ConstantId::EulerGamma => literal(GAMMA_B, bits),
        ConstantId::GlaisherA => literal(GLAISHER_B, bits),
    };
    ctx.finish(v)
}

pub(crate) fn constant_raw(id: ConstantId, bits: u32) -> Float {
    match id {
        ConstantId::Pi => pi_agm(bits),
        ConstantId::Ln2 => ln2_atanh(bits),
        ConstantId::CatalanG => catalan_binomial(bits),
        ConstantId::EulerGamma => checked_literal(GAMMA_A, GAMMA_B, bits),
        ConstantId::GlaisherA => checked_literal(GLAISHER_A, GLAISHER_B, bits),
    }
}

fn literal(s: &str, bits: u32) -> Float {
    Float::with_val(bits, Float::parse(s).expect("stored literal parses"))
}

fn checked_literal(a: &str, b: &str, bits: u32) -> Float {
    let x = literal(a, bits.max(700));
    let y = literal(b, bits.max(700));
    let d = Float::with_val(x.prec(), &x - &y).abs();
    assert!(
        d < Float::with_val(64, 1e-200),
        "stored literal pair disagrees beyond 200 digits"
    );
    Float::with_val(bits, x)
}

/// Gauss–Legendre AGM.
pub(crate) fn pi_agm(bits: u32) -> Float {
    let p = bits + 32;
    let mut a = Float::with_val(p, 1);
    let mut b = Float::with_val(p, 2).sqrt().recip();
    let mut t = Float::with_val(p, 0.25);
    let mut x = Float::with_val(p, 1);
    // quadratic convergence: log2(p) + 2 rounds are enough
    let rounds = 32 - p.leading_zeros() + 2;
    for _ in 0..rounds {
        let an = Float::with_val(p, &a + &b) / 2u32;
        let bn = Float::with_val(p, &a * &b).sqrt();
        let d = Float::with_val(p, &a - &an);
        t -= Float::with_val(p, &x * d.square());
        x *= 2u32;
        a = an;
        b = bn;
    }
    let s = Float::with_val(p, &a + &b);
    Float::with_val(bits, s.square() / (t * 4u32))
}

/// atan(1/n) for integer n ≥ 2 by its Taylor series.
fn atan_inv(n: u32, bits: u32) -> Float {
    let p = bits + 16;
    let n2 = u64::from(n) * u64::from(n);
    let mut term = Float::with_val(p, 1) / n;
    let mut sum = term.clone();
    let tol = Float::with_val(p, Float::i_exp(1, -(p as i32)));
    let mut k = 0u64;
    loop {
        term /= n2;
        k += 1;
        let t = Float::with_val(p, &term / (2 * k + 1));
        if t < tol {
            break;
        }
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
    }
    sum
}

/// atanh(1/n) for integer n ≥ 2.
fn atanh_inv(n: u32, bits: u32) -> Float {
    let p = bits + 16;
    let n2 = u64::from(n) * u64::from(n);
    let mut term = Float::with_val(p, 1) / n;
    let mut sum = term.clone();
    let tol = Float::with_val(p, Float::i_exp(1, -(p as i32)));
    let mut k = 0u64;
    loop {
        term /= n2;
        k += 1;
        let t = Float::with_val(p, &term / (2 * k + 1));
        if t < tol {
            break;
        }
        sum += t;
    }
    sum
}

/// Machin: π = 16 atan(1/5) − 4 atan(1/239).
pub(crate) fn pi_machin(bits: u32) -> Float {
    let a = atan_inv(5, bits) * 16u32;
    let b = atan_inv(239, bits) * 4u32;
    Float::with_val(bits, a - b)
}

/// ln 2 = 2 atanh(1/3).
pub(crate) fn ln2_atanh(bits: u32) -> Float {
    Float::with_val(bits, atanh_inv(3, bits) * 2u32)
}

/// ln 2 = 18 atanh(1/26) − 2 atanh(1/4801) + 8 atanh(1/8749).
pub(crate) fn ln2_euler(bits: u32) -> Float {
    let a = atanh_inv(26, bits) * 18u32;
    let b = atanh_inv(4801, bits) * 2u32;
    let c = atanh_inv(8749, bits) * 8u32;
    Float::with_val(bits, a - b + c)
}

/// G = (π/8) ln(2+√3) + (3/8) Σ_{n≥0} (n!)²/((2n)!(2n+1)²).
pub(crate) fn catalan_binomial(bits: u32) -> Float {
    let p = bits + 32;
    let tol = Float::with_val(p, Float::i_exp(1, -(p as i32)));
    // r_n = (n!)²/(2n)!, r_{n+1} = r_n (n+1)/(2(2n+1))
    let mut r = Float::with_val(p, 1);
    let mut sum = Float::with_val(p, 1);
    let mut n = 0u64;
    loop {
        r *= n + 1;
        r /= 2 * (2 * n + 1);
        n += 1;
        let d = (2 * n + 1) * (2 * n + 1);
        let t = Float::with_val(p, &r / d);
        if t < tol {
            break;
        }
        sum += t;
    }
    let root3 = Float::with_val(p, 3).sqrt();
    let lg = Float::with_val(p, root3 + 2u32).ln();
    let head = pi_agm(p) * lg / 8u32;
    Float::with_val(bits, head + sum * 3u32 / 8u32)
}

/// G = β(2) = Σ (−1)^k/(2k+1)² summed with the same alternating-series
/// acceleration the oracle uses.
pub(crate) fn catalan_beta(bits: u32) -> Float {
    cvz_alternating(bits, |k, p| {
        let d = Float::with_val(p, 2 * k + 1);
        d.square().recip()
    })
}
