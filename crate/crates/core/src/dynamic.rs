//! Dynamic nested-radical sums S_n, elementary terms written as sign
//! sequences, and the exact transformation matrices M_n.
//!
//! An elementary term of depth k is √(2 s₁ √(2 s₂ … √(2 s_k √2))) and equals
//! 2 sin(qπ) with q = (2i−1)/2^(k+2). S_n sums (2^n sin((2i−1)π/2^n))^(−3)
//! over i = 1..2^(n−2); M_n rewrites each inverse cube in the elementary
//! basis of the same depth.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::{constant_raw, BigRational, BigReal, ConstantId, PrecisionContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Ordered signs of an elementary term, outermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignSequence {
    signs: Vec<Sign>,
}

impl SignSequence {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self { signs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn depth(&self) -> usize {
        self.signs.len()
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Minus).count()
    }

    /// Append signs on the inside (the depth-extension direction).
    pub fn extended(&self, inner: &[Sign]) -> Self {
        let mut signs = self.signs.clone();
        signs.extend_from_slice(inner);
        Self { signs }
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.signs.iter().map(|s| s.symbol().to_string()).collect();
        write!(f, "({})", body.join(" "))
    }
}

impl FromStr for SignSequence {
    type Err = Error;

    /// Accepts "(- + +)", "-++", "()" and the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let mut signs = Vec::new();
        for c in s.chars() {
            match c {
                '+' => signs.push(Sign::Plus),
                '-' | '−' => signs.push(Sign::Minus),
                '(' | ')' | '[' | ']' => {}
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse(format!(
                        "unexpected {c:?} in sign sequence {s:?}"
                    )))
                }
            }
        }
        Ok(Self { signs })
    }
}

impl Serialize for SignSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The rational q with elementary_value(seq) = 2 sin(qπ).
pub fn angle_of(seq: &SignSequence) -> BigRational {
    // track ψ with value = 2 cos(ψπ); the bare √2 has ψ = 1/4
    let mut psi = Rational::from((1, 4));
    let half = Rational::from((1, 2));
    for s in seq.signs.iter().rev() {
        psi = match s {
            Sign::Plus => psi / 2u32,
            Sign::Minus => &half - &psi / Rational::from(2),
        };
    }
    BigRational::from_rational(half - psi)
}

/// Sign sequence of the elementary term 2 sin(iπ/2^n), depth n − 2.
pub fn seq_of_angle(i: u64, n: u32) -> Result<SignSequence> {
    if !(2..=62).contains(&n) {
        return Err(Error::Domain(format!(
            "seq_of_angle: n = {n} outside 2..=62"
        )));
    }
    if i.is_multiple_of(2) || i == 0 || i > 1u64 << (n - 1) {
        return Err(Error::Domain(format!(
            "seq_of_angle: i = {i} must be odd and in 1..=2^{}",
            n - 1
        )));
    }
    let quarter = Rational::from((1, 4));
    let mut psi = Rational::from((1, 2)) - Rational::from((i, Integer::from(1) << n));
    let mut signs = Vec::with_capacity(n as usize - 2);
    for _ in 0..n - 2 {
        if psi < quarter {
            signs.push(Sign::Plus);
            psi *= 2u32;
        } else {
            signs.push(Sign::Minus);
            psi = Rational::from(1) - psi * 2u32;
        }
    }
    debug_assert_eq!(psi, quarter);
    Ok(SignSequence { signs })
}

/// (−1)^(k+1) with k the number of '−' signs.
pub fn sign_of(seq: &SignSequence) -> i32 {
    if seq.minus_count() % 2 == 1 {
        1
    } else {
        -1
    }
}

pub(crate) fn radical_raw(seq: &SignSequence, inner: Float, bits: u32) -> Float {
    let mut v = inner;
    for s in seq.signs.iter().rev() {
        v = match s {
            Sign::Plus => Float::with_val(bits, 2u32 + &v),
            Sign::Minus => Float::with_val(bits, 2u32 - &v),
        };
        // rounding can push 2 − v a hair below zero for long '+' runs
        if v.is_sign_negative() {
            v = Float::new(bits);
        }
        v.sqrt_mut();
    }
    v
}

/// The nested radical, evaluated innermost first.
pub fn elementary_value(seq: &SignSequence, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.work_bits();
    let root2 = Float::with_val(bits, 2).sqrt();
    ctx.finish(radical_raw(seq, root2, bits))
}

/// p_n(x): n rounds of x ↦ x² − 2.
pub fn minimal_poly_eval(n: u32, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if n == 0 {
        return Err(Error::Domain(
            "minimal polynomial index must be positive".into(),
        ));
    }
    let bits = ctx.work_bits();
    let mut v = Float::with_val(bits, x.as_float());
    for _ in 0..n {
        v.square_mut();
        v -= 2u32;
    }
    Ok(ctx.finish(v))
}

/// Exact integer matrix M_n of dimension 2^(n−2) with its scale, so that
/// (2 sin((2i−1)π/2^n))^(−3) = scale · Σ_j M_n[i][j] · 2 sin((2j−1)π/2^n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformMatrix {
    pub n: u32,
    pub scale: BigRational,
    pub entries: Vec<Vec<i64>>,
}

impl TransformMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i]
    }

    /// Σ_i M[i][j] for each column j.
    pub fn column_sums(&self) -> Vec<i64> {
        let d = self.dim();
        (0..d)
            .map(|j| self.entries.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// Every row holds the same multiset of absolute values as row 1.
    pub fn rows_share_abs_multiset(&self) -> bool {
        let key = |r: &[i64]| {
            let mut v: Vec<u64> = r.iter().map(|x| x.unsigned_abs()).collect();
            v.sort_unstable();
            v
        };
        let first = key(&self.entries[0]);
        self.entries.iter().all(|r| key(r) == first)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }
}

pub const MATRIX_MIN_N: u32 = 3;
pub const MATRIX_MAX_N: u32 = 12;

fn check_matrix_n(n: u32) -> Result<()> {
    if !(MATRIX_MIN_N..=MATRIX_MAX_N).contains(&n) {
        return Err(Error::Config(format!(
            "transform matrix depth {n} outside {MATRIX_MIN_N}..={MATRIX_MAX_N}"
        )));
    }
    Ok(())
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Entry (i, j), 1-based, by the listing's modular recipe.
fn listing_entry(n: u32, i: u64, j: u64) -> i64 {
    let big_n = 1u64 << (n - 2);
    let m = 2 * big_n;
    let a = 2 * i - 1;
    let r = ((i + j - 1) % m) * pow_mod(a, big_n - 1, m) % m;
    let (r, a, big_n) = (r as i64, a as i64, big_n as i64);
    let q = (r * a - (i + j - 1) as i64) / (2 * big_n);
    let mag = (2 * big_n * r - r * r + r - big_n) / 2;
    if q.rem_euclid(2) == 1 {
        -mag
    } else {
        mag
    }
}

/// M_n for 3 ≤ n ≤ 12.
pub fn make_transform_matrix(n: u32) -> Result<TransformMatrix> {
    check_matrix_n(n)?;
    let d = 1u64 << (n - 2);
    let entries = (1..=d)
        .map(|i| (1..=d).map(|j| listing_entry(n, i, j)).collect())
        .collect();
    Ok(TransformMatrix {
        n,
        scale: BigRational::new(1, 2)?,
        entries,
    })
}

/// Entry (i, j), 1-based, from the closed form in exact big integers:
/// X = (i+j−1)(2i−1)^(N−1), R = X mod 2N, entry = (−1)^⌊X/2N⌋((2N+1)R − R² − N)/2.
pub fn matrix_entry_closed_form(n: u32, i: u64, j: u64) -> Result<Integer> {
    check_matrix_n(n)?;
    let big_n = 1u64 << (n - 2);
    if i == 0 || j == 0 || i > big_n || j > big_n {
        return Err(Error::Domain(format!(
            "index ({i},{j}) outside 1..={big_n}"
        )));
    }
    let two_n = Integer::from(2 * big_n);
    let x = Integer::from(i + j - 1) * Integer::from(2 * i - 1).pow((big_n - 1) as u32);
    let (q, r) = x.div_rem_euc(two_n);
    let mut v = Integer::from(2 * big_n + 1) * &r - Integer::from(r.square_ref()) - big_n;
    v /= 2;
    if q.is_odd() {
        v = -v;
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    DirectSine,
    NestedRadical,
    MatrixBasis,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::DirectSine, Route::NestedRadical, Route::MatrixBasis];

    pub fn name(self) -> &'static str {
        match self {
            Route::DirectSine => "direct_sine",
            Route::NestedRadical => "nested_radical",
            Route::MatrixBasis => "matrix_basis",
        }
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown route {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DynamicSumResult {
    pub n: u32,
    pub value: BigReal,
    pub route: Route,
}

pub(crate) fn cube(x: &Float, bits: u32) -> Float {
    Float::with_val(bits, x.square_ref()) * x
}

/// 2 sin((2j−1)π/2^n) for j = 1..2^(n−2).
fn sine_basis(n: u32, bits: u32) -> Vec<Float> {
    let pi = constant_raw(ConstantId::Pi, bits);
    let d = 1u64 << (n - 2);
    (1..=d)
        .map(|j| {
            let t = Float::with_val(bits, &pi * (2 * j - 1)) >> n;
            Float::with_val(bits, t.sin()) * 2u32
        })
        .collect()
}

pub(crate) fn dynamic_sum_raw(n: u32, route: Route, bits: u32) -> Result<Float> {
    if n < 2 {
        return Err(Error::Domain(format!("dynamic sum needs n >= 2, got {n}")));
    }
    if n > 40 {
        return Err(Error::Domain(format!(
            "dynamic sum depth {n} is beyond desk scale"
        )));
    }
    let d = 1u64 << (n - 2);
    let cube_inv = |e: Float| -> Float {
        // (2^(n−1) e)^(−3)
        let t = e << (n - 1);
        cube(&t, bits).recip()
    };
    let mut sum = Float::new(bits);
    match route {
        Route::DirectSine => {
            for e in sine_basis(n, bits) {
                sum += cube_inv(e);
            }
        }
        Route::NestedRadical => {
            let root2 = Float::with_val(bits, 2).sqrt();
            for i in 1..=d {
                let seq = seq_of_angle(2 * i - 1, n)?;
                sum += cube_inv(radical_raw(&seq, root2.clone(), bits));
            }
        }
        Route::MatrixBasis => {
            if n < MATRIX_MIN_N {
                return Err(Error::InvalidParams(
                    "matrix_basis route needs n >= 3".into(),
                ));
            }
            let m = make_transform_matrix(n)?;
            for (c, e) in m.column_sums().into_iter().zip(sine_basis(n, bits)) {
                sum += Float::with_val(bits, &e * c);
            }
            // scale 1/2 and the 2^(−3(n−1)) from pulling 2^(n−1) out of each cube
            sum *= m.scale.to_float(bits);
            sum >>= 3 * (n - 1);
        }
    }
    Ok(sum)
}

/// S_n by the chosen route.
pub fn dynamic_sum(n: u32, route: Route, ctx: &PrecisionContext) -> Result<DynamicSumResult> {
    let v = dynamic_sum_raw(n, route, ctx.work_bits())?;
    Ok(DynamicSumResult {
        n,
        value: ctx.finish(v),
        route,
    })
}

/// (8π³/7)·S_n, which tends to ζ(3).
pub fn zeta3_from_dynamic(n: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let bits = ctx.work_bits();
    let s = dynamic_sum_raw(n, Route::DirectSine, bits)?;
    let pi = constant_raw(ConstantId::Pi, bits);
    let pi3 = cube(&pi, bits);
    Ok(ctx.finish(pi3 * s * 8u32 / 7u32))
}
