use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use rug::Float;
use serde::{Serialize, Serializer};

use super::{digits_to_bits, PrecisionContext};
use crate::error::{Error, Result};

/// Arbitrary-precision real. The binary precision is fixed when the value is
/// produced from a [`PrecisionContext`].
#[derive(Clone, Debug)]
pub struct BigReal(Float);

impl BigReal {
    pub fn from_float(f: Float) -> Self {
        BigReal(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    /// Parse plain or scientific decimal notation ('.' radix point).
    pub fn parse(s: &str, ctx: &PrecisionContext) -> Result<Self> {
        let t = s.trim();
        let parsed = Float::parse(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        // enough bits to hold every digit written
        let written = t.chars().filter(|c| c.is_ascii_digit()).count() as u32;
        let bits = ctx.out_bits().max(digits_to_bits(written) + 8);
        Ok(BigReal(Float::with_val(bits, parsed)))
    }

    /// Parse at an explicit binary precision (used for exact round trips).
    pub fn parse_bits(s: &str, bits: u32) -> Result<Self> {
        let t = s.trim();
        let parsed = Float::parse(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
        Ok(BigReal(Float::with_val(bits, parsed)))
    }

    /// Number of significant decimal digits that round-trip the binary value.
    pub fn full_digits(&self) -> usize {
        (f64::from(self.0.prec()) / super::LOG2_10).ceil() as usize + 1
    }

    /// Full-precision decimal string; parsing it back at the same precision
    /// recovers the identical binary value.
    pub fn to_decimal(&self) -> String {
        self.to_digits(self.full_digits())
    }

    /// Decimal string with `sig` significant digits. Plain notation for
    /// moderate exponents, scientific otherwise.
    pub fn to_digits(&self, sig: usize) -> String {
        format_float(&self.0, sig)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// |self − other| at the larger of the two precisions.
    pub fn abs_diff(&self, other: &BigReal) -> Float {
        let p = self.0.prec().max(other.0.prec());
        let mut d = Float::with_val(p, &self.0 - &other.0);
        d.abs_mut();
        d
    }

    /// Signed difference self − other.
    pub fn diff(&self, other: &BigReal) -> BigReal {
        let p = self.0.prec().max(other.0.prec());
        BigReal(Float::with_val(p, &self.0 - &other.0))
    }

    /// −log10|self − other|, the number of matching decimal places
    /// (infinite when equal).
    pub fn agreement(&self, other: &BigReal) -> f64 {
        decimal_places(&self.abs_diff(other))
    }
}

/// −log10|x| computed without overflow for tiny x.
pub(crate) fn decimal_places(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    -(m.abs().log10() + f64::from(e) * std::f64::consts::LOG10_2)
}

pub(crate) fn format_float(f: &Float, sig: usize) -> String {
    if f.is_nan() {
        return "NaN".into();
    }
    if f.is_infinite() {
        return if f.is_sign_negative() {
            "-inf".into()
        } else {
            "inf".into()
        };
    }
    if f.is_zero() {
        return "0".into();
    }
    let sig = sig.max(1);
    let (neg, digits, exp) = f.to_sign_string_exp(10, Some(sig));
    let exp = exp.unwrap_or(0);
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    // value = 0.digits × 10^exp
    if (-5..=21).contains(&exp) {
        if exp <= 0 {
            out.push_str("0.");
            for _ in 0..(-exp) {
                out.push('0');
            }
            out.push_str(digits);
        } else {
            let e = exp as usize;
            if digits.len() <= e {
                out.push_str(digits);
                for _ in digits.len()..e {
                    out.push('0');
                }
            } else {
                out.push_str(&digits[..e]);
                out.push('.');
                out.push_str(&digits[e..]);
            }
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push_str(&format!("e{}", exp - 1));
    }
    out
}

impl Deref for BigReal {
    type Target = Float;
    fn deref(&self) -> &Float {
        &self.0
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => f.write_str(&self.to_digits(p)),
            None => f.write_str(&self.to_decimal()),
        }
    }
}

impl Serialize for BigReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal())
    }
}

impl From<Float> for BigReal {
    fn from(f: Float) -> Self {
        BigReal(f)
    }
}
