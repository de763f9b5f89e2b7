//! Arbitrary-precision numeric contract: working precision, real and rational
//! value types, fundamental constants, Bernoulli/Euler numbers and the
//! reference oracle for ζ and η.

mod constants;
mod numbers;
mod oracle;
mod rational;
mod real;

pub use constants::{constant, constant_alt, ConstantId, LITERAL_DIGITS};
pub use numbers::{bernoulli, bernoulli_table, euler_number};
pub use oracle::{alpha_ref, eta_int, eta_ref, hurwitz_ref, zeta_em, zeta_int, zeta_ref};
pub use rational::BigRational;

pub(crate) use constants::constant_raw;
pub(crate) use numbers::euler_table;
pub(crate) use oracle::{eta_raw, zeta_raw, Expo};
pub(crate) use real::decimal_places;
pub use real::BigReal;

use rug::Float;

use crate::error::{Error, Result};

pub(crate) const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision in decimal digits plus guard digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 15;
    pub const DEFAULT_GUARD: u32 = 10;

    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Config(format!(
                "precision of {digits} digits is below the floor of {}",
                Self::MIN_DIGITS
            )));
        }
        Ok(Self { digits, guard })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Bits carried during internal computation (digits + guard).
    pub fn work_bits(&self) -> u32 {
        digits_to_bits(self.digits + self.guard) + 16
    }

    /// Bits of a published result (digits only).
    pub fn out_bits(&self) -> u32 {
        digits_to_bits(self.digits) + 4
    }

    /// Same guard, `extra` more digits.
    pub fn elevated(&self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
            guard: self.guard,
        }
    }

    /// A fresh zero at working precision.
    pub fn zero(&self) -> Float {
        Float::new(self.work_bits())
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        let mut f = Float::new(self.work_bits());
        rug::Assign::assign(&mut f, v);
        f
    }

    /// Round an internal value to the published precision.
    pub fn finish(&self, v: Float) -> BigReal {
        BigReal::from_float(Float::with_val(self.out_bits(), v))
    }

    /// 10^(-digits), the relative tolerance the context promises.
    pub fn epsilon(&self) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.work_bits(), 10).pow(-(self.digits as i32))
    }
}

/// Exact integers serialize as decimal strings.
pub fn serialize_integer<S: serde::Serializer>(
    v: &rug::Integer,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Build a context; digits below 15 are a configuration error.
pub fn make_context(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits)
}

pub(crate) fn digits_to_bits(d: u32) -> u32 {
    (f64::from(d) * LOG2_10).ceil() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_floor() {
        assert!(make_context(10).is_err());
        let c = make_context(15).unwrap();
        assert_eq!(c.digits(), 15);
        let c = make_context(50).unwrap();
        assert_eq!((c.digits(), c.guard()), (50, 10));
        assert!(c.work_bits() > c.out_bits());
    }

    #[test]
    fn elevated_keeps_guard() {
        let c = make_context(30).unwrap().elevated(12);
        assert_eq!((c.digits(), c.guard()), (42, 10));
    }

    #[test]
    fn epsilon_magnitude() {
        let c = make_context(20).unwrap();
        let e = c.epsilon().to_f64();
        assert!((e / 1e-20 - 1.0).abs() < 1e-12);
    }
}
