use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigRational(Rational);

impl BigRational {
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self> {
        let den = den.into();
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(BigRational(Rational::from((num.into(), den))))
    }

    pub fn from_int(v: impl Into<Integer>) -> Self {
        BigRational(Rational::from(v.into()))
    }

    pub fn zero() -> Self {
        BigRational(Rational::new())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_rational(r: Rational) -> Self {
        BigRational(r)
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == std::cmp::Ordering::Equal
    }

    pub fn to_float(&self, bits: u32) -> Float {
        Float::with_val(bits, &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(BigRational(Rational::from(self.0.recip_ref())))
    }
}

impl fmt::Display for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for BigRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let parse_int = |p: &str| {
            p.trim()
                .parse::<Integer>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        if let Some((n, d)) = t.split_once('/') {
            return BigRational::new(parse_int(n)?, parse_int(d)?);
        }
        // plain decimal such as "-0.0625"
        if let Some((w, f)) = t.split_once('.') {
            if !f.chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse(format!("{t:?}: not a decimal")));
            }
            let neg = w.trim_start().starts_with('-');
            let digits = format!("{}{f}", w.trim().trim_start_matches(['-', '+']));
            let mut num = parse_int(if digits.is_empty() { "0" } else { &digits })?;
            if neg {
                num = -num;
            }
            let den = Integer::from(Integer::u_pow_u(10, f.len() as u32));
            return BigRational::new(num, den);
        }
        Ok(BigRational::from_int(parse_int(t)?))
    }
}

impl Serialize for BigRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr for BigRational {
            type Output = BigRational;
            fn $f(self, rhs: BigRational) -> BigRational {
                BigRational(Rational::from(self.0.$f(rhs.0)))
            }
        }
        impl<'a> $tr<&'a BigRational> for &'a BigRational {
            type Output = BigRational;
            fn $f(self, rhs: &'a BigRational) -> BigRational {
                BigRational(Rational::from((&self.0).$f(&rhs.0)))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for BigRational {
    type Output = BigRational;
    fn div(self, rhs: BigRational) -> BigRational {
        assert!(!rhs.is_zero(), "division by zero rational");
        BigRational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a BigRational> for &'a BigRational {
    type Output = BigRational;
    fn div(self, rhs: &'a BigRational) -> BigRational {
        assert!(!rhs.is_zero(), "division by zero rational");
        BigRational(Rational::from(&self.0 / &rhs.0))
    }
}

impl Neg for BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        BigRational(-self.0)
    }
}

impl From<Rational> for BigRational {
    fn from(r: Rational) -> Self {
        BigRational(r)
    }
}

impl From<i64> for BigRational {
    fn from(v: i64) -> Self {
        BigRational::from_int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduced_on_construction() {
        let r = BigRational::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(*r.denom(), 2);
        assert!(BigRational::new(1, 0).is_err());
    }

    #[test]
    fn parses_fraction() {
        let r: BigRational = "-691/2730".parse().unwrap();
        assert_eq!(r, BigRational::new(-691, 2730).unwrap());
        let r: BigRational = "7".parse().unwrap();
        assert_eq!(r, BigRational::from_int(7));
        let r: BigRational = "-0.0625".parse().unwrap();
        assert_eq!(r, BigRational::new(-1, 16).unwrap());
        assert_eq!(
            "2.".parse::<BigRational>().unwrap(),
            BigRational::from_int(2)
        );
        assert!("1.2.3".parse::<BigRational>().is_err());
    }

    proptest! {
        #[test]
        fn add_sub_exact(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
            let x = BigRational::new(a, b).unwrap();
            let y = BigRational::new(c, d).unwrap();
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            let g = x.numer().clone().gcd(x.denom());
            prop_assert!(g == 1 || x.is_zero());
        }
    }
}
