//! Exact factorial ratios a(n, j) = (n!)²/((n−j)!(n+j)!) and the sums built
//! from them.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::precision::{BigRational, BigReal, PrecisionContext};

/// a(n, 0..=n) by a_{j+1} = a_j (n−j)/(n+j+1).
pub(crate) fn ratio_row(n: u64) -> Vec<Rational> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut a = Rational::from(1);
    row.push(a.clone());
    for j in 0..n {
        a *= Rational::from((n - j, n + j + 1));
        row.push(a.clone());
    }
    row
}

/// (n!)²/((n−j)!(n+j)!), exact.
pub fn factorial_ratio(n: u64, j: u64) -> Result<BigRational> {
    if j > n {
        return Err(Error::Domain(format!(
            "factorial ratio needs j <= n, got j={j}, n={n}"
        )));
    }
    let mut a = Rational::from(1);
    for i in 0..j {
        a *= Rational::from((n - i, n + i + 1));
    }
    Ok(BigRational::from_rational(a))
}

/// Σ_{j=1}^n (−1)^(j−1) a(n,j) j^m, exact.
pub fn gosper_sum(n: u64, m: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("gosper sum needs n >= 1".into()));
    }
    let row = ratio_row(n);
    let mut s = Rational::new();
    for (j, a) in row.iter().enumerate().skip(1) {
        let t = Rational::from(a * Integer::from(j).pow(m));
        if j % 2 == 1 {
            s += t;
        } else {
            s -= t;
        }
    }
    Ok(BigRational::from_rational(s))
}

/// The closed forms as printed for m ∈ {0, 1, 3, 5, 7}, and 0 for even m
/// with 1 ≤ m/2 and n > m/2. None where no closed form is stated.
pub fn gosper_closed_form(n: u64, m: u32) -> Option<BigRational> {
    if n == 0 {
        return None;
    }
    let n = Integer::from(n);
    let odd = |k: u32| -> Integer { Integer::from(&n * 2u32) - k };
    let nn = Integer::from(n.square_ref());
    let q =
        |num: Integer, den: Integer| Some(BigRational::from_rational(Rational::from((num, den))));
    match m {
        0 => q(Integer::from(1), Integer::from(2)),
        1 => q(n.clone(), odd(1) * 2u32),
        3 => q(nn, odd(1) * odd(3) * 2u32),
        5 => {
            let num: Integer = -nn * (Integer::from(&n * 4u32) - 1u32);
            q(num, odd(1) * odd(3) * odd(5) * 2u32)
        }
        7 => {
            let poly: Integer = Integer::from(&n * &n) * 34u32 - Integer::from(&n * 24u32) + 5u32;
            q(nn * poly, odd(1) * odd(3) * odd(5) * odd(7) * 2u32)
        }
        _ if m.is_multiple_of(2) && n > m / 2 => Some(BigRational::zero()),
        _ => None,
    }
}

/// Σ_{i=1}^n (−1)^(i−1) a(n,i)/i^k, which tends to η(k) (to 1/2 for k = 0).
pub fn eta_factorial_limit(k: u32, n: u64, ctx: &PrecisionContext) -> BigReal {
    let bits = ctx.work_bits();
    if k == 0 {
        // exact for every n
        return ctx.finish(Float::with_val(bits, 0.5));
    }
    ctx.finish(eta_factorial_raw(k, n, bits))
}

pub(crate) fn eta_factorial_raw(k: u32, n: u64, bits: u32) -> Float {
    let mut a = Float::with_val(bits, 1);
    let mut s = Float::new(bits);
    for i in 1..=n {
        a *= n + 1 - i;
        a /= n + i;
        let d = Float::with_val(bits, Integer::from(i).pow(k));
        let t = Float::with_val(bits, &a / d);
        if i % 2 == 1 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

/// a(n,j) = (n−j+1) C(n,j−1) / ((n+1) C(n+j,j−1)), checked exactly.
pub fn binomial_ratio_identity_check(n: u64, j: u64) -> bool {
    if j == 0 || j > n {
        return false;
    }
    let Ok(a) = factorial_ratio(n, j) else {
        return false;
    };
    let c1 = Integer::from(Integer::binomial_u(n as u32, (j - 1) as u32));
    let c2 = Integer::from(Integer::binomial_u((n + j) as u32, (j - 1) as u32));
    let b = Rational::from((c1 * (n - j + 1), c2 * (n + 1)));
    *a.as_rational() == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{eta_int, make_context};
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a, b).unwrap()
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(factorial_ratio(5, 0).unwrap(), q(1, 1));
        assert_eq!(factorial_ratio(2, 1).unwrap(), q(2, 3));
        let mut f = Integer::from(1);
        for n in 1..=5u64 {
            f *= n;
            let f2 = Integer::from(Integer::factorial(2 * n as u32));
            let want = Rational::from((Integer::from(f.square_ref()), f2));
            assert_eq!(*factorial_ratio(n, n).unwrap().as_rational(), want);
        }
        assert!(matches!(factorial_ratio(3, 4), Err(Error::Domain(_))));
        let row = ratio_row(7);
        for (j, a) in row.iter().enumerate() {
            assert_eq!(a, factorial_ratio(7, j as u64).unwrap().as_rational());
        }
    }

    #[test]
    fn gosper_examples() {
        assert_eq!(gosper_sum(2, 0).unwrap(), q(1, 2));
        assert_eq!(gosper_sum(2, 1).unwrap(), q(1, 3));
        assert_eq!(gosper_sum(5, 2).unwrap(), q(0, 1));
        // n = 2, m = 3: 2/3 − 8/6
        assert_eq!(gosper_sum(2, 3).unwrap(), q(-2, 3));
    }

    #[test]
    fn gosper_low_powers_and_even_vanishing() {
        for n in 1..=40u64 {
            for m in [0u32, 1] {
                assert_eq!(gosper_sum(n, m).unwrap(), gosper_closed_form(n, m).unwrap());
            }
            for m in (2..2 * n as u32).step_by(2) {
                assert!(gosper_sum(n, m).unwrap().is_zero(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn printed_odd_forms_hold_up_to_sign() {
        for n in 1..=40u64 {
            for m in [3u32, 5, 7] {
                let s = gosper_sum(n, m).unwrap();
                let c = gosper_closed_form(n, m).unwrap();
                assert_eq!(s, -c, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn eta_limits() {
        let c = make_context(30).unwrap();
        for n in [1u64, 7, 40] {
            assert_eq!(eta_factorial_limit(0, n, &c).to_f64(), 0.5);
        }
        // gaps at n = 400 shrink like 1/n and sit above 1e-4; pinned
        let g2 = eta_factorial_limit(2, 400, &c).to_f64() - eta_int(2, &c).to_f64();
        let g1 = eta_factorial_limit(1, 400, &c).to_f64() - eta_int(1, &c).to_f64();
        assert!((g2 - -1.248_438_802_081_705_7e-3).abs() < 1e-15, "{g2}");
        assert!((g1 - -6.246_093_753_051_748e-4).abs() < 1e-15, "{g1}");
        let g2b = eta_factorial_limit(2, 800, &c).to_f64() - eta_int(2, &c).to_f64();
        assert!(g2b.abs() < g2.abs());
    }

    #[test]
    fn binomial_identity_exhaustive() {
        assert!(binomial_ratio_identity_check(5, 1));
        assert_eq!(factorial_ratio(5, 1).unwrap(), q(5, 6));
        assert!(binomial_ratio_identity_check(8, 3));
        for n in 1..=20 {
            for j in 1..=n {
                assert!(binomial_ratio_identity_check(n, j));
            }
        }
        assert!(!binomial_ratio_identity_check(3, 0));
    }

    proptest! {
        #[test]
        fn ratios_lie_in_unit_interval(n in 1u64..60, j in 0u64..60) {
            prop_assume!(j <= n);
            let a = factorial_ratio(n, j).unwrap();
            prop_assert!(*a.as_rational() > 0 && *a.as_rational() <= 1);
        }
    }
}
