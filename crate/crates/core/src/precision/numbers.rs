use rug::{Integer, Rational};

use super::BigRational;
use crate::error::{Error, Result};

/// B_0..=B_m (with B_1 = −1/2) from Σ_{k=0}^{m} C(m+1,k) B_k = 0.
pub fn bernoulli_table(m: usize) -> Vec<BigRational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::from(1));
    for n in 1..=m {
        if n > 1 && n % 2 == 1 {
            b.push(Rational::new());
            continue;
        }
        // C(n+1, k) walked incrementally
        let mut c = Integer::from(1);
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            if bk.cmp0() != std::cmp::Ordering::Equal {
                acc += Rational::from(bk * &c);
            }
            c *= (n + 1 - k) as u64;
            c /= (k + 1) as u64;
        }
        b.push(-acc / Rational::from(n as u64 + 1));
    }
    b.into_iter().map(BigRational::from_rational).collect()
}

/// Exact Bernoulli number B_m. Odd m > 1 is rejected (those values vanish).
pub fn bernoulli(m: usize) -> Result<BigRational> {
    if m > 1 && m % 2 == 1 {
        return Err(Error::Domain(format!("B_{m}: odd index above 1")));
    }
    Ok(bernoulli_table(m).pop().expect("table is non-empty"))
}

/// Secant-series Euler number E_m (E_0 = 1, E_2 = −1, E_4 = 5, …) from
/// Σ_{k=0}^{n} C(2n,2k) E_{2k} = 0. Odd m returns 0.
pub fn euler_number(m: usize) -> Integer {
    if m % 2 == 1 {
        return Integer::new();
    }
    euler_table(m / 2).pop().expect("table is non-empty")
}

/// E_0, E_2, …, E_{2n}.
pub(crate) fn euler_table(n: usize) -> Vec<Integer> {
    let mut e: Vec<Integer> = vec![Integer::from(1)];
    for k in 1..=n {
        let mut acc = Integer::new();
        for (j, ej) in e.iter().enumerate() {
            acc += Integer::from(Integer::binomial_u(2 * k as u32, 2 * j as u32)) * ej;
        }
        e.push(-acc);
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n, d).unwrap()
    }

    #[test]
    fn small_bernoulli() {
        assert_eq!(bernoulli(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert!(bernoulli(7).is_err());
        let t = bernoulli_table(20);
        assert_eq!(t[20], q(-174611, 330));
        assert!(t[9].is_zero());
    }

    #[test]
    fn small_euler() {
        let v: Vec<i64> = (0..=5)
            .map(|k| euler_number(2 * k).to_i64().unwrap())
            .collect();
        assert_eq!(v, vec![1, -1, 5, -61, 1385, -50521]);
        assert_eq!(euler_number(3), 0);
    }

    #[test]
    fn euler_matches_sech_series() {
        // Σ E_{2j} x^{2j}/(2j)! = sech x at x = 0.3
        let x = 0.3f64;
        let mut s = 0.0;
        let mut fact = 1.0;
        let e = euler_table(10);
        for (j, ej) in e.iter().enumerate() {
            if j > 0 {
                fact *= ((2 * j - 1) * 2 * j) as f64;
            }
            s += ej.to_f64() * x.powi(2 * j as i32) / fact;
        }
        assert!((s - 1.0 / x.cosh()).abs() < 1e-14);
    }
}
