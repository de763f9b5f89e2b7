//! Power-series reversion (π recovered from ζ(3)) and the truncated upper
//! triangular systems whose solutions approximate α(3) = (7/8)ζ(3).

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::precision::{
    constant_raw, eta_raw, euler_number, zeta_raw, BigRational, BigReal, ConstantId, Expo,
    PrecisionContext,
};

/// Σ c_k (x − center)^k, truncated at order N = len − 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    center: Float,
    coeffs: Vec<Float>,
}

impl PowerSeries {
    pub fn new(center: &BigReal, coefficients: &[BigReal]) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidParams(
                "power series needs at least one coefficient".into(),
            ));
        }
        let bits = coefficients
            .iter()
            .map(|c| c.prec())
            .max()
            .unwrap_or(64)
            .max(center.prec());
        Ok(Self {
            center: Float::with_val(bits, center.as_float()),
            coeffs: coefficients
                .iter()
                .map(|c| Float::with_val(bits, c.as_float()))
                .collect(),
        })
    }

    pub(crate) fn from_floats(center: Float, coeffs: Vec<Float>) -> Self {
        Self { center, coeffs }
    }

    /// x truncated at order `n`, centered at 0.
    pub fn identity(order: usize, bits: u32) -> Self {
        let mut c = vec![Float::new(bits); order + 1];
        if order >= 1 {
            c[1] = Float::with_val(bits, 1);
        }
        Self {
            center: Float::new(bits),
            coeffs: c,
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn bits(&self) -> u32 {
        self.coeffs[0].prec()
    }

    pub fn center(&self) -> BigReal {
        BigReal::from_float(self.center.clone())
    }

    pub fn coefficient(&self, k: usize) -> BigReal {
        BigReal::from_float(
            self.coeffs
                .get(k)
                .cloned()
                .unwrap_or_else(|| Float::new(self.bits())),
        )
    }

    pub fn coefficients(&self) -> Vec<BigReal> {
        self.coeffs
            .iter()
            .cloned()
            .map(BigReal::from_float)
            .collect()
    }

    fn zeros(&self, order: usize) -> Vec<Float> {
        vec![Float::new(self.bits()); order + 1]
    }

    fn same_center(&self, other: &Self) -> Result<()> {
        let d = Float::with_val(self.bits(), &self.center - &other.center);
        if !d.is_zero() {
            return Err(Error::Domain("series have different centers".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_center(other)?;
        let n = self.order().min(other.order());
        let c = (0..=n)
            .map(|k| Float::with_val(self.bits(), &self.coeffs[k] + &other.coeffs[k]))
            .collect();
        Ok(Self::from_floats(self.center.clone(), c))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_center(other)?;
        let n = self.order().min(other.order());
        let c = (0..=n)
            .map(|k| Float::with_val(self.bits(), &self.coeffs[k] - &other.coeffs[k]))
            .collect();
        Ok(Self::from_floats(self.center.clone(), c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_center(other)?;
        Ok(Self::from_floats(
            self.center.clone(),
            mul_trunc(&self.coeffs, &other.coeffs, self.order().min(other.order())),
        ))
    }

    pub fn scale(&self, s: &Float) -> Self {
        let c = self
            .coeffs
            .iter()
            .map(|a| Float::with_val(self.bits(), a * s))
            .collect();
        Self::from_floats(self.center.clone(), c)
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut c: Vec<Float> = (1..=n)
            .map(|k| Float::with_val(self.bits(), &self.coeffs[k] * k as u32))
            .collect();
        if c.is_empty() {
            c.push(Float::new(self.bits()));
        }
        Self::from_floats(self.center.clone(), c)
    }

    /// 1/self; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "reciprocal of a series with zero constant term".into(),
            ));
        }
        let n = self.order();
        let b = self.bits();
        let inv0 = Float::with_val(b, self.coeffs[0].recip_ref());
        let mut r = self.zeros(n);
        r[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Float::new(b);
            for j in 1..=k {
                s += Float::with_val(b, &self.coeffs[j] * &r[k - j]);
            }
            r[k] = -(s * &inv0);
        }
        Ok(Self::from_floats(self.center.clone(), r))
    }

    /// self(inner(x)). The inner series must have a zero constant term and
    /// self must be centered at 0; the result takes inner's center.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "inner series of a composition needs a zero constant term".into(),
            ));
        }
        if !self.center.is_zero() {
            return Err(Error::Domain(
                "outer series of a composition must be centered at 0".into(),
            ));
        }
        let n = self.order().min(inner.order());
        Ok(Self::from_floats(
            inner.center.clone(),
            compose_trunc(&self.coeffs, &inner.coeffs, n),
        ))
    }

    /// Value at x by Horner's rule.
    pub fn eval(&self, x: &BigReal) -> BigReal {
        let b = self.bits();
        let t = Float::with_val(b, x.as_float() - &self.center);
        let mut acc = Float::new(b);
        for c in self.coeffs.iter().rev() {
            acc = acc * &t + c;
        }
        BigReal::from_float(acc)
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PowerSeries", 3)?;
        st.serialize_field("center", &self.center())?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coefficients", &self.coefficients())?;
        st.end()
    }
}

fn mul_trunc(a: &[Float], b: &[Float], n: usize) -> Vec<Float> {
    let bits = a[0].prec();
    let mut c = vec![Float::new(bits); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            c[i + j] += Float::with_val(bits, x * y);
        }
    }
    c
}

fn compose_trunc(outer: &[Float], inner: &[Float], n: usize) -> Vec<Float> {
    // Horner in series arithmetic
    let bits = outer[0].prec();
    let mut acc = vec![Float::new(bits); n + 1];
    for c in outer.iter().take(n + 1).rev() {
        acc = mul_trunc(&acc, inner, n);
        acc[0] += c;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RevertMethod {
    /// a_n = (1/n!)·d^(n−1)/dx^(n−1) (x/f)^n at 0, i.e. (1/n)[x^(n−1)](x/f)^n.
    Lagrange,
    /// g ← g − (f∘g − x)/(f′∘g).
    Newton,
}

/// Inverse series by the Lagrange formula.
pub fn revert_series(f: &PowerSeries, order: usize) -> Result<PowerSeries> {
    revert_series_with(f, order, RevertMethod::Lagrange)
}

/// Inverse of f to order N. A nonzero constant term is allowed: if f is
/// centered at c with f(c) = f₀, the result is centered at f₀ with constant
/// term c.
pub fn revert_series_with(
    f: &PowerSeries,
    order: usize,
    method: RevertMethod,
) -> Result<PowerSeries> {
    if order == 0 || f.order() < 1 {
        return Err(Error::InvalidParams("reversion needs order >= 1".into()));
    }
    if f.coeffs[1].is_zero() {
        return Err(Error::Domain(
            "zero linear coefficient: series is not invertible".into(),
        ));
    }
    let n = order.min(f.order());
    let bits = f.bits();
    let mut base = f.coeffs[..=n].to_vec();
    base[0] = Float::new(bits);
    let mut g = match method {
        RevertMethod::Lagrange => lagrange(&base, n),
        RevertMethod::Newton => newton(&base, n),
    };
    g[0] = f.center.clone();
    Ok(PowerSeries::from_floats(
        Float::with_val(bits, &f.coeffs[0]),
        g,
    ))
}

fn lagrange(f: &[Float], n: usize) -> Vec<Float> {
    let bits = f[0].prec();
    // f/x, then x/f = 1/(f/x), both to order n−1
    let shifted = PowerSeries::from_floats(Float::new(bits), f[1..=n].to_vec());
    let h = shifted
        .reciprocal()
        .expect("linear coefficient checked")
        .coeffs;
    let mut g = vec![Float::new(bits); n + 1];
    let mut pow = h.clone();
    for k in 1..=n {
        if k > 1 {
            pow = mul_trunc(&pow, &h, n - 1);
        }
        g[k] = Float::with_val(bits, &pow[k - 1] / k as u32);
    }
    g
}

fn newton(f: &[Float], n: usize) -> Vec<Float> {
    let bits = f[0].prec();
    let fp = PowerSeries::from_floats(Float::new(bits), f.to_vec())
        .derivative()
        .coeffs;
    let mut fp = fp;
    fp.resize(n + 1, Float::new(bits));
    let mut g = vec![Float::new(bits); n + 1];
    g[1] = Float::with_val(bits, f[1].recip_ref());
    // each step doubles the number of correct coefficients
    let mut good = 1usize;
    while good < n {
        let fg = compose_trunc(f, &g, n);
        let mut resid = fg;
        resid[1] -= 1u32;
        let dg = compose_trunc(&fp, &g, n);
        let inv = PowerSeries::from_floats(Float::new(bits), dg)
            .reciprocal()
            .expect("f'(0) != 0")
            .coeffs;
        let corr = mul_trunc(&resid, &inv, n);
        for (gk, ck) in g.iter_mut().zip(corr) {
            *gk -= ck;
        }
        good *= 2;
    }
    g
}

// ---------------------------------------------------------------------------
// π from ζ(3)

fn series_bits(ctx: &PrecisionContext) -> u32 {
    ctx.elevated(10).work_bits()
}

/// f(x, n) = (1/7)(πx − x²/2 + 2 Σ_{j≤n} η(2j)/π^(2j) (πx^(2j+1)/(2j+1) − x^(2j+2)/(2j+2))),
/// truncated at order N, i.e. ∫₀ˣ (1/7) t(π−t) csc t dt.
pub fn zeta3_generating_series(n: usize, order: usize, ctx: &PrecisionContext) -> PowerSeries {
    let bits = series_bits(ctx);
    PowerSeries::from_floats(Float::new(bits), generating_coeffs(n, order, bits))
}

fn generating_coeffs(n: usize, order: usize, bits: u32) -> Vec<Float> {
    let pi = constant_raw(ConstantId::Pi, bits);
    let pi2 = Float::with_val(bits, pi.square_ref());
    let mut c = vec![Float::new(bits); order.max(2) + 1];
    c[1] = Float::with_val(bits, &pi / 7u32);
    c[2] = Float::with_val(bits, -1) / 14u32;
    let mut pj = Float::with_val(bits, 1);
    for j in 1..=n {
        let (lo, hi) = (2 * j + 1, 2 * j + 2);
        if lo > order {
            break;
        }
        pj *= &pi2;
        let w = Float::with_val(bits, eta_raw(&Expo::Int(2 * j as u32), bits) * 2u32) / &pj / 7u32;
        c[lo] += Float::with_val(bits, &w * &pi) / lo as u32;
        if hi <= order {
            c[hi] -= Float::with_val(bits, &w / hi as u32);
        }
    }
    c.truncate(order + 1);
    c
}

/// Reversion of 2 f(x/2, N) to order N; its value at ζ(3) approximates π.
pub fn pi_series(order: usize, ctx: &PrecisionContext) -> Result<PowerSeries> {
    if order < 2 {
        return Err(Error::InvalidParams(format!(
            "order must be >= 2, got {order}"
        )));
    }
    let bits = series_bits(ctx);
    let mut c = generating_coeffs(order, order, bits);
    for (k, ck) in c.iter_mut().enumerate().skip(2) {
        *ck >>= (k - 1) as u32;
    }
    revert_series(&PowerSeries::from_floats(Float::new(bits), c), order)
}

/// g(ζ(3)) with g the order-N reversion; tends to π.
pub fn pi_from_zeta3(order: usize, ctx: &PrecisionContext) -> Result<BigReal> {
    let g = pi_series(order, ctx)?;
    let z = BigReal::from_float(zeta_raw(&Expo::Int(3), g.bits()));
    Ok(ctx.finish(g.eval(&z).into_float()))
}

/// f(x, n) − ζ(3)/2 expanded about π/2 from the Euler-number series of csc,
/// with the constant ζ(3)/2 kept as the series value at the center.
pub fn centered_generating_series(n: usize, order: usize, ctx: &PrecisionContext) -> PowerSeries {
    let bits = series_bits(ctx);
    let pi = constant_raw(ConstantId::Pi, bits);
    let quarter_pi2 = Float::with_val(bits, pi.square_ref()) / 4u32;
    let mut c = vec![Float::new(bits); order.max(1) + 1];
    c[0] = zeta_raw(&Expo::Int(3), bits) / 2u32;
    c[1] = Float::with_val(bits, &quarter_pi2 / 7u32);
    for j in 1..=n {
        let k = 2 * j + 1;
        if k > order {
            break;
        }
        let e2 = Float::with_val(bits, euler_number(2 * j))
            / Float::with_val(bits, Integer::from(Integer::factorial(2 * j as u32)));
        let e0 = Float::with_val(bits, euler_number(2 * j - 2))
            / Float::with_val(bits, Integer::from(Integer::factorial(2 * j as u32 - 2)));
        let mut t = (Float::with_val(bits, &quarter_pi2 * &e2) + e0) / k as u32 / 7u32;
        if j % 2 == 1 {
            t = -t;
        }
        c[k] = t;
    }
    c.truncate(order + 1);
    PowerSeries::from_floats(pi / 2u32, c)
}

/// Reversion of the centered series: centered at ζ(3)/2 with constant π/2.
pub fn pi_series_centered(order: usize, ctx: &PrecisionContext) -> Result<PowerSeries> {
    if order < 2 {
        return Err(Error::InvalidParams(format!(
            "order must be >= 2, got {order}"
        )));
    }
    revert_series(&centered_generating_series(order, order, ctx), order)
}

pub fn pi_from_zeta3_centered(order: usize, ctx: &PrecisionContext) -> Result<BigReal> {
    let g = pi_series_centered(order, ctx)?;
    let z = BigReal::from_float(zeta_raw(&Expo::Int(3), g.bits()));
    Ok(ctx.finish(g.eval(&z).into_float()))
}

// ---------------------------------------------------------------------------
// triangular systems for α(3)

/// What replaces α beyond the truncation point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    /// α = 0 in the whole tail.
    Zeros,
    /// α = 1 in the whole tail (exact geometric-binomial sum).
    Ones,
    /// α from the ζ oracle.
    Oracle,
    /// Only the first tail term, α = 1, as in the displayed finite system.
    LeadingOne,
}

impl std::str::FromStr for TailModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "zeros" | "zero" => Ok(TailModel::Zeros),
            "ones" | "one" => Ok(TailModel::Ones),
            "oracle" => Ok(TailModel::Oracle),
            "leading_one" => Ok(TailModel::LeadingOne),
            _ => Err(Error::InvalidParams(format!("unknown tail model {s:?}"))),
        }
    }
}

/// A(i, j) = C(m+2j−1, m−1) / (4^j (2^(m−1) − 1)) with m = 2i+1: the weight of
/// α(m+2j) in α(m) = Σ_j A(i, j) α(m+2j).
pub fn coupling(i: u32, j: u32) -> BigRational {
    BigRational::from_rational(coupling_raw(i, j))
}

fn coupling_raw(i: u32, j: u32) -> Rational {
    let m = 2 * i + 1;
    let num = Integer::from(Integer::binomial_u(m + 2 * j - 1, m - 1));
    let den = (Integer::from(1) << (2 * j)) * ((Integer::from(1) << (m - 1)) - 1u32);
    Rational::from((num, den))
}

/// Σ_{j ≥ from} A(i, j), exact: the even part of (1 − x)^(−m) at x = 1/2
/// gives Σ_{j≥1} A(i, j) = 1 + (2/3)^m / (2(2^(m−1) − 1)).
fn coupling_tail_sum(i: u32, from: u32) -> Rational {
    let m = 2 * i + 1;
    let d = (Integer::from(1) << (m - 1)) - 1u32;
    let two_thirds = Rational::from((Integer::from(1) << m, Integer::from(3).pow(m)));
    let mut total = Rational::from(1) + two_thirds / (d * 2u32);
    for j in 1..from {
        total -= coupling_raw(i, j);
    }
    total
}

/// n×n unit upper triangular K with K(i, i+j) = −A(i, j), unknowns
/// α(3), α(5), …, α(2n+1), and right-hand side Σ_{j>n−i} A(i, j) α(2i+1+2j)
/// per the tail model.
#[derive(Clone, Debug)]
pub struct TriangularSystem {
    pub n: usize,
    pub tail: TailModel,
    k: Vec<Vec<Rational>>,
    rhs: Option<Vec<Rational>>,
}

pub fn build_system(n: usize, tail: TailModel) -> Result<TriangularSystem> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "system size must be >= 2, got {n}"
        )));
    }
    let k = unit_triangular(n);
    let rhs = match tail {
        TailModel::Oracle => None,
        TailModel::Zeros => Some(vec![Rational::new(); n]),
        TailModel::Ones => Some(
            (1..=n as u32)
                .map(|i| coupling_tail_sum(i, n as u32 - i + 1))
                .collect(),
        ),
        TailModel::LeadingOne => Some(
            (1..=n as u32)
                .map(|i| coupling_raw(i, n as u32 - i + 1))
                .collect(),
        ),
    };
    Ok(TriangularSystem { n, tail, k, rhs })
}

fn unit_triangular(n: usize) -> Vec<Vec<Rational>> {
    let mut k = vec![vec![Rational::new(); n]; n];
    for r in 0..n {
        k[r][r] = Rational::from(1);
        for c in r + 1..n {
            k[r][c] = -coupling_raw(r as u32 + 1, (c - r) as u32);
        }
    }
    k
}

impl TriangularSystem {
    /// Entry K(i, j), 1-based.
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::from_rational(self.k[i - 1][j - 1].clone())
    }

    pub fn matrix(&self) -> Vec<Vec<BigRational>> {
        self.k
            .iter()
            .map(|r| r.iter().cloned().map(BigRational::from_rational).collect())
            .collect()
    }

    /// Exact right-hand side; `None` for the oracle tail.
    pub fn rhs_exact(&self) -> Option<Vec<BigRational>> {
        self.rhs
            .as_ref()
            .map(|v| v.iter().cloned().map(BigRational::from_rational).collect())
    }

    pub fn rhs(&self, ctx: &PrecisionContext) -> Vec<BigReal> {
        let bits = ctx.work_bits();
        self.rhs_floats(bits)
            .into_iter()
            .map(|v| ctx.finish(v))
            .collect()
    }

    fn rhs_floats(&self, bits: u32) -> Vec<Float> {
        if let Some(r) = &self.rhs {
            return r.iter().map(|q| Float::with_val(bits, q)).collect();
        }
        let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32) - 8));
        (1..=self.n as u32)
            .map(|i| {
                let mut s = Float::new(bits);
                let mut j = self.n as u32 - i + 1;
                loop {
                    let m = 2 * i + 1 + 2 * j;
                    let t = Float::with_val(bits, &coupling_raw(i, j)) * alpha_raw(m, bits);
                    let small = t < eps;
                    s += t;
                    if small {
                        break;
                    }
                    j += 1;
                }
                s
            })
            .collect()
    }

    /// Exact solution when the right-hand side is rational.
    pub fn solve_exact(&self) -> Option<Vec<BigRational>> {
        let b = self.rhs.as_ref()?;
        let n = self.n;
        let mut x = vec![Rational::new(); n];
        for r in (0..n).rev() {
            let mut s = b[r].clone();
            for c in r + 1..n {
                s -= Rational::from(&self.k[r][c] * &x[c]);
            }
            x[r] = s;
        }
        Some(x.into_iter().map(BigRational::from_rational).collect())
    }

    /// Back-substitution for (α(3), α(5), …).
    pub fn solve(&self, ctx: &PrecisionContext) -> Vec<BigReal> {
        let bits = ctx.work_bits();
        let b = self.rhs_floats(bits);
        let n = self.n;
        let mut x: Vec<Float> = vec![Float::new(bits); n];
        for r in (0..n).rev() {
            let mut s = b[r].clone();
            for c in r + 1..n {
                s -= Float::with_val(bits, &self.k[r][c]) * &x[c];
            }
            x[r] = s;
        }
        x.into_iter().map(|v| ctx.finish(v)).collect()
    }
}

impl Serialize for TriangularSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TriangularSystem", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("tail", &self.tail)?;
        st.serialize_field("matrix", &self.matrix())?;
        st.serialize_field("rhs", &self.rhs_exact())?;
        st.end()
    }
}

fn alpha_raw(m: u32, bits: u32) -> Float {
    let z = zeta_raw(&Expo::Int(m), bits);
    let f = Float::with_val(
        bits,
        1 - Float::with_val(bits, Float::i_exp(1, -(m as i32))),
    );
    z * f
}

/// First component of the solution: the α(3) approximation.
pub fn solve_alpha3(n: usize, tail: TailModel, ctx: &PrecisionContext) -> Result<BigReal> {
    let sys = build_system(n, tail)?;
    Ok(sys.solve(ctx).swap_remove(0))
}

/// B(k, n): sum over index paths 1 = p₀ < p₁ < … < p_k = n of
/// Π A(p_t, p_{t+1} − p_t). B(1, n) = A(1, n−1).
pub fn b_term(k: usize, n: usize) -> BigRational {
    BigRational::from_rational(b_table(n)[k][n].clone())
}

/// table[k][p] = B(k, p) for p ≤ n.
fn b_table(n: usize) -> Vec<Vec<Rational>> {
    let mut t = vec![vec![Rational::new(); n + 1]; n];
    if n >= 1 {
        t[0][1] = Rational::from(1);
    }
    for k in 1..n {
        for p in 2..=n {
            let mut s = Rational::new();
            for q in 1..p {
                if t[k - 1][q] != 0 {
                    s += Rational::from(&t[k - 1][q] * &coupling_raw(q as u32, (p - q) as u32));
                }
            }
            t[k][p] = s;
        }
    }
    t
}

/// U(1..=n) with U(1) = 1 and U(p) = Σ_{k=1}^{p−1} B(k, p).
pub fn u_row(n: usize) -> Result<Vec<BigRational>> {
    if n < 1 {
        return Err(Error::InvalidParams("u_row needs n >= 1".into()));
    }
    let t = b_table(n);
    Ok((1..=n)
        .map(|p| {
            if p == 1 {
                return BigRational::one();
            }
            let mut s = Rational::new();
            for row in t.iter().take(p).skip(1) {
                s += &row[p];
            }
            BigRational::from_rational(s)
        })
        .collect())
}

/// Exact inverse of the n×n system matrix by Gauss–Jordan elimination.
pub fn system_inverse(n: usize) -> Result<Vec<Vec<BigRational>>> {
    if n < 1 {
        return Err(Error::InvalidParams("matrix size must be >= 1".into()));
    }
    let mut a = unit_triangular(n);
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|r| (0..n).map(|c| Rational::from(u32::from(r == c))).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != 0)
            .ok_or_else(|| Error::Domain("singular".into()))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col].clone();
                for c in 0..n {
                    let d = Rational::from(&f * &a[col][c]);
                    a[r][c] -= d;
                    let d = Rational::from(&f * &inv[col][c]);
                    inv[r][c] -= d;
                }
            }
        }
    }
    Ok(inv
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_rational).collect())
        .collect())
}

#[cfg(test)]
mod tests;
