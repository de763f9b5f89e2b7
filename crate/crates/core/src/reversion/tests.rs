use super::*;
use crate::precision::make_context;
use proptest::prelude::*;

fn ctx(d: u32) -> PrecisionContext {
    make_context(d).unwrap()
}

fn series(c: &[f64], bits: u32) -> PowerSeries {
    PowerSeries::from_floats(
        Float::new(bits),
        c.iter().map(|&v| Float::with_val(bits, v)).collect(),
    )
}

fn pi(bits: u32) -> Float {
    constant_raw(ConstantId::Pi, bits)
}

#[test]
fn identity_reverts_to_identity() {
    let f = PowerSeries::identity(8, 128);
    let g = revert_series(&f, 8).unwrap();
    assert_eq!(g.coefficient(1).to_f64(), 1.0);
    assert!((2..=8).all(|k| g.coefficient(k).is_zero()));
}

#[test]
fn catalan_numbers_with_signs() {
    let f = series(&[0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 128);
    let want = [0.0, 1.0, -1.0, 2.0, -5.0, 14.0, -42.0, 132.0];
    for m in [RevertMethod::Lagrange, RevertMethod::Newton] {
        let g = revert_series_with(&f, 7, m).unwrap();
        for (k, w) in want.iter().enumerate() {
            assert_eq!(g.coefficient(k).to_f64(), *w, "{m:?} k={k}");
        }
        // composition check through order 7
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.coefficient(1).to_f64(), 1.0);
        assert!((2..=7).all(|k| gf.coefficient(k).is_zero()));
    }
}

#[test]
fn zero_linear_term_is_domain_error() {
    let f = series(&[0.0, 0.0, 1.0], 64);
    assert!(matches!(revert_series(&f, 2), Err(Error::Domain(_))));
}

#[test]
fn printed_prefix_of_g() {
    let c = ctx(40);
    let g = pi_series(12, &c).unwrap();
    let b = 200;
    let p = pi(b);
    let p2 = Float::with_val(b, p.square_ref());
    let pw = |k: u32| Float::with_val(b, (&p).pow(k));
    let printed = [
        Float::with_val(b, 7) / &p,
        Float::with_val(b, 49) / (pw(3) * 4u32),
        -(Float::with_val(b, &p2 - 9u32) * 343u32) / (pw(5) * 72u32),
        -(Float::with_val(b, &p2 * 7u32) - 45u32) * 2401u32 / (pw(7) * 576u32),
        (Float::with_val(b, pw(4) * 29u32) - Float::with_val(b, &p2 * 900u32) + 4725u32) * 16807u32
            / (pw(9) * 86400u32),
    ];
    for (k, want) in printed.iter().enumerate() {
        let got = g.coefficient(k + 1);
        let rel = Float::with_val(b, Float::with_val(b, got.as_float() - want) / want).abs();
        assert!(rel < 1e-35, "coefficient {}", k + 1);
    }
}

#[test]
fn pi_from_zeta3_converges() {
    let c = ctx(40);
    let err = |n| {
        let v = pi_from_zeta3(n, &c).unwrap();
        Float::with_val(200, v.as_float() - pi(200)).to_f64()
    };
    let e: Vec<f64> = [5, 10, 20].iter().map(|&n| err(n)).collect();
    // mpmath: −7.0860034e-3, 4.5616668e-5, 4.3896495e-8
    for (got, want) in e.iter().zip([-7.0860034e-3, 4.5616668e-5, 4.3896495e-8]) {
        assert!(
            (got - want).abs() < 1e-6 * want.abs(),
            "{got:e} vs {want:e}"
        );
    }
    assert!(e[0].abs() > e[1].abs() && e[1].abs() > e[2].abs());
}

#[test]
fn centered_variant() {
    let c = ctx(40);
    let g = pi_series_centered(6, &c).unwrap();
    let b = 200;
    let p = pi(b);
    let p2 = Float::with_val(b, p.square_ref());
    let c1 = Float::with_val(b, 28) / &p2;
    let c3 =
        -(Float::with_val(b, &p2 - 8u32) * 10976u32) / (Float::with_val(b, (&p).pow(8u32)) * 3u32);
    let c5 = (Float::with_val(b, p2.clone().pow(2u32) * 5u32) - Float::with_val(b, &p2 * 112u32)
        + 640u32)
        * 2151296u32
        / (Float::with_val(b, (&p).pow(14u32)) * 15u32);
    for (k, want) in [(1, c1), (3, c3), (5, c5)] {
        let rel = Float::with_val(
            b,
            Float::with_val(b, g.coefficient(k).as_float() - &want) / &want,
        )
        .abs();
        assert!(rel < 1e-35, "k={k}");
    }
    assert!(g.coefficient(2).is_zero() && g.coefficient(4).is_zero());
    assert!((g.coefficient(0).to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    let e: Vec<f64> = [5, 10, 20]
        .iter()
        .map(|&n| {
            Float::with_val(
                200,
                pi_from_zeta3_centered(n, &c).unwrap().as_float() - pi(200),
            )
            .to_f64()
        })
        .collect();
    for (got, want) in e.iter().zip([4.4968478e-3, 2.3793102e-4, -2.6379785e-7]) {
        assert!(
            (got - want).abs() < 1e-6 * want.abs(),
            "{got:e} vs {want:e}"
        );
    }
}

#[test]
fn lagrange_and_newton_agree_up_to_25() {
    let c = ctx(40);
    let f = zeta3_generating_series(25, 25, &c);
    let a = revert_series_with(&f, 25, RevertMethod::Lagrange).unwrap();
    let b = revert_series_with(&f, 25, RevertMethod::Newton).unwrap();
    for k in 1..=25 {
        let (x, y) = (a.coefficient(k), b.coefficient(k));
        let scale = x.as_float().clone().abs().max(&Float::with_val(64, 1e-300));
        let rel = Float::with_val(300, x.abs_diff(&y) / scale);
        assert!(rel < 1e-35, "k={k}: {}", rel.to_f64());
    }
    let gf = a.compose(&f).unwrap();
    assert!((gf.coefficient(1).to_f64() - 1.0).abs() < 1e-40);
    for k in 2..=25 {
        assert!(gf.coefficient(k).to_f64().abs() < 1e-35, "k={k}");
    }
}

#[test]
fn series_arithmetic() {
    let b = 128;
    let f = series(&[1.0, 2.0, 3.0], b);
    let g = series(&[0.5, -1.0, 4.0], b);
    let s = f.add(&g).unwrap();
    assert_eq!(s.coefficient(2).to_f64(), 7.0);
    let d = f.sub(&g).unwrap();
    assert_eq!(d.coefficient(1).to_f64(), 3.0);
    let m = f.mul(&g).unwrap();
    assert_eq!(m.coefficient(2).to_f64(), 0.5 * 3.0 - 2.0 + 4.0);
    let r = f.reciprocal().unwrap();
    let one = f.mul(&r).unwrap();
    assert_eq!(one.coefficient(0).to_f64(), 1.0);
    assert!(one.coefficient(1).is_zero() && one.coefficient(2).is_zero());
    assert_eq!(f.derivative().coefficient(1).to_f64(), 6.0);
    assert!(series(&[0.0, 1.0], b).reciprocal().is_err());
    let c = ctx(20);
    let v = f.eval(&BigReal::parse("2", &c).unwrap());
    assert_eq!(v.to_f64(), 1.0 + 4.0 + 12.0);
    let shifted = PowerSeries::from_floats(Float::with_val(b, 1), vec![Float::with_val(b, 1); 3]);
    assert!(f.add(&shifted).is_err());
    let j: serde_json::Value = serde_json::to_value(&f).unwrap();
    assert_eq!(j["order"], 2);
}

#[test]
fn coupling_values() {
    assert_eq!(coupling(1, 1), BigRational::new(1, 2).unwrap());
    // C(4,2)/(4·3), C(6,2)/(16·3), C(6,4)/(4·15)
    assert_eq!(coupling(1, 2), BigRational::new(5, 16).unwrap());
    assert_eq!(coupling(2, 1), BigRational::new(1, 4).unwrap());
    let full = coupling_tail_sum(1, 1);
    assert_eq!(full, Rational::from((85, 81)));
    let mut partial = Rational::new();
    for j in 1..200 {
        partial += coupling_raw(1, j);
    }
    let gap = Float::with_val(200, &full - partial);
    assert!(gap < 1e-50);
}

#[test]
fn system_shape() {
    let s = build_system(4, TailModel::Ones).unwrap();
    for i in 1..=4 {
        assert_eq!(s.entry(i, i), BigRational::one());
        for j in 1..i {
            assert!(s.entry(i, j).is_zero());
        }
    }
    assert_eq!(s.entry(1, 2), -coupling(1, 1));
    assert!(build_system(1, TailModel::Ones).is_err());
    assert!(build_system(3, TailModel::Oracle)
        .unwrap()
        .rhs_exact()
        .is_none());
    let j = serde_json::to_value(&s).unwrap();
    assert_eq!(j["tail"], "ones");
    assert_eq!(j["matrix"][0][1], "-1/2");
}

#[test]
fn alpha3_from_systems() {
    let c = ctx(40);
    let a3 = Float::with_val(300, zeta_raw(&Expo::Int(3), 300) * 7u32) / 8u32;
    let err =
        |n, t| Float::with_val(300, solve_alpha3(n, t, &c).unwrap().as_float() - &a3).to_f64();
    for n in [2usize, 6, 10] {
        assert!(err(n, TailModel::Oracle).abs() < 1e-38, "n={n}");
    }
    let ones: Vec<f64> = [4, 6, 8].iter().map(|&n| err(n, TailModel::Ones)).collect();
    for (got, want) in ones
        .iter()
        .zip([-1.7100838e-6, -1.5626067e-8, -1.5322536e-10])
    {
        assert!((got - want).abs() < 1e-6 * want.abs(), "{got:e}");
    }
    assert!(err(4, TailModel::Zeros).abs() > ones[0].abs());
    let lead: Vec<f64> = [4, 6, 8]
        .iter()
        .map(|&n| err(n, TailModel::LeadingOne))
        .collect();
    for (got, want) in lead.iter().zip([-0.77767295, -0.84968153, -0.89160576]) {
        assert!((got - want).abs() < 1e-6, "{got}");
    }
}

#[test]
fn u_row_is_first_row_of_inverse() {
    let u = u_row(8).unwrap();
    assert_eq!(u[0], BigRational::one());
    assert_eq!(u[1], coupling(1, 1));
    for n in 2..=7 {
        let inv = system_inverse(n).unwrap();
        assert_eq!(u_row(n).unwrap(), inv[0], "n={n}");
    }
    // leading-one solution equals the next U
    for n in 2..=7 {
        let x = build_system(n, TailModel::LeadingOne)
            .unwrap()
            .solve_exact()
            .unwrap();
        assert_eq!(x[0], u[n], "n={n}");
    }
    assert_eq!(b_term(1, 5), coupling(1, 4));
}

#[test]
fn exact_and_float_solutions_match() {
    let c = ctx(30);
    let s = build_system(6, TailModel::Ones).unwrap();
    let exact = s.solve_exact().unwrap();
    let approx = s.solve(&c);
    for (e, a) in exact.iter().zip(&approx) {
        let ef = BigReal::from_float(e.to_float(200));
        assert!(ef.agreement(a) > 30.0);
    }
}

proptest! {
    #[test]
    fn reversion_composes_to_identity(a1 in 0.5f64..3.0, a2 in -2.0f64..2.0, a3 in -2.0f64..2.0) {
        let f = series(&[0.0, a1, a2, a3, 0.0, 0.0, 0.0], 160);
        let g = revert_series(&f, 6).unwrap();
        let gf = g.compose(&f).unwrap();
        prop_assert!((gf.coefficient(1).to_f64() - 1.0).abs() < 1e-40);
        for k in 2..=6 {
            prop_assert!(gf.coefficient(k).to_f64().abs() < 1e-35);
        }
    }
}
