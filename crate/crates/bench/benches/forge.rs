use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use zeta_forge::catalog::{evaluate, Params};
use zeta_forge::dynamic::{dynamic_sum, make_transform_matrix, Route};
use zeta_forge::make_context;
use zeta_forge::precision::zeta_int;
use zeta_forge::quadrature::{integrate, IntegrandId, QuadratureSpec};
use zeta_forge::reversion::{pi_from_zeta3, solve_alpha3, TailModel};
use zeta_forge::roots::{continued_root, RootPattern};

fn series(c: &mut Criterion) {
    let ctx = make_context(50).unwrap();
    let mut g = c.benchmark_group("series");
    for id in ["Z3_ETA_FAST", "Z3_ETA_K2K1", "Z3_BIGENERGY", "ZN_ALL_STEP"] {
        g.bench_with_input(BenchmarkId::new(id, 60), &id, |b, id| {
            b.iter(|| evaluate(id, &Params::new(), black_box(60), &ctx).unwrap())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("zeta3_oracle");
    for d in [50u32, 200] {
        let ctx = make_context(d).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(d), &ctx, |b, ctx| {
            b.iter(|| zeta_int(black_box(3), ctx).unwrap())
        });
    }
    g.finish();
}

fn dynamic(c: &mut Criterion) {
    let ctx = make_context(40).unwrap();
    c.bench_function("matrix_m8", |b| {
        b.iter(|| make_transform_matrix(black_box(8)).unwrap())
    });
    let mut g = c.benchmark_group("dynamic_sum_n8");
    for r in Route::ALL {
        g.bench_function(r.name(), |b| {
            b.iter(|| dynamic_sum(black_box(8), r, &ctx).unwrap())
        });
    }
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    let ctx = make_context(30).unwrap();
    let spec = QuadratureSpec::for_context(&ctx);
    let mut g = c.benchmark_group("tanh_sinh_30");
    g.sample_size(20);
    for id in [IntegrandId::CscHalf, IntegrandId::LnSin, IntegrandId::Z7Cot] {
        g.bench_function(id.name(), |b| {
            b.iter(|| integrate(id, &spec, &ctx).unwrap())
        });
    }
    g.finish();
}

fn misc(c: &mut Criterion) {
    let ctx = make_context(40).unwrap();
    let p: RootPattern = "-+|+-".parse().unwrap();
    c.bench_function("continued_root", |b| {
        b.iter(|| continued_root(&p, &ctx).unwrap())
    });
    c.bench_function("revert_order_20", |b| {
        b.iter(|| pi_from_zeta3(black_box(20), &ctx).unwrap())
    });
    c.bench_function("alpha3_system_10", |b| {
        b.iter(|| solve_alpha3(black_box(10), TailModel::Ones, &ctx).unwrap())
    });
}

criterion_group!(benches, series, oracle, dynamic, quadrature, misc);
criterion_main!(benches);
