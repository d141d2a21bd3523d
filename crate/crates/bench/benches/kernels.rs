use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use herbst_bench::bump_fixture;
use herbst_core::fourierb::b_hat;
use herbst_core::kernel::green_function;
use herbst_core::specfun::{k0, k1};
use herbst_core::spectral::{leading_eigenpair, s_wave_reduce};
use herbst_core::PhysParams;

fn bessel(c: &mut Criterion) {
    let xs: Vec<f64> = (1..=64).map(|i| 0.05 * i as f64).collect();
    c.bench_function("bessel_k0_k1_64pts", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| k0(black_box(x)) + k1(black_box(x)))
                .sum::<f64>()
        })
    });
}

fn green(c: &mut Criterion) {
    let p = PhysParams::from_mu(1.0, 0.3).unwrap();
    let p0 = PhysParams::from_mu(1.0, 0.0).unwrap();
    c.bench_function("green_function_mu_0.3", |b| {
        b.iter(|| green_function(black_box(0.7), &p).unwrap())
    });
    c.bench_function("green_function_mu_0", |b| {
        b.iter(|| green_function(black_box(0.7), &p0).unwrap())
    });
}

fn second_order_transform(c: &mut Criterion) {
    c.bench_function("b_hat", |b| b.iter(|| b_hat(black_box(0.5)).unwrap()));
}

fn nystrom(c: &mut Criterion) {
    let mut group = c.benchmark_group("s_wave_reduce");
    group.sample_size(10);
    for n in [50, 100, 200] {
        let (v, p, g) = bump_fixture(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| s_wave_reduce(&v, &p, &g).unwrap())
        });
    }
    group.finish();
    let (v, p, g) = bump_fixture(200);
    let mat = s_wave_reduce(&v, &p, &g).unwrap();
    c.bench_function("leading_eigenpair_200", |b| {
        b.iter(|| leading_eigenpair(black_box(&mat)).unwrap())
    });
}

criterion_group!(benches, bessel, green, second_order_transform, nystrom);
criterion_main!(benches);
