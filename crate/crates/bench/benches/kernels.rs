//! Criterion benchmarks for the hot numerical kernels.

use criterion::{criterion_group, criterion_main, Criterion};
use multlab_core::{
    discrete_l2_operator_norm, doubling_constant_estimate, forward_transform, Grid,
    MultiplierSymbol, SampledFunction, SpaceSpec, WeightSpec,
};

fn bench_forward_transform(c: &mut Criterion) {
    let grid = Grid::new(32.0, 4096).unwrap();
    let f = SampledFunction::from_real_fn(grid, |x| (-x * x / 2.0).exp());
    c.bench_function("forward_transform_4096", |b| {
        b.iter(|| forward_transform(std::hint::black_box(&f)))
    });
}

fn bench_operator_norm(c: &mut Criterion) {
    let grid = Grid::new(16.0, 256).unwrap();
    let a = MultiplierSymbol::Lorentzian {
        center: 0.0,
        width: 1.0,
    };
    let w = WeightSpec::PowerOnePlus { alpha: 0.2 };
    c.bench_function("discrete_l2_operator_norm_256", |b| {
        b.iter(|| discrete_l2_operator_norm(std::hint::black_box(&a), &w, grid, 256).unwrap())
    });
}

fn bench_doubling_sweep(c: &mut Criterion) {
    let space = SpaceSpec::new(2.0, WeightSpec::SubExp { c: 1.0, beta: 0.5 }).unwrap();
    let rs = [5.0, 10.0, 20.0, 40.0];
    let ys: Vec<f64> = (0..32).map(|i| i as f64).collect();
    c.bench_function("doubling_sweep_subexp", |b| {
        b.iter(|| doubling_constant_estimate(std::hint::black_box(&space), 2.0, &rs, &ys).unwrap())
    });
}

criterion_group!(benches, bench_forward_transform, bench_operator_norm, bench_doubling_sweep);
criterion_main!(benches);
