use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use netpolar::{
    alpha_upper, build_complete_uniform, build_line, geodesic_distances, polarization,
    verify_bipolar_max, MassPoints, MeasureParams,
};

fn line(n: usize) -> netpolar::Network {
    let pts: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, 1.0 + (i % 3) as f64)).collect();
    build_line(&MassPoints::on_line(&pts).unwrap()).unwrap()
}

fn bench_measures(c: &mut Criterion) {
    let mut group = c.benchmark_group("polarization");
    for n in [16, 64, 256] {
        let net = line(n);
        let dm = geodesic_distances(&net);
        let params = MeasureParams::default();
        group.bench_with_input(BenchmarkId::new("p1", n), &n, |b, _| {
            b.iter(|| polarization(black_box(&net), &params, &dm).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("geodesics", n), &n, |b, _| {
            b.iter(|| geodesic_distances(black_box(&net)))
        });
    }
    group.finish();
}

fn bench_numerics(c: &mut Criterion) {
    c.bench_function("alpha_upper(2)", |b| {
        b.iter(|| alpha_upper(black_box(2.0), 1e-9).unwrap())
    });
    let k5 = build_complete_uniform(&[1.0; 5]).unwrap();
    c.bench_function("verify_bipolar_max K5 step 1/12", |b| {
        b.iter(|| verify_bipolar_max(black_box(&k5), 1.0, 1.0 / 12.0).unwrap())
    });
}

criterion_group!(benches, bench_measures, bench_numerics);
criterion_main!(benches);
