use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polyhardy_core::samples;
use polyhardy_core::{
    apply_sk, cauchy_transform, pv_cauchy, sk_exact_circle, CurveDiscretization, Side, WhitneyJet,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ellipse(n: usize) -> Arc<CurveDiscretization> {
    Arc::new(CurveDiscretization::ellipse(2.0, 1.0, n).unwrap())
}

fn sample_jet(n: usize, k: usize) -> WhitneyJet {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    WhitneyJet::from_laurent(ellipse(n), &samples::random_laurent_jet(&mut rng, k, -8, 8))
}

fn pv(c: &mut Criterion) {
    let mut group = c.benchmark_group("pv_cauchy");
    for n in [128, 256, 512] {
        let jet = sample_jet(n, 0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &jet, |b, jet| {
            b.iter(|| pv_cauchy(jet.curve(), black_box(jet.row(0))).unwrap())
        });
    }
    group.finish();
}

fn sk(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_sk");
    for (n, k) in [(256, 1), (256, 3), (512, 3)] {
        let jet = sample_jet(n, k);
        group.bench_with_input(BenchmarkId::new(format!("k{k}"), n), &jet, |b, jet| {
            b.iter(|| apply_sk(black_box(jet)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let jet = samples::random_laurent_jet(&mut rng, 3, -16, 16);
    c.bench_function("sk_exact_circle/k3", |b| {
        b.iter(|| sk_exact_circle(black_box(&jet)).unwrap())
    });
}

fn transform(c: &mut Criterion) {
    let jet = sample_jet(256, 2);
    let z = polyhardy_core::Complex64::new(0.3, 0.2);
    c.bench_function("cauchy_transform/256", |b| {
        b.iter(|| cauchy_transform(&jet, black_box(z), Side::Plus).unwrap())
    });
}

criterion_group!(benches, pv, sk, oracle, transform);
criterion_main!(benches);
