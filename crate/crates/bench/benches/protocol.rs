use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use jrsp_core::{
    alice_basis, channel_state, check_correction_table, enumerate_branches, run_protocol,
    MeasurePolicy, RunPolicy, TargetParams,
};

fn sample_params() -> TargetParams {
    let (a, b, c) = (0.3, 0.5, 0.6);
    let d = (1.0f64 - a * a - b * b - c * c).sqrt();
    TargetParams::new(a, b, c, d, [0.7, 1.9, 4.1]).unwrap()
}

fn bench_measure_pair(c: &mut Criterion) {
    let p = sample_params();
    let channel = channel_state();
    let basis = alice_basis(&p);
    c.bench_function("measure_pair_6q", |b| {
        b.iter(|| {
            channel
                .measure_pair(black_box((1, 4)), &basis, MeasurePolicy::Forced(2))
                .unwrap()
        })
    });
}

fn bench_run_protocol(c: &mut Criterion) {
    let p = sample_params();
    c.bench_function("run_protocol_forced", |b| {
        b.iter(|| run_protocol(black_box(&p), RunPolicy::Forced(1, 2)).unwrap())
    });
    c.bench_function("run_protocol_sampled", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed = seed.wrapping_add(1);
            run_protocol(black_box(&p), RunPolicy::Sample(seed)).unwrap()
        })
    });
}

fn bench_verification(c: &mut Criterion) {
    let p = sample_params();
    c.bench_function("enumerate_branches", |b| {
        b.iter(|| enumerate_branches(black_box(&p), 1e-10).unwrap())
    });
    c.bench_function("check_correction_table", |b| {
        b.iter(|| check_correction_table(black_box(&p), 1e-10).unwrap())
    });
}

criterion_group!(
    benches,
    bench_measure_pair,
    bench_run_protocol,
    bench_verification
);
criterion_main!(benches);
