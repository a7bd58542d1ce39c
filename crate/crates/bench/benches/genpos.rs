use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mvvd_core::genpos::{in_general_position, in_general_position_via_eta, random_configuration};
use mvvd_core::random::trial_rng;
use mvvd_core::Ring;

fn routes(c: &mut Criterion) {
    let ring = Ring::prime_field(1_000_003).unwrap();
    let mut group = c.benchmark_group("genpos");
    for (n, d) in [(1, 4), (2, 3), (2, 5), (3, 3)] {
        let cfg = random_configuration(&mut trial_rng(7, 0), &ring, n, n + d, 0.0).unwrap();
        let label = format!("n{n}_m{}", n + d);
        group.bench_with_input(BenchmarkId::new("minors", &label), &cfg, |b, cfg| {
            b.iter(|| black_box(in_general_position(cfg).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("eta", &label), &cfg, |b, cfg| {
            b.iter(|| black_box(in_general_position_via_eta(cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, routes);
criterion_main!(benches);
