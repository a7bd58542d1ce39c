use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mvvd_core::random::{random_matrix, symbolic_matrix, trial_rng};
use mvvd_core::vandermonde::{mu_matrix, veronese_matrix};
use mvvd_core::{DetAlgorithm, Ring};

const ALGORITHMS: [DetAlgorithm; 3] = [
    DetAlgorithm::Cofactor,
    DetAlgorithm::Berkowitz,
    DetAlgorithm::Bareiss,
];

fn integer(c: &mut Criterion) {
    let mut group = c.benchmark_group("det/int");
    for order in [4, 6, 8, 10] {
        let m = random_matrix(
            &mut trial_rng(1, order as u64),
            &Ring::Integer,
            order,
            order,
        );
        for alg in ALGORITHMS {
            if alg == DetAlgorithm::Cofactor && order > 8 {
                continue;
            }
            group.bench_with_input(BenchmarkId::new(alg.name(), order), &m, |b, m| {
                b.iter(|| black_box(m.det(alg).unwrap()))
            });
        }
    }
    group.finish();
}

fn prime_field(c: &mut Criterion) {
    let ring = Ring::prime_field(1_000_003).unwrap();
    let mut group = c.benchmark_group("det/mod_p");
    for order in [6, 10, 15] {
        let m = random_matrix(&mut trial_rng(2, order as u64), &ring, order, order);
        for alg in [DetAlgorithm::Berkowitz, DetAlgorithm::Bareiss] {
            group.bench_with_input(BenchmarkId::new(alg.name(), order), &m, |b, m| {
                b.iter(|| black_box(m.det(alg).unwrap()))
            });
        }
    }
    group.finish();
}

// The left-hand side of the symbolic (n, d) = (1, 3) and (2, 1) identities.
fn symbolic(c: &mut Criterion) {
    let mut group = c.benchmark_group("det/poly");
    group.sample_size(10);
    for (n, d) in [(1, 3), (2, 1)] {
        let x = symbolic_matrix(n + d, n + 1).unwrap();
        let v = veronese_matrix(&mu_matrix(&x).unwrap(), d).unwrap();
        for alg in ALGORITHMS {
            group.bench_with_input(
                BenchmarkId::new(alg.name(), format!("{n},{d}")),
                &v,
                |b, v| b.iter(|| black_box(v.det(alg).unwrap())),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, integer, prime_field, symbolic);
criterion_main!(benches);
