//! Sequential vs rayon execution of the population and grid workloads.
//!
//! Without the `parallel` feature both variants run on one thread.

use std::hint::black_box;

use bohr::functionals::Radius;
use bohr::sharp::{lambda_generic_mobius, PsiFunctional};
use bohr::verify::{dominance_check, verify_improved, ImprovedKind, VerifyConfig};
use bohr::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const POLICIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_improved_16_9");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        let cfg = VerifyConfig {
            samples: 200,
            exec,
            ..VerifyConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| {
                verify_improved(ImprovedKind::Phi0With169, Radius::ONE_THIRD, black_box(cfg))
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_generic_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("generic_psi_grid");
    group.sample_size(10);
    let big_r = Radius::new(0.3).unwrap();
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| lambda_generic_mobius(&PsiFunctional, black_box(big_r), exec).unwrap())
        });
    }
    group.finish();
}

fn bench_dominance(c: &mut Criterion) {
    let mut group = c.benchmark_group("dominance_1000");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| dominance_check(black_box(1000), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_verify, bench_generic_grid, bench_dominance);
criterion_main!(benches);
