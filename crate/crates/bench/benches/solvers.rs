//! Wall-clock comparison of the two eigensolvers on case-4 Latin
//! instances. The iteration-count comparison lives in the CLI's bench
//! subcommand; this measures the time per full solve.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mmpx_bench::{case4_system, zero_state};
use mmpx_core::{solve_latin, solve_power};

fn bench_solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("case4");
    for n in [4usize, 6, 8] {
        let sys = case4_system(n, 0);
        let x0 = zero_state(&sys);
        group.bench_with_input(BenchmarkId::new("latin", n), &n, |b, _| {
            b.iter(|| solve_latin(black_box(&sys), black_box(&x0), 10_000).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("power", n), &n, |b, _| {
            b.iter(|| solve_power(black_box(&sys), black_box(&x0), 10_000).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_solvers);
criterion_main!(benches);
