//! Sequential against data-parallel execution on the hot kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dendcox::spectra::{build_matrix, charpoly_direct, charpoly_finite_order, MatrixKind};
use dendcox::symfunc::lie_brace_closed;
use dendcox::{Exec, Limits};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn matmul(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("matmul");
    for n in [7usize, 8] {
        let m = build_matrix(MatrixKind::Tau, n, &limits, Exec::Parallel).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| m.mul(m, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn berkowitz(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("charpoly_direct");
    g.sample_size(10);
    for n in [6usize, 7] {
        let m = build_matrix(MatrixKind::Theta, n, &limits, Exec::Parallel).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| charpoly_direct(m, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn finite_order(c: &mut Criterion) {
    let limits = Limits::default();
    let mut g = c.benchmark_group("charpoly_finite_order");
    g.sample_size(10);
    for n in [7usize, 8] {
        let m = build_matrix(MatrixKind::Tau, n, &limits, Exec::Parallel).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| {
                b.iter(|| charpoly_finite_order(m, n as u64, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn schur(c: &mut Criterion) {
    let limits = Limits::default();
    let f = lie_brace_closed(12);
    let mut g = c.benchmark_group("to_schur");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 12), |b| {
            b.iter(|| f.to_schur(12, limits.max_schur_degree, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, matmul, berkowitz, finite_order, schur);
criterion_main!(benches);
