use std::hint::black_box;

use canondiv::classical::{alpha_divergence_closed, canonical_divergence_numeric};
use canondiv::numkit::{gauss_legendre_rule, hermitian_eig, FdConfig};
use canondiv::quantum::{canonical_divergence_numeric_q, quantum_alpha_divergence_closed};
use canondiv::recovery::{classical_alpha_divergence, recover_structure};
use canondiv::AlphaParam;
use canondiv_bench::{measure_pair, operator_pair};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn quadrature(c: &mut Criterion) {
    let mut g = c.benchmark_group("gauss_legendre_rule");
    for n in [16, 64, 256] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| gauss_legendre_rule(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn eigen(c: &mut Criterion) {
    let mut g = c.benchmark_group("hermitian_eig");
    for n in [2, 4, 8, 16] {
        let (r, _) = operator_pair(n, 1);
        let m = r.matrix().clone();
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| hermitian_eig(black_box(m)).unwrap())
        });
    }
    g.finish();
}

fn classical(c: &mut Criterion) {
    let alpha = AlphaParam::new(0.5).unwrap();
    let rule = gauss_legendre_rule(64).unwrap();
    let (p, q) = measure_pair(6, 2);
    c.bench_function("classical/canonical_numeric dim 6", |b| {
        b.iter(|| canonical_divergence_numeric(black_box(&p), black_box(&q), alpha, &rule).unwrap())
    });
    c.bench_function("classical/closed dim 6", |b| {
        b.iter(|| alpha_divergence_closed(black_box(&p), black_box(&q), alpha).unwrap())
    });
}

fn quantum(c: &mut Criterion) {
    let alpha = AlphaParam::new(0.5).unwrap();
    let rule = gauss_legendre_rule(64).unwrap();
    let mut g = c.benchmark_group("quantum");
    for n in [2, 4, 6] {
        let (r1, r2) = operator_pair(n, 3);
        g.bench_with_input(
            BenchmarkId::new("canonical_numeric", n),
            &(r1.clone(), r2.clone()),
            |b, (r1, r2)| b.iter(|| canonical_divergence_numeric_q(r1, r2, alpha, &rule).unwrap()),
        );
        g.bench_with_input(BenchmarkId::new("closed", n), &(r1, r2), |b, (r1, r2)| {
            b.iter(|| quantum_alpha_divergence_closed(r1, r2, alpha).unwrap())
        });
    }
    g.finish();
}

fn recovery(c: &mut Criterion) {
    let d = classical_alpha_divergence(AlphaParam::new(0.5).unwrap());
    let p = [1.2, 0.8, 2.0];
    for order in [2, 4] {
        let cfg = FdConfig::new(1e-3, order).unwrap();
        c.bench_function(&format!("recover_structure dim 3 order {order}"), |b| {
            b.iter(|| recover_structure(&d, black_box(&p), &cfg).unwrap())
        });
    }
}

criterion_group!(benches, quadrature, eigen, classical, quantum, recovery);
criterion_main!(benches);
