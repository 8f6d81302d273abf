use std::hint::black_box;
use std::sync::Arc;

use cohops_bench::{algebra_f101, h1_basis, residue_of, truncation, ALGEBRAS};
use cohops_core::homology::{resolve, CoverStrategy, ExtSpace};
use cohops_core::operators::{
    action_table, fin_gen_report, hh2_space, operator_target, psi, DEFAULT_BAR_BUDGET,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn resolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolution");
    for (label, src) in ALGEBRAS {
        let k = residue_of(src);
        g.bench_with_input(BenchmarkId::new("ext_k_k_L8", label), &k, |b, k| {
            b.iter(|| {
                let res = Arc::new(resolve(k, 9, CoverStrategy::Minimal));
                (0..=8)
                    .map(|n| ExtSpace::new(&res, k, n).unwrap().dim())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

fn psi_operator(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi");
    for m in [2, 3, 4] {
        let (xi, n) = truncation(m).unwrap();
        g.bench_with_input(BenchmarkId::new("truncation", m), &(xi, n), |b, (xi, n)| {
            b.iter(|| {
                let target = operator_target(n, CoverStrategy::Minimal).unwrap();
                psi(black_box(xi), &target, CoverStrategy::Minimal).unwrap()
            })
        });
    }
    let (ops, n) = h1_basis("k[x,y]/(x^2,x*y,y^2)").unwrap();
    g.bench_function("two_vars_h1_basis", |b| {
        b.iter(|| {
            let target = operator_target(&n, CoverStrategy::Minimal).unwrap();
            ops.iter()
                .map(|xi| psi(xi, &target, CoverStrategy::Minimal).unwrap().class)
                .collect::<Vec<_>>()
        })
    });
    g.finish();
}

fn hh2(c: &mut Criterion) {
    let mut g = c.benchmark_group("hh2");
    for (label, src) in ALGEBRAS {
        let b = algebra_f101(src);
        g.bench_with_input(BenchmarkId::from_parameter(label), &b, |bch, b| {
            bch.iter(|| hh2_space(b, DEFAULT_BAR_BUDGET).unwrap().dim())
        });
    }
    g.finish();
}

fn fin_gen(c: &mut Criterion) {
    let mut g = c.benchmark_group("fin_gen");
    g.sample_size(10);
    for (label, src) in [("x2", "k[x]/(x^2)"), ("x2_y2", "k[x,y]/(x^2,y^2)")] {
        let (ops, _) = h1_basis(src).unwrap();
        let k = residue_of(src);
        g.bench_with_input(BenchmarkId::new("L8", label), &(ops, k), |b, (ops, k)| {
            b.iter(|| {
                let a = action_table(ops, k, k, 8, CoverStrategy::Minimal).unwrap();
                fin_gen_report(&a).minimal_degree
            })
        });
    }
    g.finish();
}

criterion_group!(benches, resolution, psi_operator, hh2, fin_gen);
criterion_main!(benches);
