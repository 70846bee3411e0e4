use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use obc_core::diagrams::{parse_expr, Word};
use obc_core::exec::Exec;
use obc_core::normalform::normalize;
use obc_core::qrep::{commutant_dim_with, psi_eval_with, QnContext};
use obc_core::suites::fuzz::fuzz_shape;
use obc_core::suites::random::{random_expr, random_word, rng};

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn psi(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi_eval");
    g.sample_size(10);
    let ctx = QnContext::new(2).unwrap();
    let e = parse_expr("(s * id(u)) . (id(u) * x * id(u)) . (id(u) * s) . (c * id(u) * id(u))").unwrap();
    let module: Word = "u".parse().unwrap();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "n2 uuu+u"), &exec, |b, &exec| b.iter(|| psi_eval_with(&ctx, black_box(&e), &module, exec).unwrap()));
    }
    g.finish();
}

fn commutant(c: &mut Criterion) {
    let mut g = c.benchmark_group("commutant_dim");
    g.sample_size(10);
    for n in [2, 3] {
        let ctx = QnContext::new(n).unwrap();
        let w: Word = "uu".parse().unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, format!("n{n} uu")), &exec, |b, &exec| b.iter(|| commutant_dim_with(&ctx, &w, exec).unwrap()));
        }
    }
    g.finish();
}

fn normalize_batch(c: &mut Criterion) {
    let mut g = c.benchmark_group("normalize_batch");
    g.sample_size(10);
    let mut r = rng(1);
    let exprs: Vec<_> = (0..64)
        .map(|_| {
            let src = random_word(&mut r, 4);
            random_expr(&mut r, &src, &fuzz_shape())
        })
        .collect();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "64 random"), &exec, |b, &exec| {
            b.iter(|| exec.map(&exprs, |e| normalize(e).map(|m| m.len()).unwrap_or(0)))
        });
    }
    g.finish();
}

criterion_group!(benches, psi, commutant, normalize_batch);
criterion_main!(benches);
