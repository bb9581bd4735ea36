use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chw_core::cat::{finset, find_universal, validate_category, Universal};
use chw_core::monad::{check_set_monad, kleisli_roundtrip_sets, State, DEFAULT_CAP};
use chw_core::par;
use chw_core::semantics::{eval_finset, Mor, Obj};

const MODES: [(&str, bool); 2] = [("sequential", false), ("parallel", true)];

fn universal(c: &mut Criterion) {
    let fs = finset(3);
    let cat = &fs.cat;
    let full = cat.object_index("{0,1,2}").unwrap();
    let two = cat.object_index("{0,1}").unwrap();
    let mut g = c.benchmark_group("find_universal");
    for (name, on) in MODES {
        par::set_parallel(on);
        g.bench_with_input(BenchmarkId::new("product", name), &on, |b, _| {
            b.iter(|| find_universal(black_box(cat), Universal::Product(full, two)))
        });
        g.bench_with_input(BenchmarkId::new("validate", name), &on, |b, _| {
            b.iter(|| validate_category(black_box(cat)))
        });
    }
    g.finish();
}

fn monad_laws(c: &mut Criterion) {
    let mut g = c.benchmark_group("state_monad");
    g.sample_size(10);
    let m = State { states: 2 };
    for (name, on) in MODES {
        par::set_parallel(on);
        g.bench_with_input(BenchmarkId::new("laws", name), &on, |b, _| {
            b.iter(|| check_set_monad(black_box(&m), 1, DEFAULT_CAP).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("roundtrip", name), &on, |b, _| {
            b.iter(|| kleisli_roundtrip_sets(black_box(&m), 1, DEFAULT_CAP).unwrap())
        });
    }
    g.finish();
}

fn finset_tables(c: &mut Criterion) {
    // ev : (b ⇒ b) × b → b and its curried form at |b| = 6
    let b = Obj::Base("b".into());
    let m = Mor::curry(Mor::Ev(b.clone(), b.clone())).unwrap();
    let sizes = [("b".to_string(), 6)].into();
    let mut g = c.benchmark_group("eval_finset");
    for (name, on) in MODES {
        par::set_parallel(on);
        g.bench_with_input(BenchmarkId::new("curry_ev", name), &on, |bch, _| {
            bch.iter(|| eval_finset(black_box(&m), &sizes).unwrap())
        });
    }
    g.finish();
    par::set_parallel(true);
}

criterion_group!(benches, universal, monad_laws, finset_tables);
criterion_main!(benches);
