use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coxtype::classify::sweep_quadruples;
use coxtype::{check_conditions, eo_set, newton_point, Family, Quadruple, RootDatum, Word};

fn element_ops(c: &mut Criterion) {
    let mut g = c.benchmark_group("element");
    for (fam, n) in [(Family::A, 5), (Family::B, 5), (Family::E, 6)] {
        let d = RootDatum::standard(fam, n).unwrap();
        let word = Word::parse("s0 s1 s2 s3 s4 s0 s1 s2 s3 s0 s1 s0").unwrap();
        let x = d.eval_word(&word, None).unwrap();
        let y = d.inverse(&x);
        let name = d.name();
        g.bench_function(BenchmarkId::new("multiply", &name), |b| b.iter(|| d.multiply(black_box(&x), black_box(&y))));
        g.bench_function(BenchmarkId::new("length", &name), |b| b.iter(|| d.length(black_box(&x))));
        g.bench_function(BenchmarkId::new("reduced_word", &name), |b| b.iter(|| d.reduced_word(black_box(&x))));
        let z = d.left_mul_gen(2, &d.right_mul_gen(&x, 1));
        g.bench_function(BenchmarkId::new("bruhat", &name), |b| b.iter(|| d.bruhat_leq(black_box(&x), black_box(&z))));
        let id = d.identity_auto();
        g.bench_function(BenchmarkId::new("newton", &name), |b| b.iter(|| newton_point(&d, black_box(&x), &id)));
    }
    g.finish();
}

fn eo_sets(c: &mut Criterion) {
    let mut g = c.benchmark_group("eo_set");
    g.sample_size(10);
    let cases = [
        ("C", 2, "omega:2", 0, "id"),
        ("A", 3, "omega:2", 0, "id"),
        ("B", 4, "omega:1", 4, "tau:1"),
        ("D", 5, "omega:1", 0, "sigma0"),
        ("C", 4, "omega:4", 0, "id"),
    ];
    for (f, n, lam, v, s) in cases {
        let q = Quadruple::from_specs(f, n, false, lam, v, s).unwrap();
        g.bench_function(q.label(), |b| b.iter(|| eo_set(black_box(&q)).unwrap()));
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    let qs = sweep_quadruples(3);
    g.bench_function("classify rank<=3", |b| {
        b.iter(|| qs.iter().map(|q| check_conditions(q).unwrap().coxeter_type).filter(|&t| t).count())
    });
    g.finish();
}

criterion_group!(benches, element_ops, eo_sets, sweep);
criterion_main!(benches);
