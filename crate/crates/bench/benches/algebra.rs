use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use pointedq::braiding::classify;
use pointedq::freealg::{nichols_dims, NicholsConfig};
use pointedq::rootsys::RootData;
use pointedq::uqd::{build_rewrite_system, coproduct, datum_isomorphisms, IsomConfig, RewriteConfig};
use pointedq::CartanMatrix;
use pointedq_bench::{a2_datum, a2_symmetric, a3, b2_symmetric, uqsl2};

fn braidings(c: &mut Criterion) {
    let q = a3();
    c.bench_function("classify_a3", |b| b.iter(|| classify(black_box(&q)).unwrap()));
    let a = CartanMatrix::new(vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]]).unwrap();
    c.bench_function("roots_d4", |b| b.iter(|| RootData::new(black_box(&a)).unwrap()));
}

fn nichols(c: &mut Criterion) {
    let cfg = NicholsConfig { max_degree: 4, ..NicholsConfig::default() };
    let q = a2_symmetric();
    c.bench_function("nichols_dims_a2_deg4", |b| b.iter(|| nichols_dims(black_box(&q), &cfg).unwrap()));
    let q = b2_symmetric();
    c.bench_function("nichols_dims_b2_deg4", |b| b.iter(|| nichols_dims(black_box(&q), &cfg).unwrap()));
}

fn uqd(c: &mut Criterion) {
    let d = a2_datum();
    let cfg = RewriteConfig::default();
    c.bench_function("rewrite_system_a2", |b| b.iter(|| build_rewrite_system(black_box(&d), &cfg).unwrap()));
    let sys = build_rewrite_system(&d, &cfg).unwrap();
    c.bench_function("normal_form_a2", |b| b.iter(|| sys.normal_form(black_box("a2*a2*a1*a2*a1*a1")).unwrap()));
    let x = sys.normal_form("a2*a1*a2").unwrap();
    c.bench_function("coproduct_a2", |b| b.iter(|| coproduct(&sys, black_box(&x)).unwrap()));
    let u = uqsl2();
    c.bench_function("isomorphisms_uqsl2", |b| b.iter(|| datum_isomorphisms(black_box(&u), &u, &IsomConfig::default())));
}

criterion_group!(benches, braidings, nichols, uqd);
criterion_main!(benches);
