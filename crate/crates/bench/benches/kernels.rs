use std::hint::black_box;

use compat_linf::cohomology::{linfty_cohomology_dims, CompatibleRep};
use compat_linf::exactla::int;
use compat_linf::homotopy::{check_compatibility, to_coder};
use compat_linf::multilinear::{koszul_sign, shuffles};
use compat_linf::rotabaxter::{build_lifted, search_rota_baxter};
use compat_linf::testkit::criteria::{exact_cap, h3_zero_fixture};
use compat_linf::testkit::{catalogue, Gen};
use compat_linf::Permutation;
use criterion::{criterion_group, criterion_main, Criterion};

fn signs(c: &mut Criterion) {
    let perms = Permutation::all(6);
    let degrees = [1, 0, -1, 2, 1, 1];
    c.bench_function("koszul_sign S6", |b| {
        b.iter(|| perms.iter().map(|p| koszul_sign(p, black_box(&degrees)).unwrap()).filter(|s| *s < int(0)).count())
    });
    c.bench_function("shuffles(4,4)", |b| b.iter(|| shuffles(black_box(4), 4).len()));
}

fn brackets(c: &mut Criterion) {
    let mut g = Gen::new(7);
    let s = g.two_term();
    let p = g.pair_from(&s);
    let d = to_coder(&p.first).unwrap();
    let d2 = to_coder(&p.second).unwrap();
    c.bench_function("coder bracket on a 2-term space", |b| b.iter(|| d.bracket(black_box(&d2), None).unwrap()));
    c.bench_function("check_compatibility on a 2-term space", |b| b.iter(|| check_compatibility(black_box(&p), 4).unwrap()));
}

fn cohomology(c: &mut Criterion) {
    let p = h3_zero_fixture();
    let cap = exact_cap(&p.space().desuspend());
    c.bench_function("L-infinity cohomology, dim 3 pencil", |b| b.iter(|| linfty_cohomology_dims(black_box(&p), 3, cap).unwrap()));
}

fn rota_baxter(c: &mut Criterion) {
    let (_, a1) = catalogue().into_iter().find(|(n, _)| *n == "a1").unwrap();
    let lp = build_lifted(&a1, &CompatibleRep::adjoint(&a1)).unwrap();
    let entries = [int(-1), int(0), int(1)];
    c.bench_function("Rota-Baxter search, 81 candidates", |b| b.iter(|| search_rota_baxter(black_box(&lp), &entries).unwrap().len()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = signs, brackets, cohomology, rota_baxter
}
criterion_main!(benches);
