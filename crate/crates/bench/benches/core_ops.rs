use criterion::{criterion_group, criterion_main, Criterion};

use apoly_core::catalog::{coxeter_presentation, cube};
use apoly_core::constructions::medial;
use apoly_core::flag::FlagGraph;
use apoly_core::presentation::build_polytope;
use apoly_core::symmetry::AutomorphismGroup;

fn bench_cube_automorphisms(c: &mut Criterion) {
    let p = cube();
    let fg = FlagGraph::of_poset(&p).unwrap();
    c.bench_function("cube automorphism group", |b| {
        b.iter(|| AutomorphismGroup::compute(std::hint::black_box(&fg)))
    });
}

fn bench_coxeter_enumeration(c: &mut Criterion) {
    let pres = coxeter_presentation(&[4, 3]);
    c.bench_function("[4,3] coset enumeration and build", |b| {
        b.iter(|| build_polytope(std::hint::black_box(&pres), 1000).unwrap())
    });
}

fn bench_medial(c: &mut Criterion) {
    let p = cube();
    c.bench_function("medial of the cube", |b| {
        b.iter(|| medial(std::hint::black_box(&p)).unwrap())
    });
}

criterion_group!(benches, bench_cube_automorphisms, bench_coxeter_enumeration, bench_medial);
criterion_main!(benches);
