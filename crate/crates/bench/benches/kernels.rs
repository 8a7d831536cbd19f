use criterion::{criterion_group, criterion_main, Criterion};

use permsimple_core::cayley::{self, SimpleClass};
use permsimple_core::classify;
use permsimple_core::complexes;
use permsimple_core::enumerate;
use permsimple_core::perm::{coxeter_normal_form, Permutation};
use permsimple_core::polygon;

fn bench_census(c: &mut Criterion) {
    c.bench_function("census n=7", |b| {
        b.iter(|| enumerate::census_with(7, 9, 1).unwrap())
    });
    c.bench_function("census n=8 parallel", |b| {
        b.iter(|| enumerate::census_with(8, 9, enumerate::default_jobs()).unwrap())
    });
}

fn bench_classifiers(c: &mut Criterion) {
    let mut perms = Vec::new();
    enumerate::for_each_permutation(7, |p| perms.push(p.clone()));
    c.bench_function("five predicates over Σ₇", |b| {
        b.iter(|| {
            let mut acc = 0usize;
            for p in &perms {
                acc += classify::is_s_simple(p) as usize;
                acc += classify::is_c_simple(p) as usize;
                acc += classify::is_g_simple(p) as usize;
                acc += classify::is_b_simple(p) as usize;
                acc += classify::is_t_simple(p) as usize;
            }
            acc
        })
    });
    c.bench_function("normal form over Σ₇", |b| {
        b.iter(|| {
            perms
                .iter()
                .map(|p| coxeter_normal_form(p).len())
                .sum::<usize>()
        })
    });
}

fn bench_graphs(c: &mut Criterion) {
    c.bench_function("build Γ(bS₈)", |b| {
        b.iter(|| cayley::build_gamma_class(8, SimpleClass::B).unwrap())
    });
    let g6 = cayley::build_gamma_class(6, SimpleClass::B).unwrap();
    c.bench_function("planarity of Γ(bS₆)", |b| {
        b.iter(|| cayley::planarity(&g6).is_planar())
    });
}

fn bench_polygon(c: &mut Criterion) {
    let poly = polygon::polygon_of_cycle(&[8, 3, 6, 1, 5, 2, 7, 4], 9).unwrap();
    c.bench_function("reduction endpoints of an octagon", |b| {
        b.iter(|| polygon::reduction_endpoints(&poly).len())
    });
}

fn bench_complexes(c: &mut Criterion) {
    c.bench_function("P(bS₅) homology", |b| {
        b.iter(|| {
            let full = complexes::permutahedron_complex(5).unwrap();
            let sub = complexes::induced_subcomplex(&full, classify::is_b_simple);
            sub.reduced_homology().unwrap()
        })
    });
    let id = Permutation::identity(5);
    c.bench_function("weak covers Σ₅", |b| {
        b.iter(|| {
            let poset = complexes::weak_covers(id.n()).unwrap();
            poset.covers.len()
        })
    });
}

criterion_group!(
    benches,
    bench_census,
    bench_classifiers,
    bench_graphs,
    bench_polygon,
    bench_complexes
);
criterion_main!(benches);
