use criterion::{criterion_group, criterion_main, Criterion};
use kappa_core::calculus::Calculus;
use kappa_core::hopf::GroupHopf;
use kappa_core::ncalg::lorentz::LorentzSector;
use kappa_core::qlie::{casimir_checks, SeriesDual, ORACLE_ORDER};
use kappa_core::{Dual, Group, Metric, Variant};
use std::hint::black_box;

fn normal_forms(c: &mut Criterion) {
    // the sector is cached per metric, so each iteration uses a new one
    c.bench_function("lorentz sector, fresh random metric", |b| {
        let mut seed = 1000;
        b.iter(|| {
            seed += 1;
            LorentzSector::for_metric(&Metric::random(seed))
        })
    });
    let g = Group::new(&Metric::light_cone(), true);
    let a = g.mul(&g.x(1), &g.lam(0, 2)).unwrap();
    let b2 = g.mul(&g.x(0), &g.eb(1)).unwrap();
    c.bench_function("weyl group product, fresh cache", |b| {
        b.iter(|| {
            let g = Group::new(&Metric::light_cone(), true);
            g.mul(&g.mul(black_box(&a), black_box(&b2)).unwrap(), &g.x(3)).unwrap()
        })
    });
    c.bench_function("dual algebra construction", |b| {
        b.iter(|| Dual::new(black_box(&Metric::minkowski()), false))
    });
}

fn hopf(c: &mut Criterion) {
    let g = Group::new(&Metric::minkowski(), false);
    let a = g.mul(&g.mul(&g.x(1), &g.x(0)).unwrap(), &g.lam(2, 3)).unwrap();
    c.bench_function("coproduct and antipode, degree 3", |b| {
        b.iter(|| {
            let h = GroupHopf::new(&g);
            (h.coproduct2_left(black_box(&a)).unwrap(), h.antipode_right(black_box(&a)).unwrap())
        })
    });
}

fn calculus(c: &mut Criterion) {
    let v = Variant::PoincareG00Zero;
    let g = Group::for_variant(v, &Metric::light_cone()).unwrap();
    let mut group = c.benchmark_group("calculus");
    group.sample_size(10);
    group.bench_function("differential of x^0 x^1, bound 3", |b| {
        b.iter(|| {
            let calc = Calculus::new(&g, v, 3).unwrap();
            calc.differential(&g.mul(&g.x(0), &g.x(1)).unwrap()).unwrap()
        })
    });
    group.finish();
}

fn qlie(c: &mut Criterion) {
    c.bench_function("series oracle construction", |b| {
        b.iter(|| SeriesDual::new(black_box(&Metric::light_cone()), true, ORACLE_ORDER))
    });
    c.bench_function("casimir checks, minkowski", |b| {
        b.iter(|| casimir_checks(Variant::PoincareGeneral, black_box(&Metric::minkowski())).unwrap())
    });
}

criterion_group!(benches, normal_forms, hopf, calculus, qlie);
criterion_main!(benches);
