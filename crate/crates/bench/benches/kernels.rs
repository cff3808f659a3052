use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nkcore::flag::deform::{density, sigma_hat};
use nkcore::flag::{haar_sample, invariant_structure, Calculus, LieAlg};
use nkcore::random::{gaussian_form, substream, well_conditioned};
use nkcore::stable::{assemble_su3, dual3};
use nkcore::su3types::{decompose2, decompose3};
use nkcore::{SU3Structure, Tolerances};

fn algebra(c: &mut Criterion) {
    let tol = Tolerances::default();
    let base = SU3Structure::standard()
        .pullback(&well_conditioned(&mut substream(1, 0), 0.5), &tol)
        .unwrap();
    let mut rng = substream(1, 1);
    let (eta, sigma) = (gaussian_form(&mut rng, 2), gaussian_form(&mut rng, 3));

    c.bench_function("wedge 2x3", |b| b.iter(|| black_box(eta) ^ black_box(sigma)));
    c.bench_function("hodge star 3-form", |b| {
        b.iter(|| base.metric.star(black_box(&sigma)))
    });
    c.bench_function("dual3", |b| {
        b.iter(|| dual3(black_box(&base.re_omega), &tol).unwrap())
    });
    c.bench_function("assemble_su3", |b| {
        b.iter(|| assemble_su3(black_box(&base.omega), black_box(&base.re_omega), &tol).unwrap())
    });
    c.bench_function("decompose2", |b| b.iter(|| decompose2(black_box(&eta), &base)));
    c.bench_function("decompose3", |b| b.iter(|| decompose3(black_box(&sigma), &base)));
}

fn flag(c: &mut Criterion) {
    let tol = Tolerances::default();
    let su3 = invariant_structure(&tol).unwrap().su3;
    let calc = Calculus::with_defaults().unwrap();
    let xi = LieAlg::diag(1.0, 1.0, -2.0).unwrap();
    let mut rng = substream(2, 0);
    let g = haar_sample(&mut rng);
    let field = sigma_hat(&xi);

    c.bench_function("haar_sample", |b| b.iter(|| haar_sample(&mut rng)));
    c.bench_function("density", |b| {
        b.iter(|| density(black_box(&xi), &xi, black_box(&g), &su3))
    });
    c.bench_function("d_at sigma_hat", |b| {
        b.iter(|| calc.d_at(black_box(&field), &g).unwrap())
    });
}

criterion_group!(benches, algebra, flag);
criterion_main!(benches);
