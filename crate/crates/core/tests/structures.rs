use nkcore::exterior::standard;
use nkcore::random::{gaussian_form, substream, well_conditioned};
use nkcore::stable::{assemble_su3, dual2, dual3, dual4_oriented, lin_dual3, lin_dual4};
use nkcore::su3types::{decompose2, decompose3, identity_suite, torsion_of};
use nkcore::{Error, Form, Orientation, SU3Structure, Tolerances};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn pulled_back_structures_reassemble() {
    let std = SU3Structure::standard();
    for i in 0..50 {
        let a = well_conditioned(&mut substream(101, i), 0.5);
        let s = std.pullback(&a, &tol()).unwrap();
        let again = assemble_su3(&s.omega, &s.re_omega, &tol()).unwrap();
        assert!(again.im_omega.rel_diff(&s.im_omega) < 1e-12);
        assert_eq!(again.orientation(), Orientation::of(a.determinant()));
        // metric pulls back as AᵀA
        assert!((s.metric.gram() - a.transpose() * a).amax() < 1e-9 * a.amax().powi(2));
    }
}

#[test]
fn identities_hold_on_a_pulled_back_base() {
    let a = well_conditioned(&mut substream(102, 0), 0.4);
    let base = SU3Structure::standard().pullback(&a, &tol()).unwrap();
    let report = identity_suite(&base, 100, 3);
    assert!(
        report.passed,
        "{:?}",
        report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()
    );
}

#[test]
fn invalid_pairs_are_rejected() {
    let w = standard::omega();
    let unstable = Form::e(&[1, 2, 3]);
    assert!(matches!(
        assemble_su3(&w, &unstable, &tol()),
        Err(Error::NotStable(_))
    ));
    let scaled = standard::re_omega() * 3.0;
    assert!(matches!(
        assemble_su3(&w, &scaled, &tol()),
        Err(Error::ConstraintViolated { .. })
    ));
    let degenerate = Form::e(&[1, 2]);
    assert!(dual2(&degenerate, &tol()).is_err());
}

#[test]
fn linearized_duals_of_pure_types() {
    let s = SU3Structure::standard();
    let mut rng = substream(103, 0);
    let rho = gaussian_form(&mut rng, 3);
    let t = decompose3(&rho, &s);
    // the Λ³₁₂ part is sent to −⋆ of itself, and ½(ω + tη₀)² to η₀
    assert!(lin_dual3(&t.rho0, &s).rel_diff(&-s.metric.star(&t.rho0)) < 1e-12);
    let eta = gaussian_form(&mut rng, 2);
    let e0 = decompose2(&eta, &s).eta0;
    let sigma = e0 ^ s.omega;
    assert!(lin_dual4(&sigma, &s).rel_diff(&e0) < 1e-12);
}

#[test]
fn flag_torsion_through_forms_only() {
    let st = nkcore::flag::invariant_structure(&tol()).unwrap();
    let tc = torsion_of(
        &st.su3.omega,
        &st.su3.re_omega,
        [&st.d_omega, &st.d_re_omega, &st.d_im_omega],
        &tol(),
    )
    .unwrap();
    assert!((tc.w1 - 1.0).abs() < 1e-12 && tc.max_other() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_round_trips(seed in 0u64..1_000_000) {
        let mut rng = substream(seed, 0);
        let a = well_conditioned(&mut rng, 0.6);
        let s = SU3Structure::standard().pullback(&a, &tol()).unwrap();
        let sigma = dual2(&s.omega, &tol()).unwrap();
        prop_assert!(dual4_oriented(&sigma, s.orientation(), &tol()).unwrap().rel_diff(&s.omega) < 1e-9);
        let once = dual3(&s.re_omega, &tol()).unwrap();
        let twice = dual3(&once.rho_hat, &tol()).unwrap();
        prop_assert!(twice.rho_hat.rel_diff(&-s.re_omega) < 1e-9);
    }
}
