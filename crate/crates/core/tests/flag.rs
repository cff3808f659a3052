use nkcore::flag::deform::density_polynomial;
use nkcore::flag::haar::{haar_values, mean_stderr};
use nkcore::flag::{
    coefficients, haar_sample, invariant_cohomology, invariant_structure, obstruction, obstruction_with,
    GroupElement, LieAlg, Normalization,
};
use nkcore::random::substream;
use nkcore::Tolerances;

fn base() -> nkcore::SU3Structure {
    invariant_structure(&Tolerances::default()).unwrap().su3
}

#[test]
fn obstruction_is_cubic_in_xi() {
    let b = base();
    let xi = LieAlg::diag(1.0, 2.0, -3.0).unwrap();
    let a = obstruction(&xi, None, 2000, 11, &b).unwrap();
    let t = obstruction(&xi.scaled(2.0), None, 2000, 11, &b).unwrap();
    assert!((t.mean - 8.0 * a.mean).abs() < 1e-10 * a.mean.abs());
    assert!((t.ratio.unwrap() - a.ratio.unwrap()).abs() < 1e-10 * a.ratio.unwrap().abs());
}

#[test]
fn obstruction_is_ad_invariant() {
    let b = base();
    let xi = LieAlg::diag(2.0, -1.0, -1.0).unwrap();
    let h = haar_sample(&mut substream(12, 0));
    let a = obstruction(&xi, None, 40_000, 13, &b).unwrap();
    let c = obstruction(&xi.conjugate(&h), None, 40_000, 14, &b).unwrap();
    let gap = (a.mean - c.mean).abs() / (a.stderr.powi(2) + c.stderr.powi(2)).sqrt();
    assert!(gap < 4.0, "{a:?} {c:?}");
    assert!((a.idet.unwrap() - c.idet.unwrap()).abs() < 1e-12);
}

#[test]
fn both_normalizations_are_obstructed_with_the_same_sign() {
    let b = base();
    let xi = LieAlg::diag(1.0, 1.0, -2.0).unwrap();
    let geo = obstruction_with(&xi, None, 40_000, 15, &b, Normalization::Geometric).unwrap();
    let lit = obstruction_with(&xi, None, 40_000, 15, &b, Normalization::Formula).unwrap();
    assert!(geo.sigmas > 5.0 && lit.sigmas > 5.0, "{geo:?} {lit:?}");
    assert_eq!(geo.ratio.unwrap().signum(), lit.ratio.unwrap().signum());
}

#[test]
fn mc_mean_of_density_is_mean_of_polynomial() {
    let b = base();
    let xi = LieAlg::from_coords(&[0.2, -0.4, 0.9, 0.1, 0.3, -0.5, 0.7, -0.2]);
    let est = obstruction(&xi, None, 3000, 16, &b).unwrap();
    let poly = haar_values(3000, 16, |g| {
        density_polynomial(&coefficients(g, &xi), Normalization::Geometric)
    });
    let (mean, _) = mean_stderr(&poly);
    assert!((mean - est.mean).abs() < 1e-10 * mean.abs().max(1.0));
}

#[test]
fn coefficient_functions_are_t2_invariant() {
    // v is invariant under the right T²-action, so it descends to F₃.
    let xi = LieAlg::from_coords(&[0.2, -0.4, 0.9, 0.1, 0.3, -0.5, 0.7, -0.2]);
    let g = haar_sample(&mut substream(17, 0));
    let t = GroupElement::exp(&LieAlg::diag(0.3, 0.5, -0.8).unwrap());
    let (a, c) = (coefficients(&g, &xi), coefficients(&g.mul(&t), &xi));
    for k in 0..3 {
        assert!((a.v[k] - c.v[k]).abs() < 1e-12);
        assert!((a.z[k].norm() - c.z[k].norm()).abs() < 1e-12);
    }
}

#[test]
fn invariant_cohomology_has_poincare_duality() {
    let tol = Tolerances::default();
    let s = invariant_structure(&tol).unwrap();
    let r = invariant_cohomology(&s, &tol);
    for k in 0..=6 {
        assert_eq!(r.betti[k], r.betti[6 - k]);
        assert_eq!(r.invariant_dims[k], r.invariant_dims[6 - k]);
    }
    let euler: i64 = r
        .betti
        .iter()
        .enumerate()
        .map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) })
        .sum();
    // χ(F₃) = |W(SU(3))| = 6
    assert_eq!(euler, 6);
}
