//! Stable forms in dimension six, their Hitchin duals, and SU(3)-structures.
//!
//! The duality maps measure intermediate pairings against the reference
//! volume `e¹²³⁴⁵⁶`; outputs are independent of that choice except through
//! the orientation, which each `*_oriented` variant takes explicitly.

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::exterior::{basis_masks, Endo, Form, Matrix, Metric, Orientation, Vector, DIM, TOP};
use crate::su3types;
use crate::tolerance::{rel_diff_scalar, Tolerances};

/// Sign relating Hitchin's `K/√(−λ)` (measured against `e¹²³⁴⁵⁶`) to the
/// complex structure of a positively oriented pair. Pinned by the standard
/// structure, where it must reproduce `J ∂x = ∂y`.
const K_TO_J_SIGN: f64 = -1.0;

/// Result of dualising a stable 3-form.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual3Result {
    /// Quartic invariant `⅙ tr K²`; negative on the SL(3,ℂ) orbit.
    pub lambda: f64,
    pub j: Endo,
    pub rho_hat: Form,
}

/// A validated pair `(ω, Re Ω)` with everything it determines.
#[derive(Debug, Clone, PartialEq)]
pub struct SU3Structure {
    pub omega: Form,
    pub re_omega: Form,
    pub im_omega: Form,
    pub j: Endo,
    pub metric: Metric,
    pub vol: Form,
}

impl SU3Structure {
    /// The flat structure `ω₀ = Σ dx_j∧dy_j`, `Ω₀ = dz₁∧dz₂∧dz₃`.
    pub fn standard() -> Self {
        use crate::exterior::standard;
        assemble_su3(&standard::omega(), &standard::re_omega(), &Tolerances::default())
            .expect("standard structure is valid")
    }

    /// Pullback of this structure by an invertible linear map.
    pub fn pullback(&self, a: &Matrix, tol: &Tolerances) -> Result<Self> {
        assemble_su3(&self.omega.pullback(a), &self.re_omega.pullback(a), tol)
    }

    pub fn orientation(&self) -> Orientation {
        self.metric.orientation()
    }

    /// `X ⌟ Re Ω`.
    pub fn contract_re(&self, x: &Vector) -> Form {
        self.re_omega.contract(x).expect("3-form")
    }

    /// The metric dual of `J X`.
    pub fn j_flat(&self, x: &Vector) -> Form {
        self.metric.flat(&self.j.apply(x))
    }
}

fn stability_floor(tol: &Tolerances, scale: f64, degree: i32) -> f64 {
    tol.stability * scale.max(f64::MIN_POSITIVE).powi(degree)
}

/// Top coefficient of `ω³`, the Pfaffian up to a factor 6.
fn cube_top(omega: &Form) -> f64 {
    (*omega ^ *omega ^ *omega).top()
}

/// Hitchin dual of a 2-form, `½ω²`.
pub fn dual2(omega: &Form, tol: &Tolerances) -> Result<Form> {
    if omega.degree() != 2 {
        return Err(Error::DegreeMismatch {
            left: omega.degree(),
            right: 2,
        });
    }
    let top = cube_top(omega);
    if top.abs() <= stability_floor(tol, omega.max_abs(), 3) {
        return Err(Error::NotStable(format!("ω³ = {top:.3e}")));
    }
    Ok((*omega ^ *omega) * 0.5)
}

/// Hitchin dual of a 4-form with positively oriented `ω³`.
pub fn dual4(sigma: &Form, tol: &Tolerances) -> Result<Form> {
    dual4_oriented(sigma, Orientation::Positive, tol)
}

/// The non-degenerate `ω` with `½ω² = σ` and `ω³` of the given orientation.
pub fn dual4_oriented(sigma: &Form, orientation: Orientation, tol: &Tolerances) -> Result<Form> {
    if sigma.degree() != 4 {
        return Err(Error::DegreeMismatch {
            left: sigma.degree(),
            right: 4,
        });
    }
    let contractions: Vec<Form> = (0..DIM)
        .map(|i| sigma.contract(&unit(i)).expect("4-form"))
        .collect();
    let mut b = Form::zero(2);
    for &m in basis_masks(2) {
        let i = m.trailing_zeros() as usize;
        let j = 7 - (m.leading_zeros() as usize);
        b.add_to(m, (contractions[i] ^ contractions[j]).top());
    }
    let scale = sigma.max_abs();
    let pf = cube_top(&b);
    if pf.abs() <= stability_floor(tol, b.max_abs(), 3) || scale == 0.0 {
        return Err(Error::NotStable(format!(
            "pairing B is degenerate (B³ = {pf:.3e})"
        )));
    }
    let half_b2 = (b ^ b) * 0.5;
    let (pivot, sigma_pivot) = sigma
        .terms()
        .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .expect("non-empty basis");
    let s2 = half_b2.coeff(pivot) / sigma_pivot;
    if s2.is_nan() || s2 <= 0.0 {
        return Err(Error::NotStable(format!("no consistent scale (s² = {s2:.3e})")));
    }
    let mut s = s2.sqrt();
    if Orientation::of(pf / s.powi(3)) != orientation {
        s = -s;
    }
    let omega = b * (1.0 / s);
    let check = (omega ^ omega) * 0.5;
    let residual = check.rel_diff(sigma) * (1.0f64).max(1.0 / scale.min(1.0));
    if residual > tol.constraint {
        return Err(Error::NotStable(format!("½ω² differs from σ by {residual:.3e}")));
    }
    Ok(omega)
}

fn unit(i: usize) -> Vector {
    let mut v = Vector::zeros();
    v[i] = 1.0;
    v
}

/// Hitchin's endomorphism `K` with `(X⌟ρ)∧ρ = K(X) ⌟ vol_ref`, where
/// `vol_ref = reference · e¹²³⁴⁵⁶`.
pub fn hitchin_k(rho: &Form, reference: f64) -> Matrix {
    let mut k = Matrix::zeros();
    for i in 0..DIM {
        let five = rho.contract(&unit(i)).expect("3-form") ^ *rho;
        for j in 0..DIM {
            // e_j ⌟ e¹²³⁴⁵⁶ = (−1)^j e^{[6]∖j}
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            k[(j, i)] = sign * five.coeff(TOP & !(1 << j)) / reference;
        }
    }
    k
}

/// Dual of a stable 3-form in positive orientation.
pub fn dual3(rho: &Form, tol: &Tolerances) -> Result<Dual3Result> {
    dual3_oriented(rho, Orientation::Positive, tol)
}

pub fn dual3_oriented(rho: &Form, orientation: Orientation, tol: &Tolerances) -> Result<Dual3Result> {
    dual3_with_reference(rho, orientation, 1.0, tol)
}

/// As [`dual3_oriented`] with the reference volume scaled by `reference > 0`.
pub fn dual3_with_reference(
    rho: &Form,
    orientation: Orientation,
    reference: f64,
    tol: &Tolerances,
) -> Result<Dual3Result> {
    if rho.degree() != 3 {
        return Err(Error::DegreeMismatch {
            left: rho.degree(),
            right: 3,
        });
    }
    let k = hitchin_k(rho, reference);
    let lambda = (k * k).trace() / 6.0;
    let floor = stability_floor(tol, rho.max_abs(), 4) / (reference * reference);
    if lambda >= -floor {
        return Err(Error::NotStable(format!("λ(ρ) = {lambda:.3e} is not negative")));
    }
    let j = k * (K_TO_J_SIGN * orientation.sign() / (-lambda).sqrt());
    let j = Endo::new(j);
    let rho_hat = rho.endo_act(&j) * (1.0 / 3.0);
    Ok(Dual3Result { lambda, j, rho_hat })
}

/// Validate `(ω, Re Ω)` and derive `Im Ω`, `J`, the metric `g(X,Y) = ω(X,JY)`
/// and the volume. The orientation is that of `ω³`.
pub fn assemble_su3(omega: &Form, re_omega: &Form, tol: &Tolerances) -> Result<SU3Structure> {
    dual2(omega, tol)?;
    let top = cube_top(omega);
    let orientation = Orientation::of(top);
    let d3 = dual3_oriented(re_omega, orientation, tol)?;

    let compat = (*omega ^ *re_omega).max_abs() / (omega.max_abs() * re_omega.max_abs());
    if compat > tol.constraint {
        return Err(Error::ConstraintViolated {
            constraint: "ω∧ReΩ = 0".into(),
            residual: compat,
        });
    }

    let j2 = (d3.j.mat * d3.j.mat + Matrix::identity()).amax() / d3.j.mat.amax().powi(2);
    if j2 > tol.constraint {
        return Err(Error::ConstraintViolated {
            constraint: "J² = −1".into(),
            residual: j2,
        });
    }

    let mut gram = Matrix::zeros();
    for a in 0..DIM {
        for b in 0..DIM {
            gram[(a, b)] = omega.eval(&[unit(a), d3.j.apply(&unit(b))]);
        }
    }
    let asym = (gram - gram.transpose()).amax() / gram.amax();
    if asym > tol.constraint {
        return Err(Error::ConstraintViolated {
            constraint: "ω(·,J·) symmetric".into(),
            residual: asym,
        });
    }
    let gram = (gram + gram.transpose()) * 0.5;
    let min_eigenvalue = SymmetricEigen::new(gram).eigenvalues.min();
    if min_eigenvalue <= 0.0 {
        return Err(Error::MetricNotPositive { min_eigenvalue });
    }

    let lhs = top / 6.0;
    let rhs = (*re_omega ^ d3.rho_hat).top() / 4.0;
    let norm = rel_diff_scalar(lhs, rhs) * lhs.abs().max(rhs.abs()).max(1.0) / lhs.abs();
    if norm > tol.constraint {
        return Err(Error::ConstraintViolated {
            constraint: "⅙ω³ = ¼ReΩ∧ImΩ".into(),
            residual: norm,
        });
    }

    let metric = Metric::new(gram, orientation)?;
    Ok(SU3Structure {
        omega: *omega,
        re_omega: *re_omega,
        im_omega: d3.rho_hat,
        j: d3.j,
        vol: metric.volume(),
        metric,
    })
}

/// Derivative of [`dual4`] at `½ω²` along `σ̇`: `½⋆σ₁ + ⋆σ₆ − ⋆σ₈`.
pub fn lin_dual4(sigma_dot: &Form, base: &SU3Structure) -> Form {
    let types = su3types::decompose2(&base.metric.star(sigma_dot), base);
    let sigma1 = base.metric.star(&(base.omega * types.lambda));
    let sigma6 = base.metric.star(&base.contract_re(&types.x));
    let sigma8 = base.metric.star(&types.eta0);
    let star = |f: &Form| base.metric.star(f);
    star(&sigma1) * 0.5 + star(&sigma6) - star(&sigma8)
}

/// Derivative of [`dual3`] at `Re Ω` along `ρ̇`: `⋆(ρ₆ + ρ₁⊕₁) − ⋆ρ₁₂`.
pub fn lin_dual3(rho_dot: &Form, base: &SU3Structure) -> Form {
    let t = su3types::decompose3(rho_dot, base);
    let rho6 = base.metric.flat(&t.x) ^ base.omega;
    let rho11 = base.re_omega * t.lambda + base.im_omega * t.mu;
    base.metric.star(&(rho6 + rho11)) - base.metric.star(&t.rho0)
}

/// Finite-difference steps for derivatives of the duality maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdSteps {
    pub first: f64,
    pub second: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        Self {
            first: 1e-4,
            second: 1e-2,
        }
    }
}

/// Central difference `(f(h) − f(−h)) / 2h`.
pub fn central_first<F>(f: F, h: f64) -> Result<Form>
where
    F: Fn(f64) -> Result<Form>,
{
    let plus = f(h).map_err(|_| Error::StepTooLarge { step: h })?;
    let minus = f(-h).map_err(|_| Error::StepTooLarge { step: h })?;
    Ok((plus - minus) * (0.5 / h))
}

/// Central first difference with one Richardson level.
pub fn richardson_first<F>(f: F, h: f64) -> Result<Form>
where
    F: Fn(f64) -> Result<Form>,
{
    let coarse = central_first(&f, h)?;
    let fine = central_first(&f, h * 0.5)?;
    Ok((fine * 4.0 - coarse) * (1.0 / 3.0))
}

/// Second central difference with one Richardson level.
pub fn richardson_second<F>(f: F, h: f64) -> Result<Form>
where
    F: Fn(f64) -> Result<Form>,
{
    let at = |t: f64| f(t).map_err(|_| Error::StepTooLarge { step: h });
    let centre = at(0.0)?;
    let second =
        |step: f64| -> Result<Form> { Ok((at(step)? - centre * 2.0 + at(-step)?) * (1.0 / (step * step))) };
    let coarse = second(h)?;
    let fine = second(h * 0.5)?;
    Ok((fine * 4.0 - coarse) * (1.0 / 3.0))
}

/// Quadratic term of the 3-form dual: the dual of `ReΩ + ερ̇` is
/// `ImΩ + ε·lin_dual3(ρ̇) − ε²/2·Q₃(ρ̇) + O(ε³)`.
pub fn quad_dual3(rho_dot: &Form, base: &SU3Structure, steps: &FdSteps, tol: &Tolerances) -> Result<Form> {
    let orientation = base.orientation();
    let path = |t: f64| -> Result<Form> {
        Ok(dual3_oriented(&(base.re_omega + *rho_dot * t), orientation, tol)?.rho_hat)
    };
    Ok(-richardson_second(path, steps.second)?)
}

/// Quadratic term of the 4-form dual: the dual of `½ω² + εσ̇` is
/// `ω + ε·lin_dual4(σ̇) − ε²/2·Q₄(σ̇) + O(ε³)`.
pub fn quad_dual4(sigma_dot: &Form, base: &SU3Structure, steps: &FdSteps, tol: &Tolerances) -> Result<Form> {
    let orientation = base.orientation();
    let sigma0 = (base.omega ^ base.omega) * 0.5;
    let path = |t: f64| dual4_oriented(&(sigma0 + *sigma_dot * t), orientation, tol);
    Ok(-richardson_second(path, steps.second)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{basis_len, standard, ComplexForm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn random_form(rng: &mut impl Rng, k: usize, scale: f64) -> Form {
        let c: Vec<f64> = (0..basis_len(k))
            .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
            .collect();
        Form::new(k, &c).unwrap()
    }

    fn near_identity(rng: &mut impl Rng, scale: f64) -> Matrix {
        Matrix::identity() + Matrix::from_fn(|_, _| scale * rng.sample::<f64, _>(StandardNormal))
    }

    #[test]
    fn dual2_examples() {
        let w = standard::omega();
        assert!(dual2(&w, &tol()).unwrap().rel_diff(&((w ^ w) * 0.5)) < 1e-15);
        assert!(matches!(
            dual2(&Form::e(&[1, 2]), &tol()),
            Err(Error::NotStable(_))
        ));
        let t = 1.7;
        let lhs = dual2(&(w * t), &tol()).unwrap();
        assert!(lhs.rel_diff(&((w ^ w) * (0.5 * t * t))) < 1e-15);
    }

    #[test]
    fn dual4_examples() {
        let w = standard::omega();
        let sigma = (w ^ w) * 0.5;
        assert!(dual4(&sigma, &tol()).unwrap().rel_diff(&w) < 1e-14);
        let t = 2.3;
        assert!(dual4(&(sigma * t), &tol()).unwrap().rel_diff(&(w * t.sqrt())) < 1e-14);
        assert!(matches!(
            dual4(&Form::e(&[1, 2, 3, 4]), &tol()),
            Err(Error::NotStable(_))
        ));
        let neg = dual4_oriented(&sigma, Orientation::Negative, &tol()).unwrap();
        assert!(neg.rel_diff(&(-w)) < 1e-14);
    }

    #[test]
    fn minus_half_omega_squared_has_no_dual() {
        let w = standard::omega();
        let sigma = (w ^ w) * -0.5;
        assert!(matches!(dual4(&sigma, &tol()), Err(Error::NotStable(_))));
    }

    #[test]
    fn dual3_standard() {
        let d = dual3(&standard::re_omega(), &tol()).unwrap();
        assert!(d.lambda < 0.0);
        assert!((d.j.mat - standard::j().mat).amax() < 1e-14);
        assert!(d.rho_hat.rel_diff(&standard::im_omega()) < 1e-14);
    }

    #[test]
    fn decomposable_three_form_is_unstable() {
        // Oracle: every (X⌟e123)∧e123 vanishes, so K = 0 and λ = 0.
        let rho = Form::e(&[1, 2, 3]);
        for i in 0..DIM {
            assert_eq!((rho.contract(&unit(i)).unwrap() ^ rho).max_abs(), 0.0);
        }
        assert_eq!(hitchin_k(&rho, 1.0), Matrix::zeros());
        assert!(matches!(dual3(&rho, &tol()), Err(Error::NotStable(_))));
    }

    #[test]
    fn lambda_is_quartic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho = standard::re_omega().pullback(&near_identity(&mut rng, 0.2));
        let t = 1.9;
        let l1 = dual3(&rho, &tol()).unwrap().lambda;
        let lt = dual3(&(rho * t), &tol()).unwrap().lambda;
        assert!(rel_diff_scalar(lt, t.powi(4) * l1) < 1e-13);
    }

    #[test]
    fn reference_volume_does_not_matter() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let rho = standard::re_omega().pullback(&near_identity(&mut rng, 0.3));
        let a = dual3_with_reference(&rho, Orientation::Positive, 1.0, &tol()).unwrap();
        let b = dual3_with_reference(&rho, Orientation::Positive, 2.5, &tol()).unwrap();
        assert!((a.j.mat - b.j.mat).amax() < 1e-13);
        assert!(a.rho_hat.rel_diff(&b.rho_hat) < 1e-13);
    }

    #[test]
    fn dual3_squares_to_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let rho = standard::re_omega().pullback(&near_identity(&mut rng, 0.3));
            let d = dual3(&rho, &tol()).unwrap();
            let dd = dual3(&d.rho_hat, &tol()).unwrap();
            let err = dd.rho_hat.rel_diff(&(-rho));
            assert!(err < 1e-9, "{err:e}");
            assert!((dd.j.mat - d.j.mat).amax() / d.j.mat.amax() < 1e-9);
            assert!((d.j.mat * d.j.mat + Matrix::identity()).amax() / d.j.mat.amax().powi(2) < 1e-10);
        }
    }

    #[test]
    fn dual3_is_gl_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let rho = standard::re_omega();
        let j = dual3(&rho, &tol()).unwrap().j.mat;
        for _ in 0..20 {
            let a = near_identity(&mut rng, 0.2);
            let pulled = dual3(&rho.pullback(&a), &tol()).unwrap().j.mat;
            let expected = a.try_inverse().unwrap() * j * a;
            assert!((pulled - expected).amax() < 1e-8);
        }
    }

    #[test]
    fn assemble_standard_gives_identity_metric() {
        let s = SU3Structure::standard();
        assert!((s.metric.gram() - Matrix::identity()).amax() < 1e-14);
        assert_eq!(s.orientation(), Orientation::Positive);
        assert!(s.vol.rel_diff(&Form::e(&[1, 2, 3, 4, 5, 6])) < 1e-14);
    }

    #[test]
    fn assemble_rejects_scaled_volume() {
        let err = assemble_su3(&standard::omega(), &(standard::re_omega() * 2.0), &tol()).unwrap_err();
        match err {
            Error::ConstraintViolated { constraint, .. } => assert!(constraint.contains("⅙ω³")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn assemble_negated_re_omega_is_rotated_structure() {
        // −Ω₀ is still (3,0) for J₀: K is even in ρ, so J and g do not change.
        let s = assemble_su3(&standard::omega(), &(-standard::re_omega()), &tol()).unwrap();
        assert!((s.j.mat - standard::j().mat).amax() < 1e-14);
        assert!((s.metric.gram() - Matrix::identity()).amax() < 1e-14);
        assert!(s.im_omega.rel_diff(&(-standard::im_omega())) < 1e-14);
    }

    #[test]
    fn assemble_rejects_indefinite_metric() {
        // Re(dz₁∧dz₂∧dz̄₃): its complex structure is −J₀ on the third plane, so
        // ω₀(·, J·) has signature (4, 2).
        let rho = (standard::dz(1) ^ standard::dz(2) ^ standard::dz(3).conj()).re;
        let err = assemble_su3(&standard::omega(), &rho, &tol()).unwrap_err();
        assert!(matches!(err, Error::MetricNotPositive { .. }), "{err:?}");
    }

    #[test]
    fn assemble_rejects_incompatible_pair() {
        let rho = standard::re_omega() + Form::e(&[1, 2, 3]) * 0.1;
        let err = assemble_su3(&standard::omega(), &rho, &tol()).unwrap_err();
        assert!(matches!(err, Error::ConstraintViolated { .. }), "{err:?}");
    }

    #[test]
    fn round_trips_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..100 {
            let w = random_form(&mut rng, 2, 1.0);
            let orientation = Orientation::of(cube_top(&w));
            let sigma = dual2(&w, &tol()).unwrap();
            let back = dual4_oriented(&sigma, orientation, &tol()).unwrap();
            assert!(back.rel_diff(&w) < 1e-9);
            assert!(dual2(&back, &tol()).unwrap().rel_diff(&sigma) < 1e-9);
        }
    }

    #[test]
    fn lin_dual4_examples() {
        let s = SU3Structure::standard();
        let w = s.omega;
        let f = 0.7;
        let sigma_dot = (w ^ w) * (0.5 * f);
        assert!(lin_dual4(&sigma_dot, &s).rel_diff(&(w * (0.5 * f))) < 1e-14);
        assert_eq!(lin_dual4(&Form::zero(4), &s).max_abs(), 0.0);
    }

    #[test]
    fn lin_duals_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let h = FdSteps::default().first;
        for _ in 0..20 {
            let base = SU3Structure::standard()
                .pullback(&near_identity(&mut rng, 0.2), &tol())
                .unwrap();
            let o = base.orientation();
            let sd = random_form(&mut rng, 4, 1.0);
            let sigma0 = (base.omega ^ base.omega) * 0.5;
            let fd = central_first(|t| dual4_oriented(&(sigma0 + sd * t), o, &tol()), h).unwrap();
            assert!(lin_dual4(&sd, &base).rel_diff(&fd) < 1e-6);
            let rd = random_form(&mut rng, 3, 1.0);
            let fd = central_first(
                |t| Ok(dual3_oriented(&(base.re_omega + rd * t), o, &tol())?.rho_hat),
                h,
            )
            .unwrap();
            assert!(lin_dual3(&rd, &base).rel_diff(&fd) < 1e-6);
        }
    }

    #[test]
    fn lin_dual3_examples() {
        let s = SU3Structure::standard();
        assert!(lin_dual3(&s.re_omega, &s).rel_diff(&s.im_omega) < 1e-14);
        assert!(lin_dual3(&s.im_omega, &s).rel_diff(&(-s.re_omega)) < 1e-14);
        let mut m = Matrix::zeros();
        m[(0, 0)] = 1.0;
        m[(1, 1)] = -1.0;
        let sre = s.re_omega.endo_act(&Endo::new(m));
        let sim = s.im_omega.endo_act(&Endo::new(m));
        assert!(lin_dual3(&sre, &s).rel_diff(&sim) < 1e-14);
        let fd = central_first(|t| Ok(dual3(&(s.re_omega + sre * t), &tol())?.rho_hat), 1e-4).unwrap();
        assert!(fd.rel_diff(&sim) < 1e-6);
    }

    #[test]
    fn quad_dual3_examples() {
        let s = SU3Structure::standard();
        let steps = FdSteps::default();
        let q = quad_dual3(&s.re_omega, &s, &steps, &tol()).unwrap();
        assert!(q.max_abs() < 1e-9);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let rd = random_form(&mut rng, 3, 0.5);
        let q1 = quad_dual3(&rd, &s, &steps, &tol()).unwrap();
        let q2 = quad_dual3(&(rd * 2.0), &s, &steps, &tol()).unwrap();
        assert!(q2.rel_diff(&(q1 * 4.0)) < 1e-6);
    }

    #[test]
    fn quad_dual4_examples() {
        let s = SU3Structure::standard();
        let steps = FdSteps::default();
        let w = s.omega;
        let f = 0.8;
        let q = quad_dual4(&((w ^ w) * (0.5 * f)), &s, &steps, &tol()).unwrap();
        assert!(q.rel_diff(&(w * (0.25 * f * f))) < 1e-8);
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let sd = random_form(&mut rng, 4, 0.5);
        let q1 = quad_dual4(&sd, &s, &steps, &tol()).unwrap();
        let q2 = quad_dual4(&(sd * 2.0), &s, &steps, &tol()).unwrap();
        assert!(q2.rel_diff(&(q1 * 4.0)) < 1e-6);
    }

    #[test]
    fn quad_dual_step_too_large() {
        let s = SU3Structure::standard();
        let steps = FdSteps {
            first: 1e-4,
            second: 1.0,
        };
        let err = quad_dual3(&s.re_omega, &s, &steps, &tol()).unwrap_err();
        assert!(matches!(err, Error::StepTooLarge { .. }));
    }

    #[test]
    fn complex_structure_sign_convention() {
        // J acts on (1,0)-forms by i: α(J·) = i α for α = dz₁.
        let dz = standard::dz(1);
        let j = dual3(&standard::re_omega(), &tol()).unwrap().j;
        let re = j.transpose_act(&dz.re);
        let im = j.transpose_act(&dz.im);
        let rotated = ComplexForm::new(re, im).unwrap();
        let expected = dz.scale(num_complex::Complex64::new(0.0, 1.0));
        assert!(rotated.re.rel_diff(&expected.re) < 1e-14);
        assert!(rotated.im.rel_diff(&expected.im) < 1e-14);
    }
}
