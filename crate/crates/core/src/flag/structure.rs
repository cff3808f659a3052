//! The homogeneous nearly-Kähler structure on `m`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::flag::ce::{ce_d, theta};
use crate::stable::{assemble_su3, SU3Structure};
use crate::su3types::{torsion_classes, TorsionClasses};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone)]
pub struct InvariantStructure {
    pub su3: SU3Structure,
    pub d_omega: Form,
    pub d_re_omega: Form,
    pub d_im_omega: Form,
    pub residuals: NearlyKahlerResiduals,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NearlyKahlerResiduals {
    /// `dω₀ − 3ReΩ₀`.
    pub d_omega: f64,
    /// `dReΩ₀`.
    pub d_re_omega: f64,
    /// `dImΩ₀ + 2ω₀²`.
    pub d_im_omega: f64,
    /// `ImΩ₀` from the stable module against `Im(θ₁∧θ₂∧θ₃)`.
    pub im_omega: f64,
    /// Largest t-component produced by the differential.
    pub vertical: f64,
}

impl NearlyKahlerResiduals {
    pub fn max(&self) -> f64 {
        [
            self.d_omega,
            self.d_re_omega,
            self.d_im_omega,
            self.im_omega,
            self.vertical,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl InvariantStructure {
    pub fn torsion(&self) -> TorsionClasses {
        torsion_classes(&self.d_omega, &self.d_re_omega, &self.d_im_omega, &self.su3)
    }
}

/// `ω₀ = i/2 Σ θₖ∧θ̄ₖ` and `Ω₀ = θ₁∧θ₂∧θ₃`.
pub fn invariant_forms() -> (Form, Form, Form) {
    let i_half = num_complex::Complex64::new(0.0, 0.5);
    let mut omega = Form::zero(2);
    for k in 1..=3 {
        let t = theta(k);
        omega += (i_half * (t ^ t.conj())).re;
    }
    let big = theta(1) ^ theta(2) ^ theta(3);
    (omega, big.re, big.im)
}

pub fn invariant_structure(tol: &Tolerances) -> Result<InvariantStructure> {
    let (omega, re, im) = invariant_forms();
    let su3 = assemble_su3(&omega, &re, tol)?;
    let (d_omega, v1) = ce_d(&omega);
    let (d_re_omega, v2) = ce_d(&re);
    let (d_im_omega, v3) = ce_d(&su3.im_omega);
    let residuals = NearlyKahlerResiduals {
        d_omega: (d_omega - re * 3.0).max_abs(),
        d_re_omega: d_re_omega.max_abs(),
        d_im_omega: (d_im_omega + (omega ^ omega) * 2.0).max_abs(),
        im_omega: su3.im_omega.rel_diff(&im),
        vertical: v1.max(v2).max(v3),
    };
    if residuals.max() > tol.constraint {
        return Err(Error::ConventionMismatch(format!("{residuals:?}")));
    }
    Ok(InvariantStructure {
        su3,
        d_omega,
        d_re_omega,
        d_im_omega,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{Matrix, Orientation};

    #[test]
    fn nearly_kahler_equations_hold_exactly() {
        let s = invariant_structure(&Tolerances::default()).unwrap();
        assert!(s.residuals.max() < 1e-14, "{:?}", s.residuals);
    }

    #[test]
    fn metric_is_the_frame_metric() {
        let s = invariant_structure(&Tolerances::default()).unwrap();
        assert!((s.su3.metric.gram() - Matrix::identity()).amax() < 1e-14);
        assert_eq!(s.su3.orientation(), Orientation::Negative);
        let (omega, _, _) = invariant_forms();
        assert!(omega.rel_diff(&(Form::e(&[1, 2]) - Form::e(&[3, 4]) + Form::e(&[5, 6]))) < 1e-15);
    }

    #[test]
    fn torsion_is_nearly_kahler() {
        let s = invariant_structure(&Tolerances::default()).unwrap();
        let t = s.torsion();
        assert!((t.w1 - 1.0).abs() < 1e-14);
        assert!(t.max_other() < 1e-14 && t.residual < 1e-14);
    }

    #[test]
    fn phase_rotation_torsion() {
        // Ω' = e^{−iθ}Ω₀: ReΩ' = cosθ ReΩ₀ + sinθ ImΩ₀, ImΩ' = cosθ ImΩ₀ − sinθ ReΩ₀.
        let s = invariant_structure(&Tolerances::default()).unwrap();
        let th = 0.7_f64;
        let (c, sn) = (th.cos(), th.sin());
        let re = s.su3.re_omega * c + s.su3.im_omega * sn;
        let base = crate::stable::assemble_su3(&s.su3.omega, &re, &Tolerances::default()).unwrap();
        assert!(
            base.im_omega
                .rel_diff(&(s.su3.im_omega * c - s.su3.re_omega * sn))
                < 1e-14
        );
        let (d_w, _) = ce_d(&base.omega);
        let (d_re, _) = ce_d(&base.re_omega);
        let (d_im, _) = ce_d(&base.im_omega);
        let t = torsion_classes(&d_w, &d_re, &d_im, &base);
        assert!((t.w1 - c).abs() < 1e-14 && (t.w1hat + sn).abs() < 1e-14);
        assert!(t.w2.max_abs() < 1e-14 && t.w2hat.max_abs() < 1e-14 && t.w3.max_abs() < 1e-14);
        assert!(t.w4.amax() < 1e-14 && t.w5.amax() < 1e-14 && t.residual < 1e-14);
    }

    #[test]
    fn d_squared_vanishes_on_invariant_forms() {
        let mut rng = crate::random::substream(8, 0);
        for k in 0..6 {
            let f = crate::random::gaussian_form(&mut rng, k);
            let once = crate::flag::ce::Form8::embed(&f).d();
            assert!(once.d().max_abs() < 1e-13);
        }
    }
}
