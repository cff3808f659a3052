//! Basic form fields on F₃, represented on SU(3), and their calculus.
//!
//! A field returns, at each group element, its coefficients in the left-
//! invariant coframe `e¹..e⁶`. Derivatives act along `g·exp(tXᵢ)` for all
//! eight frame directions; the t-components of the result must cancel.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::{Form, Metric};
use crate::flag::ce::Form8;
use crate::flag::lie::{coset_frame, GroupElement, C3};
use crate::flag::structure::{invariant_structure, InvariantStructure};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Closed,
    FiniteDifference,
}

type Eval = dyn Fn(&GroupElement) -> Result<Form> + Send + Sync;

#[derive(Clone)]
pub struct FormField {
    degree: usize,
    kind: FieldKind,
    eval: Arc<Eval>,
}

impl std::fmt::Debug for FormField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FormField(degree {}, {:?})", self.degree, self.kind)
    }
}

impl FormField {
    pub fn new<F>(degree: usize, kind: FieldKind, eval: F) -> Self
    where
        F: Fn(&GroupElement) -> Result<Form> + Send + Sync + 'static,
    {
        Self {
            degree,
            kind,
            eval: Arc::new(eval),
        }
    }

    /// A field given by an infallible closed formula.
    pub fn closed<F>(degree: usize, eval: F) -> Self
    where
        F: Fn(&GroupElement) -> Form + Send + Sync + 'static,
    {
        Self::new(degree, FieldKind::Closed, move |g| Ok(eval(g)))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn eval(&self, g: &GroupElement) -> Result<Form> {
        (self.eval)(g)
    }

    /// Pointwise image under a linear map of forms.
    pub fn map<F>(&self, degree: usize, f: F) -> FormField
    where
        F: Fn(&Form) -> Form + Send + Sync + 'static,
    {
        let inner = self.eval.clone();
        FormField {
            degree,
            kind: self.kind,
            eval: Arc::new(move |g| Ok(f(&inner(g)?))),
        }
    }

    pub fn scaled(&self, s: f64) -> FormField {
        self.map(self.degree, move |f| *f * s)
    }

    pub fn add(&self, other: &FormField) -> FormField {
        assert_eq!(self.degree, other.degree);
        let (a, b) = (self.eval.clone(), other.eval.clone());
        let kind = if self.kind == FieldKind::Closed && other.kind == FieldKind::Closed {
            FieldKind::Closed
        } else {
            FieldKind::FiniteDifference
        };
        FormField {
            degree: self.degree,
            kind,
            eval: Arc::new(move |g| Ok(a(g)? + b(g)?)),
        }
    }

    pub fn wedge(&self, other: &FormField) -> FormField {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        FormField {
            degree: self.degree + other.degree,
            kind: self.kind,
            eval: Arc::new(move |g| a(g)?.wedge(&b(g)?)),
        }
    }
}

/// Differentiation context: the invariant structure, step and tolerances.
#[derive(Debug, Clone)]
pub struct Calculus {
    pub structure: InvariantStructure,
    pub step: f64,
    pub tol: Tolerances,
    plus: [C3; 8],
    minus: [C3; 8],
}

impl Calculus {
    pub fn new(step: f64, tol: Tolerances) -> Result<Self> {
        let structure = invariant_structure(&tol)?;
        let frame = coset_frame();
        let exp = |t: f64| -> [C3; 8] {
            std::array::from_fn(|i| (frame.basis[i] * num_complex::Complex64::from(t)).exp())
        };
        Ok(Self {
            structure,
            step,
            tol,
            plus: exp(step),
            minus: exp(-step),
        })
    }

    pub fn with_defaults() -> Result<Self> {
        Self::new(1e-4, Tolerances::default())
    }

    pub fn metric(&self) -> &Metric {
        &self.structure.su3.metric
    }

    /// `Xᵢ φ(g)` for every frame direction, by central differences.
    fn directional(&self, phi: &FormField, g: &GroupElement) -> Result<Vec<Form>> {
        let scale = 0.5 / self.step;
        (0..8)
            .map(|i| {
                let p = phi.eval(&GroupElement::new_unchecked(g.matrix() * self.plus[i]))?;
                let m = phi.eval(&GroupElement::new_unchecked(g.matrix() * self.minus[i]))?;
                Ok((p - m) * scale)
            })
            .collect()
    }

    /// `dφ(g) = Σᵢ eⁱ∧Xᵢφ + Σ_I φ_I d(e^I)`, checked horizontal.
    pub fn d_at(&self, phi: &FormField, g: &GroupElement) -> Result<Form> {
        let value = phi.eval(g)?;
        let derivatives = self.directional(phi, g)?;
        let mut total = Form8::embed(&value).d();
        for (i, dphi) in derivatives.iter().enumerate() {
            let e = Form8::basis(1 << i);
            total += &e.wedge(&Form8::embed(dphi));
        }
        let (form, vertical) = total.horizontal(phi.degree() + 1);
        let relative = vertical / value.max_abs().max(form.max_abs()).max(1.0);
        if relative > self.tol.horizontal {
            return Err(Error::HorizontalityViolated { residual: relative });
        }
        Ok(form)
    }

    pub fn d(&self, phi: &FormField) -> FormField {
        let this = self.clone();
        let phi = phi.clone();
        FormField::new(phi.degree() + 1, FieldKind::FiniteDifference, move |g| {
            this.d_at(&phi, g)
        })
    }

    /// `d*φ = −⋆d⋆φ`.
    pub fn codiff_at(&self, phi: &FormField, g: &GroupElement) -> Result<Form> {
        let inner = self.star(phi);
        Ok(-self.metric().star(&self.d_at(&inner, g)?))
    }

    pub fn codiff(&self, phi: &FormField) -> FormField {
        let this = self.clone();
        let phi = phi.clone();
        FormField::new(
            phi.degree().saturating_sub(1),
            FieldKind::FiniteDifference,
            move |g| this.codiff_at(&phi, g),
        )
    }

    pub fn star(&self, phi: &FormField) -> FormField {
        let metric = self.metric().clone();
        phi.map(6 - phi.degree(), move |f| metric.star(f))
    }

    /// `(dd* + d*d)φ`. Closed-form `dφ` and `d*φ`, when supplied, replace the
    /// inner finite difference.
    pub fn laplacian_at(
        &self,
        phi: &FormField,
        d_phi: Option<&FormField>,
        codiff_phi: Option<&FormField>,
        g: &GroupElement,
    ) -> Result<Form> {
        let inner_d = d_phi.cloned().unwrap_or_else(|| self.d(phi));
        let inner_codiff = codiff_phi.cloned().unwrap_or_else(|| self.codiff(phi));
        let mut out = self.codiff_at(&inner_d, g)?;
        if phi.degree() > 0 {
            out += self.d_at(&inner_codiff, g)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::deform::{dv_closed, v_field};
    use crate::flag::haar::haar_sample;
    use crate::flag::lie::{coefficients, LieAlg};
    use crate::random;

    fn calc() -> Calculus {
        Calculus::with_defaults().unwrap()
    }

    fn random_xi(rng: &mut impl rand::Rng) -> LieAlg {
        LieAlg::from_coords(&std::array::from_fn(|_| random::gaussian(rng)))
    }

    #[test]
    fn dv_matches_closed_form() {
        let c = calc();
        let mut rng = random::substream(31, 0);
        for _ in 0..20 {
            let xi = random_xi(&mut rng);
            let g = haar_sample(&mut rng);
            for k in 0..3 {
                let fd = c.d_at(&v_field(&xi, k), &g).unwrap();
                let closed = dv_closed(&coefficients(&g, &xi), k);
                assert!(fd.rel_diff(&closed) < 1e-6, "k={k} {}", fd.rel_diff(&closed));
            }
        }
    }

    #[test]
    fn d_squared_of_function_vanishes() {
        let c = calc();
        let mut rng = random::substream(32, 0);
        let xi = random_xi(&mut rng);
        let dv = c.d(&v_field(&xi, 0));
        for _ in 0..5 {
            let g = haar_sample(&mut rng);
            assert!(c.d_at(&dv, &g).unwrap().max_abs() < 1e-6);
        }
    }

    #[test]
    fn non_basic_field_is_rejected() {
        // Re z₁ is not T²-invariant.
        let c = calc();
        let xi = LieAlg::from_coords(&[1.0, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let f = FormField::closed(0, move |g| Form::scalar(coefficients(g, &xi).z[0].re));
        let mut rng = random::substream(33, 0);
        let g = haar_sample(&mut rng);
        assert!(matches!(c.d_at(&f, &g), Err(Error::HorizontalityViolated { .. })));
    }

    #[test]
    fn laplacian_of_constant_is_zero() {
        let c = calc();
        let one = FormField::closed(0, |_| Form::scalar(1.0));
        let g = haar_sample(&mut random::substream(34, 0));
        assert!(c.laplacian_at(&one, None, None, &g).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn laplacian_of_v_is_casimir() {
        // Oracle: −Σₐ ad(Xₐ)² on su₃ from the structure constants.
        let frame = coset_frame();
        let mut casimir = nalgebra::SMatrix::<f64, 8, 8>::zeros();
        for a in 0..8 {
            let ad = nalgebra::SMatrix::<f64, 8, 8>::from_fn(|k, j| frame.c[k][a][j]);
            casimir -= ad * ad;
        }
        let eig = casimir[(0, 0)];
        assert!((casimir - nalgebra::SMatrix::<f64, 8, 8>::identity() * eig).amax() < 1e-12);

        let c = calc();
        let mut rng = random::substream(35, 0);
        for _ in 0..10 {
            let xi = random_xi(&mut rng);
            let g = haar_sample(&mut rng);
            let v = v_field(&xi, 0);
            let lap = c.laplacian_at(&v, None, None, &g).unwrap().value();
            let value = v.eval(&g).unwrap().value();
            assert!(
                (lap - eig * value).abs() < 1e-5 * value.abs().max(1.0),
                "{lap} {value}"
            );
        }
    }
}
