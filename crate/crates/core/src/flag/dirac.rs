//! The first-order operator
//! `D(X, f, h) = (½α(dJX) + 3X + df + J*dh, d*X + 6f, d*(JX) − 6h)`
//! on triples of a vector field (as its metric dual) and two functions.

use crate::error::Result;
use crate::exterior::Form;
use crate::flag::fields::{Calculus, FormField};
use crate::flag::lie::{coefficients, GroupElement, LieAlg};
use crate::su3types::alpha;

#[derive(Debug, Clone, PartialEq)]
pub struct DiracValue {
    pub one_form: Form,
    pub f: f64,
    pub h: f64,
}

impl DiracValue {
    pub fn max_abs(&self) -> f64 {
        self.one_form.max_abs().max(self.f.abs()).max(self.h.abs())
    }

    /// Pointwise pairing `⟨X, X′⟩ + ff′ + hh′`.
    pub fn pair(&self, x: &Form, f: f64, h: f64, calc: &Calculus) -> f64 {
        calc.metric().inner(&self.one_form, x).expect("1-forms") + self.f * f + self.h * h
    }
}

/// The Killing field of the left action of `ξ`, as a 1-form: its coefficients
/// are the m-coordinates of `g⁻¹ξg`.
pub fn killing_field(xi: &LieAlg) -> FormField {
    let xi = *xi;
    FormField::closed(1, move |g| {
        let x = coefficients(g, &xi).x;
        Form::new(1, &x).expect("six coefficients")
    })
}

/// `X ↦ (JX)♭` on 1-form fields.
pub fn j_field(calc: &Calculus, x: &FormField) -> FormField {
    let su3 = calc.structure.su3.clone();
    x.map(1, move |a| su3.j_flat(&su3.metric.sharp(a)))
}

pub fn dirac(
    calc: &Calculus,
    x: &FormField,
    f: &FormField,
    h: &FormField,
    g: &GroupElement,
) -> Result<DiracValue> {
    let su3 = &calc.structure.su3;
    let m = &su3.metric;
    let jx = j_field(calc, x);
    let a = alpha(&calc.d_at(&jx, g)?, su3);
    let df = calc.d_at(f, g)?;
    let dh = calc.d_at(h, g)?;
    // J acting on the 1-form dh by precomposition
    let j_dh = su3.j.transpose_act(&dh);
    let one_form = m.flat(&a) * 0.5 + x.eval(g)? * 3.0 + df + j_dh;
    let fv = calc.codiff_at(x, g)?.value() + 6.0 * f.eval(g)?.value();
    let hv = calc.codiff_at(&jx, g)?.value() - 6.0 * h.eval(g)?.value();
    Ok(DiracValue {
        one_form,
        f: fv,
        h: hv,
    })
}

/// `⟨Du, u′⟩ − ⟨u, Du′⟩` at `g`.
pub fn symmetry_defect(
    calc: &Calculus,
    u: (&FormField, &FormField, &FormField),
    v: (&FormField, &FormField, &FormField),
    g: &GroupElement,
) -> Result<f64> {
    let du = dirac(calc, u.0, u.1, u.2, g)?;
    let dv = dirac(calc, v.0, v.1, v.2, g)?;
    let lhs = du.pair(&v.0.eval(g)?, v.1.eval(g)?.value(), v.2.eval(g)?.value(), calc);
    let rhs = dv.pair(&u.0.eval(g)?, u.1.eval(g)?.value(), u.2.eval(g)?.value(), calc);
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::deform::v_field;
    use crate::flag::haar::{haar_sample, mean_stderr};
    use crate::random;
    use rayon::prelude::*;

    fn zero0() -> FormField {
        FormField::closed(0, |_| Form::scalar(0.0))
    }

    #[test]
    fn killing_fields_are_in_the_kernel() {
        let calc = Calculus::with_defaults().unwrap();
        let mut rng = random::substream(61, 0);
        for k in 0..8 {
            let mut coords = [0.0; 8];
            coords[k] = 1.0;
            let x = killing_field(&LieAlg::from_coords(&coords));
            for _ in 0..5 {
                let g = haar_sample(&mut rng);
                let d = dirac(&calc, &x, &zero0(), &zero0(), &g).unwrap();
                assert!(d.max_abs() < 1e-6, "k={k}: {d:?}");
            }
        }
    }

    #[test]
    fn functions_only() {
        let calc = Calculus::with_defaults().unwrap();
        let mut rng = random::substream(62, 0);
        let xi = LieAlg::from_coords(&std::array::from_fn(|_| random::gaussian(&mut rng)));
        let f = v_field(&xi, 0);
        let zero1 = FormField::closed(1, |_| Form::zero(1));
        let g = haar_sample(&mut rng);
        let d = dirac(&calc, &zero1, &f, &zero0(), &g).unwrap();
        assert!(d.one_form.rel_diff(&calc.d_at(&f, &g).unwrap()) < 1e-12);
        assert!((d.f - 6.0 * f.eval(&g).unwrap().value()).abs() < 1e-12);
        assert_eq!(d.h, 0.0);
    }

    #[test]
    fn symmetric_in_mean() {
        let calc = Calculus::with_defaults().unwrap();
        let mut rng = random::substream(63, 0);
        let mut xi = || LieAlg::from_coords(&std::array::from_fn(|_| random::gaussian(&mut rng)));
        let (a, b, c, d, e, f) = (xi(), xi(), xi(), xi(), xi(), xi());
        let u0 = killing_field(&a).wedge(&v_field(&b, 0));
        let v0 = killing_field(&c).wedge(&v_field(&d, 1)).add(&killing_field(&e));
        let (u1, u2) = (v_field(&b, 2), v_field(&f, 1));
        let (v1, v2) = (v_field(&d, 0), v_field(&e, 2));
        let defects: Vec<f64> = (0..4000u64)
            .into_par_iter()
            .map(|i| {
                let g = haar_sample(&mut random::substream(64, i));
                symmetry_defect(&calc, (&u0, &u1, &u2), (&v0, &v1, &v2), &g).unwrap()
            })
            .collect();
        let (mean, se) = mean_stderr(&defects);
        assert!(mean.abs() < 3.0 * se, "{mean} ± {se}");
        // the pointwise defect is not identically zero
        assert!(defects.iter().any(|x| x.abs() > 1e-3));
    }
}
