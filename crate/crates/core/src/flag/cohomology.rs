//! Cohomology of the T²-invariant Chevalley–Eilenberg complex of `m`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::exterior::{basis_len, basis_masks, Form, Metric};
use crate::flag::ce::{ce_d, t_action};
use crate::flag::structure::InvariantStructure;
use crate::su3types::rank_of;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohomologyReport {
    /// `dim Λᵏ(m*)^T`.
    pub invariant_dims: [usize; 7],
    pub betti: [usize; 7],
    /// Largest `|η∧ω²|, |η∧ReΩ|` over an orthonormal basis of harmonic 2-forms.
    pub harmonic2_type_residual: f64,
    /// Largest `|ρ∧ω|, |ρ∧ReΩ|, |ρ∧ImΩ|` over harmonic 3-forms.
    pub harmonic3_type_residual: f64,
    /// Largest vertical coefficient produced by `d` on invariant forms.
    pub vertical: f64,
    #[serde(skip)]
    pub harmonic2: Vec<Form>,
}

fn to_form(degree: usize, coords: &[f64]) -> Form {
    Form::new(degree, coords).expect("length matches degree")
}

fn column(form: &Form) -> Vec<f64> {
    form.coeffs().to_vec()
}

/// Orthonormal basis (as columns) of the null space of `a`.
fn null_space(a: &DMatrix<f64>, rel: f64) -> DMatrix<f64> {
    let n = a.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    let rows = a.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let largest = svd.singular_values.max();
    let keep: Vec<usize> = (0..n)
        .filter(|&i| largest == 0.0 || svd.singular_values[i] <= rel * largest)
        .collect();
    DMatrix::from_fn(n, keep.len(), |r, c| vt[(keep[c], r)])
}

/// Columns: a basis of `Λᵏ(m*)^T` in coefficient coordinates.
fn invariant_basis(k: usize, tol: &Tolerances) -> DMatrix<f64> {
    let n = basis_len(k);
    let mut action = DMatrix::zeros(2 * n, n);
    for (col, &m) in basis_masks(k).iter().enumerate() {
        let e = Form::from_mask(m, 1.0);
        for (t, dir) in [6usize, 7].iter().enumerate() {
            let image = t_action(*dir, &e);
            for r in 0..n {
                action[(t * n + r, col)] = image.coeffs()[r];
            }
        }
    }
    null_space(&action, tol.rank)
}

/// Matrix of `op` from the span of `basis` into `Λ^{k'}` coordinates.
fn image_matrix<F>(basis: &DMatrix<f64>, k: usize, out_len: usize, mut op: F) -> DMatrix<f64>
where
    F: FnMut(&Form) -> Form,
{
    let mut m = DMatrix::zeros(out_len, basis.ncols());
    for c in 0..basis.ncols() {
        let coords: Vec<f64> = basis.column(c).iter().copied().collect();
        let image = op(&to_form(k, &coords));
        for (r, v) in column(&image).into_iter().enumerate() {
            m[(r, c)] = v;
        }
    }
    m
}

pub fn invariant_cohomology(structure: &InvariantStructure, tol: &Tolerances) -> CohomologyReport {
    let su3 = &structure.su3;
    let metric: &Metric = &su3.metric;
    let bases: Vec<DMatrix<f64>> = (0..=6).map(|k| invariant_basis(k, tol)).collect();
    let invariant_dims: [usize; 7] = std::array::from_fn(|k| bases[k].ncols());

    let mut vertical = 0.0_f64;
    let mut d_ranks = [0usize; 7];
    for k in 0..6 {
        let dk = image_matrix(&bases[k], k, basis_len(k + 1), |f| {
            let (out, v) = ce_d(f);
            vertical = vertical.max(v);
            out
        });
        d_ranks[k] = rank_of(&dk, tol.rank);
    }
    let betti: [usize; 7] = std::array::from_fn(|k| {
        let below = if k == 0 { 0 } else { d_ranks[k - 1] };
        invariant_dims[k] - d_ranks[k] - below
    });

    let harmonic = |k: usize| -> Vec<Form> {
        let basis = &bases[k];
        let d = image_matrix(basis, k, basis_len(k + 1), |f| ce_d(f).0);
        let codiff = image_matrix(basis, k, basis_len(k.saturating_sub(1)), |f| {
            -metric.star(&ce_d(&metric.star(f)).0)
        });
        let mut stacked = DMatrix::zeros(d.nrows() + codiff.nrows(), basis.ncols());
        stacked.view_mut((0, 0), d.shape()).copy_from(&d);
        stacked
            .view_mut((d.nrows(), 0), codiff.shape())
            .copy_from(&codiff);
        let kernel = null_space(&stacked, tol.rank);
        if kernel.ncols() == 0 {
            return Vec::new();
        }
        let coords = basis * kernel;
        (0..coords.ncols())
            .map(|c| to_form(k, &coords.column(c).iter().copied().collect::<Vec<_>>()))
            .collect()
    };
    let w2 = su3.omega ^ su3.omega;
    let harmonic2 = harmonic(2);
    let harmonic2_type_residual = harmonic2
        .iter()
        .map(|h| (*h ^ w2).max_abs().max((*h ^ su3.re_omega).max_abs()))
        .fold(0.0, f64::max);
    let harmonic3_type_residual = harmonic(3)
        .iter()
        .map(|h| {
            [su3.omega, su3.re_omega, su3.im_omega]
                .iter()
                .map(|b| (*h ^ *b).max_abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);

    CohomologyReport {
        invariant_dims,
        betti,
        harmonic2_type_residual,
        harmonic3_type_residual,
        vertical,
        harmonic2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::structure::invariant_structure;

    #[test]
    fn invariant_betti_numbers() {
        let tol = Tolerances::default();
        let s = invariant_structure(&tol).unwrap();
        let r = invariant_cohomology(&s, &tol);
        assert_eq!(r.betti, [1, 0, 2, 0, 2, 0, 1], "{r:?}");
        assert!(r.vertical < 1e-13);
        assert_eq!(r.harmonic2.len(), 2);
        assert!(r.harmonic2_type_residual < 1e-10);
        // invariant 2-forms: the three diagonal planes e¹², e³⁴, e⁵⁶
        assert_eq!(r.invariant_dims[2], 3);
    }

    #[test]
    fn harmonic_forms_are_closed_and_coclosed() {
        let tol = Tolerances::default();
        let s = invariant_structure(&tol).unwrap();
        let r = invariant_cohomology(&s, &tol);
        let m = &s.su3.metric;
        for h in &r.harmonic2 {
            assert!(ce_d(h).0.max_abs() < 1e-12);
            assert!(ce_d(&m.star(h)).0.max_abs() < 1e-12);
        }
    }
}
