//! Infinitesimal deformations `σ̂_ξ`, `ρ_ξ` of the flag manifold, their
//! quadratic corrections, and the obstruction density.

use num_complex::Complex64;

use crate::exterior::{ComplexForm, Form};
use crate::flag::ce::theta;
use crate::flag::fields::FormField;
use crate::flag::lie::{coefficients, CoefficientFunctions, GroupElement, LieAlg};
use crate::stable::SU3Structure;
use crate::su3types::unwedge_omega;

/// Cyclic `(i, j, k)` with `εᵢⱼₖ = 1`, 0-based.
const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

fn thetas() -> [ComplexForm; 3] {
    [theta(1), theta(2), theta(3)]
}

/// The function `v_{k+1}` as a 0-form field.
pub fn v_field(xi: &LieAlg, k: usize) -> FormField {
    let xi = *xi;
    FormField::closed(0, move |g| Form::scalar(coefficients(g, &xi).v[k]))
}

/// Ratio between the derivatives of the coefficient functions along the
/// frame (orthonormal for `−B/12`, where `dω₀ = 3ReΩ₀` holds exactly) and
/// the closed expressions below written in `z`: `dv₁ = 4·Im(z₁θ₁ − z₂θ₂)`.
pub const FRAME_SCALE: f64 = 4.0;

/// Which `z` the closed formulas for `ρ_ξ` and `Q₃` are evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Normalization {
    /// `z' = 4z`, so that `3ρ_ξ = dσ̂_ξ` for the frame derivative.
    Geometric,
    /// `z` as read off `g⁻¹ξg`; reproduces `P = −72v₁v₂v₃ − 4Re(z₁z₂z₃)`.
    Formula,
}

impl Normalization {
    fn scale(self) -> f64 {
        match self {
            Normalization::Geometric => FRAME_SCALE,
            Normalization::Formula => 1.0,
        }
    }

    fn z(self, c: &CoefficientFunctions) -> [Complex64; 3] {
        c.z.map(|z| z * self.scale())
    }
}

/// `Im(z₁θ₁ − z₂θ₂)` and its cyclic companions, times `FRAME_SCALE`: the
/// derivative of `v_{k+1}`.
pub fn dv_closed(c: &CoefficientFunctions, k: usize) -> Form {
    dv_formula(&Normalization::Geometric.z(c), k)
}

pub fn dv_formula(z: &[Complex64; 3], k: usize) -> Form {
    let th = thetas();
    let (a, b) = match k {
        0 => (0, 1),
        1 => (2, 0),
        2 => (1, 2),
        _ => panic!("v index {k} out of range"),
    };
    (z[a] * th[a] - z[b] * th[b]).im
}

/// `σ̂_ξ = i/2 (v₃θ₁∧θ̄₁ + v₂θ₂∧θ̄₂ + v₁θ₃∧θ̄₃) = v₃e¹² − v₂e³⁴ + v₁e⁵⁶`.
pub fn sigma_hat_closed(c: &CoefficientFunctions) -> Form {
    Form::e(&[1, 2]) * c.v[2] - Form::e(&[3, 4]) * c.v[1] + Form::e(&[5, 6]) * c.v[0]
}

/// `−⅙ Re Σ θⱼ∧θₖ∧αᵢ` with `αᵢ = zⱼθ̄ₖ + zₖθ̄ⱼ`.
pub fn rho_formula(z: &[Complex64; 3]) -> Form {
    let th = thetas();
    let mut sum = ComplexForm::zero(3);
    for (_, j, k) in CYCLIC {
        let alpha = z[j] * th[k].conj() + z[k] * th[j].conj();
        sum = sum + (th[j] ^ th[k] ^ alpha);
    }
    sum.re * (-1.0 / 6.0)
}

/// `⅑ Im Σ θ̄ⱼ∧θ̄ₖ∧βᵢ` with `βᵢ = zᵢ(zᵢθᵢ − zⱼθⱼ − zₖθₖ)`.
pub fn q3_formula(z: &[Complex64; 3]) -> Form {
    let th = thetas();
    let mut sum = ComplexForm::zero(3);
    for (i, j, k) in CYCLIC {
        let inner = z[i] * th[i] - z[j] * th[j] - z[k] * th[k];
        let beta = z[i] * inner;
        sum = sum + (th[j].conj() ^ th[k].conj() ^ beta);
    }
    sum.im * (1.0 / 9.0)
}

/// `ρ_ξ` with `3ρ_ξ = dσ̂_ξ`.
pub fn rho_closed(c: &CoefficientFunctions) -> Form {
    rho_formula(&Normalization::Geometric.z(c))
}

/// `Q₃(ρ_ξ)` for [`rho_closed`].
pub fn q3_closed(c: &CoefficientFunctions) -> Form {
    q3_formula(&Normalization::Geometric.z(c))
}

/// `Q₄(σ_ξ)`, the 2-form with `ω₀∧Q₄ = σ̂_ξ∧σ̂_ξ`.
pub fn q4_closed(c: &CoefficientFunctions, base: &SU3Structure) -> Form {
    let s = sigma_hat_closed(c);
    unwedge_omega(&(s ^ s), base)
}

pub fn sigma_hat(xi: &LieAlg) -> FormField {
    let xi = *xi;
    FormField::closed(2, move |g| sigma_hat_closed(&coefficients(g, &xi)))
}

pub fn rho(xi: &LieAlg) -> FormField {
    let xi = *xi;
    FormField::closed(3, move |g| rho_closed(&coefficients(g, &xi)))
}

/// `12⟨Q₄(σ_ξ), σ̂_ξ'⟩ − 3⟨Q₃(ρ_ξ), ⋆dσ̂_ξ'⟩` at `g`, from closed forms.
pub fn density(xi: &LieAlg, xi_prime: &LieAlg, g: &GroupElement, base: &SU3Structure) -> f64 {
    density_with(xi, xi_prime, g, base, Normalization::Geometric)
}

pub fn density_with(
    xi: &LieAlg,
    xi_prime: &LieAlg,
    g: &GroupElement,
    base: &SU3Structure,
    normalization: Normalization,
) -> f64 {
    let c = coefficients(g, xi);
    let cp = if xi == xi_prime {
        c
    } else {
        coefficients(g, xi_prime)
    };
    let (first, second) = density_terms(&c, &cp, base, normalization);
    first + second
}

/// The two terms `⟨12Q₄, σ̂′⟩` and `−3⟨Q₃, 3⋆ρ′⟩` of the density.
pub fn density_terms(
    c: &CoefficientFunctions,
    cp: &CoefficientFunctions,
    base: &SU3Structure,
    normalization: Normalization,
) -> (f64, f64) {
    let m = &base.metric;
    let q4 = q4_closed(c, base);
    let q3 = q3_formula(&normalization.z(c));
    let star_d_sigma = m.star(&(rho_formula(&normalization.z(cp)) * 3.0));
    let first = 12.0 * m.inner(&q4, &sigma_hat_closed(cp)).expect("2-forms");
    let second = -3.0 * m.inner(&q3, &star_d_sigma).expect("3-forms");
    (first, second)
}

/// `−72 v₁v₂v₃ − 4 Re(z₁'z₂'z₃')` with `z'` per the normalization.
pub fn density_polynomial(c: &CoefficientFunctions, normalization: Normalization) -> f64 {
    let [v1, v2, v3] = c.v;
    let z = normalization.z(c);
    -72.0 * v1 * v2 * v3 - 4.0 * (z[0] * z[1] * z[2]).re
}

/// `i·det(g⁻¹ξg)` written in the coefficient functions.
pub fn idet_polynomial(c: &CoefficientFunctions) -> f64 {
    let [v1, v2, v3] = c.v;
    let [z1, z2, z3] = c.z;
    v1 * v2 * v3 / 8.0 - 0.5 * (v3 * z1.norm_sqr() + v2 * z2.norm_sqr() + v1 * z3.norm_sqr())
        + 2.0 * (z1 * z2 * z3).re
}
