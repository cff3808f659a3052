//! SU(3), its Lie algebra, and the reductive frame `su₃ = m ⊕ t`.

use std::sync::LazyLock;

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C3 = Matrix3<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `E_ij` with 1-based indices.
fn elementary(i: usize, j: usize) -> C3 {
    let mut m = C3::zeros();
    m[(i - 1, j - 1)] = ONE;
    m
}

fn max_entry(m: &C3) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A point of SU(3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    u: C3,
}

impl GroupElement {
    pub fn new(u: C3) -> Result<Self> {
        let unitary = max_entry(&(u.adjoint() * u - C3::identity()));
        let det = (u.determinant() - ONE).norm();
        if unitary > 1e-12 || det > 1e-12 {
            return Err(Error::InvalidLieAlgebra(format!(
                "not in SU(3): |u*u − 1| = {unitary:.2e}, |det u − 1| = {det:.2e}"
            )));
        }
        Ok(Self { u })
    }

    pub(crate) fn new_unchecked(u: C3) -> Self {
        Self { u }
    }

    pub fn identity() -> Self {
        Self { u: C3::identity() }
    }

    pub fn matrix(&self) -> &C3 {
        &self.u
    }

    pub fn inverse(&self) -> Self {
        Self { u: self.u.adjoint() }
    }

    pub fn mul(&self, other: &GroupElement) -> Self {
        Self { u: self.u * other.u }
    }

    /// `exp(ξ)` for `ξ ∈ su₃`.
    pub fn exp(xi: &LieAlg) -> Self {
        Self { u: xi.m.exp() }
    }

    /// `g⁻¹ ξ g`.
    pub fn ad_inverse(&self, xi: &LieAlg) -> LieAlg {
        LieAlg {
            m: self.u.adjoint() * xi.m * self.u,
        }
    }
}

/// An element of su₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieAlg {
    m: C3,
}

impl LieAlg {
    pub fn new(m: C3) -> Result<Self> {
        let scale = max_entry(&m).max(1.0);
        let skew = max_entry(&(m + m.adjoint())) / scale;
        let trace = m.trace().norm() / scale;
        if skew > 1e-12 || trace > 1e-12 {
            return Err(Error::InvalidLieAlgebra(format!(
                "not in su₃: |m + m*| = {skew:.2e}, |tr m| = {trace:.2e}"
            )));
        }
        Ok(Self { m })
    }

    pub fn zero() -> Self {
        Self { m: C3::zeros() }
    }

    /// `i·diag(a, b, c)`, requiring `a + b + c = 0`.
    pub fn diag(a: f64, b: f64, c: f64) -> Result<Self> {
        let m = C3::from_diagonal(&nalgebra::Vector3::new(I * a, I * b, I * c));
        Self::new(m)
    }

    /// `Σ cₖ Xₖ` over the frame of [`coset_frame`].
    pub fn from_coords(coords: &[f64; 8]) -> Self {
        let frame = coset_frame();
        let mut m = C3::zeros();
        for (c, x) in coords.iter().zip(&frame.basis) {
            m += x * Complex64::from(*c);
        }
        Self { m }
    }

    pub fn coords(&self) -> [f64; 8] {
        let frame = coset_frame();
        std::array::from_fn(|k| inner(&self.m, &frame.basis[k]) + 0.0)
    }

    pub fn matrix(&self) -> &C3 {
        &self.m
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            m: self.m * Complex64::from(t),
        }
    }

    pub fn add(&self, other: &LieAlg) -> Self {
        Self { m: self.m + other.m }
    }

    /// `h ξ h⁻¹`.
    pub fn conjugate(&self, h: &GroupElement) -> Self {
        Self {
            m: h.u * self.m * h.u.adjoint(),
        }
    }

    /// `i·det ξ`, real on su₃.
    pub fn idet(&self) -> f64 {
        let v = I * self.m.determinant();
        debug_assert!(v.im.abs() <= 1e-12 * max_entry(&self.m).max(1.0).powi(3));
        v.re
    }

    /// Imaginary part of `i·det ξ`; zero up to rounding.
    pub fn idet_imaginary(&self) -> f64 {
        (I * self.m.determinant()).im
    }
}

/// `⟨A, B⟩ = −½ Re tr(AB)`, which is `−B/12` for the Killing form `B`.
pub fn inner(a: &C3, b: &C3) -> f64 {
    -0.5 * (a * b).trace().re
}

/// Orthonormal basis of su₃ adapted to `m ⊕ t`, with structure constants
/// `c[k][i][j] = ⟨[Xᵢ, Xⱼ], Xₖ⟩` (0-based).
#[derive(Debug, Clone)]
pub struct CosetFrame {
    pub basis: [C3; 8],
    pub c: [[[f64; 8]; 8]; 8],
}

impl CosetFrame {
    fn build() -> Self {
        let antisym = |i, j| elementary(i, j) - elementary(j, i);
        let sym = |i, j| (elementary(i, j) + elementary(j, i)) * I;
        let s3 = 3.0_f64.sqrt();
        let basis = [
            antisym(1, 2),
            sym(1, 2),
            antisym(1, 3),
            sym(1, 3),
            antisym(2, 3),
            sym(2, 3),
            C3::from_diagonal(&nalgebra::Vector3::new(I, -I, Complex64::from(0.0))),
            C3::from_diagonal(&nalgebra::Vector3::new(I / s3, I / s3, -I * (2.0 / s3))),
        ];
        let mut c = [[[0.0; 8]; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let br = basis[i] * basis[j] - basis[j] * basis[i];
                for k in 0..8 {
                    c[k][i][j] = inner(&br, &basis[k]);
                }
            }
        }
        Self { basis, c }
    }

    /// `[Xᵢ, Xⱼ]` in frame coordinates.
    pub fn bracket(&self, i: usize, j: usize) -> [f64; 8] {
        std::array::from_fn(|k| self.c[k][i][j])
    }

    pub fn gram_residual(&self) -> f64 {
        let mut r = 0.0_f64;
        for i in 0..8 {
            for j in 0..8 {
                let delta = if i == j { 1.0 } else { 0.0 };
                r = r.max((inner(&self.basis[i], &self.basis[j]) - delta).abs());
            }
        }
        r
    }

    /// Largest `|c[k][i][j] + c[k][j][i]|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut r = 0.0_f64;
        for k in 0..8 {
            for i in 0..8 {
                for j in 0..8 {
                    r = r.max((self.c[k][i][j] + self.c[k][j][i]).abs());
                }
            }
        }
        r
    }

    /// Largest coefficient of `[[Xᵢ,Xⱼ],Xₖ] + cyclic`.
    pub fn jacobi_residual(&self) -> f64 {
        let mut r = 0.0_f64;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    for out in 0..8 {
                        let mut s = 0.0;
                        for l in 0..8 {
                            s += self.c[l][i][j] * self.c[out][l][k]
                                + self.c[l][j][k] * self.c[out][l][i]
                                + self.c[l][k][i] * self.c[out][l][j];
                        }
                        r = r.max(s.abs());
                    }
                }
            }
        }
        r
    }

    /// Residual of the frame expansion `[Xᵢ,Xⱼ] = Σ c[k][i][j] Xₖ`.
    pub fn closure_residual(&self) -> f64 {
        let mut r = 0.0_f64;
        for i in 0..8 {
            for j in 0..8 {
                let br = self.basis[i] * self.basis[j] - self.basis[j] * self.basis[i];
                let mut expanded = C3::zeros();
                for k in 0..8 {
                    expanded += self.basis[k] * Complex64::from(self.c[k][i][j]);
                }
                r = r.max(max_entry(&(br - expanded)));
            }
        }
        r
    }
}

static FRAME: LazyLock<CosetFrame> = LazyLock::new(CosetFrame::build);

pub fn coset_frame() -> &'static CosetFrame {
    &FRAME
}

/// The entries of `g⁻¹ξg = i·[[v₁/2, z̄₁, z₂], [z₁, v₂/2, z̄₃], [z̄₂, z₃, v₃/2]]`
/// together with the m-coordinates `x₁..x₆`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientFunctions {
    pub v: [f64; 3],
    pub z: [Complex64; 3],
    pub x: [f64; 6],
}

impl CoefficientFunctions {
    pub fn reassemble(&self) -> C3 {
        let [v1, v2, v3] = self.v;
        let [z1, z2, z3] = self.z;
        let half = |v: f64| Complex64::from(0.5 * v);
        C3::new(
            half(v1),
            z1.conj(),
            z2,
            z1,
            half(v2),
            z3.conj(),
            z2.conj(),
            z3,
            half(v3),
        ) * I
    }
}

pub fn coefficients(g: &GroupElement, xi: &LieAlg) -> CoefficientFunctions {
    let m = g.ad_inverse(xi).m;
    let v = [2.0 * m[(0, 0)].im, 2.0 * m[(1, 1)].im, 2.0 * m[(2, 2)].im];
    let z = [-I * m[(1, 0)], -I * m[(0, 2)], -I * m[(2, 1)]];
    let frame = coset_frame();
    let x = std::array::from_fn(|k| inner(&m, &frame.basis[k]));
    CoefficientFunctions { v, z, x }
}
