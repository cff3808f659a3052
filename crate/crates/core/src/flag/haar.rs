//! Haar sampling on SU(3) and seeded Monte Carlo means over F₃.

use nalgebra::Matrix3;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flag::deform::{density_with, Normalization};
use crate::flag::lie::{GroupElement, LieAlg, C3};
use crate::random::{gaussian, substream};
use crate::stable::SU3Structure;

/// Complex Gaussian matrix, QR, phase fix so `diag R > 0`, then divide by the
/// principal cube root of the determinant.
pub fn haar_sample(rng: &mut impl Rng) -> GroupElement {
    let z: C3 = Matrix3::from_fn(|_, _| {
        Complex64::new(gaussian(rng), gaussian(rng)) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..3 {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::from(1.0)
        };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    let root = q.determinant().powf(1.0 / 3.0);
    GroupElement::new_unchecked(q / root)
}

/// `Σ xs` by recursive halving.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Mean and standard error of a sample.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = pairwise_sum(xs) / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let sq: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&sq) / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// `f(gᵢ)` for Haar samples `gᵢ` drawn from substream `i` of `seed`, in
/// index order. Independent of the number of worker threads.
pub fn haar_values<F>(samples: usize, seed: u64, f: F) -> Vec<f64>
where
    F: Fn(&GroupElement) -> f64 + Sync,
{
    (0..samples)
        .into_par_iter()
        .map(|i| f(&haar_sample(&mut substream(seed, i as u64))))
        .collect()
}

pub const MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionEstimate {
    pub xi: [f64; 8],
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    /// `i·det ξ`, reported when `ξ′ = ξ`.
    pub idet: Option<f64>,
    /// `mean / idet` when `idet ≠ 0`.
    pub ratio: Option<f64>,
    pub ratio_stderr: Option<f64>,
    /// `|mean| / stderr`.
    pub sigmas: f64,
}

/// Monte Carlo estimate of `Φ(ξ, ξ′)` up to the volume of F₃.
pub fn obstruction(
    xi: &LieAlg,
    xi_prime: Option<&LieAlg>,
    samples: usize,
    seed: u64,
    base: &SU3Structure,
) -> Result<ObstructionEstimate> {
    obstruction_with(xi, xi_prime, samples, seed, base, Normalization::Geometric)
}

pub fn obstruction_with(
    xi: &LieAlg,
    xi_prime: Option<&LieAlg>,
    samples: usize,
    seed: u64,
    base: &SU3Structure,
    normalization: Normalization,
) -> Result<ObstructionEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            got: samples,
            min: MIN_SAMPLES,
        });
    }
    let xp = xi_prime.copied().unwrap_or(*xi);
    let values = haar_values(samples, seed, |g| density_with(xi, &xp, g, base, normalization));
    let (mean, stderr) = mean_stderr(&values);
    let idet = (xp == *xi).then(|| xi.idet());
    let nonzero = idet.filter(|d| d.abs() > 1e-12);
    Ok(ObstructionEstimate {
        xi: xi.coords(),
        samples,
        seed,
        mean,
        stderr,
        idet,
        ratio: nonzero.map(|d| mean / d),
        ratio_stderr: nonzero.map(|d| stderr / d.abs()),
        sigmas: mean.abs() / stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::fields::Calculus;

    #[test]
    fn samples_are_special_unitary() {
        let mut rng = substream(1, 0);
        for _ in 0..200 {
            GroupElement::new(*haar_sample(&mut rng).matrix()).unwrap();
        }
    }

    #[test]
    fn same_seed_same_sequence() {
        let a: Vec<_> = (0..5).map(|i| haar_sample(&mut substream(9, i))).collect();
        let b: Vec<_> = (0..5).map(|i| haar_sample(&mut substream(9, i))).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn trace_second_moment_is_one() {
        // 3 ⊗ 3̄ contains the trivial representation once: E|tr g|² = 1.
        let values = haar_values(1_000_000, 3, |g| g.matrix().trace().norm_sqr());
        let (mean, se) = mean_stderr(&values);
        assert!((mean - 1.0).abs() < 3.0 * se, "{mean} ± {se}");
    }

    #[test]
    fn pairwise_sum_is_exact_on_integers() {
        let xs: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
    }

    #[test]
    fn too_few_samples() {
        let base = Calculus::with_defaults().unwrap().structure.su3;
        let xi = LieAlg::diag(1.0, 1.0, -2.0).unwrap();
        assert!(matches!(
            obstruction(&xi, None, 10, 1, &base),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn traceless_diagonal_with_zero_det_has_zero_mean() {
        let base = Calculus::with_defaults().unwrap().structure.su3;
        let xi = LieAlg::diag(1.0, -1.0, 0.0).unwrap();
        let est = obstruction(&xi, None, 20_000, 5, &base).unwrap();
        assert_eq!(est.idet, Some(0.0));
        assert!(est.ratio.is_none());
        assert!(est.mean.abs() < 4.0 * est.stderr, "{est:?}");
    }

    #[test]
    fn obstruction_is_deterministic() {
        let base = Calculus::with_defaults().unwrap().structure.su3;
        let xi = LieAlg::diag(1.0, 1.0, -2.0).unwrap();
        let a = obstruction(&xi, None, 500, 7, &base).unwrap();
        let b = obstruction(&xi, None, 500, 7, &base).unwrap();
        assert_eq!(a, b);
    }
}
