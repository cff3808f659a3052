//! Seeded random inputs. Every sampler draws from a ChaCha8 substream so a
//! `(seed, index)` pair reproduces the same value on any thread.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::exterior::{basis_len, Form, Matrix, Vector};

/// Independent stream `index` of the generator seeded with `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_vector(rng: &mut impl Rng) -> Vector {
    Vector::from_fn(|_, _| gaussian(rng))
}

pub fn gaussian_form(rng: &mut impl Rng, degree: usize) -> Form {
    let c: Vec<f64> = (0..basis_len(degree)).map(|_| gaussian(rng)).collect();
    Form::new(degree, &c).expect("length matches degree")
}

pub fn gaussian_matrix(rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(|_, _| gaussian(rng))
}

/// `I + scale·G` with `G` Gaussian.
pub fn near_identity(rng: &mut impl Rng, scale: f64) -> Matrix {
    Matrix::identity() + gaussian_matrix(rng) * scale
}

/// `U·diag(eˢ)·V` with `U, V` Haar-orthogonal and `s` uniform in
/// `[−spread, spread]`: a random element of GL(6) with condition number at
/// most `e^{2·spread}`, of either orientation.
pub fn well_conditioned(rng: &mut impl Rng, spread: f64) -> Matrix {
    let orthogonal = |rng: &mut _| {
        let (q, r) = gaussian_matrix(rng).qr().unpack();
        let signs = Matrix::from_diagonal(&Vector::from_fn(|i, _| r[(i, i)].signum()));
        q * signs
    };
    let u = orthogonal(rng);
    let v = orthogonal(rng);
    let s = Vector::from_fn(|_, _| rng.random_range(-spread..=spread).exp());
    u * Matrix::from_diagonal(&s) * v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_conditioned_bounds() {
        let mut rng = substream(5, 0);
        let mut signs = [0; 2];
        for _ in 0..200 {
            let a = well_conditioned(&mut rng, 0.7);
            let sv = a.singular_values();
            assert!(sv.max() / sv.min() <= (1.4_f64).exp() * (1.0 + 1e-12));
            signs[(a.determinant() > 0.0) as usize] += 1;
        }
        assert!(signs[0] > 50 && signs[1] > 50);
    }
}
