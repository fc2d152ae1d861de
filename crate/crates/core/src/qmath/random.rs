//! Random operators and states for property suites and sweeps.

use num_complex::Complex;
use rand::Rng;

use super::{herm_expm, Matrix};
use crate::scalar::{lit, Real};

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    // Box-Muller; the uniform draw is shifted away from zero.
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    lit((-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos())
}

pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    Complex::new(gaussian(rng), gaussian(rng))
}

/// Haar-random unit vector.
pub fn random_state_vector<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex<T>> {
    let v: Vec<Complex<T>> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// GUE-style Hermitian matrix.
pub fn random_hermitian<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix<T> {
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m.hermitian_part()
}

/// Unitary `exp(-iH)` for a random Hermitian `H`; spreads well over U(d) for small d.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix<T> {
    let h = random_hermitian::<T, R>(dim, rng).scale_re(lit(2.0));
    herm_expm(&h, Complex::new(T::zero(), -T::one())).expect("Hermitian by construction")
}

/// Mixed state `G G† / Tr[G G†]` from a Ginibre matrix.
pub fn random_density<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix<T> {
    let mut g = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = complex_gaussian(rng);
        }
    }
    let p = &g * &g.adjoint();
    let tr = p.trace().re;
    p.scale_re(T::one() / tr).hermitian_part()
}
