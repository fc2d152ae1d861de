//! Fixed one- and two-qubit operators.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::{kron, Matrix};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix<T: Real>(self) -> Matrix<T> {
        match self {
            Pauli::I => Matrix::identity(2),
            Pauli::X => pauli_x(),
            Pauli::Y => pauli_y(),
            Pauli::Z => pauli_z(),
        }
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Pauli strings on `n` qubits in lexicographic, identity-first order
/// (`II, IX, IY, IZ, XI, …`) together with their labels.
pub fn pauli_basis<T: Real>(n: usize) -> Vec<(String, Matrix<T>)> {
    let mut out = vec![(String::new(), Matrix::identity(1))];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|(label, m)| {
                Pauli::ALL.into_iter().map(move |p| {
                    let mut l = label.clone();
                    l.push(p.label());
                    (l, kron(&m, &p.matrix()))
                })
            })
            .collect();
    }
    out
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

pub fn pauli_x<T: Real>() -> Matrix<T> {
    Matrix::from_rows(&[
        &[Complex::zero(), Complex::one()],
        &[Complex::one(), Complex::zero()],
    ])
}

pub fn pauli_y<T: Real>() -> Matrix<T> {
    Matrix::from_rows(&[
        &[Complex::zero(), c(0., -1.)],
        &[c(0., 1.), Complex::zero()],
    ])
}

pub fn pauli_z<T: Real>() -> Matrix<T> {
    Matrix::diag(&[Complex::one(), c(-1., 0.)])
}

pub fn hadamard<T: Real>() -> Matrix<T> {
    let h = T::FRAC_1_SQRT_2();
    Matrix::from_rows(&[
        &[Complex::new(h, T::zero()), Complex::new(h, T::zero())],
        &[Complex::new(h, T::zero()), Complex::new(-h, T::zero())],
    ])
}

pub fn phase_s<T: Real>() -> Matrix<T> {
    Matrix::diag(&[Complex::one(), c(0., 1.)])
}

pub fn phase_sdg<T: Real>() -> Matrix<T> {
    Matrix::diag(&[Complex::one(), c(0., -1.)])
}

pub fn swap<T: Real>() -> Matrix<T> {
    let mut m = Matrix::zeros(4, 4);
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        m[(i, j)] = Complex::one();
    }
    m
}

/// Controlled-X with qubit 0 as control.
pub fn cnot<T: Real>() -> Matrix<T> {
    let mut m = Matrix::zeros(4, 4);
    for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(i, j)] = Complex::one();
    }
    m
}

pub fn cz<T: Real>() -> Matrix<T> {
    Matrix::diag(&[Complex::one(), Complex::one(), Complex::one(), c(-1., 0.)])
}

/// `|b⟩⟨b|` for a computational basis state of a `dim`-dimensional space.
pub fn basis_projector<T: Real>(dim: usize, b: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(dim, dim);
    m[(b, b)] = Complex::one();
    m
}
