//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation. The input must
//! already be Hermitian; callers validate that.

use num_complex::Complex;
use num_traits::Zero;

use super::Matrix;
use crate::scalar::{lit, Real};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order and the matching unit eigenvectors as matrix columns.
#[derive(Debug, Clone)]
pub struct Eigh<T: Real> {
    pub values: Vec<T>,
    pub vectors: Matrix<T>,
}

impl<T: Real> Eigh<T> {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.vectors.rows())
            .map(|i| self.vectors[(i, k)])
            .collect()
    }

    /// `V f(Λ) V†` for a scalar function of the eigenvalues.
    pub fn reconstruct(&self, f: impl Fn(T) -> Complex<T>) -> Matrix<T> {
        let n = self.values.len();
        let fl: Vec<Complex<T>> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = fl.iter().enumerate().fold(Complex::zero(), |acc, (k, &l)| {
                    acc + self.vectors[(i, k)] * l * self.vectors[(j, k)].conj()
                });
            }
        }
        out
    }
}

fn off_diagonal_norm<T: Real>(a: &Matrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix. No Hermiticity check is performed here.
pub fn eigh<T: Real>(h: &Matrix<T>) -> Eigh<T> {
    let n = h.rows();
    let mut a = h.clone();
    let mut v = Matrix::identity(n);
    let scale = h.frobenius_norm().max(T::one());
    let stop = T::epsilon() * scale * lit(1e-2);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= T::eig_tiny() {
                    continue;
                }
                let phase = apq / r; // e^{iα}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let two = T::one() + T::one();
                let theta = (aqq - app) / (two * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // U restricted to (p, q) = diag(1, e^{-iα}) · [[c, s], [-s, c]]
                let u_pp = Complex::new(c, T::zero());
                let u_pq = Complex::new(s, T::zero());
                let u_qp = phase.conj() * (-s);
                let u_qq = phase.conj() * c;
                rotate(&mut a, &mut v, p, q, [u_pp, u_pq, u_qp, u_qq]);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_k)] = v[(i, old_k)];
        }
    }
    Eigh { values, vectors }
}

/// `A ← U† A U`, `V ← V U` for a unitary acting on the (p, q) plane.
fn rotate<T: Real>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize, u: [Complex<T>; 4]) {
    let [u_pp, u_pq, u_qp, u_qq] = u;
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
}

/// Eigenvalues only, ascending.
pub fn eigvalsh<T: Real>(h: &Matrix<T>) -> Vec<T> {
    eigh(h).values
}
