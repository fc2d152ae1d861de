//! Dense complex linear algebra for registers of at most five qubits.

mod eigh;
mod matrix;
pub mod pauli;
pub mod random;

pub use eigh::{eigh, eigvalsh, Eigh};
pub use matrix::Matrix;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Largest register the kernel is meant for.
pub const MAX_QUBITS: usize = 5;

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = Matrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij.is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence, left to right.
pub fn kron_all<'a, T: Real>(factors: impl IntoIterator<Item = &'a Matrix<T>>) -> Matrix<T> {
    factors
        .into_iter()
        .fold(Matrix::identity(1), |acc, m| kron(&acc, m))
}

/// Subsystem layout for a partial trace. Subsystems are indexed from 0, with
/// subsystem 0 the most significant tensor factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitPartition {
    dims: Vec<usize>,
    keep: Vec<usize>,
}

impl QubitPartition {
    pub fn new(dims: Vec<usize>, mut keep: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d != 2) {
            return Err(Error::InvalidArgument {
                name: "dims",
                reason: format!("every subsystem must be a qubit, got {dims:?}"),
            });
        }
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() || keep.len() >= dims.len() || keep.iter().any(|&k| k >= dims.len()) {
            return Err(Error::InvalidArgument {
                name: "keep",
                reason: format!(
                    "must be a nonempty strict subset of 0..{}, got {keep:?}",
                    dims.len()
                ),
            });
        }
        Ok(Self { dims, keep })
    }

    /// `n` qubits keeping the listed ones.
    pub fn qubits(n: usize, keep: &[usize]) -> Result<Self> {
        Self::new(vec![2; n], keep.to_vec())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }
}

/// Traces out every subsystem not listed in `part.keep()`.
pub fn partial_trace<T: Real>(m: &Matrix<T>, part: &QubitPartition) -> Result<Matrix<T>> {
    if !m.is_square() || m.rows() != part.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator against partition of total dimension {}",
            m.rows(),
            m.cols(),
            part.total_dim()
        )));
    }
    let n = part.dims.len();
    let traced: Vec<usize> = (0..n).filter(|k| !part.keep.contains(k)).collect();
    let kept_dim: usize = part.keep.iter().map(|&k| part.dims[k]).product();
    let traced_dim: usize = traced.iter().map(|&k| part.dims[k]).product();

    // Bit position of subsystem k inside the full index (subsystem 0 is most significant).
    let shift = |k: usize| n - 1 - k;
    let compose = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut full = 0usize;
        for (pos, &k) in part.keep.iter().enumerate() {
            let bit = (kept_idx >> (part.keep.len() - 1 - pos)) & 1;
            full |= bit << shift(k);
        }
        for (pos, &k) in traced.iter().enumerate() {
            let bit = (traced_idx >> (traced.len() - 1 - pos)) & 1;
            full |= bit << shift(k);
        }
        full
    };

    let mut out = Matrix::zeros(kept_dim, kept_dim);
    for i in 0..kept_dim {
        for j in 0..kept_dim {
            let mut acc = Complex::zero();
            for t in 0..traced_dim {
                acc = acc + m[(compose(i, t), compose(j, t))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// Rejects non-Hermitian input and returns the symmetrized copy.
pub fn checked_hermitian<T: Real>(h: &Matrix<T>) -> Result<Matrix<T>> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            h.rows(),
            h.cols()
        )));
    }
    let defect = h.hermiticity_defect();
    if !(defect <= T::hermitian_tol()) {
        return Err(Error::NotHermitian {
            deviation: defect.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(h.hermitian_part())
}

/// `exp(scale · h)` for Hermitian `h`, through its eigendecomposition.
pub fn herm_expm<T: Real>(h: &Matrix<T>, scale: Complex<T>) -> Result<Matrix<T>> {
    let h = checked_hermitian(h)?;
    Ok(eigh(&h).reconstruct(|l| (scale * l).exp()))
}

/// `exp(-i t h)`.
pub fn unitary_evolution<T: Real>(h: &Matrix<T>, t: T) -> Result<Matrix<T>> {
    herm_expm(h, Complex::new(T::zero(), -t))
}

fn checked_unitary<T: Real>(u: &Matrix<T>) -> Result<()> {
    let defect = u.unitarity_defect();
    if !(defect <= T::validation_tol()) {
        return Err(Error::NotUnitary {
            deviation: defect.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Frobenius distance between `u` and `v` after removing the best global phase.
///
/// The optimal phase is `arg Tr[v† u]`, so the value equals
/// `sqrt(2d − 2|Tr[u† v]|)`; it is evaluated directly at that phase to avoid
/// the cancellation in the closed form near zero.
pub fn dist_up_to_global_phase<T: Real>(u: &Matrix<T>, v: &Matrix<T>) -> Result<T> {
    if u.rows() != v.rows() || u.cols() != v.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    checked_unitary(u)?;
    checked_unitary(v)?;
    let overlap = v.adjoint().matmul(u)?.trace();
    let phase = if overlap.norm() > T::zero() {
        overlap / overlap.norm()
    } else {
        Complex::new(T::one(), T::zero())
    };
    Ok((u - &v.scale(phase)).frobenius_norm())
}

/// Sum of absolute eigenvalues of a Hermitian operator.
pub fn trace_norm<T: Real>(h: &Matrix<T>) -> Result<T> {
    let h = checked_hermitian(h)?;
    Ok(eigvalsh(&h).into_iter().map(|l| l.abs()).sum())
}

/// `½‖a − b‖₁` for Hermitian `a`, `b`.
pub fn trace_distance<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(
            "trace distance operands differ in shape".into(),
        ));
    }
    Ok(trace_norm(&(a - b))? * lit(0.5))
}

/// Number of qubits for a `2^n`-dimensional space.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() || dim > 1 << MAX_QUBITS {
        return Err(Error::DimensionMismatch(format!(
            "dimension {dim} is not 2^n with n ≤ {MAX_QUBITS}"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Embeds an operator acting on `targets` (in the listed order) into an `n`-qubit register.
pub fn embed<T: Real>(op: &Matrix<T>, targets: &[usize], n: usize) -> Result<Matrix<T>> {
    let k = targets.len();
    if op.rows() != 1 << k || !op.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator cannot act on {k} qubits",
            op.rows(),
            op.cols()
        )));
    }
    if targets.iter().any(|&q| q >= n) {
        return Err(Error::InvalidArgument {
            name: "targets",
            reason: format!("{targets:?} out of range for {n} qubits"),
        });
    }
    for (i, q) in targets.iter().enumerate() {
        if targets[i + 1..].contains(q) {
            return Err(Error::InvalidArgument {
                name: "targets",
                reason: format!("repeated qubit {q}"),
            });
        }
    }
    let dim = 1usize << n;
    let sub = |full: usize| -> usize {
        targets
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((full >> (n - 1 - q)) & 1))
    };
    let mask: usize = targets.iter().map(|&q| 1usize << (n - 1 - q)).sum();
    let mut out = Matrix::zeros(dim, dim);
    for row in 0..dim {
        for col in 0..dim {
            if row & !mask != col & !mask {
                continue;
            }
            out[(row, col)] = op[(sub(row), sub(col))];
        }
    }
    Ok(out)
}
