//! Circuit-level unitaries of the recursion and the energy-descent bound.
//!
//! Here each step is parameterized by `s` with duration `√s`; this is the only
//! place that conversion happens.

use num_complex::Complex;

use super::dbac_step_exact;
use crate::error::{invalid, Error, Result};
use crate::qmath::{herm_expm, Matrix};
use crate::scalar::Real;
use crate::states::{energy, energy_variance, Hamiltonian, PureState};

const MAX_SYNTHESIS_QUBITS: usize = 3;

/// `U_k` from `U₀ = I`.
pub fn synthesize_uk<T: Real>(h: &Hamiltonian<T>, s_list: &[T]) -> Result<Matrix<T>> {
    synthesize_uk_from(Matrix::identity(h.dim()), h, s_list)
}

/// `U_{j+1} = e^{i√s H} U_j e^{i√s |0⟩⟨0|} U_j† e^{−i√s H} U_j`, starting from `u0`.
pub fn synthesize_uk_from<T: Real>(
    u0: Matrix<T>,
    h: &Hamiltonian<T>,
    s_list: &[T],
) -> Result<Matrix<T>> {
    if h.num_qubits() > MAX_SYNTHESIS_QUBITS {
        return Err(invalid(
            "h",
            format!("synthesis is limited to {MAX_SYNTHESIS_QUBITS} qubits"),
        ));
    }
    if u0.rows() != h.dim() || u0.cols() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} seed for dimension {}",
            u0.rows(),
            u0.cols(),
            h.dim()
        )));
    }
    let mut u = u0;
    for &s in s_list {
        if !(s > T::zero() && s.is_finite()) {
            return Err(invalid(
                "s_list",
                format!("{s} is not a positive finite step"),
            ));
        }
        let t = s.sqrt();
        let fwd = herm_expm(h.matrix(), Complex::new(T::zero(), t))?;
        let back = herm_expm(h.matrix(), Complex::new(T::zero(), -t))?;
        let mut reference = Matrix::identity(h.dim());
        reference[(0, 0)] = Complex::new(t.cos(), t.sin());
        u = fwd
            .matmul(&u)?
            .matmul(&reference)?
            .matmul(&u.adjoint())?
            .matmul(&back)?
            .matmul(&u)?;
    }
    Ok(u)
}

/// `(E₁ − E₀ + 2sV₀)/s²` for one exact step of duration `√s`.
pub fn descent_bound_residual<T: Real>(h: &Hamiltonian<T>, psi: &PureState<T>, s: T) -> Result<T> {
    let cap: T = crate::scalar::lit(0.1);
    if !(s > T::zero() && s <= cap) {
        return Err(invalid("s", format!("{s} is outside (0, 0.1]")));
    }
    let e0 = energy(psi, h)?;
    let v0 = energy_variance(psi, h)?;
    let e1 = energy(&dbac_step_exact(psi, s.sqrt(), h)?, h)?;
    let two = T::one() + T::one();
    Ok((e1 - e0 + two * s * v0) / (s * s))
}
