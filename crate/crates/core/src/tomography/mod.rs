//! Pauli transfer matrices and process fidelities.

mod noise;

pub use noise::{depolarize, Damping, NoiseModel};

use std::fmt::Write as _;

use crate::circuits::{simulate_operator, Circuit};
use crate::error::{invalid, Error, Result};
use crate::qmath::pauli::pauli_basis;
use crate::qmath::Matrix;
use crate::scalar::{lit, Real};

/// Real `4ⁿ × 4ⁿ` transfer matrix with `r[i][j] = Tr[P_i ch(P_j)] / 2ⁿ`,
/// Paulis ordered `II, IX, IY, IZ, XI, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ptm<T: Real> {
    n_qubits: usize,
    r: Vec<T>,
    trace_preserving: bool,
}

/// Largest register for a full transfer matrix.
pub const MAX_PTM_QUBITS: usize = 2;

impl<T: Real> Ptm<T> {
    /// Wraps a row-major matrix; the trace-preservation flag is derived from the first row.
    pub fn from_entries(n_qubits: usize, r: Vec<T>) -> Result<Self> {
        let side = 1usize << (2 * n_qubits);
        if r.len() != side * side {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {side}x{side} transfer matrix",
                r.len()
            )));
        }
        let tol: T = lit(1e-10);
        let trace_preserving =
            (r[0] - T::one()).abs() <= tol && r[1..side].iter().all(|x| x.abs() <= tol);
        Ok(Self {
            n_qubits,
            r,
            trace_preserving,
        })
    }

    pub fn identity(n_qubits: usize) -> Self {
        let side = 1usize << (2 * n_qubits);
        let mut r = vec![T::zero(); side * side];
        for i in 0..side {
            r[i * side + i] = T::one();
        }
        Self {
            n_qubits,
            r,
            trace_preserving: true,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn side(&self) -> usize {
        1 << (2 * self.n_qubits)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.r[i * self.side() + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.r
    }

    /// False when the first row deviates from `(1, 0, …, 0)` by more than 1e−10.
    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    /// `self · other`, the transfer matrix of `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(
                "transfer matrices act on different registers".into(),
            ));
        }
        let s = self.side();
        let mut r = vec![T::zero(); s * s];
        for i in 0..s {
            for k in 0..s {
                let a = self.get(i, k);
                for j in 0..s {
                    r[i * s + j] = r[i * s + j] + a * other.get(k, j);
                }
            }
        }
        Self::from_entries(self.n_qubits, r)
    }

    /// Max entrywise deviation of `rᵀr` from the identity.
    pub fn orthogonality_defect(&self) -> T {
        let s = self.side();
        let mut worst = T::zero();
        for i in 0..s {
            for j in 0..s {
                let dot: T = (0..s).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.r
            .iter()
            .zip(&other.r)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }

    /// CSV with a `basis,<labels…>` header and one row per output Pauli.
    ///
    /// Values use 12 significant digits; magnitudes below 1e−14 are written as
    /// zero so that rounding noise does not leak into golden files.
    pub fn to_csv(&self) -> String {
        let labels: Vec<String> = pauli_basis::<T>(self.n_qubits)
            .into_iter()
            .map(|(l, _)| l)
            .collect();
        let mut out = String::from("basis");
        for l in &labels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for (i, l) in labels.iter().enumerate() {
            out.push_str(l);
            for j in 0..self.side() {
                let _ = write!(
                    out,
                    ",{}",
                    format_entry(self.get(i, j).to_f64().unwrap_or(f64::NAN))
                );
            }
            out.push('\n');
        }
        out
    }
}

fn format_entry(x: f64) -> String {
    let x = if x.abs() < 1e-14 { 0.0 } else { x };
    format!("{:.11e}", x)
}

/// Transfer matrix of a linear map on `n`-qubit operators.
pub fn ptm_of_channel<T: Real, F>(ch: F, n: usize) -> Result<Ptm<T>>
where
    F: Fn(&Matrix<T>) -> Result<Matrix<T>>,
{
    if n == 0 || n > MAX_PTM_QUBITS {
        return Err(invalid(
            "n",
            format!("transfer matrices are built for 1..={MAX_PTM_QUBITS} qubits"),
        ));
    }
    let basis = pauli_basis::<T>(n);
    let side = basis.len();
    let d: T = lit((1usize << n) as f64);
    let mut r = vec![T::zero(); side * side];
    for (j, (_, pj)) in basis.iter().enumerate() {
        let image = ch(pj)?;
        if image.rows() != pj.rows() || image.cols() != pj.cols() {
            return Err(Error::DimensionMismatch(
                "channel changed the operator dimension".into(),
            ));
        }
        for (i, (_, pi)) in basis.iter().enumerate() {
            r[i * side + j] = pi.matmul(&image)?.trace().re / d;
        }
    }
    Ptm::from_entries(n, r)
}

/// Transfer matrix of a circuit, with optional gate noise.
pub fn ptm_of_circuit<T: Real>(c: &Circuit<T>, noise: Option<&NoiseModel<T>>) -> Result<Ptm<T>> {
    ptm_of_channel(|p| simulate_operator(c, p, noise), c.num_qubits())
}

/// Transfer matrix of the unitary channel `ρ ↦ uρu†`.
pub fn ptm_of_unitary<T: Real>(u: &Matrix<T>) -> Result<Ptm<T>> {
    let n = crate::qmath::qubit_count(u.rows())?;
    ptm_of_channel(|p| p.conjugate_by(u), n)
}

/// Process fidelity and the derived average gate fidelity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessFidelity<T: Real> {
    pub f_pro: T,
    pub f_avg: T,
}

/// `f_pro = Tr[r_idealᵀ r]/d²`, `f_avg = (d·f_pro + 1)/(d + 1)` with `d = 2ⁿ`.
pub fn process_fidelity<T: Real>(ideal: &Ptm<T>, actual: &Ptm<T>) -> Result<ProcessFidelity<T>> {
    if ideal.n_qubits != actual.n_qubits {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit vs {}-qubit transfer matrix",
            ideal.n_qubits, actual.n_qubits
        )));
    }
    let d: T = lit((1usize << ideal.n_qubits) as f64);
    let overlap: T = ideal.r.iter().zip(&actual.r).map(|(a, b)| *a * *b).sum();
    let f_pro = overlap / (d * d);
    Ok(ProcessFidelity {
        f_pro,
        f_avg: (d * f_pro + T::one()) / (d + T::one()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::compile_udme_native;
    use crate::qmath::herm_expm;
    use crate::qmath::pauli::swap;
    use crate::scalar::{cis, clit};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn fully_depolarizing(p: &Matrix<f64>) -> Result<Matrix<f64>> {
        let d = p.rows();
        Ok(Matrix::identity(d).scale(p.trace() / d as f64))
    }

    #[test]
    fn identity_channel() {
        let ptm = ptm_of_channel(|p: &Matrix<f64>| Ok(p.clone()), 2).unwrap();
        assert_eq!(ptm, Ptm::identity(2));
        assert!(ptm.is_trace_preserving());
    }

    #[test]
    fn swap_channel() {
        let ptm =
            ptm_of_unitary(&herm_expm(&swap::<f64>(), clit(0., -FRAC_PI_2)).unwrap()).unwrap();
        // SWAP exchanges the Pauli labels: column "XI" maps to row "IX" (indices 4 and 1)
        assert!((ptm.get(1, 4) - 1.0).abs() < 1e-14);
        assert!((ptm.get(4, 1) - 1.0).abs() < 1e-14);
        assert!((ptm.get(6, 9) - 1.0).abs() < 1e-14); // XY <- YX
        assert!(ptm.orthogonality_defect() < 1e-12);
    }

    #[test]
    fn fully_depolarizing_channel() {
        let ptm = ptm_of_channel(fully_depolarizing, 1).unwrap();
        let mut expected = vec![0.0; 16];
        expected[0] = 1.0;
        assert_eq!(ptm.entries(), expected.as_slice());
        let f = process_fidelity(&Ptm::identity(1), &ptm).unwrap();
        assert!((f.f_pro - 0.25).abs() < 1e-15);
        assert!((f.f_avg - 0.5).abs() < 1e-15);
    }

    #[test]
    fn circuit_path_matches_channel_path() {
        let c = compile_udme_native::<f64>(FRAC_PI_4);
        let via_circuit = ptm_of_circuit(&c, None).unwrap();
        let exact =
            ptm_of_unitary(&herm_expm(&swap::<f64>(), clit(0., -FRAC_PI_4)).unwrap()).unwrap();
        assert!(via_circuit.max_abs_diff(&exact) < 1e-10);
        let ident = ptm_of_circuit(&compile_udme_native::<f64>(0.0), None).unwrap();
        assert!(ident.max_abs_diff(&Ptm::identity(2)) < 1e-12);
    }

    #[test]
    fn fidelity_ignores_global_phase() {
        let u = herm_expm(&swap::<f64>(), clit(0., -0.3)).unwrap();
        let a = ptm_of_unitary(&u).unwrap();
        let b = ptm_of_unitary(&u.scale(cis(1.1))).unwrap();
        let f = process_fidelity(&a, &b).unwrap();
        assert!((f.f_pro - 1.0).abs() < 1e-12 && (f.f_avg - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noise_reduces_fidelity_monotonically() {
        let c = compile_udme_native::<f64>(FRAC_PI_4);
        let ideal = ptm_of_circuit(&c, None).unwrap();
        let favg: Vec<f64> = [0.0, 0.01, 0.02, 0.04]
            .into_iter()
            .map(|p2| {
                let nm = NoiseModel::depolarizing(0.0, p2).unwrap();
                process_fidelity(&ideal, &ptm_of_circuit(&c, Some(&nm)).unwrap())
                    .unwrap()
                    .f_avg
            })
            .collect();
        assert!((favg[0] - 1.0).abs() < 1e-12);
        assert!(favg.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn non_trace_preserving_is_flagged() {
        let ptm = ptm_of_channel(|p: &Matrix<f64>| Ok(p.scale_re(0.5)), 1).unwrap();
        assert!(!ptm.is_trace_preserving());
    }

    #[test]
    fn csv_layout() {
        let csv = Ptm::<f64>::identity(1).to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "basis,I,X,Y,Z");
        assert_eq!(
            lines[1],
            "I,1.00000000000e0,0.00000000000e0,0.00000000000e0,0.00000000000e0"
        );
        let two = Ptm::<f64>::identity(2).to_csv();
        assert_eq!(two.lines().next().unwrap().split(',').count(), 17);
        assert!(!format_entry(-1e-17).starts_with('-'));
    }
}
