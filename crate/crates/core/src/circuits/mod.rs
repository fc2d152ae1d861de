//! Gate-level circuits over the native set {RX, RY, RZ, H, S, S†, RZZ}.
//!
//! Rotations use the half-angle convention `R_P(θ) = exp(−iθP/2)` and
//! `RZZ(φ) = diag(e^{−iφ/2}, e^{iφ/2}, e^{iφ/2}, e^{−iφ/2})`. Qubit 0 is the
//! most significant tensor factor.

mod compile;
mod sizzle;
mod table;
mod text;

pub use compile::{
    compile_cnot, compile_cz, compile_swap3, compile_swap_native, compile_udme_hs,
    compile_udme_native,
};
pub use sizzle::{sizzle_zz_rate, static_zz_rate, SizzleParams};
pub use table::{build_circuit, TableCircuit};
pub use text::{parse_circuit, write_circuit};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qmath::pauli::{hadamard, phase_s, phase_sdg};
use crate::qmath::{embed, Matrix, MAX_QUBITS};
use crate::scalar::{cis, lit, Real};
use crate::states::{energy, DensityMatrix, Hamiltonian, PureState};
use crate::tomography::NoiseModel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate<T: Real> {
    Rx(T, usize),
    Ry(T, usize),
    Rz(T, usize),
    H(usize),
    S(usize),
    Sdg(usize),
    Rzz(T, usize, usize),
    /// Scheduling marker with no unitary effect.
    Barrier,
}

impl<T: Real> Gate<T> {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rx(_, q)
            | Gate::Ry(_, q)
            | Gate::Rz(_, q)
            | Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q) => vec![q],
            Gate::Rzz(_, a, b) => vec![a, b],
            Gate::Barrier => vec![],
        }
    }

    pub fn angle(&self) -> Option<T> {
        match *self {
            Gate::Rx(a, _) | Gate::Ry(a, _) | Gate::Rz(a, _) | Gate::Rzz(a, _, _) => Some(a),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Rx(..) => "RX",
            Gate::Ry(..) => "RY",
            Gate::Rz(..) => "RZ",
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Sdg(_) => "SDG",
            Gate::Rzz(..) => "RZZ",
            Gate::Barrier => "BARRIER",
        }
    }

    /// Matrix on the gate's own qubits, in the order returned by [`Gate::qubits`].
    pub fn local_matrix(&self) -> Option<Matrix<T>> {
        let half = |a: T| a / lit(2.0);
        let c = |x: T| Complex::new(x, T::zero());
        Some(match *self {
            Gate::Rx(a, _) => {
                let (s, co) = half(a).sin_cos();
                Matrix::from_rows(&[
                    &[c(co), Complex::new(T::zero(), -s)],
                    &[Complex::new(T::zero(), -s), c(co)],
                ])
            }
            Gate::Ry(a, _) => {
                let (s, co) = half(a).sin_cos();
                Matrix::from_rows(&[&[c(co), c(-s)], &[c(s), c(co)]])
            }
            Gate::Rz(a, _) => Matrix::diag(&[cis(-half(a)), cis(half(a))]),
            Gate::H(_) => hadamard(),
            Gate::S(_) => phase_s(),
            Gate::Sdg(_) => phase_sdg(),
            Gate::Rzz(a, _, _) => {
                let (m, p) = (cis(-half(a)), cis(half(a)));
                Matrix::diag(&[m, p, p, m])
            }
            Gate::Barrier => return None,
        })
    }
}

/// Ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T: Real> {
    num_qubits: usize,
    gates: Vec<Gate<T>>,
    label: String,
}

impl<T: Real> Circuit<T> {
    pub fn new(num_qubits: usize, label: impl Into<String>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::MalformedCircuit(format!(
                "{num_qubits} qubits outside 1..={MAX_QUBITS}"
            )));
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
            label: label.into(),
        })
    }

    pub fn from_gates(
        num_qubits: usize,
        label: impl Into<String>,
        gates: Vec<Gate<T>>,
    ) -> Result<Self> {
        let mut c = Self::new(num_qubits, label)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    /// Appends a gate after checking its qubits and angle.
    pub fn push(&mut self, gate: Gate<T>) -> Result<&mut Self> {
        let qs = gate.qubits();
        if let Some(&bad) = qs.iter().find(|&&q| q >= self.num_qubits) {
            return Err(Error::MalformedCircuit(format!(
                "{} acts on qubit {bad} of a {}-qubit circuit",
                gate.name(),
                self.num_qubits
            )));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::MalformedCircuit(format!(
                "{} needs two distinct qubits",
                gate.name()
            )));
        }
        if gate.angle().is_some_and(|a| !a.is_finite()) {
            return Err(Error::MalformedCircuit(format!(
                "{} has a non-finite angle",
                gate.name()
            )));
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate<T>>) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    /// Appends another circuit with its qubit `i` mapped to `map[i]`.
    pub fn append_mapped(&mut self, other: &Circuit<T>, map: &[usize]) -> Result<&mut Self> {
        if map.len() != other.num_qubits {
            return Err(Error::MalformedCircuit(format!(
                "qubit map of length {} for a {}-qubit circuit",
                map.len(),
                other.num_qubits
            )));
        }
        for g in &other.gates {
            let remapped = match *g {
                Gate::Rx(a, q) => Gate::Rx(a, map[q]),
                Gate::Ry(a, q) => Gate::Ry(a, map[q]),
                Gate::Rz(a, q) => Gate::Rz(a, map[q]),
                Gate::H(q) => Gate::H(map[q]),
                Gate::S(q) => Gate::S(map[q]),
                Gate::Sdg(q) => Gate::Sdg(map[q]),
                Gate::Rzz(a, p, q) => Gate::Rzz(a, map[p], map[q]),
                Gate::Barrier => Gate::Barrier,
            };
            self.push(remapped)?;
        }
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn count_rzz(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Rzz(..)))
            .count()
    }
}

/// Replaces every `RZZ(φ)` by `RZZ(φ + delta_phi)`.
pub fn perturb_rzz<T: Real>(c: &Circuit<T>, delta_phi: T) -> Circuit<T> {
    let gates = c
        .gates
        .iter()
        .map(|g| match *g {
            Gate::Rzz(a, p, q) => Gate::Rzz(a + delta_phi, p, q),
            other => other,
        })
        .collect();
    Circuit {
        num_qubits: c.num_qubits,
        gates,
        label: c.label.clone(),
    }
}

/// Full register unitary, later gates to the left.
pub fn circuit_unitary<T: Real>(c: &Circuit<T>) -> Result<Matrix<T>> {
    let mut u = Matrix::identity(1 << c.num_qubits);
    for g in &c.gates {
        if let Some(local) = g.local_matrix() {
            u = embed(&local, &g.qubits(), c.num_qubits)?.matmul(&u)?;
        }
    }
    Ok(u)
}

/// Evolves a register state through the circuit, adding gate noise when given.
pub fn simulate<T: Real>(
    c: &Circuit<T>,
    rho: &DensityMatrix<T>,
    noise: Option<&NoiseModel<T>>,
) -> Result<DensityMatrix<T>> {
    Ok(DensityMatrix::from_trusted(simulate_operator(
        c,
        rho.matrix(),
        noise,
    )?))
}

/// Same as [`simulate`] for an arbitrary operator; the map is linear, which the
/// transfer-matrix code relies on.
pub fn simulate_operator<T: Real>(
    c: &Circuit<T>,
    op: &Matrix<T>,
    noise: Option<&NoiseModel<T>>,
) -> Result<Matrix<T>> {
    let dim = 1usize << c.num_qubits;
    if op.rows() != dim || op.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on a {}-qubit circuit",
            op.rows(),
            op.cols(),
            c.num_qubits
        )));
    }
    let mut m = op.clone();
    for g in &c.gates {
        let Some(local) = g.local_matrix() else {
            continue;
        };
        let qs = g.qubits();
        m = m.conjugate_by(&embed(&local, &qs, c.num_qubits)?)?;
        if let Some(nm) = noise {
            m = nm.apply_after_gate(&m, &qs, c.num_qubits)?;
        }
    }
    Ok(m)
}

/// Energy of every qubit under `−Z` after running the circuit on `|0…0⟩`.
pub fn qubit_energies<T: Real>(c: &Circuit<T>, noise: Option<&NoiseModel<T>>) -> Result<Vec<T>> {
    let out = simulate(c, &PureState::zero(c.num_qubits)?.to_density(), noise)?;
    let h = Hamiltonian::default();
    (0..c.num_qubits)
        .map(|q| energy(&out.qubit_marginal(q)?, &h))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::pauli::{pauli_z, swap};
    use crate::qmath::{dist_up_to_global_phase, herm_expm, kron};
    use crate::scalar::clit;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::<f64>::new(3, "empty").unwrap();
        assert_eq!(circuit_unitary(&c).unwrap(), Matrix::identity(8));
    }

    #[test]
    fn rzz_pi_table_value() {
        let c = Circuit::from_gates(2, "rzz", vec![Gate::Rzz(PI, 0, 1)]).unwrap();
        let u = circuit_unitary(&c).unwrap();
        let expected = Matrix::diag(&[clit(0., -1.), clit(0., 1.), clit(0., 1.), clit(0., -1.)]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn rzz_matches_zz_exponential() {
        let zz = kron(&pauli_z::<f64>(), &pauli_z());
        for phi in [0.3, -1.1, 2.9] {
            let local = Gate::Rzz(phi, 0, 1).local_matrix().unwrap();
            assert!(local.max_abs_diff(&herm_expm(&zz, clit(0., -phi / 2.)).unwrap()) < 1e-15);
        }
    }

    #[test]
    fn rotations_follow_half_angle_convention() {
        for (gate, p) in [
            (Gate::Rx(0.7, 0), crate::qmath::pauli::pauli_x::<f64>()),
            (Gate::Ry(0.7, 0), crate::qmath::pauli::pauli_y()),
            (Gate::Rz(0.7, 0), pauli_z()),
        ] {
            let oracle = herm_expm(&p, clit(0., -0.35)).unwrap();
            assert!(gate.local_matrix().unwrap().max_abs_diff(&oracle) < 1e-15);
        }
    }

    #[test]
    fn malformed_circuits_rejected() {
        let mut c = Circuit::<f64>::new(2, "bad").unwrap();
        assert!(c.push(Gate::H(2)).is_err());
        assert!(c.push(Gate::Rzz(0.1, 1, 1)).is_err());
        assert!(c.push(Gate::Rx(f64::NAN, 0)).is_err());
        assert!(Circuit::<f64>::new(6, "big").is_err());
        assert!(Circuit::<f64>::new(0, "none").is_err());
    }

    #[test]
    fn barrier_has_no_effect() {
        let a = Circuit::from_gates(
            2,
            "a",
            vec![Gate::H(0), Gate::Barrier, Gate::Rzz(0.4, 0, 1)],
        )
        .unwrap();
        let b = Circuit::from_gates(2, "b", vec![Gate::H(0), Gate::Rzz(0.4, 0, 1)]).unwrap();
        assert_eq!(circuit_unitary(&a).unwrap(), circuit_unitary(&b).unwrap());
    }

    #[test]
    fn perturbation_examples() {
        let c = compile_udme_native::<f64>(FRAC_PI_4);
        assert_eq!(perturb_rzz(&c, 0.0), c);
        assert_eq!(
            perturb_rzz(&perturb_rzz(&c, 0.13), -0.13).gates().len(),
            c.gates().len()
        );
        let back = perturb_rzz(&perturb_rzz(&c, 0.125), -0.125);
        assert_eq!(back, c);
        let dist_after_shift = |c: &Circuit<f64>| {
            let shifted = perturb_rzz(c, PI);
            dist_up_to_global_phase(
                &circuit_unitary(&shifted).unwrap(),
                &circuit_unitary(c).unwrap(),
            )
            .unwrap()
        };
        // a π shift multiplies each RZZ by −iZZ; a single RZZ is no longer equivalent
        assert!(dist_after_shift(&compile_cz()) > 0.5);
        // the three frames of the partial swap pick up XX·YY·ZZ = −I, which is a global phase
        assert!(dist_after_shift(&c) < 1e-10);
    }

    #[test]
    fn swap_native_moves_excitation() {
        let c = compile_swap_native::<f64>();
        let u = circuit_unitary(&c).unwrap();
        assert!(dist_up_to_global_phase(&u, &swap()).unwrap() < 1e-10);
        let out = simulate(&c, &PureState::basis(2, 1).unwrap().to_density(), None).unwrap();
        assert!((out.matrix()[(2, 2)].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noise_lowers_purity() {
        let c = compile_udme_native::<f64>(FRAC_PI_4);
        let rho = PureState::basis(2, 1).unwrap().to_density();
        let clean = simulate(&c, &rho, None).unwrap();
        let noisy = simulate(
            &c,
            &rho,
            Some(&NoiseModel::depolarizing(0.001, 0.02).unwrap()),
        )
        .unwrap();
        assert!(noisy.purity() < clean.purity() - 1e-3);
        assert!((noisy.matrix().trace().re - 1.0).abs() < 1e-12);
    }
}
