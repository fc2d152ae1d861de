//! The three cooling circuits: one step with one or two partial swaps, and two
//! recursion steps with single partial swaps.
//!
//! Each instruction copy is rotated by `RZ(−2φ)` before its partial swaps
//! instead of rotating the target before and after the reflection. The two
//! forms agree because `e^{iφH} e^{iφψ} e^{−iφH} = e^{iφ·ψ_rot}` with
//! `ψ_rot = e^{iφH} ψ e^{−iφH}`, so no final rotation is needed.

use super::{compile_udme_native, Circuit, Gate};
use crate::error::{invalid, Result};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableCircuit {
    /// One step, one partial swap, two qubits.
    A,
    /// One step, two half-angle partial swaps, three qubits.
    B,
    /// Two recursion steps, one partial swap each, four qubits.
    C,
}

impl TableCircuit {
    pub const ALL: [TableCircuit; 3] = [TableCircuit::A, TableCircuit::B, TableCircuit::C];

    pub fn num_qubits(self) -> usize {
        match self {
            TableCircuit::A => 2,
            TableCircuit::B => 3,
            TableCircuit::C => 4,
        }
    }

    /// Qubit whose energy is the cooling result.
    pub fn target(self) -> usize {
        match self {
            TableCircuit::A => 0,
            TableCircuit::B | TableCircuit::C => 1,
        }
    }

    /// Recursion steps and partial swaps per step.
    pub fn shape(self) -> (usize, usize) {
        match self {
            TableCircuit::A => (1, 1),
            TableCircuit::B => (1, 2),
            TableCircuit::C => (2, 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TableCircuit::A => "A",
            TableCircuit::B => "B",
            TableCircuit::C => "C",
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(TableCircuit::A),
            "B" | "b" => Ok(TableCircuit::B),
            "C" | "c" => Ok(TableCircuit::C),
            other => Err(invalid("which", format!("unknown circuit `{other}`"))),
        }
    }
}

fn partial_swap<T: Real>(
    c: &mut Circuit<T>,
    phi: T,
    instruction: usize,
    data: usize,
) -> Result<()> {
    c.append_mapped(&compile_udme_native(phi), &[instruction, data])?;
    Ok(())
}

/// Builds the gate sequence, including `RX(θ)` preparation of every qubit.
///
/// `phi` is the total duration of each step; circuit B splits it over its two
/// partial swaps.
pub fn build_circuit<T: Real>(which: TableCircuit, theta: T, phi: T) -> Result<Circuit<T>> {
    if !theta.is_finite() || !phi.is_finite() {
        return Err(invalid("theta", "angles must be finite"));
    }
    let n = which.num_qubits();
    let mut c = Circuit::new(n, format!("circuit-{}", which.label()))?;
    c.extend((0..n).map(|q| Gate::Rx(theta, q)))?;
    let rotate = -(phi * lit(2.0));
    match which {
        TableCircuit::A => {
            c.push(Gate::Rz(rotate, 1))?.push(Gate::Barrier)?;
            partial_swap(&mut c, phi, 1, 0)?;
        }
        TableCircuit::B => {
            c.push(Gate::Rz(rotate, 0))?
                .push(Gate::Rz(rotate, 2))?
                .push(Gate::Barrier)?;
            let half = phi / lit(2.0);
            partial_swap(&mut c, half, 0, 1)?;
            partial_swap(&mut c, half, 2, 1)?;
        }
        TableCircuit::C => {
            c.push(Gate::Rz(rotate, 0))?
                .push(Gate::Rz(rotate, 3))?
                .push(Gate::Barrier)?;
            partial_swap(&mut c, phi, 0, 1)?;
            partial_swap(&mut c, phi, 3, 2)?;
            c.push(Gate::Barrier)?.push(Gate::Rz(rotate, 2))?;
            partial_swap(&mut c, phi, 2, 1)?;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::qubit_energies;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn qubit_counts() {
        for w in TableCircuit::ALL {
            assert_eq!(
                build_circuit(w, 0.3, FRAC_PI_4).unwrap().num_qubits(),
                w.num_qubits()
            );
        }
        assert_eq!(TableCircuit::C.num_qubits(), 4);
        assert!(TableCircuit::from_label("D").is_err());
    }

    #[test]
    fn ground_input_stays_ground() {
        for w in TableCircuit::ALL {
            let c = build_circuit(w, 0.0, FRAC_PI_4).unwrap();
            let e = qubit_energies(&c, None).unwrap()[w.target()];
            assert!((e + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn small_angles_cool() {
        for w in TableCircuit::ALL {
            for theta in [0.3, 0.8, 1.4] {
                let c = build_circuit(w, theta, FRAC_PI_4).unwrap();
                let e = qubit_energies(&c, None).unwrap()[w.target()];
                assert!(e < -f64::cos(theta), "{w:?} θ={theta}: {e}");
            }
        }
    }
}
