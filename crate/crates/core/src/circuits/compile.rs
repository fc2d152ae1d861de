//! Native-gate constructions for the partial SWAP and the standard two-qubit gates.

use super::{Circuit, Gate};
use crate::scalar::{lit, Real};

fn two_qubit<T: Real>(label: &str, gates: Vec<Gate<T>>) -> Circuit<T> {
    Circuit::from_gates(2, label, gates).expect("fixed two-qubit construction")
}

/// `exp(−iφ·SWAP)` up to global phase as three `RZZ(φ)` in the Z, Y and X frames.
///
/// `RX(π/2)` before and `RX(−π/2)` after turns `ZZ` into `YY`; the `RY` pair
/// turns it into `XX`. The three terms commute, so the product is exact.
pub fn compile_udme_native<T: Real>(phi: T) -> Circuit<T> {
    let q = T::FRAC_PI_2();
    two_qubit(
        "udme-native",
        vec![
            Gate::Rzz(phi, 0, 1),
            Gate::Rx(q, 0),
            Gate::Rx(q, 1),
            Gate::Rzz(phi, 0, 1),
            Gate::Rx(-q, 0),
            Gate::Rx(-q, 1),
            Gate::Ry(q, 0),
            Gate::Ry(q, 1),
            Gate::Rzz(phi, 0, 1),
            Gate::Ry(-q, 0),
            Gate::Ry(-q, 1),
        ],
    )
}

/// Same target as [`compile_udme_native`] with `S†, H` / `H, S` and `H` / `H` frame changes.
pub fn compile_udme_hs<T: Real>(phi: T) -> Circuit<T> {
    two_qubit(
        "udme-hs",
        vec![
            Gate::Rzz(phi, 0, 1),
            Gate::Sdg(0),
            Gate::Sdg(1),
            Gate::H(0),
            Gate::H(1),
            Gate::Rzz(phi, 0, 1),
            Gate::H(0),
            Gate::H(1),
            Gate::S(0),
            Gate::S(1),
            Gate::H(0),
            Gate::H(1),
            Gate::Rzz(phi, 0, 1),
            Gate::H(0),
            Gate::H(1),
        ],
    )
}

fn cz_gates<T: Real>(a: usize, b: usize) -> Vec<Gate<T>> {
    let pi = T::PI();
    vec![
        Gate::Rzz(pi / lit(2.0), a, b),
        Gate::Rz(pi, a),
        Gate::S(a),
        Gate::Rz(pi, b),
        Gate::S(b),
    ]
}

fn cnot_gates<T: Real>(control: usize, target: usize) -> Vec<Gate<T>> {
    let mut g = vec![Gate::H(target)];
    g.extend(cz_gates(control, target));
    g.push(Gate::H(target));
    g
}

/// Controlled-Z from `RZZ(π/2)` followed by `RZ(π)·S` on each qubit.
pub fn compile_cz<T: Real>() -> Circuit<T> {
    two_qubit("cz", cz_gates(0, 1))
}

/// CNOT with control 0 and target 1, as `H` on the target around a CZ.
pub fn compile_cnot<T: Real>() -> Circuit<T> {
    two_qubit("cnot", cnot_gates(0, 1))
}

/// SWAP as three alternating CNOTs.
pub fn compile_swap3<T: Real>() -> Circuit<T> {
    let mut g = cnot_gates(0, 1);
    g.extend(cnot_gates(1, 0));
    g.extend(cnot_gates(0, 1));
    two_qubit("swap3", g)
}

/// SWAP as the full partial swap, `compile_udme_native(π/2)`.
pub fn compile_swap_native<T: Real>() -> Circuit<T> {
    let mut c = compile_udme_native(T::FRAC_PI_2());
    c.label = "swap-native".into();
    c
}
