//! Stark-induced ZZ rate of two driven transmons.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Coupling, anharmonicities, drive amplitudes, detunings and phases, all in
/// consistent angular-frequency units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizzleParams<T: Real> {
    pub coupling: T,
    pub anharmonicity: [T; 2],
    pub drive_amplitude: [T; 2],
    /// Detuning of each qubit from the drive.
    pub drive_detuning: [T; 2],
    pub drive_phase: [T; 2],
    /// Qubit-qubit detuning.
    pub qubit_detuning: T,
}

fn nonzero<T: Real>(name: &str, x: T) -> Result<T> {
    if x == T::zero() || !x.is_finite() {
        return Err(Error::Singular(format!("{name} vanishes")));
    }
    Ok(x)
}

/// Static rate `−2J²(α₀+α₁) / ((Δ+α₀)(α₁−Δ))`.
pub fn static_zz_rate<T: Real>(p: &SizzleParams<T>) -> Result<T> {
    let [a0, a1] = p.anharmonicity;
    let d = p.qubit_detuning;
    let den = nonzero("Δ+α₀", d + a0)? * nonzero("α₁−Δ", a1 - d)?;
    Ok(-(p.coupling * p.coupling * (a0 + a1)) * lit(2.0) / den)
}

/// Static rate plus the drive term `2Jα₀α₁Ω₀Ω₁cos(φ₀−φ₁) / (Δ₀Δ₁(Δ₀+α₀)(Δ₁+α₁))`.
pub fn sizzle_zz_rate<T: Real>(p: &SizzleParams<T>) -> Result<T> {
    let [a0, a1] = p.anharmonicity;
    let [o0, o1] = p.drive_amplitude;
    let [d0, d1] = p.drive_detuning;
    let den = nonzero("Δ₀d", d0)?
        * nonzero("Δ₁d", d1)?
        * nonzero("Δ₀d+α₀", d0 + a0)?
        * nonzero("Δ₁d+α₁", d1 + a1)?;
    let drive =
        p.coupling * a0 * a1 * o0 * o1 * (p.drive_phase[0] - p.drive_phase[1]).cos() * lit(2.0)
            / den;
    Ok(static_zz_rate(p)? + drive)
}
