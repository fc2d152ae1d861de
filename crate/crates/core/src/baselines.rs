//! Reference protocols: thermal qubits, partner-pairing compression with bath
//! reset, and the two-copy interferential mixedness reduction.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::qmath::pauli::{hadamard, pauli_z};
use crate::qmath::{eigh, embed, Matrix};
use crate::scalar::{lit, Real};
use crate::states::{DensityMatrix, PureState};

/// A qubit `½ diag(1 + ε, 1 − ε)` with polarization `ε ∈ [−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizedQubit<T: Real>(T);

impl<T: Real> PolarizedQubit<T> {
    pub fn new(eps: T) -> Result<Self> {
        if !(eps.abs() <= T::one()) {
            return Err(invalid(
                "eps",
                format!("polarization {eps} is outside [−1, 1]"),
            ));
        }
        Ok(Self(eps))
    }

    pub fn eps(self) -> T {
        self.0
    }

    pub fn density(self) -> DensityMatrix<T> {
        thermal_qubit(self.0).expect("polarization was validated")
    }
}

/// `(1 − x)|ψ⟩⟨ψ| + x·I/2` for a single qubit, `x ∈ [0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixednessState<T: Real> {
    x: T,
    psi: PureState<T>,
}

impl<T: Real> MixednessState<T> {
    pub fn new(x: T, psi: PureState<T>) -> Result<Self> {
        if !(x >= T::zero() && x < T::one()) {
            return Err(invalid("x", format!("mixedness {x} is outside [0, 1)")));
        }
        if psi.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "pure part has dimension {}",
                psi.dim()
            )));
        }
        Ok(Self { x, psi })
    }

    /// Reads `x` off the smaller eigenvalue and `ψ` off the dominant eigenvector.
    pub fn from_density(rho: &DensityMatrix<T>) -> Result<Self> {
        single_qubit(rho)?;
        let spec = eigh(rho.matrix());
        let two = T::one() + T::one();
        Self::new(
            (two * spec.values[0]).max(T::zero()),
            PureState::from_unnormalized(spec.vector(1))?,
        )
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn psi(&self) -> &PureState<T> {
        &self.psi
    }

    pub fn density(&self) -> DensityMatrix<T> {
        let half: T = lit(0.5);
        let m = self.psi.projector_matrix().scale_re(T::one() - self.x)
            + Matrix::identity(2).scale_re(self.x * half);
        DensityMatrix::new(m).expect("convex mixture of states")
    }
}

/// `½ diag(1 + ε, 1 − ε)`.
pub fn thermal_qubit<T: Real>(eps: T) -> Result<DensityMatrix<T>> {
    if !(eps.abs() <= T::one()) {
        return Err(invalid(
            "eps",
            format!("polarization {eps} is outside [−1, 1]"),
        ));
    }
    let half: T = lit(0.5);
    let d = |v: T| Complex::new(v * half, T::zero());
    DensityMatrix::new(Matrix::diag(&[d(T::one() + eps), d(T::one() - eps)]))
}

/// `Tr[Z_q ρ]`.
pub fn polarization<T: Real>(rho: &DensityMatrix<T>, q: usize) -> Result<T> {
    let z = embed(&pauli_z(), &[q], rho.num_qubits())?;
    Ok(z.matmul(rho.matrix())?.trace().re)
}

fn bit(index: usize, q: usize) -> usize {
    (index >> (2 - q)) & 1
}

fn set_bit(index: usize, q: usize, value: usize) -> usize {
    (index & !(1 << (2 - q))) | (value << (2 - q))
}

/// The compression circuit as a map on 3-bit basis labels, qubit 0 leftmost:
/// swap(0,2), swap(1,2), then CNOT 0→1, CNOT 0→2, Toffoli (1,2)→0, CNOT 0→1, CNOT 0→2.
fn ppa_permutation(mut i: usize) -> usize {
    let swap = |i: usize, a: usize, b: usize| set_bit(set_bit(i, a, bit(i, b)), b, bit(i, a));
    let cnot = |i: usize, c: usize, t: usize| set_bit(i, t, bit(i, t) ^ bit(i, c));
    i = swap(i, 0, 2);
    i = swap(i, 1, 2);
    i = cnot(cnot(i, 0, 1), 0, 2);
    i = set_bit(i, 0, bit(i, 0) ^ (bit(i, 1) & bit(i, 2)));
    cnot(cnot(i, 0, 1), 0, 2)
}

/// Unitary of one compression round on three qubits; the target is qubit 0.
pub fn ppa_unitary<T: Real>() -> Matrix<T> {
    let mut u = Matrix::zeros(8, 8);
    for i in 0..8 {
        u[(ppa_permutation(i), i)] = Complex::new(T::one(), T::zero());
    }
    u
}

/// Conjugates a three-qubit state by the compression circuit.
pub fn ppa_round<T: Real>(rho3: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    if rho3.num_qubits() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "compression acts on 3 qubits, got {}",
            rho3.num_qubits()
        )));
    }
    rho3.evolve(&ppa_unitary())
}

/// One heat-bath round: compress the product register, keep the target
/// marginal and re-thermalize the other two qubits at `eps_bath`.
pub fn hbac_step<T: Real>(
    reg: &[PolarizedQubit<T>],
    eps_bath: T,
) -> Result<Vec<PolarizedQubit<T>>> {
    if reg.len() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "register holds {} qubits, expected 3",
            reg.len()
        )));
    }
    let bath = PolarizedQubit::new(eps_bath)?;
    let product = reg[0]
        .density()
        .tensor(&reg[1].density())?
        .tensor(&reg[2].density())?;
    let target = polarization(&ppa_round(&product)?, 0)?;
    Ok(vec![
        PolarizedQubit::new(target.max(-T::one()).min(T::one()))?,
        bath,
        bath,
    ])
}

/// Closed-form outcome of one purification round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CemOutcome<T: Real> {
    pub x_next: T,
    pub p_success: T,
}

/// `x' = x(2 + x)/(4 − 2x + x²)` with success probability `1 − x/2 + x²/4`.
pub fn cem_round_closed<T: Real>(x: T) -> Result<CemOutcome<T>> {
    if !(x >= T::zero() && x < T::one()) {
        return Err(invalid("x", format!("mixedness {x} is outside [0, 1)")));
    }
    let two: T = lit(2.0);
    let four: T = lit(4.0);
    Ok(CemOutcome {
        x_next: x * (two + x) / (four - two * x + x * x),
        p_success: T::one() - x / two + x * x / four,
    })
}

/// Simulated purification round and its post-selection probability.
#[derive(Debug, Clone, PartialEq)]
pub struct CemSimulated<T: Real> {
    pub rho_next: DensityMatrix<T>,
    pub p_success: T,
}

fn single_qubit<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    if rho.num_qubits() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected one qubit, got {}",
            rho.num_qubits()
        )));
    }
    Ok(())
}

/// Runs ancilla ⊗ ρ ⊗ ρ through `(H ⊗ I)·CSWAP·(H ⊗ I)`, keeps the ancilla-`|0⟩`
/// branch and traces out the second copy.
pub fn cem_round_simulated<T: Real>(rho: &DensityMatrix<T>) -> Result<CemSimulated<T>> {
    single_qubit(rho)?;
    let ancilla = PureState::zero(1)?.to_density();
    let joint = ancilla.tensor(rho)?.tensor(rho)?;
    let h = embed(&hadamard(), &[0], 3)?;
    let mut cswap = Matrix::identity(8);
    for (a, b) in [(5, 6), (6, 5)] {
        cswap[(a, a)] = Complex::new(T::zero(), T::zero());
        cswap[(a, b)] = Complex::new(T::one(), T::zero());
    }
    let u = h.matmul(&cswap)?.matmul(&h)?;
    let out = joint.matrix().conjugate_by(&u)?;
    let mut block = Matrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            block[(i, j)] = out[(i, j)];
        }
    }
    let p = block.trace().re;
    if !(p > T::zero()) {
        return Err(Error::Degenerate(
            "post-selected branch has zero weight".into(),
        ));
    }
    let copies = DensityMatrix::new(block.scale_re(T::one() / p))?;
    Ok(CemSimulated {
        rho_next: copies.reduce(&[0])?,
        p_success: p,
    })
}
