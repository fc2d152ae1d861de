//! Register states, the cooling Hamiltonian and exact imaginary-time evolution.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::qmath::pauli::{pauli_x, pauli_y, pauli_z};
use crate::qmath::{
    checked_hermitian, eigh, eigvalsh, embed, kron, qubit_count, Matrix, MAX_QUBITS,
};
use crate::scalar::{lit, Real};

/// Normalized state vector over at most five qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    amps: Vec<Complex<T>>,
}

impl<T: Real> PureState<T> {
    /// Accepts a vector whose norm is already 1 within tolerance.
    pub fn new(amps: Vec<Complex<T>>) -> Result<Self> {
        qubit_count(amps.len())?;
        let norm = norm2(&amps);
        if !((norm - T::one()).abs() <= T::validation_tol()) {
            return Err(Error::InvalidState(format!("norm {norm} differs from 1")));
        }
        Ok(Self::from_unnormalized(amps).expect("nonzero norm"))
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn from_unnormalized(amps: Vec<Complex<T>>) -> Result<Self> {
        qubit_count(amps.len())?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm = norm2(&amps);
        if !(norm > T::zero()) {
            return Err(Error::Degenerate("zero vector cannot be normalized".into()));
        }
        Ok(Self {
            amps: amps.into_iter().map(|z| z / norm).collect(),
        })
    }

    /// Computational basis state `|index⟩` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || index >= 1 << n {
            return Err(invalid(
                "index",
                format!("|{index}⟩ does not exist on {n} qubits"),
            ));
        }
        let mut amps = vec![Complex::zero(); 1 << n];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { amps })
    }

    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn num_qubits(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        same_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|ψ⟩⟨ψ|` as a matrix.
    pub fn projector_matrix(&self) -> Matrix<T> {
        Matrix::outer(&self.amps, &self.amps)
    }

    pub fn to_density(&self) -> DensityMatrix<T> {
        DensityMatrix::from_trusted(self.projector_matrix())
    }

    /// `u|ψ⟩`, renormalized to absorb rounding.
    pub fn evolve(&self, u: &Matrix<T>) -> Result<Self> {
        Self::from_unnormalized(u.apply(&self.amps)?)
    }

    /// Multiplies by the phase that makes the first non-negligible amplitude real and positive.
    pub fn canonical_phase(&self) -> Self {
        let lead = self
            .amps
            .iter()
            .copied()
            .find(|z| z.norm() > lit(1e-8))
            .unwrap_or(Complex::new(T::one(), T::zero()));
        let phase = lead.conj() / lead.norm();
        Self {
            amps: self.amps.iter().map(|&z| z * phase).collect(),
        }
    }
}

fn norm2<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!("dimension {a} vs {b}")));
    }
    Ok(())
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    m: Matrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, trace and positivity, then stores the symmetrized matrix.
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                m.rows(),
                m.cols()
            )));
        }
        qubit_count(m.rows())?;
        if !m.is_finite() {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let tol = T::state_tol();
        let herm = m.hermiticity_defect();
        if !(herm <= tol) {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {herm:e})"
            )));
        }
        let tr = m.trace();
        if !((tr.re - T::one()).abs() <= tol && tr.im.abs() <= tol) {
            return Err(Error::InvalidState(format!(
                "trace {} + {}i is not 1",
                tr.re, tr.im
            )));
        }
        let m = m.hermitian_part();
        let lowest = eigvalsh(&m)[0];
        if lowest < -(tol * lit(10.0)) {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { m })
    }

    /// For outputs of maps that are CPTP by construction; only symmetrizes.
    pub(crate) fn from_trusted(m: Matrix<T>) -> Self {
        Self {
            m: m.hermitian_part(),
        }
    }

    /// `I / 2ⁿ`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(invalid("n", format!("{n} qubits unsupported")));
        }
        let d = 1usize << n;
        Ok(Self {
            m: Matrix::identity(d).scale_re(T::one() / lit(d as f64)),
        })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn num_qubits(&self) -> usize {
        self.m.rows().trailing_zeros() as usize
    }

    /// `Tr[ρ²]`.
    pub fn purity(&self) -> T {
        self.m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Vec<T> {
        eigvalsh(&self.m)
    }

    /// `u ρ u†`.
    pub fn evolve(&self, u: &Matrix<T>) -> Result<Self> {
        Ok(Self::from_trusted(self.m.conjugate_by(u)?))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.num_qubits() + other.num_qubits() > MAX_QUBITS {
            return Err(invalid("other", "joint register exceeds the qubit limit"));
        }
        Ok(Self {
            m: kron(&self.m, &other.m),
        })
    }

    /// Reduced state on the listed qubits.
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let part = crate::qmath::QubitPartition::qubits(self.num_qubits(), keep)?;
        Ok(Self::from_trusted(crate::qmath::partial_trace(
            &self.m, &part,
        )?))
    }

    /// Marginal of one qubit of the register.
    pub fn qubit_marginal(&self, q: usize) -> Result<Self> {
        if self.num_qubits() == 1 {
            if q != 0 {
                return Err(invalid("q", "single-qubit register has only qubit 0"));
            }
            return Ok(self.clone());
        }
        self.reduce(&[q])
    }

    pub fn cast<U: Real>(&self) -> DensityMatrix<U> {
        DensityMatrix { m: self.m.cast() }
    }
}

/// Hermitian cooling Hamiltonian; the default is `−Z` on one qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian<T: Real> {
    m: Matrix<T>,
}

impl<T: Real> Hamiltonian<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        qubit_count(m.rows())?;
        Ok(Self {
            m: checked_hermitian(&m)?,
        })
    }

    /// `−Σ_q Z_q` on `n` qubits, whose ground state is `|0…0⟩`.
    pub fn negative_z_sum(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(invalid("n", format!("{n} qubits unsupported")));
        }
        let mut m = Matrix::zeros(1 << n, 1 << n);
        for q in 0..n {
            m = &m - &embed(&pauli_z(), &[q], n)?;
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn num_qubits(&self) -> usize {
        self.m.rows().trailing_zeros() as usize
    }

    pub fn ground_energy(&self) -> T {
        eigvalsh(&self.m)[0]
    }
}

impl<T: Real> Default for Hamiltonian<T> {
    fn default() -> Self {
        Self { m: -&pauli_z() }
    }
}

/// Expectation values of the single-qubit Paulis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector<T: Real> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> BlochVector<T> {
    pub fn norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Anything with a density-matrix representation.
pub trait QuantumState<T: Real> {
    fn dim(&self) -> usize;
    fn density(&self) -> DensityMatrix<T>;
    /// `⟨a|ρ|a⟩` (for a pure `ρ = |b⟩⟨b|` this is `|⟨a|b⟩|²`).
    fn overlap_with(&self, a: &PureState<T>) -> Result<T>;
    /// Real part of `Tr[op ρ]`.
    fn expectation(&self, op: &Matrix<T>) -> Result<T>;

    fn bloch(&self) -> Result<BlochVector<T>> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "Bloch vector needs one qubit, got dimension {}",
                self.dim()
            )));
        }
        Ok(BlochVector {
            x: self.expectation(&pauli_x())?,
            y: self.expectation(&pauli_y())?,
            z: self.expectation(&pauli_z())?,
        })
    }
}

impl<T: Real> QuantumState<T> for PureState<T> {
    fn dim(&self) -> usize {
        self.amps.len()
    }

    fn density(&self) -> DensityMatrix<T> {
        self.to_density()
    }

    fn overlap_with(&self, a: &PureState<T>) -> Result<T> {
        Ok(a.inner(self)?.norm_sqr())
    }

    fn expectation(&self, op: &Matrix<T>) -> Result<T> {
        let applied = op.apply(&self.amps).map_err(|_| dim_err(op, self.dim()))?;
        Ok(self
            .amps
            .iter()
            .zip(&applied)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex<T>>()
            .re)
    }
}

impl<T: Real> QuantumState<T> for DensityMatrix<T> {
    fn dim(&self) -> usize {
        self.m.rows()
    }

    fn density(&self) -> DensityMatrix<T> {
        self.clone()
    }

    fn overlap_with(&self, a: &PureState<T>) -> Result<T> {
        same_dim(self.dim(), a.dim())?;
        let ra = self.m.apply(a.amplitudes())?;
        Ok(a.amplitudes()
            .iter()
            .zip(&ra)
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex<T>>()
            .re)
    }

    fn expectation(&self, op: &Matrix<T>) -> Result<T> {
        if op.rows() != self.dim() || op.cols() != self.dim() {
            return Err(dim_err(op, self.dim()));
        }
        let mut acc = Complex::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc = acc + op[(i, j)] * self.m[(j, i)];
            }
        }
        Ok(acc.re)
    }
}

fn dim_err<T: Real>(op: &Matrix<T>, dim: usize) -> Error {
    Error::DimensionMismatch(format!(
        "{}x{} operator on dimension {dim}",
        op.rows(),
        op.cols()
    ))
}

/// `R_X(θ)|0⟩` with `R_X(θ) = exp(−iθX/2)`.
pub fn rx_init<T: Real>(theta: T) -> PureState<T> {
    let half = theta / lit(2.0);
    PureState {
        amps: vec![
            Complex::new(half.cos(), T::zero()),
            Complex::new(T::zero(), -half.sin()),
        ],
    }
}

/// Single-qubit state with ground-state fidelity `f0` under `−Z`, as `R_X(2 arccos √f0)|0⟩`.
pub fn with_ground_fidelity<T: Real>(f0: T) -> Result<PureState<T>> {
    if !(T::zero()..=T::one()).contains(&f0) {
        return Err(invalid("f0", format!("{f0} is not in [0, 1]")));
    }
    Ok(rx_init(f0.sqrt().acos() * lit(2.0)))
}

/// `Tr[h ρ]`.
pub fn energy<T: Real, S: QuantumState<T> + ?Sized>(state: &S, h: &Hamiltonian<T>) -> Result<T> {
    state.expectation(h.matrix())
}

/// Energy variance `⟨h²⟩ − ⟨h⟩²`.
pub fn energy_variance<T: Real, S: QuantumState<T> + ?Sized>(
    state: &S,
    h: &Hamiltonian<T>,
) -> Result<T> {
    let e = energy(state, h)?;
    let h2 = h.matrix().matmul(h.matrix())?;
    Ok((state.expectation(&h2)? - e * e).max(T::zero()))
}

/// Fidelity of a state with a pure reference, clamped to `[0, 1]`.
pub fn fidelity<T: Real, S: QuantumState<T> + ?Sized>(
    reference: &PureState<T>,
    state: &S,
) -> Result<T> {
    Ok(state.overlap_with(reference)?.max(T::zero()).min(T::one()))
}

/// `p·I/d + (1 − p)|ψ⟩⟨ψ|`.
pub fn pseudo_pure<T: Real>(p: T, psi: &PureState<T>) -> Result<DensityMatrix<T>> {
    if !(T::zero()..=T::one()).contains(&p) {
        return Err(invalid("p", format!("{p} is not in [0, 1]")));
    }
    let d: T = lit(psi.dim() as f64);
    let m = &Matrix::identity(psi.dim()).scale_re(p / d)
        + &psi.projector_matrix().scale_re(T::one() - p);
    Ok(DensityMatrix::from_trusted(m))
}

/// `e^{−τh}|ψ⟩`, renormalized.
///
/// The exponent is shifted by the ground energy so the ground-space component
/// never decays; only the orthogonal part is damped.
pub fn ite_evolve<T: Real>(psi: &PureState<T>, tau: T, h: &Hamiltonian<T>) -> Result<PureState<T>> {
    if !(tau >= T::zero()) || !tau.is_finite() {
        return Err(invalid(
            "tau",
            format!("{tau} must be finite and nonnegative"),
        ));
    }
    same_dim(psi.dim(), h.dim())?;
    let e = eigh(h.matrix());
    let floor = e.values[0];
    let propagator = e.reconstruct(|l| Complex::new((-(tau * (l - floor))).exp(), T::zero()));
    let out = propagator.apply(psi.amplitudes())?;
    let norm = norm2(&out);
    if !(norm > T::eig_tiny().sqrt()) {
        return Err(Error::Degenerate(format!(
            "evolved norm {norm:e} underflowed; state is orthogonal to the ground space"
        )));
    }
    Ok(PureState {
        amps: out.into_iter().map(|z| z / norm).collect(),
    })
}

/// Excess energy `(1/F₀ − 1)e^{−4τ}` of single-qubit imaginary-time evolution under `−Z`.
pub fn excess_energy<T: Real>(f0: T, tau: T) -> Result<T> {
    if !(f0 > T::zero()) {
        return Err(Error::Degenerate(format!(
            "initial fidelity {f0} leaves no ground-state component"
        )));
    }
    if f0 > T::one() + T::validation_tol() {
        return Err(invalid("f0", format!("{f0} exceeds 1")));
    }
    if !(tau >= T::zero()) {
        return Err(invalid("tau", format!("{tau} is negative")));
    }
    Ok((T::one() / f0 - T::one()) * (-(tau * lit(4.0))).exp())
}

/// Energy `−1 + 2ε/(1 + ε)` for excess `ε`.
pub fn energy_from_excess<T: Real>(eps: T) -> T {
    -T::one() + eps * lit(2.0) / (T::one() + eps)
}

/// Ground-state fidelity `1/(1 + ε)` for excess `ε`.
pub fn fidelity_from_excess<T: Real>(eps: T) -> T {
    T::one() / (T::one() + eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::clit;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ket(a: (f64, f64), b: (f64, f64)) -> PureState<f64> {
        PureState::new(vec![clit(a.0, a.1), clit(b.0, b.1)]).unwrap()
    }

    #[test]
    fn rx_init_examples() {
        let zero = PureState::<f64>::zero(1).unwrap();
        assert_eq!(rx_init(0.0), zero);
        let one = PureState::<f64>::basis(1, 1).unwrap();
        assert!((fidelity(&one, &rx_init(PI)).unwrap() - 1.0).abs() < 1e-15);
        let b = rx_init(FRAC_PI_2).bloch().unwrap();
        // 2x2 oracle: R_X(π/2)|0⟩ = (|0⟩ − i|1⟩)/√2 points along −y
        assert!(b.x.abs() < 1e-15 && (b.y + 1.0).abs() < 1e-15 && b.z.abs() < 1e-15);
    }

    #[test]
    fn energies_under_default_hamiltonian() {
        let h = Hamiltonian::<f64>::default();
        assert_eq!(energy(&PureState::zero(1).unwrap(), &h).unwrap(), -1.0);
        assert_eq!(energy(&PureState::basis(1, 1).unwrap(), &h).unwrap(), 1.0);
        for k in 0..=20 {
            let theta = PI * k as f64 / 20.0;
            let e = energy(&rx_init(theta), &h).unwrap();
            assert!((e + theta.cos()).abs() < 1e-14);
            // E₀ = 1 − 2F₀
            let f = fidelity(&PureState::zero(1).unwrap(), &rx_init(theta)).unwrap();
            assert!((e - (1.0 - 2.0 * f)).abs() < 1e-14);
        }
    }

    #[test]
    fn energy_dimension_mismatch() {
        let h = Hamiltonian::<f64>::negative_z_sum(2).unwrap();
        assert!(matches!(
            energy(&rx_init(0.3), &h),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn fidelity_examples() {
        let zero = PureState::<f64>::zero(1).unwrap();
        let one = PureState::<f64>::basis(1, 1).unwrap();
        assert_eq!(fidelity(&zero, &zero).unwrap(), 1.0);
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        for theta in [0.1, 0.7, 2.0, 3.0] {
            let f = fidelity(&zero, &rx_init(theta)).unwrap();
            assert!((f - (theta / 2.0).cos().powi(2)).abs() < 1e-15);
            let fm = fidelity(&zero, &rx_init(theta).to_density()).unwrap();
            assert!((f - fm).abs() < 1e-15);
        }
    }

    #[test]
    fn pseudo_pure_examples() {
        let psi = ket((0.6, 0.0), (0.0, 0.8));
        assert!(
            pseudo_pure(0.0, &psi)
                .unwrap()
                .matrix()
                .max_abs_diff(&psi.projector_matrix())
                < 1e-16
        );
        let mixed = pseudo_pure(1.0, &psi).unwrap();
        assert!(
            mixed
                .matrix()
                .max_abs_diff(&Matrix::identity(2).scale_re(0.5))
                < 1e-16
        );
        let half = pseudo_pure(0.5, &PureState::zero(1).unwrap()).unwrap();
        assert!(
            half.matrix()
                .max_abs_diff(&Matrix::diag(&[clit(0.75, 0.), clit(0.25, 0.)]))
                < 1e-16
        );
        for p in [0.0, 0.2, 0.5, 1.0] {
            let purity = pseudo_pure(p, &psi).unwrap().purity();
            assert!((purity - (1.0 - p + p * p / 2.0)).abs() < 1e-15);
        }
        assert!(pseudo_pure(1.5, &psi).is_err());
        assert!(pseudo_pure(-0.1, &psi).is_err());
    }

    #[test]
    fn ite_examples() {
        let h = Hamiltonian::<f64>::default();
        let psi = rx_init(1.1);
        assert!(
            ite_evolve(&psi, 0.0, &h)
                .unwrap()
                .inner(&psi)
                .unwrap()
                .norm()
                > 1.0 - 1e-15
        );
        let zero = PureState::zero(1).unwrap();
        assert!(fidelity(&zero, &ite_evolve(&zero, 37.0, &h).unwrap()).unwrap() > 1.0 - 1e-15);
        let f = fidelity(&zero, &ite_evolve(&rx_init(FRAC_PI_2), 2.0, &h).unwrap()).unwrap();
        assert!((f - 1.0 / (1.0 + (-8.0f64).exp())).abs() < 1e-12);
        assert!((f - 0.999665).abs() < 1e-6);
    }

    #[test]
    fn ite_matches_closed_form_amplitudes() {
        let h = Hamiltonian::<f64>::default();
        let psi = ket((0.6, 0.0), (0.0, 0.8));
        let tau = 0.3;
        let out = ite_evolve(&psi, tau, &h).unwrap();
        let (a, b) = (0.6 * tau.exp(), 0.8 * (-tau).exp());
        let n = (a * a + b * b).sqrt();
        assert!((out.amplitudes()[0] - clit(a / n, 0.)).norm() < 1e-15);
        assert!((out.amplitudes()[1] - clit(0., b / n)).norm() < 1e-15);
    }

    #[test]
    fn ite_underflow_is_degenerate() {
        let h = Hamiltonian::<f64>::default();
        let one = PureState::basis(1, 1).unwrap();
        assert!(ite_evolve(&one, 1.0, &h).is_ok());
        assert!(matches!(
            ite_evolve(&one, 1e6, &h),
            Err(Error::Degenerate(_))
        ));
        assert!(ite_evolve(&one, -1.0, &h).is_err());
    }

    #[test]
    fn excess_energy_examples() {
        assert_eq!(excess_energy(1.0, 3.0).unwrap(), 0.0);
        assert_eq!(excess_energy(0.5, 0.0).unwrap(), 1.0);
        assert!((excess_energy(0.5, 0.25).unwrap() - (-1.0f64).exp()).abs() < 1e-16);
        assert!((excess_energy(0.5f64, 0.25).unwrap() - 0.367879).abs() < 1e-6);
        assert!(matches!(excess_energy(0.0, 1.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn excess_energy_agrees_with_evolution() {
        let h = Hamiltonian::<f64>::default();
        let zero = PureState::zero(1).unwrap();
        for theta in [0.3, 1.0, 2.0, 3.0] {
            let psi = rx_init(theta);
            let f0 = fidelity(&zero, &psi).unwrap();
            for tau in [0.0, 0.1, 0.5, 1.0, 3.0] {
                let eps = excess_energy(f0, tau).unwrap();
                let e = energy(&ite_evolve(&psi, tau, &h).unwrap(), &h).unwrap();
                assert!((energy_from_excess(eps) - e).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(Matrix::<f64>::diag(&[clit(1.2, 0.), clit(-0.2, 0.)])).is_err());
        assert!(DensityMatrix::new(Matrix::<f64>::diag(&[clit(0.7, 0.), clit(0.7, 0.)])).is_err());
        let mut m = Matrix::<f64>::identity(2).scale_re(0.5);
        m[(0, 1)] = clit(0.1, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_err());
        m[(1, 0)] = clit(0.1, 0.0);
        assert!(DensityMatrix::new(m).is_ok());
        assert!(DensityMatrix::new(Matrix::<f64>::identity(3).scale_re(1.0 / 3.0)).is_err());
    }

    #[test]
    fn bloch_norms() {
        let psi = ket((0.6, 0.0), (0.0, 0.8));
        assert!((psi.bloch().unwrap().norm() - 1.0).abs() < 1e-9);
        let r = pseudo_pure(0.3, &psi).unwrap().bloch().unwrap().norm();
        assert!((r - 0.7).abs() < 1e-14);
    }

    #[test]
    fn two_qubit_hamiltonian() {
        let h = Hamiltonian::<f64>::negative_z_sum(2).unwrap();
        assert_eq!(h.ground_energy(), -2.0);
        assert_eq!(energy(&PureState::zero(2).unwrap(), &h).unwrap(), -2.0);
        assert_eq!(energy(&PureState::basis(2, 3).unwrap(), &h).unwrap(), 2.0);
        assert_eq!(energy(&PureState::basis(2, 1).unwrap(), &h).unwrap(), 0.0);
    }

    #[test]
    fn single_precision_path() {
        let h = Hamiltonian::<f32>::default();
        let e = energy(&rx_init(1.0f32), &h).unwrap();
        assert!((e + 1.0f32.cos()).abs() < 1e-6);
    }
}
