//! Density-matrix exponentiation.
//!
//! The two-register layout is always instruction first, data second; the
//! instruction register is traced out. One step with angle `δ` applies
//! `exp(−iδ·SWAP)` and yields
//! `cos²δ·σ + sin²δ·ρ + i·cosδ·sinδ·[σ, ρ]`, which to first order is
//! `e^{−iδρ} σ e^{iδρ}`.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::qmath::{herm_expm, partial_trace, trace_distance, Matrix, QubitPartition, MAX_QUBITS};
use crate::scalar::{lit, Real};
use crate::states::{DensityMatrix, PureState};

/// Total conjugation time and Trotter depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DmeParams<T: Real> {
    t: T,
    m: usize,
}

impl<T: Real> DmeParams<T> {
    pub fn new(t: T, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m", "Trotter depth must be at least 1"));
        }
        if !t.is_finite() {
            return Err(invalid("t", "duration must be finite"));
        }
        Ok(Self { t, m })
    }

    pub fn duration(&self) -> T {
        self.t
    }

    pub fn depth(&self) -> usize {
        self.m
    }

    /// Angle of each of the `m` steps.
    pub fn step_angle(&self) -> T {
        self.t / lit(self.m as f64)
    }
}

/// `e^{it|ψ⟩⟨ψ|} = I + (e^{it} − 1)|ψ⟩⟨ψ|`.
pub fn reflector<T: Real>(psi: &PureState<T>, t: T) -> Matrix<T> {
    let factor = Complex::new(t.cos() - T::one(), t.sin());
    &Matrix::identity(psi.dim()) + &psi.projector_matrix().scale(factor)
}

/// SWAP of two equal registers of `n` qubits each, first register most significant.
pub fn register_swap<T: Real>(n: usize) -> Matrix<T> {
    let d = 1usize << n;
    let mut s = Matrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            s[(b * d + a, a * d + b)] = Complex::new(T::one(), T::zero());
        }
    }
    s
}

fn check_pair<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<usize> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "instruction dimension {} vs data dimension {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let n = rho.num_qubits();
    if 2 * n > MAX_QUBITS {
        return Err(invalid(
            "rho",
            format!("{n}-qubit registers exceed the joint qubit limit"),
        ));
    }
    Ok(n)
}

/// One exact step: `Tr_instr[U (ρ ⊗ σ) U†]` with `U = exp(−iδ·SWAP)`.
pub fn dme_step_exact<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    delta: T,
) -> Result<DensityMatrix<T>> {
    let n = check_pair(rho, sigma)?;
    let u = herm_expm(&register_swap::<T>(n), Complex::new(T::zero(), -delta))?;
    let joint = rho.tensor(sigma)?.evolve(&u)?;
    let keep: Vec<usize> = (n..2 * n).collect();
    let part = QubitPartition::qubits(2 * n, &keep)?;
    Ok(DensityMatrix::from_trusted(partial_trace(
        joint.matrix(),
        &part,
    )?))
}

/// The same step from its closed form `cos²δ·σ + sin²δ·ρ + i·cosδ·sinδ·[σ, ρ]`.
pub fn dme_step_closed_form<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    delta: T,
) -> Result<DensityMatrix<T>> {
    check_pair(rho, sigma)?;
    let (s, c) = delta.sin_cos();
    let comm = sigma.matrix().commutator(rho.matrix())?;
    let out = &(&sigma.matrix().scale_re(c * c) + &rho.matrix().scale_re(s * s))
        + &comm.scale(Complex::new(T::zero(), c * s));
    Ok(DensityMatrix::from_trusted(out))
}

/// Both marginals of one step, `(instruction_out, data_out)`, from the closed form.
///
/// The joint unitary commutes with SWAP, so the instruction marginal is the
/// data formula with the roles exchanged.
pub fn dme_step_pair<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    delta: T,
) -> Result<(DensityMatrix<T>, DensityMatrix<T>)> {
    Ok((
        dme_step_closed_form(sigma, rho, delta)?,
        dme_step_closed_form(rho, sigma, delta)?,
    ))
}

/// `m` exact steps of angle `t/m`, each consuming a fresh copy of `ρ`.
pub fn dme_trotter<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    params: DmeParams<T>,
) -> Result<DensityMatrix<T>> {
    let delta = params.step_angle();
    let mut data = sigma.clone();
    for _ in 0..params.depth() {
        data = dme_step_exact(rho, &data, delta)?;
    }
    Ok(data)
}

/// The ideal target `e^{−itρ} σ e^{itρ}`.
pub fn ideal_conjugation<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    t: T,
) -> Result<DensityMatrix<T>> {
    check_pair(rho, sigma)?;
    let u = herm_expm(rho.matrix(), Complex::new(T::zero(), -t))?;
    sigma.evolve(&u)
}

/// Trace distance between the Trotterized channel output and the ideal conjugation.
pub fn dme_error<T: Real>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    params: DmeParams<T>,
) -> Result<T> {
    let approx = dme_trotter(rho, sigma, params)?;
    let ideal = ideal_conjugation(rho, sigma, params.duration())?;
    trace_distance(approx.matrix(), ideal.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::pauli::swap;
    use crate::qmath::{herm_expm, kron};
    use crate::scalar::clit;
    use crate::states::rx_init;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn zero_state() -> DensityMatrix<f64> {
        PureState::zero(1).unwrap().to_density()
    }

    fn plus_state() -> DensityMatrix<f64> {
        let h = 0.5f64.sqrt();
        PureState::new(vec![clit(h, 0.), clit(h, 0.)])
            .unwrap()
            .to_density()
    }

    #[test]
    fn reflector_examples() {
        let psi = rx_init(0.9);
        assert!(reflector(&psi, 0.0).max_abs_diff(&Matrix::identity(2)) < 1e-16);
        let grover = &Matrix::identity(2) - &psi.projector_matrix().scale_re(2.0);
        assert!(reflector(&psi, PI).max_abs_diff(&grover) < 1e-15);
        let r = reflector(&PureState::zero(1).unwrap(), FRAC_PI_2);
        assert!(r.max_abs_diff(&Matrix::diag(&[clit(0., 1.), clit(1., 0.)])) < 1e-15);
        let oracle = herm_expm(&psi.projector_matrix(), clit(0., 0.77)).unwrap();
        assert!(reflector(&psi, 0.77).max_abs_diff(&oracle) < 1e-14);
        assert!(reflector(&psi, 0.77).unitarity_defect() < 1e-12);
    }

    #[test]
    fn exact_step_examples() {
        let rho = rx_init(0.4).to_density();
        let sigma = plus_state();
        assert!(
            dme_step_exact(&rho, &sigma, 0.0)
                .unwrap()
                .matrix()
                .max_abs_diff(sigma.matrix())
                < 1e-15
        );
        assert!(
            dme_step_exact(&rho, &sigma, FRAC_PI_2)
                .unwrap()
                .matrix()
                .max_abs_diff(rho.matrix())
                < 1e-15
        );
        for delta in [0.1, 0.9, 2.5] {
            let same = dme_step_exact(&sigma, &sigma, delta).unwrap();
            assert!(same.matrix().max_abs_diff(sigma.matrix()) < 1e-15);
        }
    }

    #[test]
    fn closed_form_pi_over_four() {
        let rho = zero_state();
        let sigma = plus_state();
        let out = dme_step_closed_form(&rho, &sigma, FRAC_PI_4).unwrap();
        // brute-force 4x4 oracle built without the helper
        let u = &Matrix::identity(4).scale_re(FRAC_PI_4.cos())
            + &swap::<f64>().scale(clit(0., -FRAC_PI_4.sin()));
        let joint = kron(rho.matrix(), sigma.matrix()).conjugate_by(&u).unwrap();
        let mut oracle = Matrix::<f64>::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                oracle[(i, j)] = joint[(i, j)] + joint[(2 + i, 2 + j)];
            }
        }
        assert!(out.matrix().max_abs_diff(&oracle) < 1e-15);
        let expected = &(sigma.matrix() + rho.matrix()).scale_re(0.5)
            + &sigma
                .matrix()
                .commutator(rho.matrix())
                .unwrap()
                .scale(clit(0., 0.5));
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn closed_form_is_first_order_conjugation() {
        let rho = rx_init(1.2).to_density();
        let sigma = plus_state();
        let first_order = |d: f64| {
            let lin = sigma.matrix()
                - &rho
                    .matrix()
                    .commutator(sigma.matrix())
                    .unwrap()
                    .scale(clit(0., d));
            dme_step_closed_form(&rho, &sigma, d)
                .unwrap()
                .matrix()
                .max_abs_diff(&lin)
        };
        let errs: Vec<f64> = [1e-2, 5e-3, 2.5e-3].into_iter().map(first_order).collect();
        // O(δ²): halving δ quarters the remainder
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
        }
    }

    #[test]
    fn pair_matches_partial_traces() {
        let rho = rx_init(0.4).to_density();
        let sigma = plus_state();
        let delta = 0.83;
        let u = herm_expm(&swap::<f64>(), clit(0., -delta)).unwrap();
        let joint = rho.tensor(&sigma).unwrap().evolve(&u).unwrap();
        let (instr, data) = dme_step_pair(&rho, &sigma, delta).unwrap();
        assert!(
            instr
                .matrix()
                .max_abs_diff(joint.reduce(&[0]).unwrap().matrix())
                < 1e-15
        );
        assert!(
            data.matrix()
                .max_abs_diff(joint.reduce(&[1]).unwrap().matrix())
                < 1e-15
        );
    }

    #[test]
    fn trotter_examples() {
        let rho = rx_init(0.7).to_density();
        let sigma = plus_state();
        let one = dme_trotter(&rho, &sigma, DmeParams::new(0.6, 1).unwrap()).unwrap();
        assert_eq!(one, dme_step_exact(&rho, &sigma, 0.6).unwrap());
        let ideal = ideal_conjugation(&rho, &sigma, FRAC_PI_2).unwrap();
        let far = dme_trotter(&rho, &sigma, DmeParams::new(FRAC_PI_2, 400).unwrap()).unwrap();
        assert!(trace_distance(far.matrix(), ideal.matrix()).unwrap() < 1e-2);
        assert!(DmeParams::new(1.0, 0).is_err());
    }

    #[test]
    fn error_examples() {
        let rho = zero_state();
        let sigma = plus_state();
        let p = |m| DmeParams::new(FRAC_PI_4, m).unwrap();
        assert!(dme_error(&sigma, &sigma, p(3)).unwrap() < 1e-15);
        let diag_a = DensityMatrix::new(Matrix::diag(&[clit(0.3, 0.), clit(0.7, 0.)])).unwrap();
        let diag_b = DensityMatrix::new(Matrix::diag(&[clit(0.9, 0.), clit(0.1, 0.)])).unwrap();
        // commuting inputs still mix: σ_m − ρ = cos^{2m}(t/m)(σ − ρ), so the error is not zero
        let commuting = dme_error(&diag_a, &diag_b, p(2)).unwrap();
        let expected = (1.0 - (FRAC_PI_4 / 2.0).cos().powi(4)) * 0.6;
        assert!((commuting - expected).abs() < 1e-15, "{commuting:e}");
        let errs: Vec<f64> = [1, 2, 4, 8]
            .into_iter()
            .map(|m| dme_error(&rho, &sigma, p(m)).unwrap())
            .collect();
        assert!(errs[0] > 0.0);
        assert!(errs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn two_qubit_registers() {
        let rho = PureState::zero(2).unwrap().to_density();
        let sigma = PureState::basis(2, 3).unwrap().to_density();
        let out = dme_step_exact(&rho, &sigma, FRAC_PI_2).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        let big = PureState::zero(3).unwrap().to_density();
        assert!(dme_step_exact(&big, &big, 0.1).is_err());
        assert!(dme_step_exact(&rho, &zero_state(), 0.1).is_err());
    }
}
