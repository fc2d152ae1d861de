//! Gate-local noise: depolarizing after every gate, optional amplitude and
//! phase damping over the gate duration.

use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::qmath::pauli::Pauli;
use crate::qmath::{embed, kron_all, Matrix};
use crate::scalar::{lit, Real};

/// Thermal relaxation parameters, all times in microseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Damping<T: Real> {
    pub t1: T,
    pub t2: T,
    pub single_qubit_gate_time: T,
    pub two_qubit_gate_time: T,
}

/// Per-gate error model applied to the qubits a gate touches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel<T: Real> {
    p1: T,
    p2: T,
    damping: Option<Damping<T>>,
}

impl<T: Real> NoiseModel<T> {
    /// Depolarizing probabilities for single- and two-qubit gates.
    pub fn depolarizing(p1: T, p2: T) -> Result<Self> {
        for (name, p) in [("p1", p1), ("p2", p2)] {
            if !(T::zero()..=T::one()).contains(&p) {
                return Err(invalid(name, format!("{p} is not a probability")));
            }
        }
        Ok(Self {
            p1,
            p2,
            damping: None,
        })
    }

    /// Adds relaxation; requires `0 < t2 ≤ 2·t1` and nonnegative gate times.
    pub fn with_damping(mut self, d: Damping<T>) -> Result<Self> {
        if !(d.t1 > T::zero()) || !(d.t2 > T::zero()) {
            return Err(invalid("t1", "relaxation times must be positive"));
        }
        if d.t2 > d.t1 * lit(2.0) {
            return Err(invalid(
                "t2",
                format!("t2 = {} exceeds 2·t1 = {}", d.t2, d.t1 * lit(2.0)),
            ));
        }
        if !(d.single_qubit_gate_time >= T::zero()) || !(d.two_qubit_gate_time >= T::zero()) {
            return Err(invalid("gate_time", "gate durations must be nonnegative"));
        }
        self.damping = Some(d);
        Ok(self)
    }

    pub fn p1(&self) -> T {
        self.p1
    }

    pub fn p2(&self) -> T {
        self.p2
    }

    pub fn damping(&self) -> Option<&Damping<T>> {
        self.damping.as_ref()
    }

    /// Applies the post-gate noise for a gate on `targets` to an `n`-qubit density operator.
    pub fn apply_after_gate(
        &self,
        rho: &Matrix<T>,
        targets: &[usize],
        n: usize,
    ) -> Result<Matrix<T>> {
        let p = if targets.len() >= 2 { self.p2 } else { self.p1 };
        let mut out = depolarize(rho, p, targets, n)?;
        if let Some(d) = &self.damping {
            let tau = if targets.len() >= 2 {
                d.two_qubit_gate_time
            } else {
                d.single_qubit_gate_time
            };
            for &q in targets {
                out = relax(&out, d, tau, q, n)?;
            }
        }
        Ok(out)
    }
}

/// `(1 − p)ρ + p·(I/d_A ⊗ Tr_A ρ)` on the target qubits A, written as a uniform Pauli twirl.
pub fn depolarize<T: Real>(
    rho: &Matrix<T>,
    p: T,
    targets: &[usize],
    n: usize,
) -> Result<Matrix<T>> {
    if p == T::zero() {
        return Ok(rho.clone());
    }
    let k = targets.len();
    let mut twirl = Matrix::zeros(rho.rows(), rho.cols());
    let mut labels = vec![Pauli::I; k];
    for idx in 0..(1usize << (2 * k)) {
        for (slot, label) in labels.iter_mut().enumerate() {
            *label = Pauli::ALL[(idx >> (2 * (k - 1 - slot))) & 3];
        }
        let factors: Vec<Matrix<T>> = labels.iter().map(|l| l.matrix()).collect();
        let op = embed(&kron_all(factors.iter()), targets, n)?;
        twirl = &twirl + &rho.conjugate_by(&op)?;
    }
    let weight = p / lit((1usize << (2 * k)) as f64);
    Ok(&rho.scale_re(T::one() - p) + &twirl.scale_re(weight))
}

/// Amplitude damping followed by pure dephasing on qubit `q` for duration `tau`.
fn relax<T: Real>(
    rho: &Matrix<T>,
    d: &Damping<T>,
    tau: T,
    q: usize,
    n: usize,
) -> Result<Matrix<T>> {
    let gamma = T::one() - (-tau / d.t1).exp();
    // pure dephasing rate 1/Tφ = 1/T2 − 1/(2T1); coherences pick up e^{−τ/Tφ}
    let dephasing_rate = T::one() / d.t2 - T::one() / (d.t1 * lit(2.0));
    let keep = (-(tau * dephasing_rate.max(T::zero()))).exp();
    let lambda = T::one() - keep * keep;
    let c = |x: T| Complex::new(x, T::zero());
    let z = T::zero();
    let amp = [
        Matrix::from_rows(&[&[c(T::one()), c(z)], &[c(z), c((T::one() - gamma).sqrt())]]),
        Matrix::from_rows(&[&[c(z), c(gamma.sqrt())], &[c(z), c(z)]]),
    ];
    let phase = [
        Matrix::from_rows(&[&[c(T::one()), c(z)], &[c(z), c((T::one() - lambda).sqrt())]]),
        Matrix::from_rows(&[&[c(z), c(z)], &[c(z), c(lambda.sqrt())]]),
    ];
    let once = apply_kraus(rho, &amp, q, n)?;
    apply_kraus(&once, &phase, q, n)
}

fn apply_kraus<T: Real>(
    rho: &Matrix<T>,
    kraus: &[Matrix<T>],
    q: usize,
    n: usize,
) -> Result<Matrix<T>> {
    let mut out = Matrix::zeros(rho.rows(), rho.cols());
    for k in kraus {
        out = &out + &rho.conjugate_by(&embed(k, &[q], n)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::pauli::pauli_x;
    use crate::scalar::clit;

    #[test]
    fn full_depolarizing_gives_maximally_mixed_marginal() {
        let rho = Matrix::<f64>::diag(&[clit(1., 0.), clit(0., 0.), clit(0., 0.), clit(0., 0.)]);
        let out = depolarize(&rho, 1.0, &[1], 2).unwrap();
        // qubit 1 replaced by I/2, qubit 0 untouched
        let expected = Matrix::diag(&[clit(0.5, 0.), clit(0.5, 0.), clit(0., 0.), clit(0., 0.)]);
        assert!(out.max_abs_diff(&expected) < 1e-15);
        let both = depolarize(&rho, 1.0, &[0, 1], 2).unwrap();
        assert!(both.max_abs_diff(&Matrix::identity(4).scale_re(0.25)) < 1e-15);
    }

    #[test]
    fn damping_relaxes_excited_state() {
        let d = Damping {
            t1: 10.0,
            t2: 12.0,
            single_qubit_gate_time: 1.0,
            two_qubit_gate_time: 2.0,
        };
        let noise = NoiseModel::depolarizing(0.0, 0.0)
            .unwrap()
            .with_damping(d)
            .unwrap();
        let excited = Matrix::<f64>::diag(&[clit(0., 0.), clit(1., 0.)]);
        let out = noise.apply_after_gate(&excited, &[0], 1).unwrap();
        assert!((out[(0, 0)].re - (1.0 - (-0.1f64).exp())).abs() < 1e-15);
        // coherence of |+⟩ decays as e^{−τ/T2}
        let plus = Matrix::<f64>::identity(2).scale_re(0.5) + pauli_x::<f64>().scale_re(0.5);
        let out = noise.apply_after_gate(&plus, &[0], 1).unwrap();
        assert!((out[(0, 1)].re - 0.5 * (-1.0f64 / 12.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(NoiseModel::depolarizing(1.5, 0.0).is_err());
        assert!(NoiseModel::depolarizing(0.0, -0.1).is_err());
        let d = Damping {
            t1: 10.0,
            t2: 25.0,
            single_qubit_gate_time: 0.0,
            two_qubit_gate_time: 0.0,
        };
        assert!(NoiseModel::depolarizing(0.0, 0.0)
            .unwrap()
            .with_damping(d)
            .is_err());
    }
}
