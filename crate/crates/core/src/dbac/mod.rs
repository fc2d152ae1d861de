//! Double-bracket algorithmic cooling.
//!
//! One step with duration `t` maps `|ψ⟩` to `e^{itH} e^{it|ψ⟩⟨ψ|} e^{−itH} |ψ⟩`.
//! The reflection is either applied exactly or realized by Trotterized
//! density-matrix exponentiation on copies of the current state.
//!
//! Durations are always the `t` of a single step. The synthesis recursion is
//! written in terms of `s = t²`; [`synthesize_uk`] takes `s` and converts once.

mod optimize;
mod synthesis;

pub use optimize::{
    basin_min_fidelity, cooling_threshold, final_energy, optimal_step, optimize_step, BasinResult,
    StepOptimum, STEP_GRID,
};
pub use synthesis::{descent_bound_residual, synthesize_uk, synthesize_uk_from};

use num_complex::Complex;

use crate::circuits::{compile_udme_native, simulate};
use crate::dme::dme_step_pair;
use crate::error::{invalid, Error, Result};
use crate::qmath::{eigh, Eigh, Matrix};
use crate::scalar::Real;
use crate::states::{
    energy, energy_variance, fidelity, rx_init, BlochVector, DensityMatrix, Hamiltonian, PureState,
    QuantumState,
};
use crate::tomography::NoiseModel;

/// How each reflection is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Depth {
    /// The ideal unitary `e^{itρ}`.
    Exact,
    /// `M` partial swaps with fresh instruction copies.
    Steps(usize),
}

impl Depth {
    pub fn copies(self) -> Option<u64> {
        match self {
            Depth::Exact => None,
            Depth::Steps(m) => Some(m as u64),
        }
    }
}

/// Which state the `j`-th step acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RecursionMode {
    /// Step `j` acts on the output of step `j − 1`, with copies of that output as instructions.
    #[default]
    PreviousOutput,
    /// Step `j` acts on a fresh copy of the input, reflecting around the output of step `j − 1`.
    FreshInput,
}

/// Durations, Trotter depths, Hamiltonian and recursion mode.
#[derive(Debug, Clone, PartialEq)]
pub struct DbacSchedule<T: Real> {
    durations: Vec<T>,
    depths: Vec<Depth>,
    hamiltonian: Hamiltonian<T>,
    mode: RecursionMode,
}

impl<T: Real> DbacSchedule<T> {
    pub fn new(durations: Vec<T>, depths: Vec<Depth>, hamiltonian: Hamiltonian<T>) -> Result<Self> {
        if durations.is_empty() {
            return Err(invalid("durations", "at least one step is required"));
        }
        if durations.len() != depths.len() {
            return Err(invalid(
                "depths",
                format!("{} depths for {} steps", depths.len(), durations.len()),
            ));
        }
        if durations.iter().any(|t| !t.is_finite()) {
            return Err(invalid("durations", "durations must be finite"));
        }
        if depths.contains(&Depth::Steps(0)) {
            return Err(invalid("depths", "Trotter depth must be at least 1"));
        }
        Ok(Self {
            durations,
            depths,
            hamiltonian,
            mode: RecursionMode::default(),
        })
    }

    /// `k` steps of duration `s` and depth `depth` under the single-qubit `−Z`.
    pub fn uniform(k: usize, s: T, depth: Depth) -> Result<Self> {
        Self::new(vec![s; k], vec![depth; k], Hamiltonian::default())
    }

    pub fn with_mode(mut self, mode: RecursionMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_hamiltonian(mut self, h: Hamiltonian<T>) -> Self {
        self.hamiltonian = h;
        self
    }

    pub fn steps(&self) -> usize {
        self.durations.len()
    }

    pub fn durations(&self) -> &[T] {
        &self.durations
    }

    pub fn depths(&self) -> &[Depth] {
        &self.depths
    }

    pub fn hamiltonian(&self) -> &Hamiltonian<T> {
        &self.hamiltonian
    }

    pub fn mode(&self) -> RecursionMode {
        self.mode
    }
}

/// Per-step observables of a cooling run. Index 0 is the input state.
#[derive(Debug, Clone, PartialEq)]
pub struct CoolingRecord<T: Real> {
    pub energies: Vec<T>,
    /// Energy variance of the state each step starts from.
    pub variances: Vec<T>,
    /// Fidelity with the ground state of the Hamiltonian.
    pub fidelities: Vec<T>,
    /// Total input copies, `None` when any reflection is exact.
    pub copies_consumed: Option<u64>,
    /// Bloch vectors of the target (single-qubit runs only).
    pub trajectory: Vec<BlochVector<T>>,
    /// Energies of the instruction copies after each step, in consumption order.
    pub instruction_energies: Vec<Vec<T>>,
}

impl<T: Real> CoolingRecord<T> {
    pub fn final_energy(&self) -> T {
        *self.energies.last().expect("record holds the input")
    }

    pub fn final_fidelity(&self) -> T {
        *self.fidelities.last().expect("record holds the input")
    }
}

/// Input counts for a schedule with finite depths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CopiesAccount {
    pub inputs_total: u64,
    pub inputs_extra: u64,
    /// `∏ M_j`, the count of partial swaps along the target's path.
    pub product_form: u64,
}

/// Counts input copies: `∏(M_j + 1)` when steps act on previous outputs,
/// `1 + M_j·total_{j−1}` per step when they act on fresh inputs.
pub fn copies_accounting<T: Real>(schedule: &DbacSchedule<T>) -> Result<CopiesAccount> {
    let mut total: u64 = 1;
    let mut product: u64 = 1;
    for d in &schedule.depths {
        let m = d
            .copies()
            .ok_or_else(|| invalid("depths", "exact reflections consume no copies"))?;
        total = match schedule.mode {
            RecursionMode::PreviousOutput => total * (m + 1),
            RecursionMode::FreshInput => 1 + m * total,
        };
        product *= m;
    }
    Ok(CopiesAccount {
        inputs_total: total,
        inputs_extra: total - 1,
        product_form: product,
    })
}

/// Energy after one exact step on a single qubit with energy `e0` under `−Z`:
/// `E₀ − 2sin²t (1 − E₀²)((1 − cos t)E₀ + cos t)`.
pub fn dbac_energy_analytic<T: Real>(e0: T, t: T) -> Result<T> {
    if !(e0.abs() <= T::one()) {
        return Err(invalid("e0", format!("{e0} is outside [−1, 1]")));
    }
    let (s, c) = t.sin_cos();
    let two = T::one() + T::one();
    Ok(e0 - two * s * s * (T::one() - e0 * e0) * ((T::one() - c) * e0 + c))
}

/// Cached spectral decomposition of the Hamiltonian for repeated `e^{±itH}`.
#[derive(Debug, Clone)]
pub(crate) struct Propagator<T: Real> {
    spectrum: Eigh<T>,
}

impl<T: Real> Propagator<T> {
    pub(crate) fn new(h: &Hamiltonian<T>) -> Self {
        Self {
            spectrum: eigh(h.matrix()),
        }
    }

    /// `e^{iτH}`.
    pub(crate) fn forward(&self, tau: T) -> Matrix<T> {
        self.spectrum
            .reconstruct(|l| Complex::new((tau * l).cos(), (tau * l).sin()))
    }

    pub(crate) fn ground(&self) -> PureState<T> {
        PureState::from_unnormalized(self.spectrum.vector(0)).expect("eigenvector is normalized")
    }
}

/// `e^{itH} e^{it|r⟩⟨r|} e^{−itH} |v⟩` for target `v` and reference `r`.
fn reflect_pure<T: Real>(
    v: &PureState<T>,
    r: &PureState<T>,
    t: T,
    prop: &Propagator<T>,
) -> Result<PureState<T>> {
    let rotated = prop.forward(-t).apply(v.amplitudes())?;
    let overlap: Complex<T> = r
        .amplitudes()
        .iter()
        .zip(&rotated)
        .map(|(a, b)| a.conj() * b)
        .sum();
    let factor = Complex::new(t.cos() - T::one(), t.sin()) * overlap;
    let reflected: Vec<Complex<T>> = rotated
        .iter()
        .zip(r.amplitudes())
        .map(|(x, a)| *x + *a * factor)
        .collect();
    PureState::from_unnormalized(prop.forward(t).apply(&reflected)?)
}

/// One exact step.
pub fn dbac_step_exact<T: Real>(
    psi: &PureState<T>,
    t: T,
    h: &Hamiltonian<T>,
) -> Result<PureState<T>> {
    if psi.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} vs Hamiltonian {}",
            psi.dim(),
            h.dim()
        )));
    }
    reflect_pure(psi, psi, t, &Propagator::new(h))
}

fn new_record<T: Real>(copies: Option<u64>) -> CoolingRecord<T> {
    CoolingRecord {
        energies: vec![],
        variances: vec![],
        fidelities: vec![],
        copies_consumed: copies,
        trajectory: vec![],
        instruction_energies: vec![],
    }
}

fn observe<T: Real, S: QuantumState<T>>(
    rec: &mut CoolingRecord<T>,
    state: &S,
    h: &Hamiltonian<T>,
    ground: &PureState<T>,
) -> Result<()> {
    rec.energies.push(energy(state, h)?);
    rec.fidelities.push(fidelity(ground, state)?);
    if state.dim() == 2 {
        rec.trajectory.push(state.bloch()?);
    }
    Ok(())
}

fn copies_of<T: Real>(schedule: &DbacSchedule<T>) -> Option<u64> {
    copies_accounting(schedule).ok().map(|c| c.inputs_total)
}

/// Pure-state recursion with exact reflections; depths only feed the copy count.
pub fn dbac_recursive_exact<T: Real>(
    psi: &PureState<T>,
    schedule: &DbacSchedule<T>,
) -> Result<CoolingRecord<T>> {
    let h = schedule.hamiltonian();
    if psi.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} vs Hamiltonian {}",
            psi.dim(),
            h.dim()
        )));
    }
    let prop = Propagator::new(h);
    let ground = prop.ground();
    let mut rec = new_record(copies_of(schedule));
    observe(&mut rec, psi, h, &ground)?;
    let mut current = psi.clone();
    for &t in schedule.durations() {
        rec.variances.push(energy_variance(&current, h)?);
        let target = match schedule.mode() {
            RecursionMode::PreviousOutput => &current,
            RecursionMode::FreshInput => psi,
        };
        let next = reflect_pure(target, &current, t, &prop)?;
        observe(&mut rec, &next, h, &ground)?;
        current = next;
    }
    Ok(rec)
}

/// Reflects `data` around the instruction state with Trotter depth `depth`.
/// Returns the new data state and the spent instruction copies.
fn reflect_mixed<T: Real>(
    data: &DensityMatrix<T>,
    instruction: &DensityMatrix<T>,
    t: T,
    depth: Depth,
    prop: &Propagator<T>,
    noise: Option<&NoiseModel<T>>,
) -> Result<(DensityMatrix<T>, Vec<DensityMatrix<T>>)> {
    let mut state = data.evolve(&prop.forward(-t))?;
    let mut spent = Vec::new();
    match depth {
        Depth::Exact => {
            if noise.is_some() {
                return Err(invalid("depths", "noisy runs need finite Trotter depths"));
            }
            let u = crate::qmath::herm_expm(instruction.matrix(), Complex::new(T::zero(), t))?;
            state = state.evolve(&u)?;
        }
        Depth::Steps(m) => {
            // e^{+itρ} is reached by partial swaps with negative angle
            let delta = -t / T::from_usize(m).expect("depth fits the scalar");
            for _ in 0..m {
                let (instr_out, data_out) = match noise {
                    None => dme_step_pair(instruction, &state, delta)?,
                    Some(nm) => noisy_partial_swap(instruction, &state, delta, nm)?,
                };
                spent.push(instr_out);
                state = data_out;
            }
        }
    }
    Ok((state.evolve(&prop.forward(t))?, spent))
}

fn noisy_partial_swap<T: Real>(
    instruction: &DensityMatrix<T>,
    data: &DensityMatrix<T>,
    delta: T,
    noise: &NoiseModel<T>,
) -> Result<(DensityMatrix<T>, DensityMatrix<T>)> {
    if data.num_qubits() != 1 {
        return Err(invalid(
            "noise",
            "noisy partial swaps are compiled for single-qubit registers",
        ));
    }
    let joint = simulate(
        &compile_udme_native(delta),
        &instruction.tensor(data)?,
        Some(noise),
    )?;
    Ok((joint.reduce(&[0])?, joint.reduce(&[1])?))
}

/// Density-matrix run of the protocol from an arbitrary input state.
///
/// Reflections use partial swaps on instruction copies (exact unitaries for
/// [`Depth::Exact`]). With a noise model every partial swap is executed as its
/// compiled native circuit with gate noise; the `e^{±itH}` frame changes are
/// treated as noiseless virtual rotations.
pub fn dbac_channel<T: Real>(
    input: &DensityMatrix<T>,
    schedule: &DbacSchedule<T>,
    noise: Option<&NoiseModel<T>>,
) -> Result<(CoolingRecord<T>, DensityMatrix<T>)> {
    let h = schedule.hamiltonian();
    if input.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} vs Hamiltonian {}",
            input.dim(),
            h.dim()
        )));
    }
    let prop = Propagator::new(h);
    let ground = prop.ground();
    let mut rec = new_record(copies_of(schedule));
    observe(&mut rec, input, h, &ground)?;
    let mut current = input.clone();
    for (&t, &depth) in schedule.durations().iter().zip(schedule.depths()) {
        rec.variances.push(energy_variance(&current, h)?);
        let target = match schedule.mode() {
            RecursionMode::PreviousOutput => &current,
            RecursionMode::FreshInput => input,
        };
        let (next, spent) = reflect_mixed(target, &current, t, depth, &prop, noise)?;
        rec.instruction_energies
            .push(spent.iter().map(|s| energy(s, h)).collect::<Result<_>>()?);
        observe(&mut rec, &next, h, &ground)?;
        current = next;
    }
    Ok((rec, current))
}

/// The protocol on `R_X(θ)|0⟩` with reflections realized by partial swaps.
pub fn dbac_via_dme<T: Real>(
    theta: T,
    schedule: &DbacSchedule<T>,
    noise: Option<&NoiseModel<T>>,
) -> Result<CoolingRecord<T>> {
    if schedule.hamiltonian().dim() != 2 {
        return Err(invalid(
            "schedule",
            "the θ-initialized protocol runs on one qubit",
        ));
    }
    Ok(dbac_channel(&rx_init(theta).to_density(), schedule, noise)?.0)
}
