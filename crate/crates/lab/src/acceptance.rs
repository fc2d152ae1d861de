//! The ten acceptance criteria, each reduced to a pass/fail outcome with a
//! one-line detail. Tolerances and runtime limits are pinned as constants.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::path::Path;
use std::time::Instant;

use dbac_core::baselines::{
    cem_round_closed, cem_round_simulated, polarization, ppa_round, MixednessState, PolarizedQubit,
};
use dbac_core::circuits::{
    circuit_unitary, compile_cnot, compile_cz, compile_swap3, compile_swap_native, compile_udme_hs,
    compile_udme_native, Circuit,
};
use dbac_core::dbac::{
    copies_accounting, dbac_energy_analytic, dbac_step_exact, descent_bound_residual,
    optimize_step, DbacSchedule, Depth, RecursionMode,
};
use dbac_core::dme::{dme_error, dme_step_exact, DmeParams};
use dbac_core::qmath::pauli::{cnot, cz, swap};
use dbac_core::qmath::random::{random_density, random_hermitian, random_state_vector};
use dbac_core::qmath::{dist_up_to_global_phase, herm_expm, Matrix};
use dbac_core::states::{energy, energy_variance, rx_init, DensityMatrix, Hamiltonian, PureState};
use dbac_core::tomography::{process_fidelity, ptm_of_circuit, ptm_of_unitary, NoiseModel};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Experiment, ExperimentConfig, GridConfig};
use crate::error::Result;
use crate::experiments::linear_fit;
use crate::output::{AcceptanceSummary, ResultsManifest};

pub const ENERGY_LAW_TOL: f64 = 1e-9;
pub const ENERGY_LAW_SECONDS: f64 = 2.0;
pub const SWAP_STATE_TOL: f64 = 1e-12;
pub const UNITARY_TOL: f64 = 1e-10;
pub const TROTTER_SLOPE: (f64, f64) = (-1.2, -0.8);
pub const TROTTER_SECONDS: f64 = 1.0;
pub const BASIN_TARGET: f64 = 0.9;
pub const BASIN_SECONDS: f64 = 30.0;
pub const RESIDUAL_RATIO: (f64, f64) = (0.2, 5.0);
pub const CEM_TOL: f64 = 1e-12;
pub const PPA_GAIN_TOL: f64 = 1e-4;
pub const PPA_SPECTRUM_TOL: f64 = 1e-11;
pub const PTM_FIDELITY_TOL: f64 = 1e-9;

/// One checked statement inside a criterion.
#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Claim {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub claims: Vec<Claim>,
}

impl CriterionOutcome {
    pub fn detail(&self) -> String {
        self.claims
            .iter()
            .map(|c| {
                format!(
                    "{} {}: {}",
                    if c.passed { "ok" } else { "FAILED" },
                    c.name,
                    c.detail
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail()
        )
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }
}

/// Runs one configuration to completion in a fresh output directory.
pub type Runner<'a> = dyn Fn(&ExperimentConfig) -> Result<ResultsManifest> + Sync + 'a;

fn timed(
    id: u8,
    name: &'static str,
    limit: Option<f64>,
    body: impl FnOnce() -> Result<Vec<Claim>>,
) -> CriterionOutcome {
    let start = Instant::now();
    let mut claims =
        body().unwrap_or_else(|e| vec![Claim::new("evaluation", false, e.to_string())]);
    let seconds = start.elapsed().as_secs_f64();
    if let Some(limit) = limit {
        claims.push(Claim::new(
            "runtime",
            seconds < limit,
            format!("{seconds:.3} s against a {limit} s limit"),
        ));
    }
    CriterionOutcome {
        id,
        name,
        passed: claims.iter().all(|c| c.passed),
        seconds,
        claims,
    }
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn max_f(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, f64::max)
}

fn phase_gap(c: &Circuit<f64>, target: &Matrix<f64>) -> Result<f64> {
    Ok(dist_up_to_global_phase(&circuit_unitary(c)?, target)?)
}

fn partial_swap(phi: f64) -> Result<Matrix<f64>> {
    Ok(herm_expm(&swap::<f64>(), Complex::new(0.0, -phi))?)
}

fn random_qubit_density(r: &mut ChaCha8Rng) -> Result<DensityMatrix<f64>> {
    Ok(DensityMatrix::new(random_density(2, r))?)
}

pub fn energy_law() -> CriterionOutcome {
    timed(
        1,
        "energy law matches exact steps",
        Some(ENERGY_LAW_SECONDS),
        || {
            let h = Hamiltonian::default();
            let thetas: Vec<f64> = linspace(0.0, PI, 101).collect();
            let worst = thetas
                .par_iter()
                .map(|&th| {
                    let psi = rx_init(th);
                    let e0 = energy(&psi, &h)?;
                    let mut worst = 0.0f64;
                    for t in linspace(0.0, PI, 101) {
                        let brute = energy(&dbac_step_exact(&psi, t, &h)?, &h)?;
                        worst = worst.max((dbac_energy_analytic(e0, t)? - brute).abs());
                    }
                    Ok(worst)
                })
                .collect::<Result<Vec<f64>>>()?;
            let worst = max_f(worst);
            Ok(vec![Claim::new(
                "101x101 grid",
                worst <= ENERGY_LAW_TOL,
                format!("max deviation {worst:.3e} (tolerance {ENERGY_LAW_TOL:e})"),
            )])
        },
    )
}

pub fn swap_point(seed: u64) -> CriterionOutcome {
    timed(2, "partial swap at pi/2 is a swap", None, || {
        let mut r = rng(seed, 2);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let rho = random_qubit_density(&mut r)?;
            let sigma = random_qubit_density(&mut r)?;
            let out = dme_step_exact(&rho, &sigma, FRAC_PI_2)?;
            worst = worst.max(out.matrix().max_abs_diff(rho.matrix()));
        }
        let gap = phase_gap(&compile_udme_native(FRAC_PI_2), &swap())?
            .max(phase_gap(&compile_udme_hs(FRAC_PI_2), &swap())?);
        Ok(vec![
            Claim::new(
                "data output equals instruction",
                worst <= SWAP_STATE_TOL,
                format!("100 random pairs, max entry deviation {worst:.3e}"),
            ),
            Claim::new(
                "compiled gate is SWAP",
                gap <= UNITARY_TOL,
                format!("phase-free distance {gap:.3e}"),
            ),
        ])
    })
}

pub fn trotter_scaling() -> CriterionOutcome {
    timed(
        3,
        "Trotter error scales as 1/M",
        Some(TROTTER_SECONDS),
        || {
            let rho = rx_init(FRAC_PI_2).to_density();
            let sigma = rx_init(0.3).to_density();
            let pts = (1..=64usize)
                .into_par_iter()
                .map(|m| {
                    Ok((
                        (m as f64).ln(),
                        dme_error(&rho, &sigma, DmeParams::new(FRAC_PI_4, m)?)?.ln(),
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let (slope, _) = linear_fit(&pts);
            Ok(vec![Claim::new(
                "log-log slope",
                (TROTTER_SLOPE.0..=TROTTER_SLOPE.1).contains(&slope),
                format!("slope {slope:.4} over M = 1..64 at t = pi/4"),
            )])
        },
    )
}

pub fn compilation(seed: u64) -> CriterionOutcome {
    timed(4, "gate compilations are exact", None, || {
        let mut r = rng(seed, 4);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let phi = r.random_range(-PI..PI);
            let target = partial_swap(phi)?;
            worst = worst
                .max(phase_gap(&compile_udme_native(phi), &target)?)
                .max(phase_gap(&compile_udme_hs(phi), &target)?);
        }
        let table = [
            ("CZ", phase_gap(&compile_cz(), &cz())?),
            ("CNOT", phase_gap(&compile_cnot(), &cnot())?),
            ("SWAP (three CNOT)", phase_gap(&compile_swap3(), &swap())?),
            ("SWAP (native)", phase_gap(&compile_swap_native(), &swap())?),
        ];
        let mut claims = vec![Claim::new(
            "partial swap, 50 random angles",
            worst <= UNITARY_TOL,
            format!("max distance {worst:.3e}"),
        )];
        claims.extend(
            table
                .iter()
                .map(|(n, d)| Claim::new(*n, *d <= UNITARY_TOL, format!("distance {d:.3e}"))),
        );
        Ok(claims)
    })
}

fn reaches(f0: f64, k: usize, depth: Depth) -> Result<f64> {
    Ok(optimize_step(1.0 - 2.0 * f0, k, depth, RecursionMode::default())?.fidelity)
}

pub fn basin_claims() -> CriterionOutcome {
    timed(5, "basin of attraction", Some(BASIN_SECONDS), || {
        let mut claims = Vec::new();
        let f = reaches(0.8, 1, Depth::Steps(1))?;
        claims.push(Claim::new(
            "F0=0.8 k=1 M=1",
            f >= BASIN_TARGET,
            format!("reaches F={f:.4}"),
        ));

        let opt = optimize_step(
            1.0 - 2.0 * 0.6,
            2,
            Depth::Steps(2),
            RecursionMode::default(),
        )?;
        let extra =
            copies_accounting(&DbacSchedule::uniform(2, opt.s, Depth::Steps(2))?)?.inputs_extra;
        claims.push(Claim::new(
            "F0=0.6 k=2 M=2",
            opt.fidelity >= BASIN_TARGET && extra == 8,
            format!("reaches F={:.4} with {extra} extra copies", opt.fidelity),
        ));

        let f = reaches(0.1, 2, Depth::Steps(2))?;
        claims.push(Claim::new(
            "F0=0.1 k=2 M=2 fails",
            f < BASIN_TARGET,
            format!("best F={f:.4}"),
        ));

        let per_degree = (1..=179u32)
            .into_par_iter()
            .map(|deg| {
                let th = (deg as f64).to_radians();
                let f0 = (th / 2.0).cos().powi(2);
                Ok((deg, reaches(f0, 6, Depth::Exact)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let misses: Vec<&(u32, f64)> = per_degree
            .iter()
            .filter(|(_, f)| *f < BASIN_TARGET)
            .collect();
        let detail = match (misses.first(), misses.last()) {
            (Some(first), Some(last)) => format!(
                "{} of 179 angles miss; first miss at {} deg (F={:.4}), last at {} deg (F={:.4})",
                misses.len(),
                first.0,
                first.1,
                last.0,
                last.1
            ),
            _ => "all 179 angles reach the target".into(),
        };
        claims.push(Claim::new(
            "k=6 exact resets all angles",
            misses.is_empty(),
            detail,
        ));
        Ok(claims)
    })
}

pub fn descent_bound(seed: u64) -> CriterionOutcome {
    timed(6, "descent residual stays bounded", None, || {
        let mut r = rng(seed, 6);
        let mut worst = (1.0f64, 1.0f64);
        let mut failures = 0;
        for i in 0..50 {
            let dim = if i % 2 == 0 { 2 } else { 4 };
            let h = Hamiltonian::new(random_hermitian(dim, &mut r))?;
            let psi = PureState::from_unnormalized(random_state_vector(dim, &mut r))?;
            // a state with vanishing variance has a zero residual at every s
            if energy_variance(&psi, &h)? < 1e-6 {
                continue;
            }
            let res = [0.1, 0.05, 0.025]
                .iter()
                .map(|&s| descent_bound_residual(&h, &psi, s))
                .collect::<std::result::Result<Vec<f64>, _>>()?;
            for w in res.windows(2) {
                let ratio = w[1] / w[0];
                worst = (worst.0.min(ratio), worst.1.max(ratio));
                if !(RESIDUAL_RATIO.0..=RESIDUAL_RATIO.1).contains(&ratio) {
                    failures += 1;
                }
            }
        }
        Ok(vec![Claim::new(
            "50 random instances",
            failures == 0,
            format!(
                "consecutive ratios within [{:.3}, {:.3}], {failures} outside",
                worst.0, worst.1
            ),
        )])
    })
}

pub fn cem_cross_check() -> CriterionOutcome {
    timed(
        7,
        "compression closed form matches simulation",
        None,
        || {
            let psi = rx_init(1.0);
            let (mut dx, mut dp) = (0.0f64, 0.0f64);
            let (mut shrinks, mut formula) = (true, true);
            for i in 1..=19 {
                let x = 0.05 * i as f64;
                let closed = cem_round_closed(x)?;
                let sim = cem_round_simulated(&MixednessState::new(x, psi.clone())?.density())?;
                dx = dx
                    .max((MixednessState::from_density(&sim.rho_next)?.x() - closed.x_next).abs());
                dp = dp.max((sim.p_success - closed.p_success).abs());
                shrinks &= closed.x_next < x;
                formula &= closed.p_success == 1.0 - x / 2.0 + x * x / 4.0;
            }
            Ok(vec![
                Claim::new(
                    "mixedness agrees",
                    dx <= CEM_TOL,
                    format!("max deviation {dx:.3e}"),
                ),
                Claim::new(
                    "success probability agrees",
                    dp <= CEM_TOL,
                    format!("max deviation {dp:.3e}"),
                ),
                Claim::new("mixedness shrinks", shrinks, "x' < x at all 19 points"),
                Claim::new(
                    "success law exact",
                    formula,
                    "p = 1 - x/2 + x^2/4 bit for bit",
                ),
            ])
        },
    )
}

pub fn ppa_behavior(seed: u64) -> CriterionOutcome {
    timed(8, "three-qubit compression", None, || {
        let eps = 1e-3f64;
        let q = PolarizedQubit::new(eps)?.density();
        let out = ppa_round(&q.tensor(&q)?.tensor(&q)?)?;
        let gain = polarization(&out, 0)? / eps;
        let mut r = rng(seed, 8);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let rho = DensityMatrix::new(random_density(8, &mut r))?;
            let before = rho.eigenvalues();
            let after = ppa_round(&rho)?.eigenvalues();
            worst = worst.max(max_f(
                before
                    .iter()
                    .zip(&after)
                    .map(|(a, b): (&f64, &f64)| (a - b).abs()),
            ));
        }
        Ok(vec![
            Claim::new(
                "gain at eps=1e-3",
                (gain - 1.5).abs() <= PPA_GAIN_TOL,
                format!("ratio {gain:.8}"),
            ),
            Claim::new(
                "spectrum preserved",
                worst <= PPA_SPECTRUM_TOL,
                format!("20 random inputs, {worst:.3e}"),
            ),
        ])
    })
}

pub fn ptm_suite() -> CriterionOutcome {
    timed(9, "transfer matrices", None, || {
        let mut claims = Vec::new();
        for (label, phi) in [
            ("0", 0.0),
            ("pi/8", FRAC_PI_8),
            ("pi/4", FRAC_PI_4),
            ("pi/2", FRAC_PI_2),
        ] {
            let ideal = ptm_of_unitary(&partial_swap(phi)?)?;
            let circuit = compile_udme_native(phi);
            let clean = process_fidelity(&ideal, &ptm_of_circuit(&circuit, None)?)?;
            claims.push(Claim::new(
                format!("noiseless phi={label}"),
                (clean.f_pro - 1.0).abs() <= PTM_FIDELITY_TOL,
                format!("f_pro = 1 - {:.3e}", 1.0 - clean.f_pro),
            ));
            let mut favg = vec![clean.f_avg];
            for p2 in [0.01, 0.02, 0.04] {
                let noise = NoiseModel::depolarizing(0.0, p2)?;
                favg.push(
                    process_fidelity(&ideal, &ptm_of_circuit(&circuit, Some(&noise))?)?.f_avg,
                );
            }
            let decreasing = favg.windows(2).all(|w| w[1] < w[0]);
            let shown: Vec<String> = favg.iter().map(|f| format!("{f:.5}")).collect();
            claims.push(Claim::new(
                format!("noise ordering phi={label}"),
                decreasing,
                format!("f_avg {}", shown.join(" > ")),
            ));
        }
        Ok(claims)
    })
}

/// Configuration used for the repeated-run check.
pub fn determinism_config(seed: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::minimal(Experiment::SweepTheta, "determinism");
    cfg.seed = seed;
    cfg.schedule.k = 2;
    cfg.schedule.m = vec![2];
    cfg.theta = GridConfig {
        start: 0.0.into(),
        stop: PI.into(),
        count: 37,
    };
    cfg
}

pub fn determinism(seed: u64, runner: &Runner<'_>) -> CriterionOutcome {
    timed(10, "repeated runs are byte-identical", None, || {
        let cfg = determinism_config(seed);
        let a = runner(&cfg)?;
        let b = runner(&cfg)?;
        let csv = |m: &ResultsManifest| -> Vec<(String, String)> {
            m.files
                .iter()
                .filter(|f| f.name.ends_with(".csv"))
                .map(|f| (f.name.clone(), f.sha256.clone()))
                .collect()
        };
        let (ca, cb) = (csv(&a), csv(&b));
        Ok(vec![Claim::new(
            "two runs",
            !ca.is_empty() && ca == cb,
            format!(
                "{} CSV checksums compared, {}",
                ca.len(),
                if ca == cb { "identical" } else { "different" }
            ),
        )])
    })
}

/// Evaluates all criteria in order.
pub fn run_suite(seed: u64, runner: &Runner<'_>) -> Vec<CriterionOutcome> {
    vec![
        energy_law(),
        swap_point(seed),
        trotter_scaling(),
        compilation(seed),
        basin_claims(),
        descent_bound(seed),
        cem_cross_check(),
        ppa_behavior(seed),
        ptm_suite(),
        determinism(seed, runner),
    ]
}

pub fn summarize(outcomes: &[CriterionOutcome]) -> AcceptanceSummary {
    let failed: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    AcceptanceSummary {
        passed: failed.is_empty(),
        total: outcomes.len(),
        failed,
    }
}

/// In-process runner writing into a fresh temporary directory under `parent`.
pub fn in_process_runner(
    parent: &Path,
) -> impl Fn(&ExperimentConfig) -> Result<ResultsManifest> + Sync + '_ {
    move |cfg| {
        let dir =
            tempfile::tempdir_in(parent).map_err(|e| crate::error::LabError::io(parent, e))?;
        let mut cfg = cfg.clone();
        cfg.output_dir = dir.path().to_path_buf();
        crate::run(&cfg)
    }
}
