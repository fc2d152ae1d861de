//! One function per experiment kind. Grid points run in parallel and are
//! collected in grid order, so output bytes do not depend on scheduling.

use dbac_core::baselines::{
    cem_round_closed, cem_round_simulated, hbac_step, polarization, ppa_round, MixednessState,
    PolarizedQubit,
};
use dbac_core::circuits::{build_circuit, compile_udme_native, qubit_energies, TableCircuit};
use dbac_core::dbac::{
    basin_min_fidelity, dbac_channel, dbac_energy_analytic, dbac_recursive_exact, dbac_via_dme,
    optimize_step, DbacSchedule, Depth, RecursionMode,
};
use dbac_core::dme::{dme_error, DmeParams};
use dbac_core::qmath::herm_expm;
use dbac_core::qmath::pauli::swap;
use dbac_core::states::{energy, pseudo_pure, rx_init, Hamiltonian};
use dbac_core::tomography::{process_fidelity, ptm_of_circuit, ptm_of_unitary, NoiseModel};
use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::{num, Sink, Table};

fn schedule(cfg: &ExperimentConfig) -> Result<DbacSchedule<f64>> {
    let sch = &cfg.schedule;
    let k = sch.steps();
    let depths = (0..k)
        .map(|j| {
            if sch.exact {
                Depth::Exact
            } else {
                Depth::Steps(sch.depth_at(j))
            }
        })
        .collect();
    let durations = (0..k).map(|j| sch.duration_at(j)).collect();
    Ok(DbacSchedule::new(durations, depths, Hamiltonian::default())?.with_mode(sch.mode.into()))
}

/// Energy reached with ideal reflections.
fn exact_energy(theta: f64, sched: &DbacSchedule<f64>) -> Result<f64> {
    Ok(match sched.mode() {
        RecursionMode::PreviousOutput => sched
            .durations()
            .iter()
            .try_fold(-theta.cos(), |e, &t| dbac_energy_analytic(e, t))?,
        RecursionMode::FreshInput => {
            let exact = DbacSchedule::new(
                sched.durations().to_vec(),
                vec![Depth::Exact; sched.steps()],
                Hamiltonian::default(),
            )?
            .with_mode(RecursionMode::FreshInput);
            dbac_recursive_exact(&rx_init(theta), &exact)?.final_energy()
        }
    })
}

pub fn sweep_theta(cfg: &ExperimentConfig, sink: &mut Sink) -> Result<()> {
    sink.stage("sweep-theta");
    let noise = cfg.noise_model()?;
    let thetas = cfg.theta.points();
    let rows: Vec<(f64, Vec<f64>, f64)> = match cfg.schedule.circuit {
        Some(choice) => {
            let which = TableCircuit::from(choice);
            let phi = cfg.schedule.phi.radians();
            let analytic = DbacSchedule::uniform(which.shape().0, phi, Depth::Exact)?;
            thetas
                .par_iter()
                .map(|&th| {
                    let es = qubit_energies(&build_circuit(which, th, phi)?, noise.as_ref())?;
                    let target = es[which.target()];
                    let others = es
                        .iter()
                        .enumerate()
                        .filter(|(q, _)| *q != which.target())
                        .map(|(_, e)| *e);
                    Ok((target, others.collect(), exact_energy(th, &analytic)?))
                })
                .collect::<Result<_>>()?
        }
        None => {
            let sched = schedule(cfg)?;
            thetas
                .par_iter()
                .map(|&th| {
                    let rec = dbac_via_dme(th, &sched, noise.as_ref())?;
                    let instr = rec.instruction_energies.iter().flatten().copied().collect();
                    Ok((rec.final_energy(), instr, exact_energy(th, &sched)?))
                })
                .collect::<Result<_>>()?
        }
    };
    let n_instr = rows.first().map_or(0, |r| r.1.len());
    let mut header = vec!["theta".to_string(), "E_target".to_string()];
    header.extend((1..=n_instr).map(|i| format!("E_instr_{i}")));
    header.push("E_analytic".into());
    let mut table = Table::new(header);
    for (th, (target, instr, analytic)) in thetas.iter().zip(rows) {
        let mut row = vec![num(*th), num(target)];
        row.extend(instr.into_iter().map(num));
        row.push(num(analytic));
        table.push(row);
    }
    sink.emit_table("sweep_theta.csv", &table)
}

pub fn sweep_s(cfg: &ExperimentConfig, sink: &mut Sink) -> Result<()> {
    sink.stage("sweep-s");
    let noise = cfg.noise_model()?;
    let base = schedule(cfg)?;
    let points: Vec<(f64, f64)> = cfg
        .theta
        .points()
        .into_iter()
        .flat_map(|th| cfg.s_grid.points().into_iter().map(move |s| (th, s)))
        .collect();
    let fids: Vec<f64> = points
        .par_iter()
        .map(|&(th, s)| {
            let sched = DbacSchedule::new(
                vec![s; base.steps()],
                base.depths().to_vec(),
                Hamiltonian::default(),
            )?
            .with_mode(base.mode());
            Ok(dbac_via_dme(th, &sched, noise.as_ref())?.final_fidelity())
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(["theta", "s", "F_final"]);
    for ((th, s), f) in points.into_iter().zip(fids) {
        table.push(vec![num(th), num(s), num(f)]);
    }
    sink.emit_table("sweep_s.csv", &table)
}

pub fn grid_km(cfg: &ExperimentConfig, sink: &mut Sink) -> Result<()> {
    sink.stage("grid-km");
    let cells: Vec<(usize, usize)> = cfg
        .grid
        .k
        .iter()
        .flat_map(|&k| cfg.grid.m.iter().map(move |&m| (k as usize, m as usize)))
        .collect();
    let results: Vec<(f64, f64, bool)> = cells
        .par_iter()
        .map(|&(k, m)| {
            let basin = basin_min_fidelity(k, Depth::Steps(m), cfg.grid.f_target)?;
            let s_opt = if basin.reachable {
                optimize_step(
                    1.0 - 2.0 * basin.min_fidelity,
                    k,
                    Depth::Steps(m),
                    RecursionMode::default(),
                )?
                .s
            } else {
                f64::NAN
            };
            Ok((s_opt, basin.min_fidelity, basin.reachable))
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(["k", "M", "s_opt", "F_min_basin", "reachable"]);
    for ((k, m), (s, f, ok)) in cells.into_iter().zip(results) {
        table.push(vec![
            k.to_string(),
            m.to_string(),
            num(s),
            num(f),
            ok.to_string(),
        ]);
    }
    sink.emit_table("grid_km.csv", &table)
}

#[derive(Debug, Clone, Serialize)]
struct TrotterFit {
    t: f64,
    slope: f64,
    intercept: f64,
}

/// Least-squares slope and intercept.
pub fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

pub fn trotter(cfg: &ExperimentConfig, sink: &mut Sink) -> Result<()> {
    sink.stage("trotter");
    let tc = &cfg.trotter;
    let rho = rx_init(tc.instruction_theta.radians()).to_density();
    let sigma = rx_init(tc.data_theta.radians()).to_density();
    let t = tc.t.radians();
    let errors: Vec<f64> =
        tc.m.par_iter()
            .map(|&m| Ok(dme_error(&rho, &sigma, DmeParams::new(t, m as usize)?)?))
            .collect::<Result<_>>()?;
    let mut table = Table::new(["t", "M", "error"]);
    for (&m, &e) in tc.m.iter().zip(&errors) {
        table.push(vec![num(t), m.to_string(), num(e)]);
    }
    sink.emit_table("trotter.csv", &table)?;
    let pts: Vec<(f64, f64)> =
        tc.m.iter()
            .zip(&errors)
            .map(|(&m, &e)| ((m as f64).ln(), e.ln()))
            .collect();
    let (slope, intercept) = linear_fit(&pts);
    sink.emit_json(
        "trotter_fit.json",
        &TrotterFit {
            t,
            slope,
            intercept,
        },
    )
}

#[derive(Debug, Clone, Serialize)]
struct PtmRecord {
    phi: f64,
    p1: f64,
    p2: f64,
    file: String,
    f_pro: f64,
    f_avg: f64,
}

pub fn ptm(cfg: &ExperimentConfig, sink: &mut Sink) -> Result<()> {
    let mut records = Vec::new();
    for (i, phi) in cfg.ptm.phi.iter().enumerate() {
        let phi = phi.radians();
        sink.stage(format!("ptm phi[{i}]"));
        let ideal = ptm_of_unitary(&herm_expm(&swap::<f64>(), Complex::new(0.0, -phi))?)?;
        let ideal_name = format!("ptm_phi{i}_ideal.csv");
        sink.emit(&ideal_name, ideal.to_csv().as_bytes())?;
        let circuit = compile_udme_native(phi);
        for (j, &p2) in cfg.ptm.p2.iter().enumerate() {
            let noise = NoiseModel::depolarizing(cfg.ptm.p1, p2)?;
            let actual = ptm_of_circuit(&circuit, Some(&noise))?;
            let name = format!("ptm_phi{i}_p2_{j}.csv");
            sink.emit(&name, actual.to_csv().as_bytes())?;
            let f = process_fidelity(&ideal, &actual)?;
            records.push(PtmRecord {
                phi,
                p1: cfg.ptm.p1,
                p2,
                file: name,
                f_pro: f.f_pro,
                f_avg: f.f_avg,
            });
        }
    }
    sink.stage("ptm fidelities");
    sink.emit_json("ptm_fidelity.json", &records)
}

pub fn baselines(cfg: &ExperimentConfig, sink: &mut Sink) -> Result<()> {
    sink.stage("baselines");
    let bc = &cfg.baselines;
    let rounds = bc.rounds as usize;
    let mut table = Table::new(["round", "protocol", "metric", "value"]);
    let mut row = |r: usize, p: &str, m: &str, v: f64| {
        table.push(vec![r.to_string(), p.into(), m.into(), num(v)])
    };

    let mut reg = vec![PolarizedQubit::new(bc.eps)?; 3];
    row(0, "hbac", "target_polarization", bc.eps);
    for r in 1..=rounds {
        reg = hbac_step(&reg, bc.eps_bath)?;
        row(r, "hbac", "target_polarization", reg[0].eps());
    }

    let q = PolarizedQubit::new(bc.eps)?.density();
    let compressed = ppa_round(&q.tensor(&q)?.tensor(&q)?)?;
    row(
        1,
        "ppa",
        "target_polarization",
        polarization(&compressed, 0)?,
    );

    let psi = rx_init(bc.theta.radians());
    let mut x = bc.x0;
    row(0, "cem", "mixedness", x);
    for r in 1..=rounds {
        let sim = cem_round_simulated(&MixednessState::new(x, psi.clone())?.density())?;
        let closed = cem_round_closed(x)?;
        row(
            r,
            "cem",
            "mixedness_simulated",
            MixednessState::from_density(&sim.rho_next)?.x(),
        );
        row(r, "cem", "p_success", closed.p_success);
        x = closed.x_next;
        row(r, "cem", "mixedness", x);
    }

    // ideal reflections on a pseudo-pure input: coherence moves, mixedness stays
    let h = Hamiltonian::default();
    let mut state = pseudo_pure(bc.x0, &psi)?;
    let step = DbacSchedule::uniform(1, cfg.schedule.duration_at(0), Depth::Exact)?;
    row(0, "dbac", "energy", energy(&state, &h)?);
    row(0, "dbac", "mixedness", bc.x0);
    for r in 1..=rounds {
        state = dbac_channel(&state, &step, None)?.1;
        row(r, "dbac", "energy", energy(&state, &h)?);
        row(r, "dbac", "mixedness", 2.0 * state.eigenvalues()[0]);
    }
    sink.emit_table("baselines.csv", &table)
}

pub fn trajectory(cfg: &ExperimentConfig, sink: &mut Sink) -> Result<()> {
    sink.stage("trajectory");
    let rec = dbac_via_dme(
        cfg.trajectory.theta.radians(),
        &schedule(cfg)?,
        cfg.noise_model()?.as_ref(),
    )?;
    let mut table = Table::new(["step", "x", "y", "z"]);
    for (j, b) in rec.trajectory.iter().enumerate() {
        table.push(vec![j.to_string(), num(b.x), num(b.y), num(b.z)]);
    }
    sink.emit_table("trajectory.csv", &table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Experiment, GridConfig};
    use std::f64::consts::PI;

    fn sink() -> (tempfile::TempDir, Sink) {
        let dir = tempfile::tempdir().unwrap();
        let sink = Sink::open(dir.path()).unwrap();
        (dir, sink)
    }

    fn rows(path: &std::path::Path) -> Vec<Vec<f64>> {
        let mut r = csv::Reader::from_path(path).unwrap();
        r.records()
            .map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect())
            .collect()
    }

    #[test]
    fn fit_recovers_a_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 - 2.0 * i as f64)).collect();
        let (slope, icpt) = linear_fit(&pts);
        assert!((slope + 2.0).abs() < 1e-12 && (icpt - 3.0).abs() < 1e-12);
    }

    #[test]
    fn exact_sweep_matches_its_analytic_column() {
        let mut cfg = ExperimentConfig::minimal(Experiment::SweepTheta, "unused");
        cfg.schedule.k = 3;
        cfg.schedule.exact = true;
        cfg.theta = GridConfig {
            start: 0.0.into(),
            stop: PI.into(),
            count: 13,
        };
        let (dir, mut sink) = sink();
        sweep_theta(&cfg, &mut sink).unwrap();
        let table = rows(&dir.path().join("sweep_theta.csv"));
        assert_eq!(table.len(), 13);
        for r in table {
            assert_eq!(r.len(), 3);
            assert!((r[1] - r[2]).abs() < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn sweep_has_one_column_per_consumed_copy() {
        let mut cfg = ExperimentConfig::minimal(Experiment::SweepTheta, "unused");
        cfg.schedule.k = 2;
        cfg.schedule.m = vec![1, 3];
        cfg.theta = GridConfig {
            start: 0.0.into(),
            stop: PI.into(),
            count: 3,
        };
        let (dir, mut sink) = sink();
        sweep_theta(&cfg, &mut sink).unwrap();
        let text = std::fs::read_to_string(dir.path().join("sweep_theta.csv")).unwrap();
        assert!(
            text.starts_with("theta,E_target,E_instr_1,E_instr_2,E_instr_3,E_instr_4,E_analytic\n")
        );
    }

    #[test]
    fn baselines_order_and_values() {
        let cfg = ExperimentConfig::minimal(Experiment::Baselines, "unused");
        let (dir, mut sink) = sink();
        baselines(&cfg, &mut sink).unwrap();
        let mut r = csv::Reader::from_path(dir.path().join("baselines.csv")).unwrap();
        let recs: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
        let value = |round: &str, proto: &str, metric: &str| -> f64 {
            recs.iter()
                .find(|x| &x[0] == round && &x[1] == proto && &x[2] == metric)
                .map(|x| x[3].parse().unwrap())
                .unwrap()
        };
        let eps: f64 = 0.1;
        assert!(
            (value("1", "ppa", "target_polarization") - (3.0 * eps - eps.powi(3)) / 2.0).abs()
                < 1e-12
        );
        assert!(
            (value("1", "cem", "mixedness") - value("1", "cem", "mixedness_simulated")).abs()
                < 1e-12
        );
        assert!((value("10", "dbac", "mixedness") - 0.5).abs() < 1e-12);
        assert!(
            value("10", "hbac", "target_polarization") > value("1", "hbac", "target_polarization")
        );
    }

    #[test]
    fn ptm_files_and_fidelities() {
        let mut cfg = ExperimentConfig::minimal(Experiment::Ptm, "unused");
        cfg.ptm.phi = vec![0.3.into()];
        cfg.ptm.p2 = vec![0.0, 0.05];
        let (dir, mut sink) = sink();
        ptm(&cfg, &mut sink).unwrap();
        for f in [
            "ptm_phi0_ideal.csv",
            "ptm_phi0_p2_0.csv",
            "ptm_phi0_p2_1.csv",
            "ptm_fidelity.json",
        ] {
            assert!(dir.path().join(f).exists(), "{f}");
        }
        let recs: Vec<serde_json::Value> = serde_json::from_str(
            &std::fs::read_to_string(dir.path().join("ptm_fidelity.json")).unwrap(),
        )
        .unwrap();
        assert!((recs[0]["f_pro"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert!(recs[1]["f_avg"].as_f64().unwrap() < recs[0]["f_avg"].as_f64().unwrap());
    }
}
