//! Step-size search, basins of attraction and the cooling threshold.

use rayon::prelude::*;

use super::{
    dbac_channel, dbac_energy_analytic, dbac_recursive_exact, DbacSchedule, Depth, RecursionMode,
};
use crate::error::{invalid, Error, Result};
use crate::scalar::{lit, Real};
use crate::states::rx_init;

/// Grid spacing of the step-size search.
pub const STEP_GRID: f64 = 1e-3;

const TIE_TOL: f64 = 1e-9;
const BISECTION_TOL: f64 = 1e-4;
const FIDELITY_EDGE: f64 = 1e-6;

/// Best duration found on the grid and what it achieves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOptimum<T: Real> {
    pub s: T,
    pub energy: T,
    pub fidelity: T,
}

/// Outcome of a basin search. When the target is out of reach even from
/// `F₀ = 1 − 1e−6`, `min_fidelity` is the sentinel 1 and `reachable` is false.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasinResult<T: Real> {
    pub min_fidelity: T,
    pub reachable: bool,
}

fn step_grid<T: Real>() -> Vec<T> {
    let n = (std::f64::consts::PI / STEP_GRID).floor() as usize;
    let mut grid: Vec<T> = (1..=n).map(|i| lit(i as f64 * STEP_GRID)).collect();
    grid.push(T::PI());
    grid
}

fn check_energy<T: Real>(e0: T) -> Result<()> {
    if !(e0.abs() <= T::one()) {
        return Err(invalid("e0", format!("{e0} is outside [−1, 1]")));
    }
    Ok(())
}

/// Energy of a single qubit that starts at energy `e0` under `−Z` after `k`
/// uniform steps of duration `s`.
pub fn final_energy<T: Real>(
    e0: T,
    s: T,
    k: usize,
    depth: Depth,
    mode: RecursionMode,
) -> Result<T> {
    check_energy(e0)?;
    let schedule = DbacSchedule::uniform(k, s, depth)?.with_mode(mode);
    match (depth, mode) {
        // a pure state's next energy only depends on its current energy
        (Depth::Exact, RecursionMode::PreviousOutput) => (0..k).try_fold(e0, |e, _| {
            dbac_energy_analytic(e, s).map(|x| x.max(-T::one()).min(T::one()))
        }),
        (Depth::Exact, RecursionMode::FreshInput) => {
            Ok(dbac_recursive_exact(&rx_init((-e0).acos()), &schedule)?.final_energy())
        }
        (Depth::Steps(_), _) => {
            Ok(
                dbac_channel(&rx_init((-e0).acos()).to_density(), &schedule, None)?
                    .0
                    .final_energy(),
            )
        }
    }
}

/// Grid search for the duration minimizing the final energy, with the
/// default recursion mode. Returns the duration only.
pub fn optimal_step<T: Real>(e0: T, k: usize, depth: Depth) -> Result<T> {
    optimize_step(e0, k, depth, RecursionMode::default()).map(|o| o.s)
}

/// Grid search over `s ∈ {0.001, 0.002, …, 3.141, π}`. Among grid points within
/// 1e−9 of the minimum the smallest `s` wins.
pub fn optimize_step<T: Real>(
    e0: T,
    k: usize,
    depth: Depth,
    mode: RecursionMode,
) -> Result<StepOptimum<T>> {
    check_energy(e0)?;
    if e0.abs() == T::one() {
        return Err(Error::Degenerate(format!(
            "energy {e0} is a fixed point of every step"
        )));
    }
    let grid = step_grid::<T>();
    let energies: Vec<T> = grid
        .par_iter()
        .map(|&s| final_energy(e0, s, k, depth, mode))
        .collect::<Result<Vec<T>>>()?;
    let best = energies.iter().copied().fold(T::infinity(), T::min);
    let tol: T = lit(TIE_TOL);
    let i = energies
        .iter()
        .position(|&e| e <= best + tol)
        .expect("grid is not empty");
    let half: T = lit(0.5);
    Ok(StepOptimum {
        s: grid[i],
        energy: energies[i],
        fidelity: (T::one() - energies[i]) * half,
    })
}

fn reaches<T: Real>(f0: T, k: usize, depth: Depth, f_target: T) -> Result<bool> {
    let two = T::one() + T::one();
    Ok(
        optimize_step(T::one() - two * f0, k, depth, RecursionMode::default())?.fidelity
            >= f_target,
    )
}

/// Smallest initial ground-state fidelity from which `k` optimally stepped
/// rounds reach `f_target`, located by bisection to 1e−4.
pub fn basin_min_fidelity<T: Real>(k: usize, depth: Depth, f_target: T) -> Result<BasinResult<T>> {
    if !(f_target > T::zero() && f_target < T::one()) {
        return Err(invalid("f_target", format!("{f_target} is outside (0, 1)")));
    }
    let edge: T = lit(FIDELITY_EDGE);
    let mut hi = T::one() - edge;
    if !reaches(hi, k, depth, f_target)? {
        return Ok(BasinResult {
            min_fidelity: T::one(),
            reachable: false,
        });
    }
    let mut lo = edge;
    if reaches(lo, k, depth, f_target)? {
        return Ok(BasinResult {
            min_fidelity: lo,
            reachable: true,
        });
    }
    let tol: T = lit(BISECTION_TOL);
    let half: T = lit(0.5);
    while hi - lo > tol {
        let mid = (lo + hi) * half;
        if reaches(mid, k, depth, f_target)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(BasinResult {
        min_fidelity: hi,
        reachable: true,
    })
}

/// Smallest `θ` such that one exact step of duration `t` lowers the energy of
/// `R_X(θ')|0⟩` for every `θ' ∈ (θ, π)`. Zero means every non-eigenstate cools;
/// above zero, states closer to the ground state than the threshold heat up.
pub fn cooling_threshold<T: Real>(t: T) -> Result<T> {
    if !t.is_finite() {
        return Err(invalid("t", "duration must be finite"));
    }
    if t.sin().abs() <= T::epsilon() {
        return Err(Error::Degenerate(format!(
            "a step of duration {t} is the identity"
        )));
    }
    // the energy drops exactly when (1 − cos t)E₀ + cos t > 0, with E₀ = −cos θ
    let c = t.cos();
    let bound = c / (T::one() - c);
    Ok(if bound >= T::one() {
        T::zero()
    } else {
        bound.acos()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn grid_shape() {
        let g = step_grid::<f64>();
        assert_eq!(g.len(), 3142);
        assert_eq!(g[0], 1e-3);
        assert_eq!(*g.last().unwrap(), PI);
    }

    #[test]
    fn exact_single_step_optimum_matches_dense_oracle() {
        let opt = optimize_step(0.0, 1, Depth::Exact, RecursionMode::PreviousOutput).unwrap();
        // dense 1e−6 grid of the closed-form law
        let (mut best_s, mut best_e) = (0.0, f64::INFINITY);
        for i in 1..=3_141_592 {
            let s = i as f64 * 1e-6;
            let e = dbac_energy_analytic(0.0, s).unwrap();
            if e < best_e {
                best_e = e;
                best_s = s;
            }
        }
        assert!((opt.s - best_s).abs() <= 1e-3);
        assert!((opt.energy - best_e).abs() < 1e-6);
    }

    #[test]
    fn near_ground_ties_break_small() {
        let s = optimal_step(-1.0 + 1e-12, 1, Depth::Exact).unwrap();
        assert_eq!(s, 1e-3);
    }

    #[test]
    fn eigenstate_energies_are_rejected() {
        assert!(matches!(
            optimal_step(1.0, 1, Depth::Exact),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            optimal_step(-1.0, 1, Depth::Exact),
            Err(Error::Degenerate(_))
        ));
        assert!(optimal_step(1.5, 1, Depth::Exact).is_err());
    }

    #[test]
    fn exact_previous_output_matches_state_recursion() {
        for &e0 in &[-0.6f64, 0.1, 0.8] {
            let fast =
                final_energy(e0, 0.9, 3, Depth::Exact, RecursionMode::PreviousOutput).unwrap();
            let sched = DbacSchedule::uniform(3, 0.9, Depth::Exact).unwrap();
            let slow = dbac_recursive_exact(&rx_init((-e0).acos()), &sched)
                .unwrap()
                .final_energy();
            assert!((fast - slow).abs() < 1e-12);
        }
    }

    #[test]
    fn operating_point_cools_everywhere() {
        assert_eq!(cooling_threshold(FRAC_PI_4).unwrap(), 0.0);
        for i in 1..180 {
            let theta = PI * i as f64 / 180.0;
            let e0 = -theta.cos();
            assert!(dbac_energy_analytic(e0, FRAC_PI_4).unwrap() < e0);
        }
    }

    #[test]
    fn cooling_threshold_is_a_root_of_the_energy_change() {
        for &t in &[1.2, 1.6, 2.0, 3.0] {
            let edge = cooling_threshold(t).unwrap();
            let delta = |th: f64| dbac_energy_analytic(-th.cos(), t).unwrap() + th.cos();
            // bisection oracle on the energy change
            let (mut lo, mut hi) = (1e-9, PI - 1e-9);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if delta(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            assert!((edge - lo).abs() < 1e-9, "{edge} vs {lo}");
        }
        assert!(cooling_threshold(0.0).is_err());
        assert_eq!(cooling_threshold(1.0).unwrap(), 0.0);
    }

    #[test]
    fn single_step_basin() {
        let b = basin_min_fidelity(1, Depth::Steps(1), 0.9).unwrap();
        assert!(b.reachable);
        assert!(b.min_fidelity <= 0.8);
    }

    #[test]
    fn target_validation() {
        assert!(basin_min_fidelity(1, Depth::Exact, 1.0).is_err());
        assert!(basin_min_fidelity(1, Depth::Exact, 0.0).is_err());
    }
}
