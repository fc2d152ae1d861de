use dbac_core::baselines::{
    cem_round_closed, cem_round_simulated, hbac_step, polarization, ppa_round, MixednessState,
    PolarizedQubit,
};
use dbac_core::dbac::synthesize_uk_from;
use dbac_core::qmath::random::random_density;
use dbac_core::qmath::Matrix;
use dbac_core::scalar::clit;
use dbac_core::states::{pseudo_pure, rx_init, DensityMatrix, Hamiltonian};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn purification_keeps_the_pure_part(x in 0.001..0.999f64, theta in 0.0..3.1f64) {
        let rho = MixednessState::new(x, rx_init(theta)).unwrap().density();
        let out = cem_round_simulated(&rho).unwrap();
        let comm = out.rho_next.matrix().commutator(rho.matrix()).unwrap();
        prop_assert!(comm.max_abs() < 1e-11);
        let closed = cem_round_closed(x).unwrap();
        prop_assert!(closed.x_next < x);
        prop_assert!((1.0 - closed.p_success - (2.0 * x - x * x) / 4.0).abs() < 1e-15);
        prop_assert!((out.p_success - closed.p_success).abs() < 1e-12);
    }

    #[test]
    fn compression_is_unitary(seed in any::<u64>()) {
        let rho: DensityMatrix<f64> = DensityMatrix::new(random_density(8, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let out = ppa_round(&rho).unwrap();
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        let (mut a, mut b) = (rho.eigenvalues(), out.eigenvalues());
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        prop_assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12));
    }

    #[test]
    fn hot_bath_never_warms_the_target(target in 0.0..1.0f64, extra in 0.0..1.0f64) {
        let eb = target + (1.0 - target) * extra;
        let reg = [target, eb, eb].map(|e| PolarizedQubit::new(e).unwrap());
        let next = hbac_step(&reg, eb).unwrap();
        prop_assert!(next[0].eps() >= target - 1e-15);
    }

    #[test]
    fn dbac_unitaries_leave_mixedness_alone(p in 0.0..=1.0f64, theta in 0.0..3.1f64, s in 0.001..2.0f64) {
        let u = synthesize_uk_from(Matrix::identity(2), &Hamiltonian::default(), &[s]).unwrap();
        let u = u.matmul(&rx_matrix(theta)).unwrap();
        let psi = rx_init(0.3);
        let lhs = pseudo_pure(p, &psi).unwrap().evolve(&u).unwrap();
        let rhs = pseudo_pure(p, &psi.evolve(&u).unwrap()).unwrap();
        prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-14);
        prop_assert!((lhs.purity() - pseudo_pure(p, &psi).unwrap().purity()).abs() < 1e-13);
    }
}

fn rx_matrix(theta: f64) -> Matrix<f64> {
    let (s, c) = (theta / 2.0).sin_cos();
    Matrix::from_rows(&[
        &[clit(c, 0.0), clit(0.0, -s)],
        &[clit(0.0, -s), clit(c, 0.0)],
    ])
}

#[test]
fn compression_changes_mixedness_where_dbac_does_not() {
    let q = PolarizedQubit::new(0.3).unwrap().density();
    let product = q.tensor(&q).unwrap().tensor(&q).unwrap();
    let out = ppa_round(&product).unwrap();
    let target = out.qubit_marginal(0).unwrap();
    assert!(target.purity() > q.purity());
    assert!(polarization(&out, 0).unwrap() > 0.3);
}
