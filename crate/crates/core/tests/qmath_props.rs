use dbac_core::qmath::random::{random_density, random_hermitian, random_unitary};
use dbac_core::qmath::{
    dist_up_to_global_phase, herm_expm, kron, partial_trace, Matrix, QubitPartition,
};
use dbac_core::scalar::cis;
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_keeps_the_trace(seed in any::<u64>(), n in 2usize..=3, mask in 0u8..8) {
        let m: Matrix<f64> = random_density(1 << n, &mut rng(seed));
        let keep: Vec<usize> = (0..n).filter(|q| mask & (1 << q) != 0).collect();
        prop_assume!(!keep.is_empty() && keep.len() < n);
        let reduced = partial_trace(&m, &QubitPartition::qubits(n, &keep).unwrap()).unwrap();
        prop_assert!((reduced.trace() - m.trace()).norm() < 1e-12);
        prop_assert_eq!(reduced.rows(), 1 << keep.len());
    }

    #[test]
    fn forward_and_backward_evolution_cancel(seed in any::<u64>(), n in 1usize..=3, t in -std::f64::consts::PI..std::f64::consts::PI) {
        let h: Matrix<f64> = random_hermitian(1 << n, &mut rng(seed));
        let fwd = herm_expm(&h, Complex::new(0.0, -t)).unwrap();
        let back = herm_expm(&h, Complex::new(0.0, t)).unwrap();
        prop_assert!(fwd.matmul(&back).unwrap().max_abs_diff(&Matrix::identity(1 << n)) < 1e-11);
    }

    #[test]
    fn kron_is_associative(seed in any::<u64>(), da in 0u32..=1, db in 0u32..=1, dc in 0u32..=1) {
        let mut r = rng(seed);
        let a: Matrix<f64> = random_hermitian(2 << da, &mut r);
        let b: Matrix<f64> = random_unitary(2 << db, &mut r);
        let c: Matrix<f64> = random_density(2 << dc, &mut r);
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) < 1e-15);
    }

    #[test]
    fn phase_distance_is_a_pseudometric(seed in any::<u64>(), n in 1usize..=2, phase in 0.0..std::f64::consts::TAU) {
        let mut r = rng(seed);
        let (u, v, w): (Matrix<f64>, Matrix<f64>, Matrix<f64>) =
            (random_unitary(1 << n, &mut r), random_unitary(1 << n, &mut r), random_unitary(1 << n, &mut r));
        let d = |a: &Matrix<f64>, b: &Matrix<f64>| dist_up_to_global_phase(a, b).unwrap();
        prop_assert!((d(&u, &v) - d(&v, &u)).abs() < 1e-12);
        prop_assert!(d(&u, &u.scale(cis(phase))) < 1e-12);
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w) + 1e-9);
    }
}

#[test]
fn single_precision_evolution_is_unitary() {
    let h: Matrix<f32> = random_hermitian(4, &mut rng(3));
    let u = herm_expm(&h, Complex::new(0.0f32, -0.7)).unwrap();
    assert!(u.unitarity_defect() < 1e-5);
}
