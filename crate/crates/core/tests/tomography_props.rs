use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use dbac_core::circuits::compile_udme_native;
use dbac_core::qmath::pauli::swap;
use dbac_core::qmath::random::random_unitary;
use dbac_core::qmath::{herm_expm, Matrix};
use dbac_core::tomography::{process_fidelity, ptm_of_circuit, ptm_of_unitary};
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unitary_ptms_are_orthogonal(seed in any::<u64>(), n in 1usize..=2) {
        let u: Matrix<f64> = random_unitary(1 << n, &mut ChaCha8Rng::seed_from_u64(seed));
        let ptm = ptm_of_unitary(&u).unwrap();
        prop_assert!(ptm.orthogonality_defect() < 1e-9);
        prop_assert!(ptm.is_trace_preserving());
    }

    #[test]
    fn composition_is_multiplication(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b): (Matrix<f64>, Matrix<f64>) = (random_unitary(1 << n, &mut r), random_unitary(1 << n, &mut r));
        let joint = ptm_of_unitary(&b.matmul(&a).unwrap()).unwrap();
        let product = ptm_of_unitary(&b).unwrap().compose(&ptm_of_unitary(&a).unwrap()).unwrap();
        prop_assert!(joint.max_abs_diff(&product) < 1e-10);
    }

    #[test]
    fn average_fidelity_is_symmetric(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let a = ptm_of_unitary(&random_unitary::<f64, _>(1 << n, &mut r)).unwrap();
        let b = ptm_of_unitary(&random_unitary::<f64, _>(1 << n, &mut r)).unwrap();
        prop_assert!((process_fidelity(&a, &a).unwrap().f_avg - 1.0).abs() < 1e-12);
        let (ab, ba) = (process_fidelity(&a, &b).unwrap(), process_fidelity(&b, &a).unwrap());
        prop_assert!((ab.f_avg - ba.f_avg).abs() < 1e-12);
    }
}

#[test]
fn compiled_partial_swaps_match_their_ideal_ptms() {
    for phi in [0.0, FRAC_PI_8, FRAC_PI_4, FRAC_PI_2] {
        let ideal =
            ptm_of_unitary(&herm_expm(&swap::<f64>(), Complex::new(0.0, -phi)).unwrap()).unwrap();
        let compiled = ptm_of_circuit(&compile_udme_native(phi), None).unwrap();
        assert!(
            (process_fidelity(&ideal, &compiled).unwrap().f_pro - 1.0).abs() < 1e-9,
            "phi = {phi}"
        );
    }
}
