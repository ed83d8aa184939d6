use num_complex::Complex64;
use proptest::prelude::*;

use qtele_core::qudit::{partial_trace, tensor_product};
use qtele_core::{
    fidelities, partial_amplitudes, random_state, weyl_unitary, BellOutcome, CMatrix, Dimension, MeasurementStrength,
    OperatorMatrix, StateVector, SubsystemLayout, EPS_NORM,
};

fn dim(d: usize) -> Dimension {
    Dimension::new(d).unwrap()
}

fn random_operator(layout: SubsystemLayout, seed: u64) -> OperatorMatrix {
    let n = layout.total_dim();
    let d = Dimension::new(n.min(16)).unwrap();
    // columns of a random matrix from seeded states, one per column
    let cols: Vec<StateVector> = (0..n).map(|k| random_state(d, seed * 1000 + k as u64)).collect();
    let m = CMatrix::from_fn(n, |r, c| {
        cols[c].amplitudes()[r % d.get()] * (1.0 + r as f64 / n as f64)
    });
    OperatorMatrix::general(layout, m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_traces_compose(d in 2usize..=4, seed in any::<u64>()) {
        let rho = random_operator(SubsystemLayout::arb(dim(d)), seed % 10_000);
        let step = partial_trace(&partial_trace(&rho, &['A', 'R']).unwrap(), &['A']).unwrap();
        let direct = partial_trace(&rho, &['A']).unwrap();
        prop_assert!(step.matrix().max_abs_diff(direct.matrix()) < EPS_NORM);
        prop_assert!((partial_trace(&rho, &['R']).unwrap().trace() - rho.trace()).norm() < EPS_NORM);
    }

    #[test]
    fn tensor_product_is_associative(d in 2usize..=3, s in 0u64..1000) {
        let a = random_operator(SubsystemLayout::single('A', dim(d)), s);
        let r = random_operator(SubsystemLayout::single('R', dim(d)), s + 1);
        let b = random_operator(SubsystemLayout::single('B', dim(d)), s + 2);
        let left = tensor_product(&tensor_product(&a, &r).unwrap(), &b).unwrap();
        let right = tensor_product(&a, &tensor_product(&r, &b).unwrap()).unwrap();
        prop_assert_eq!(left.layout(), right.layout());
        prop_assert!(left.matrix().max_abs_diff(right.matrix()) < 1e-14);
    }

    #[test]
    fn tensor_product_preserves_norm(d in 2usize..=5, s in any::<u64>()) {
        let a = random_state(dim(d), s);
        let b = random_state(dim(d), s.wrapping_add(1)).relabel(SubsystemLayout::single('B', dim(d))).unwrap();
        let ab = tensor_product(&a, &b).unwrap();
        prop_assert!((ab.norm() - 1.0).abs() < EPS_NORM);
        prop_assert!(tensor_product(&a, &a).is_err());
    }

    #[test]
    fn trace_is_linear(d in 2usize..=4, s in 0u64..1000, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let l = SubsystemLayout::uniform(&['A', 'B'], dim(d)).unwrap();
        let a = random_operator(l.clone(), s);
        let b = random_operator(l, s + 7);
        let (ca, cb) = (Complex64::new(alpha, 0.5), Complex64::new(beta, -0.25));
        let combined = &a.matrix().scale(ca) + &b.matrix().scale(cb);
        let expected = a.trace() * ca + b.trace() * cb;
        prop_assert!((combined.trace() - expected).norm() < EPS_NORM);
    }

    #[test]
    fn weyl_operators_are_unitary(d in 2usize..=16, m in any::<usize>()) {
        let dim = dim(d);
        let m = BellOutcome::new(dim, m % dim.outcomes()).unwrap();
        prop_assert!(weyl_unitary(m).matrix().unitarity_defect() < EPS_NORM);
    }

    #[test]
    fn povm_weights_sum_to_one(d in 2usize..=16, t in 0.0f64..=std::f64::consts::FRAC_PI_2) {
        let theta = MeasurementStrength::new(t).unwrap();
        let a = partial_amplitudes(theta, dim(d));
        prop_assert!((a.povm_norm() - 1.0).abs() < EPS_NORM);
        let r = fidelities(theta, dim(d));
        prop_assert!((r.rho_i + r.rho_f + r.rho_t - 1.0).abs() < EPS_NORM);
        let floor = 1.0 / d as f64 - EPS_NORM;
        for f in [r.f_a, r.f_b, r.f_avg] {
            prop_assert!(f >= floor && f <= 1.0 + EPS_NORM);
        }
    }

    #[test]
    fn random_states_are_normalized(d in 2usize..=16, seed in any::<u64>()) {
        let psi = random_state(dim(d), seed);
        prop_assert!((psi.norm() - 1.0).abs() < EPS_NORM);
        prop_assert_eq!(psi, random_state(dim(d), seed));
    }
}
