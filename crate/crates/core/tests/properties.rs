//! Property tests for the structural invariants of the linear algebra and
//! state constructors.

use entransfer::qmath::{
    hermitian_eigenvalues, partial_trace, partial_transpose, purity, ComplexMatrix, Qubit,
    QubitRegisterDensity,
};
use entransfer::states::{
    gaussian_t_state, gsd_state, mixed_ghz_w, pure_state_density, t_state_params, GsdCoefficients,
    GsdForm,
};
use entransfer::C64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(complex(), dim * dim).prop_map(move |entries| {
        let raw = ComplexMatrix::from_entries(dim, entries).unwrap();
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = (raw[(i, j)] + raw[(j, i)].conj()) * 0.5;
            }
        }
        m
    })
}

fn register(n_qubits: usize) -> impl Strategy<Value = QubitRegisterDensity> {
    let dim = 1usize << n_qubits;
    proptest::collection::vec(complex(), dim).prop_filter_map("nonzero ket", move |ket| {
        QubitRegisterDensity::from_pure(n_qubits, &ket).ok()
    })
}

fn gsd_coefficients() -> impl Strategy<Value = GsdCoefficients> {
    (
        proptest::collection::vec(complex(), 5),
        prop_oneof![
            Just(GsdForm::Standard),
            Just(GsdForm::SymSingle),
            Just(GsdForm::SymDouble)
        ],
    )
        .prop_filter_map("nonzero coefficients", |(amps, form)| {
            GsdCoefficients::new(form, [amps[0], amps[1], amps[2], amps[3], amps[4]]).ok()
        })
}

proptest! {
    #[test]
    fn eigenvalue_sum_equals_trace(m in hermitian(8)) {
        let evals = hermitian_eigenvalues(&m).unwrap();
        let sum: f64 = evals.iter().sum();
        prop_assert!((sum - m.trace().re).abs() < 1e-10);
    }

    #[test]
    fn eigenvalues_invariant_under_basis_permutation(m in hermitian(6), seed in 0u64..1000) {
        // derive a permutation from the seed
        let mut perm: Vec<usize> = (0..6).collect();
        let mut state = seed;
        for i in (1..6).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let mut pm = ComplexMatrix::zeros(6);
        for i in 0..6 {
            for j in 0..6 {
                pm[(perm[i], perm[j])] = m[(i, j)];
            }
        }
        let a = hermitian_eigenvalues(&m).unwrap();
        let b = hermitian_eigenvalues(&pm).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_is_involution(rho in register(3), q in 0usize..3) {
        let qubit = Qubit::ALL[q];
        let pt = partial_transpose(&rho, qubit).unwrap();
        let back = entransfer::qmath::partial_transpose_matrix(&pt, 3, qubit.position()).unwrap();
        prop_assert_eq!(back, rho.matrix().clone());
    }

    #[test]
    fn partial_transpose_preserves_trace(rho in register(3), q in 0usize..3) {
        let pt = partial_transpose(&rho, Qubit::ALL[q]).unwrap();
        prop_assert!((pt.trace() - rho.matrix().trace()).norm() == 0.0);
    }

    #[test]
    fn partial_trace_commutes_over_disjoint_labels(rho in register(3)) {
        // tracing B then C must equal tracing C then B
        let bc = partial_trace(&partial_trace(&rho, Qubit::B).unwrap(), Qubit::B).unwrap();
        let cb = partial_trace(&partial_trace(&rho, Qubit::C).unwrap(), Qubit::B).unwrap();
        prop_assert!(bc.matrix().max_abs_diff(cb.matrix()) < 1e-14);
    }

    #[test]
    fn purity_equals_eigenvalue_square_sum(rho in register(3), mix in 0.0f64..1.0) {
        // soften the pure state with the maximally mixed one
        let mut m = ComplexMatrix::zeros(8);
        for i in 0..8 {
            for j in 0..8 {
                m[(i, j)] = rho.matrix()[(i, j)] * (1.0 - mix);
            }
            m[(i, i)] += C64::new(mix / 8.0, 0.0);
        }
        let softened = QubitRegisterDensity::new(3, m).unwrap();
        let evals = hermitian_eigenvalues(softened.matrix()).unwrap();
        let sq_sum: f64 = evals.iter().map(|v| v * v).sum();
        prop_assert!((purity(&softened) - sq_sum).abs() < 1e-10);
    }

    #[test]
    fn pure_density_constructor_invariants(
        kets in proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), complex()), 1..6)
    ) {
        let expansion: Vec<([u32; 3], C64)> =
            kets.iter().map(|((p, q, r), a)| ([*p, *q, *r], *a)).collect();
        if let Ok(rho) = pure_state_density(&expansion) {
            prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
            prop_assert!(rho.hermiticity_error() < 1e-14);
            for ((ket, bra), v) in rho.iter() {
                if ket == bra {
                    prop_assert!(v.im.abs() < 1e-15);
                    prop_assert!(v.re >= -1e-14);
                }
                prop_assert!(ket.iter().chain(bra.iter()).all(|n| *n <= rho.n_max()));
            }
        }
    }

    #[test]
    fn gsd_states_are_pure(c in gsd_coefficients()) {
        let rho = gsd_state(&c);
        // map-level purity: sum |a_kb|^2 over the Hermitian map
        let p: f64 = rho.iter().map(|(_, v)| v.norm_sqr()).sum();
        prop_assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_state_spectrum_is_p_and_one_minus_p(p in 0.001f64..0.999) {
        let rho = mixed_ghz_w(p).unwrap();
        // the mixture lives on five Fock kets; eigensolve in that basis
        let kets = [[0u32, 0, 0], [1, 1, 1], [0, 0, 1], [0, 1, 0], [1, 0, 0]];
        let mut m = ComplexMatrix::zeros(5);
        for (i, ki) in kets.iter().enumerate() {
            for (j, kj) in kets.iter().enumerate() {
                m[(i, j)] = rho.coeff(*ki, *kj);
            }
        }
        let evals = hermitian_eigenvalues(&m).unwrap();
        let mut nonzero: Vec<f64> = evals.into_iter().filter(|v| v.abs() > 1e-12).collect();
        nonzero.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assert_eq!(nonzero.len(), 2);
        let (lo, hi) = (p.min(1.0 - p), p.max(1.0 - p));
        prop_assert!((nonzero[0] - lo).abs() < 1e-12);
        prop_assert!((nonzero[1] - hi).abs() < 1e-12);
    }

    #[test]
    fn gaussian_state_capture_is_monotone_in_tolerance(
        g1 in 0.05f64..0.9,
        o2 in 0.0f64..8.0,
        exp_a in 3i32..9,
    ) {
        let params = t_state_params(g1, o2).unwrap();
        let loose = gaussian_t_state(&params, 10f64.powi(-exp_a)).unwrap();
        let tight = gaussian_t_state(&params, 10f64.powi(-exp_a - 2)).unwrap();
        prop_assert!(tight.trace() >= loose.trace() - 1e-15);
        // captured probability never exceeds the target bound
        prop_assert!(loose.trace() >= 1.0 - 10f64.powi(-exp_a) - 1e-13);
        // photon-number structure
        for ((ket, bra), _) in loose.iter() {
            prop_assert_eq!(ket[0], ket[1] + ket[2]);
            prop_assert_eq!(bra[0], bra[1] + bra[2]);
        }
    }
}
