//! Randomized properties: norm preservation, route agreement, exact text
//! round-trips, reset-channel completeness, budget additivity, and the
//! closed-form stage amplitudes.

use ndarray::Array2;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use tritforge_core::circuit::{Circuit, RoleMap};
use tritforge_core::gates::{self, Cycle, GateDef};
use tritforge_core::qec::{self, ResetChannel};
use tritforge_core::register::QuditRegister;
use tritforge_core::state::StateVector;
use tritforge_core::timing;
use tritforge_core::tolerance::Tolerances;
use tritforge_core::unitary::C64;

fn single_site_gate() -> impl Strategy<Value = GateDef> {
    prop_oneof![
        Just(gates::subspace_x(0, 1).unwrap()),
        Just(gates::subspace_x(1, 2).unwrap()),
        Just(gates::subspace_x(0, 2).unwrap()),
        Just(gates::cyclic_x(Cycle::Plus)),
        Just(gates::cyclic_x(Cycle::Minus)),
        Just(gates::qutrit_hadamard()),
        Just(gates::qutrit_z()),
        Just(gates::qubit_hadamard_on_qutrit()),
        (-6.0..6.0f64).prop_map(gates::rx_error),
        (-6.0..6.0f64).prop_map(gates::rz_error),
    ]
}

fn two_site_gate() -> impl Strategy<Value = GateDef> {
    let controlled = (
        0..3usize,
        prop_oneof![Just((0, 1)), Just((1, 2)), Just((0, 2))],
    )
        .prop_map(|(level, (i, j))| gates::controlled_subspace_x(level, i, j).unwrap());
    let cyclic = (0..3usize, prop::bool::ANY).prop_map(|(level, plus)| {
        let dir = if plus { Cycle::Plus } else { Cycle::Minus };
        gates::controlled_cyclic_x(level, dir).unwrap()
    });
    prop_oneof![
        controlled,
        cyclic,
        Just(gates::controlled_phase()),
        Just(gates::csum()),
        Just(gates::cmin()),
        Just(gates::iswap()),
        Just(gates::controlled_z_on_level(0).unwrap()),
        Just(gates::controlled_z_on_level(1).unwrap()),
        (0.0..1.0f64).prop_map(gates::imperfect_cnot),
    ]
}

fn distinct_pair() -> impl Strategy<Value = Vec<usize>> {
    (0..3usize, 0..2usize).prop_map(|(a, k)| vec![a, (a + 1 + k) % 3])
}

fn random_op() -> impl Strategy<Value = (GateDef, Vec<usize>)> {
    prop_oneof![
        (single_site_gate(), (0..3usize).prop_map(|s| vec![s])),
        (two_site_gate(), distinct_pair()),
    ]
}

fn random_circuit(max_ops: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(random_op(), 0..max_ops).prop_map(|ops| {
        let mut circuit = Circuit::new(QuditRegister::qutrits(3).unwrap(), RoleMap::new(0, 1, 2));
        for (gate, sites) in ops {
            circuit.push(gate, &sites).unwrap();
        }
        circuit
    })
}

fn random_state() -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 27).prop_filter_map(
        "needs nonzero norm",
        |parts| {
            let norm_sq: f64 = parts.iter().map(|(re, im)| re * re + im * im).sum();
            if norm_sq < 1e-6 {
                return None;
            }
            let scale = norm_sq.sqrt();
            let amps: Vec<C64> = parts
                .iter()
                .map(|&(re, im)| C64::new(re / scale, im / scale))
                .collect();
            StateVector::from_amplitudes(
                &QuditRegister::qutrits(3).unwrap(),
                amps,
                &Tolerances::default(),
            )
            .ok()
        },
    )
}

proptest! {
    #[test]
    fn circuits_preserve_norm(circuit in random_circuit(12), mut state in random_state()) {
        circuit.apply(&mut state).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn matrix_route_matches_statewise_route(circuit in random_circuit(6), input in 0..27usize) {
        let unitary = circuit.unitary().unwrap();
        let mut state = StateVector::basis_index(&circuit.register, input);
        circuit.apply(&mut state).unwrap();
        for row in 0..27 {
            prop_assert!((state.amplitude(row) - unitary.get(row, input)).norm() < 1e-10);
        }
    }

    #[test]
    fn circuit_text_round_trips_exactly(circuit in random_circuit(10)) {
        let text = circuit.to_text();
        let parsed = Circuit::from_text(&text).unwrap();
        prop_assert_eq!(&parsed.register, &circuit.register);
        prop_assert_eq!(parsed.role_map, circuit.role_map);
        prop_assert_eq!(parsed.ops().len(), circuit.ops().len());
        for (a, b) in parsed.ops().iter().zip(circuit.ops()) {
            prop_assert_eq!(&a.gate.name, &b.gate.name);
            prop_assert_eq!(&a.sites, &b.sites);
            prop_assert!(a.gate.matrix.approx_eq(&b.gate.matrix, 1e-15));
        }
        prop_assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn reset_kraus_sets_are_trace_preserving(epsilon in 0.0..=1.0f64) {
        let channel = ResetChannel::new(epsilon).unwrap();
        let mut sum = Array2::<C64>::zeros((3, 3));
        for k in channel.kraus() {
            let dagger = k.t().mapv(|z| z.conj());
            sum = sum + dagger.dot(&k);
        }
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c { 1.0 } else { 0.0 };
                prop_assert!((sum[(r, c)] - C64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn trajectory_resets_land_in_the_qubit_levels(
        state in random_state(),
        epsilon in 0.0..=1.0f64,
        seed in any::<u64>(),
        site in 0..3usize,
    ) {
        let channel = ResetChannel::new(epsilon).unwrap();
        let mut state = state;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        channel.apply_trajectory(&mut state, site, &mut rng).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-9);
        prop_assert!(state.population(site, 2) < 1e-18);
    }

    #[test]
    fn gate_sequence_budgets_are_additive(
        single in 0.0..1e4f64,
        two in 0.0..1e4f64,
        exclusive in 0.0..1e4f64,
        reset in 0.0..1e4f64,
    ) {
        let budget = timing::mf_budget(single, two, exclusive, reset).unwrap();
        prop_assert_eq!(budget.total_ns, single + two + exclusive + reset);
        prop_assert_eq!(budget.relevant_sum(), budget.total_ns);
    }

    #[test]
    fn analytic_stages_stay_normalized(theta2 in -10.0..10.0f64, mix in 0.0..std::f64::consts::FRAC_PI_2) {
        let alpha = mix.cos();
        let beta = mix.sin();
        let stages = qec::analytic_amplitudes(theta2, alpha, beta);
        for amps in [&stages.post_error, &stages.post_decode, &stages.post_toffoli] {
            let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            prop_assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_angle_stages_reduce_to_the_codeword(mix in 0.0..std::f64::consts::FRAC_PI_2) {
        let alpha = mix.cos();
        let beta = mix.sin();
        let stages = qec::analytic_amplitudes(0.0, alpha, beta);
        let encoded = qec::encode(alpha, beta, &Tolerances::default()).unwrap();
        for k in 0..27 {
            prop_assert!((stages.post_error[k] - encoded.amplitude(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn decoding_undoes_encoding(mix in 0.0..std::f64::consts::FRAC_PI_2) {
        let alpha = mix.cos();
        let beta = mix.sin();
        let mut state = qec::encode(alpha, beta, &Tolerances::default()).unwrap();
        qec::decode_circuit().apply(&mut state).unwrap();
        prop_assert!((state.amplitude(0) - C64::new(alpha, 0.0)).norm() < 1e-12);
        prop_assert!((state.amplitude(3) - C64::new(beta, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn repetition_rate_inverts_the_total(total in 1.0..1e6f64) {
        let budget = timing::mf_budget(total, 0.0, 0.0, 0.0).unwrap();
        let rate = timing::repetition_rate(&budget).unwrap();
        prop_assert!((rate * budget.total_ns - 1000.0).abs() < 1e-9);
    }
}
