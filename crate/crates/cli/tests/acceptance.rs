//! End-to-end acceptance checks, one test per headline guarantee. Each
//! test prints a PASS line with its measured figures, so running with
//! `--nocapture` doubles as a short report.

use std::process::Command;
use std::time::Instant;

use tritforge_core::catalog;
use tritforge_core::density::DensityOperator;
use tritforge_core::gates;
use tritforge_core::qec::{
    self, AxisSchedule, ErrorMode, ErrorModel, ResetChannel, SITE_A1, SITE_A2, SITE_DATA,
};
use tritforge_core::register::QuditRegister;
use tritforge_core::state::StateVector;
use tritforge_core::timing;
use tritforge_core::unitary::C64;
use tritforge_core::verify;
use tritforge_core::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn amp_close(a: C64, b: C64, eps: f64) -> bool {
    (a - b).norm() < eps
}

#[test]
fn complete_catalog_verifies_within_tolerance() {
    let start = Instant::now();
    let mut worst_dev = 0.0f64;
    let mut worst_leak = 0.0f64;
    for id in catalog::catalog_ids() {
        let entry = catalog::build(id).unwrap();
        let report = verify::check_declared(&entry, &tol()).unwrap();
        assert!(report.equivalent, "{id} failed its declared-behavior check");
        assert!(
            report.max_deviation < 1e-10,
            "{id} deviation {}",
            report.max_deviation
        );
        assert!(
            report.leakage_norm < 1e-10,
            "{id} leakage {}",
            report.leakage_norm
        );
        worst_dev = worst_dev.max(report.max_deviation);
        worst_leak = worst_leak.max(report.leakage_norm);
    }

    // The swapped-control variant implements the |10>-conditioned NOT and
    // must NOT pass as a Toffoli.
    let d1s = catalog::build("D1S").unwrap();
    let as_toffoli = verify::toffoli_equivalence(&d1s, &tol()).unwrap();
    assert!(!as_toffoli.equivalent, "D1S must not verify as a Toffoli");
    let declared = verify::check_declared(&d1s, &tol()).unwrap();
    assert!(declared.equivalent, "D1S must match its declared behavior");

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "catalog verification took {elapsed:?}, budget is 1 s"
    );
    println!(
        "PASS catalog correctness: 14 entries equivalent, worst dev {worst_dev:.2e}, \
         worst leak {worst_leak:.2e}, D1S rejected as Toffoli, {elapsed:?}"
    );
}

#[test]
fn advertised_gate_counts_hold() {
    for id in ["A1", "B1", "C1"] {
        let entry = catalog::build(id).unwrap();
        assert_eq!(entry.circuit.two_site_count(), 3, "{id} two-site count");
    }
    for id in ["A2", "B2", "C2"] {
        let entry = catalog::build(id).unwrap();
        assert_eq!(entry.circuit.two_site_count(), 3, "{id} two-site count");
        assert_eq!(
            entry.circuit.count_named("CX[1;01]"),
            3,
            "{id} should use exactly three conventional CNOTs"
        );
    }
    assert_eq!(catalog::build("D2").unwrap().circuit.two_site_count(), 5);
    assert_eq!(catalog::build("D3").unwrap().circuit.two_site_count(), 3);

    for id in ["A1", "A2", "B1", "B2", "B3", "C1", "C2", "C3"] {
        let entry = catalog::incomplete(id).unwrap();
        assert_eq!(
            entry.circuit.two_site_count(),
            2,
            "truncated {id} should drop to two two-site gates"
        );
    }

    let reference = catalog::build("REF10CX").unwrap();
    assert_eq!(reference.circuit.count_named("CNOT"), 10);
    assert_eq!(reference.circuit.single_site_count(), 9);
    assert_eq!(reference.circuit.depth(), 15);

    println!(
        "PASS gate counts: lift forms 3, CNOT forms 3x CNOT, D2 5, D3 3, \
         truncated forms 2, reference 10 CNOT / 9 single / depth 15"
    );
}

#[test]
fn truncated_variants_act_correctly_and_stay_pure() {
    let bound = Tolerances::with_equivalence(1e-9);
    let mut worst = 0.0f64;
    let mut count = 0;
    for id in catalog::incomplete_ids() {
        let entry = catalog::incomplete(id).unwrap();
        let report = verify::check_declared(&entry, &bound).unwrap();
        assert!(
            report.equivalent,
            "truncated {id} failed: deviation {}",
            report.max_deviation
        );
        // The deviation folds in 1-purity and 1-fidelity over the random
        // target battery, so this bound is the purity bound.
        assert!(report.max_deviation <= 1e-9, "truncated {id} purity");
        worst = worst.max(report.max_deviation);
        count += 1;
    }
    println!(
        "PASS truncated correctness: {count} variants, 20 random targets each, \
         worst combined deviation {worst:.2e}"
    );
}

#[test]
fn control_ladder_scales_to_five_controls() {
    let start = Instant::now();
    for n in 2..=5 {
        let entry = catalog::n_controlled(n).unwrap();
        let report = verify::check_declared(&entry, &tol()).unwrap();
        assert!(report.equivalent, "{n}-controlled ladder failed");
        assert!(
            report.max_deviation < 1e-10,
            "{n}-controlled deviation {}",
            report.max_deviation
        );
        assert_eq!(
            entry.circuit.two_site_count(),
            2 * n - 1,
            "{n}-controlled two-site count"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "ladder verification took {elapsed:?}, budget is 5 s"
    );
    println!(
        "PASS control ladder: n = 2..=5 match the oracle with 2n-1 two-site gates, {elapsed:?}"
    );
}

#[test]
fn error_stages_match_closed_forms_across_sweep() {
    let (alpha, beta) = (0.6, 0.8);
    let idx = |a1: usize, d: usize, a2: usize| 9 * a1 + 3 * d + a2;
    let mut worst = 0.0f64;

    for k in 0..32 {
        let theta2 = k as f64 * std::f64::consts::TAU / 32.0;
        let stages = qec::analytic_amplitudes(theta2, alpha, beta);
        let mut state = qec::encode(alpha, beta, &tol()).unwrap();
        state
            .apply_gate(&gates::rx_error(theta2).matrix, &[SITE_DATA])
            .unwrap();
        for j in 0..27 {
            worst = worst.max((state.amplitude(j) - stages.post_error[j]).norm());
        }
        qec::decode_circuit().apply(&mut state).unwrap();
        for j in 0..27 {
            worst = worst.max((state.amplitude(j) - stages.post_decode[j]).norm());
        }
        qec::correction_circuit(qec::DEFAULT_DECOMPOSITION, 0.0)
            .unwrap()
            .apply(&mut state)
            .unwrap();
        for j in 0..27 {
            worst = worst.max((state.amplitude(j) - stages.post_toffoli[j]).norm());
        }
    }
    assert!(worst < 1e-10, "stage sweep deviation {worst}");

    // Single ancilla errors: decoding must localize them as
    // (A1, A2) = (1, 0) for the first ancilla and (0, 1) for the second,
    // leaving the data factor untouched.
    for k in 1..32 {
        let theta = k as f64 * std::f64::consts::TAU / 32.0;
        let c = C64::new((theta / 2.0).cos(), 0.0);
        let mi_s = C64::new(0.0, -(theta / 2.0).sin());
        for (site, lifted) in [(SITE_A1, idx(1, 0, 0)), (SITE_A2, idx(0, 0, 1))] {
            let mut state = qec::encode(alpha, beta, &tol()).unwrap();
            state
                .apply_gate(&gates::rx_error(theta).matrix, &[site])
                .unwrap();
            qec::decode_circuit().apply(&mut state).unwrap();
            let data_shift = if site == SITE_A1 {
                idx(1, 1, 0)
            } else {
                idx(0, 1, 1)
            };
            let expected = [
                (idx(0, 0, 0), c * alpha),
                (idx(0, 1, 0), c * beta),
                (lifted, mi_s * alpha),
                (data_shift, mi_s * beta),
            ];
            for j in 0..27 {
                let want = expected
                    .iter()
                    .find(|(at, _)| *at == j)
                    .map_or(C64::new(0.0, 0.0), |(_, v)| *v);
                assert!(
                    amp_close(state.amplitude(j), want, 1e-10),
                    "ancilla error site {site} theta {theta} amp {j}"
                );
            }
        }
    }
    println!("PASS stage oracle: 32-point sweep worst deviation {worst:.2e}, ancilla patterns (1,0)/(0,1)");
}

#[test]
fn single_errors_correct_perfectly_and_survive_reset_failures() {
    let ideal = ResetChannel::ideal();
    let angles: Vec<f64> = (1..=8)
        .map(|k| k as f64 * std::f64::consts::TAU / 8.0)
        .collect();

    // Site swept per cycle by the rotating schedule.
    for &theta in &angles {
        let model = ErrorModel {
            mode: ErrorMode::RotateSite { theta },
            axis_schedule: AxisSchedule::Alternating,
            seed: 0,
        };
        let report = qec::run_protocol(0.6, 0.8, 10, "B3", &model, &ideal, 0.0, &tol()).unwrap();
        for rec in &report.records {
            assert!(
                (rec.fidelity - 1.0).abs() < 1e-9,
                "rotating theta {theta} cycle {} fidelity {}",
                rec.cycle,
                rec.fidelity
            );
        }
    }

    // Each site individually, over the same angles.
    for site in 0..3 {
        for &theta in &angles {
            let mut thetas = [0.0; 3];
            thetas[site] = theta;
            let model = ErrorModel {
                mode: ErrorMode::FixedAngles { thetas },
                axis_schedule: AxisSchedule::Alternating,
                seed: 0,
            };
            let report =
                qec::run_protocol(0.6, 0.8, 10, "B3", &model, &ideal, 0.0, &tol()).unwrap();
            for rec in &report.records {
                assert!(
                    (rec.fidelity - 1.0).abs() < 1e-9,
                    "site {site} theta {theta} cycle {} fidelity {}",
                    rec.cycle,
                    rec.fidelity
                );
            }
        }
    }

    // Imperfect resets: averaged over many seeds the protocol must stay
    // above 0.99 mean fidelity.
    let faulty = ResetChannel::new(0.01).unwrap();
    let trials = 1000u64;
    let mut total = 0.0;
    let mut min_seen = 1.0f64;
    for seed in 0..trials {
        let model = ErrorModel {
            mode: ErrorMode::RandomSingle,
            axis_schedule: AxisSchedule::Alternating,
            seed,
        };
        let report = qec::run_protocol(0.6, 0.8, 10, "B3", &model, &faulty, 0.0, &tol()).unwrap();
        total += report.mean_fidelity;
        min_seen = min_seen.min(report.min_fidelity);
    }
    let mean = total / trials as f64;
    assert!(mean >= 0.99, "mean fidelity {mean} under 1% reset failures");
    println!(
        "PASS single-error protocol: 32 swept runs perfect, reset-failure mean {mean:.6} \
         over {trials} trials (min cycle {min_seen:.6})"
    );
}

#[test]
fn ideal_reset_channel_erases_every_input() {
    let reg = QuditRegister::qutrits(1).unwrap();
    let reset = ResetChannel::ideal();
    let ground = DensityOperator::from_pure(&StateVector::basis_state(&reg, &[0]).unwrap());

    let mut inputs: Vec<DensityOperator> = Vec::new();
    for level in 0..3 {
        inputs.push(DensityOperator::from_pure(
            &StateVector::basis_state(&reg, &[level]).unwrap(),
        ));
    }
    inputs.push(DensityOperator::maximally_mixed(&reg));
    // A parametric net over the pure-state sphere; exactly normalized by
    // construction.
    for a in 0..5 {
        for b in 0..4 {
            let (pa, pb) = (a as f64 * 0.61, b as f64 * 0.83);
            let amps = vec![
                C64::new(pa.cos(), 0.0),
                C64::from_polar(pa.sin() * pb.cos(), 1.3 * pb),
                C64::from_polar(pa.sin() * pb.sin(), 0.7 * pa),
            ];
            let state = StateVector::from_amplitudes(&reg, amps, &tol()).unwrap();
            inputs.push(DensityOperator::from_pure(&state));
        }
    }

    let mut worst = 0.0f64;
    for mut rho in inputs {
        reset.apply_channel(&mut rho, 0).unwrap();
        worst = worst.max(rho.max_abs_diff(&ground));
    }
    assert!(worst < 1e-12, "ideal reset residue {worst}");
    println!("PASS reset totality: 24 inputs erased to the ground state, residue {worst:.2e}");
}

#[test]
fn cycle_budgets_reproduce_the_headline_figures() {
    let mf = timing::mf_budget_default();
    assert_eq!(mf.total_ns, 525.0, "gate-sequence total");
    let rate = timing::repetition_rate(&mf).unwrap();
    assert!((rate - 1000.0 / 525.0).abs() < 1e-12);
    assert!((rate - 1.905).abs() < 1e-3, "repetition rate {rate}");
    assert!(rate >= 1.0, "repetition rate {rate} below 1 MHz");

    let mb = timing::mb_budget();
    assert_eq!(mb.total_ns, 1400.0, "feedback-loop total");
    let gain = timing::speedup(&mf, &mb);
    assert!((gain - 1400.0 / 525.0).abs() < 1e-12);
    assert!((gain - 2.667).abs() < 1e-3, "speedup {gain}");

    let fast_reset = timing::mf_budget(30.0, 90.0, 125.0, 80.0).unwrap();
    assert_eq!(fast_reset.total_ns, 325.0, "fast-reset total");

    println!(
        "PASS timing: 525 ns total, {rate:.3} MHz, speedup {gain:.3}x, 80 ns reset gives 325 ns"
    );
}

#[test]
fn occupancy_costs_meet_their_bounds() {
    let mut applicable = 0;
    for id in catalog::catalog_ids() {
        let entry = catalog::build(id).unwrap();
        if !entry.tau_applicable {
            continue;
        }
        let report = verify::tau_metric(&entry).unwrap();
        assert_eq!(report.per_input["00"], 0.0, "{id} must idle on 00");
        applicable += 1;
    }

    let tau = |id: &str| verify::tau_metric(&catalog::build(id).unwrap()).unwrap();
    let (b1, b2, b3) = (tau("B1"), tau("B2"), tau("B3"));
    let (c2, c3) = (tau("C2"), tau("C3"));
    assert!(b3.tau_max <= b2.tau_max, "hybrid B3 must not exceed B2");
    assert!(c3.tau_max <= c2.tau_max, "hybrid C3 must not exceed C2");
    assert_eq!(b1.per_input["11"], 2.0, "B1 lift cost on 11");

    println!(
        "PASS occupancy costs: {applicable} entries idle on 00, B3 {} <= B2 {}, \
         C3 {} <= C2 {}, B1[11] = 2.0",
        b3.tau_max, b2.tau_max, c3.tau_max, c2.tau_max
    );
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_tritforge"))
        .args(args)
        .env_remove("TRITFORGE_SEED")
        .output()
        .expect("binary runs")
}

#[test]
fn cli_output_is_byte_deterministic() {
    let invocations: Vec<Vec<&str>> = vec![
        vec![
            "qec",
            "--random-single",
            "--cycles",
            "8",
            "--seed",
            "123",
            "--eps-reset",
            "0.02",
            "--format",
            "json",
        ],
        vec![
            "qec",
            "--random-single",
            "--cycles",
            "8",
            "--seed",
            "123",
            "--eps-reset",
            "0.02",
            "--format",
            "csv",
        ],
        vec![
            "qec",
            "--p-error",
            "0.3",
            "--cycles",
            "6",
            "--seed",
            "9",
            "--format",
            "csv",
        ],
        vec!["verify", "--all", "--format", "csv"],
        vec!["verify", "--all", "--format", "json"],
        vec!["tau", "--all", "--format", "csv"],
        vec!["timing", "--format", "json"],
        vec!["list", "--format", "csv"],
    ];
    for args in &invocations {
        let first = run_cli(args);
        let second = run_cli(args);
        assert!(first.status.success(), "{args:?} failed");
        assert_eq!(first.status.code(), second.status.code());
        assert_eq!(
            first.stdout, second.stdout,
            "stdout bytes differ for {args:?}"
        );
    }
    println!(
        "PASS determinism: {} invocations repeated byte-identically",
        invocations.len()
    );
}
