//! Checkers and oracles: qubit-subspace equivalence up to one global phase,
//! truncated-variant correctness, the |2>-occupancy cost metric, and
//! diagnostic truth tables.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::catalog::{DeclaredBehavior, DecompositionEntry};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::state::StateVector;
use crate::tolerance::Tolerances;
use crate::unitary::{Unitary, C64};

/// Outcome of an equivalence or incomplete check.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EquivalenceReport {
    pub id: String,
    pub equivalent: bool,
    /// The single fitted phase (radians); equivalence demands one phase fit
    /// every input simultaneously.
    pub global_phase: f64,
    pub max_deviation: f64,
    /// Worst amplitude norm escaping the qubit subspace (complete checks)
    /// or the worst target-site |2> amplitude norm (incomplete checks).
    pub leakage_norm: f64,
    pub checked_inputs: usize,
    /// Input attaining max_deviation, as a digit string.
    pub worst_input: Option<String>,
}

/// Per-control-input |2>-occupancy cost in two-site-gate units.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TauReport {
    pub id: String,
    pub per_input: BTreeMap<String, f64>,
    pub tau_max: f64,
}

/// One diagnostic truth-table row; `output` is None when the circuit sends
/// the input to a superposition rather than a basis state.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TruthRow {
    pub input: String,
    pub output: Option<String>,
    pub phase_re: f64,
    pub phase_im: f64,
}

/// Permutation on n+1 qubits flipping the last iff the first n are all |1>.
pub fn oracle_multi_controlled_x(n: usize) -> Unitary {
    let dim = 1usize << (n + 1);
    let mut perm = Vec::with_capacity(dim);
    let controls_mask = ((1usize << n) - 1) << 1;
    for col in 0..dim {
        // Bit 0 is the target (least significant = last site).
        let row = if col & controls_mask == controls_mask {
            col ^ 1
        } else {
            col
        };
        perm.push(row);
    }
    Unitary::permutation(&perm)
}

fn fire_condition(circuit: &Circuit, behavior: &DeclaredBehavior, digits: &[usize]) -> bool {
    let roles = circuit.role_map;
    match behavior {
        DeclaredBehavior::Toffoli => digits[roles.control1] == 1 && digits[roles.control2] == 1,
        DeclaredBehavior::ConditionedNot { controls } => {
            digits[roles.control1] == controls.0 as usize
                && digits[roles.control2] == controls.1 as usize
        }
        DeclaredBehavior::MultiControlled { .. } => digits
            .iter()
            .enumerate()
            .all(|(site, &d)| site == roles.target || d == 1),
    }
}

/// Checks a circuit against a declared conditioned-flip behavior on every
/// qubit-basis input, fitting one global phase across all of them.
pub fn circuit_equivalence(
    id: &str,
    circuit: &Circuit,
    behavior: &DeclaredBehavior,
    tol: &Tolerances,
) -> Result<EquivalenceReport> {
    let register = &circuit.register;
    let inputs = register.qubit_indices();
    let mut outputs = Vec::with_capacity(inputs.len());
    let mut expected = Vec::with_capacity(inputs.len());
    for &input in &inputs {
        let mut state = StateVector::basis_index(register, input);
        circuit.apply(&mut state)?;
        let mut digits = register.digits_of(input);
        if fire_condition(circuit, behavior, &digits) {
            digits[circuit.role_map.target] ^= 1;
        }
        expected.push(register.index_of(&digits)?);
        outputs.push(state);
    }
    let mut global_phase = 0.0;
    for (state, &exp) in outputs.iter().zip(&expected) {
        let amp = state.amplitude(exp);
        if amp.norm() > 0.5 {
            global_phase = amp.arg();
            break;
        }
    }
    let phase = C64::from_polar(1.0, global_phase);
    let mut max_deviation = 0.0f64;
    let mut leakage_norm = 0.0f64;
    let mut worst_input = None;
    for ((state, &exp), &input) in outputs.iter().zip(&expected).zip(&inputs) {
        let mut dev2 = 0.0;
        for k in 0..register.total_dim() {
            let target = if k == exp { phase } else { C64::new(0.0, 0.0) };
            dev2 += (state.amplitude(k) - target).norm_sqr();
        }
        let dev = dev2.sqrt();
        if dev > max_deviation {
            max_deviation = dev;
            worst_input = Some(register.format_index(input));
        }
        leakage_norm = leakage_norm.max(state.outside_qubit_norm());
    }
    Ok(EquivalenceReport {
        id: id.to_string(),
        equivalent: max_deviation < tol.equivalence && leakage_norm < tol.equivalence,
        global_phase,
        max_deviation,
        leakage_norm,
        checked_inputs: inputs.len(),
        worst_input,
    })
}

/// Full-circuit check against the doubly-controlled-NOT oracle.
pub fn toffoli_equivalence(
    entry: &DecompositionEntry,
    tol: &Tolerances,
) -> Result<EquivalenceReport> {
    if !entry.complete {
        return Err(Error::WrongChecker(format!(
            "{}: toffoli_equivalence requires a complete entry",
            entry.id
        )));
    }
    circuit_equivalence(&entry.id, &entry.circuit, &DeclaredBehavior::Toffoli, tol)
}

/// Full-circuit check against the entry's own declared conditioned flip.
pub fn conditioned_not_check(
    entry: &DecompositionEntry,
    tol: &Tolerances,
) -> Result<EquivalenceReport> {
    if !entry.complete {
        return Err(Error::WrongChecker(format!(
            "{}: conditioned_not_check requires a complete entry",
            entry.id
        )));
    }
    circuit_equivalence(&entry.id, &entry.circuit, &entry.declared, tol)
}

/// Checks an entry against whatever it declares: full equivalence for
/// complete entries, the truncated-variant check otherwise.
pub fn check_declared(entry: &DecompositionEntry, tol: &Tolerances) -> Result<EquivalenceReport> {
    if entry.complete {
        circuit_equivalence(&entry.id, &entry.circuit, &entry.declared, tol)
    } else {
        incomplete_check(entry, tol)
    }
}

/// Seed for the random target states of the incomplete check; fixed so the
/// check (and catalog construction) is deterministic.
const INCOMPLETE_CHECK_SEED: u64 = 1009;

/// Verifies a truncated variant: on every control basis pair the target
/// (basis states and 20 random superpositions) stays pure, matches the
/// conditioned-flip oracle, and the controls land exactly on the declared
/// junk levels.
pub fn incomplete_check(entry: &DecompositionEntry, tol: &Tolerances) -> Result<EquivalenceReport> {
    if entry.complete {
        return Err(Error::WrongChecker(format!(
            "{}: incomplete_check requires a truncated entry",
            entry.id
        )));
    }
    let circuit = &entry.circuit;
    let register = &circuit.register;
    let roles = circuit.role_map;
    let mut rng = ChaCha12Rng::seed_from_u64(INCOMPLETE_CHECK_SEED);
    let mut targets: Vec<[C64; 2]> = vec![
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
    ];
    for _ in 0..20 {
        let polar: f64 = rng.random_range(0.0..std::f64::consts::PI);
        let azimuth: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        targets.push([
            C64::new((polar / 2.0).cos(), 0.0),
            C64::from_polar((polar / 2.0).sin(), azimuth),
        ]);
    }
    let mut max_deviation = 0.0f64;
    let mut leakage_norm = 0.0f64;
    let mut worst_input = None;
    let mut checked = 0;
    for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let mut digits = vec![0usize; register.num_sites()];
        digits[roles.control1] = a as usize;
        digits[roles.control2] = b as usize;
        let fires = {
            digits[roles.target] = 0;
            fire_condition(circuit, &entry.declared, &digits)
        };
        let junk = entry
            .junk_pattern
            .as_ref()
            .and_then(|map| map.get(&(a, b)).copied());
        for amps in &targets {
            let mut full = vec![C64::new(0.0, 0.0); register.total_dim()];
            for (t, &amp) in amps.iter().enumerate() {
                digits[roles.target] = t;
                full[register.index_of(&digits)?] = amp;
            }
            let mut state = StateVector::from_amplitudes(register, full, tol)?;
            circuit.apply(&mut state)?;
            checked += 1;
            let expect = if fires {
                [amps[1], amps[0], C64::new(0.0, 0.0)]
            } else {
                [amps[0], amps[1], C64::new(0.0, 0.0)]
            };
            let reduced = crate::density::reduced_density(&state, &[roles.target])?;
            let mut dev = (1.0 - reduced.purity()).max(1.0 - reduced.fidelity_pure(&expect));
            if let Some((j1, j2)) = junk {
                let mut prob = 0.0;
                for idx in 0..register.total_dim() {
                    let d = register.digits_of(idx);
                    if d[roles.control1] == j1 as usize && d[roles.control2] == j2 as usize {
                        prob += state.amplitude(idx).norm_sqr();
                    }
                }
                dev = dev.max(1.0 - prob);
            }
            if dev > max_deviation {
                max_deviation = dev;
                worst_input = Some(format!("{a}{b}"));
            }
            leakage_norm = leakage_norm.max(state.population(roles.target, 2).sqrt());
        }
    }
    Ok(EquivalenceReport {
        id: entry.id.clone(),
        equivalent: max_deviation < tol.equivalence && leakage_norm < tol.equivalence,
        global_phase: 0.0,
        max_deviation,
        leakage_norm,
        checked_inputs: checked,
        worst_input,
    })
}

/// The |2>-occupancy cost metric, in two-site-gate time units.
///
/// For each control basis input (target |0>), the circuit is stepped op by
/// op; single-site gates are free. A two-site op on the (control1, control2)
/// pair counts only when its control condition is met: half weight if it
/// moves Q2's |2> population (entering or leaving mid-gate), full weight if
/// Q2 sits in |2> throughout. Any other two-site op counts full weight while
/// Q2's |2> population exceeds one half (half if the op moves it).
pub fn tau_metric(entry: &DecompositionEntry) -> Result<TauReport> {
    if !entry.tau_applicable {
        return Err(Error::TauNotApplicable(entry.id.clone()));
    }
    let circuit = &entry.circuit;
    let register = &circuit.register;
    let roles = circuit.role_map;
    let mut per_input = BTreeMap::new();
    let mut tau_max = 0.0f64;
    for (a, b) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        let mut digits = vec![0usize; register.num_sites()];
        digits[roles.control1] = a;
        digits[roles.control2] = b;
        let mut state = StateVector::basis_state(register, &digits)?;
        let mut tau = 0.0;
        for op in circuit.ops() {
            let weight = op.gate.duration_weight;
            let active = match &op.gate.control {
                Some(spec) => {
                    let site = op.sites[spec.slot];
                    let p: f64 = spec
                        .levels
                        .iter()
                        .map(|&level| state.population(site, level))
                        .sum();
                    p > 0.5
                }
                None => true,
            };
            let before = state.population(roles.control2, 2);
            state.apply_gate(&op.gate.matrix, &op.sites)?;
            let after = state.population(roles.control2, 2);
            if weight == 0.0 {
                continue;
            }
            if op.acts_on_pair(roles.control1, roles.control2) && !active {
                continue;
            }
            if (after - before).abs() > 0.5 {
                tau += 0.5 * weight;
            } else if before > 0.5 {
                tau += weight;
            }
        }
        per_input.insert(format!("{a}{b}"), tau);
        tau_max = tau_max.max(tau);
    }
    Ok(TauReport {
        id: entry.id.clone(),
        per_input,
        tau_max,
    })
}

/// Diagnostic truth table over every full basis input.
pub fn truth_table(entry: &DecompositionEntry) -> Result<Vec<TruthRow>> {
    let circuit = &entry.circuit;
    let register = &circuit.register;
    let mut rows = Vec::with_capacity(register.total_dim());
    for input in 0..register.total_dim() {
        let mut state = StateVector::basis_index(register, input);
        circuit.apply(&mut state)?;
        let (best, amp) = (0..register.total_dim())
            .map(|k| (k, state.amplitude(k)))
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            .expect("non-empty state");
        let row = if amp.norm() > 1.0 - 1e-10 {
            let phase = amp / amp.norm();
            TruthRow {
                input: register.format_index(input),
                output: Some(register.format_index(best)),
                phase_re: phase.re,
                phase_im: phase.im,
            }
        } else {
            TruthRow {
                input: register.format_index(input),
                output: None,
                phase_re: 0.0,
                phase_im: 0.0,
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn oracle_n1_is_the_plain_cnot() {
        let oracle = oracle_multi_controlled_x(1);
        assert_eq!(oracle.dim(), 4);
        let cnot = Unitary::permutation(&[0, 1, 3, 2]);
        assert!(oracle.approx_eq(&cnot, 1e-15));
    }

    #[test]
    fn oracle_n2_flips_only_the_full_control_pair() {
        let oracle = oracle_multi_controlled_x(2);
        assert_eq!(oracle.dim(), 8);
        for col in 0..8 {
            let row = if col >= 6 { col ^ 1 } else { col };
            assert_eq!(oracle.get(row, col).re, 1.0, "col {col}");
        }
    }

    #[test]
    fn b1_matches_the_toffoli_oracle_exactly() {
        let entry = catalog::build("B1").unwrap();
        let report = toffoli_equivalence(&entry, &Tolerances::default()).unwrap();
        assert!(report.equivalent);
        assert_eq!(report.global_phase, 0.0);
        assert!(report.max_deviation < 1e-12);
        assert!(report.leakage_norm < 1e-12);
        assert_eq!(report.checked_inputs, 8);
    }

    #[test]
    fn d1s_is_the_swapped_conditioned_not_and_not_a_toffoli() {
        let entry = catalog::build("D1S").unwrap();
        let tol = Tolerances::default();
        let declared = conditioned_not_check(&entry, &tol).unwrap();
        assert!(declared.equivalent);
        let toffoli = toffoli_equivalence(&entry, &tol).unwrap();
        assert!(!toffoli.equivalent);
        assert!(toffoli.max_deviation > 1.0);
    }

    #[test]
    fn uncompensated_iswap_fails_on_the_01_branch() {
        let raw = catalog::iswap_uncompensated_circuit().unwrap();
        let report = circuit_equivalence(
            "ISWAP-raw",
            &raw,
            &DeclaredBehavior::Toffoli,
            &Tolerances::default(),
        )
        .unwrap();
        assert!(!report.equivalent);
        assert!((report.max_deviation - 2.0).abs() < 1e-10);
        let worst = report.worst_input.unwrap();
        assert_eq!(&worst[..2], "01");
    }

    #[test]
    fn wrong_checker_guards_both_directions() {
        let complete = catalog::build("B1").unwrap();
        let truncated = catalog::incomplete("B1").unwrap();
        let tol = Tolerances::default();
        assert!(matches!(
            incomplete_check(&complete, &tol),
            Err(Error::WrongChecker(_))
        ));
        assert!(matches!(
            toffoli_equivalence(&truncated, &tol),
            Err(Error::WrongChecker(_))
        ));
    }

    #[test]
    fn incomplete_b1_leaves_q2_lifted_on_full_controls() {
        let entry = catalog::incomplete("B1").unwrap();
        let report = incomplete_check(&entry, &Tolerances::with_equivalence(1e-9)).unwrap();
        assert!(report.equivalent);
        let junk = entry.junk_pattern.as_ref().unwrap();
        assert_eq!(junk[&(1, 1)], (1, 2));
    }

    #[test]
    fn tau_of_b1_charges_only_the_full_control_input() {
        let entry = catalog::build("B1").unwrap();
        let report = tau_metric(&entry).unwrap();
        assert_eq!(report.per_input["00"], 0.0);
        assert_eq!(report.per_input["01"], 0.0);
        assert_eq!(report.per_input["10"], 0.0);
        assert_eq!(report.per_input["11"], 2.0);
        assert_eq!(report.tau_max, 2.0);
    }

    #[test]
    fn tau_of_a2_reflects_parked_and_shuttled_branches() {
        let entry = catalog::build("A2").unwrap();
        let report = tau_metric(&entry).unwrap();
        assert_eq!(report.per_input["00"], 0.0);
        assert_eq!(report.per_input["01"], 1.0);
        assert_eq!(report.per_input["10"], 2.0);
        assert_eq!(report.per_input["11"], 0.0);
    }

    #[test]
    fn tau_rejects_non_qutrit_entries() {
        for id in ["ISWAP", "REF10CX"] {
            let entry = catalog::build(id).unwrap();
            assert!(matches!(
                tau_metric(&entry),
                Err(Error::TauNotApplicable(_))
            ));
        }
    }

    #[test]
    fn truth_table_reports_basis_outputs_with_phases() {
        let entry = catalog::build("D1").unwrap();
        let rows = truth_table(&entry).unwrap();
        let by_input: BTreeMap<&str, &TruthRow> =
            rows.iter().map(|r| (r.input.as_str(), r)).collect();
        let flipped = by_input["110"];
        assert_eq!(flipped.output.as_deref(), Some("111"));
        assert!((flipped.phase_re - 1.0).abs() < 1e-12);
        assert!(flipped.phase_im.abs() < 1e-12);
        // Every gate in the shift form is a permutation, so even inputs
        // outside the qubit subspace land on basis states.
        assert!(rows.iter().all(|r| r.output.is_some()));
    }
}
