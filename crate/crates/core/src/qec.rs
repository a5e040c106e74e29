//! Measurement-free error correction on a three-qutrit repetition block:
//! encode one logical qubit across |A1 D A2>, inject rotation errors, decode
//! the syndrome onto the ancillae, consume it coherently with a truncated
//! doubly-controlled flip, reset the ancillae unconditionally, and repeat
//! with alternating bit/phase bases.

use ndarray::Array2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::catalog;
use crate::circuit::{Circuit, RoleMap};
use crate::density::{reduced_density, DensityOperator};
use crate::error::{Error, Result};
use crate::gates;
use crate::register::QuditRegister;
use crate::state::StateVector;
use crate::tolerance::Tolerances;
use crate::unitary::C64;

/// First ancilla; most significant register digit.
pub const SITE_A1: usize = 0;
/// The data qutrit sits between the ancillae.
pub const SITE_DATA: usize = 1;
/// Second ancilla; least significant register digit.
pub const SITE_A2: usize = 2;

/// Correction uses this truncated decomposition unless told otherwise; its
/// lifted-control relabeling fixes both all-zero and all-one syndromes.
pub const DEFAULT_DECOMPOSITION: &str = "B3";

/// Data entangled with the ancillae beyond this purity deficit at reset
/// time means the unconditional reset would damage the data.
const ENTANGLED_RESET_TOL: f64 = 1e-9;

/// Residual amplitude norm outside the qubit subspace after a full cycle
/// above this flags the cycle as leaky.
const LEAKAGE_TOL: f64 = 1e-9;

const STREAM_INJECT: u64 = 0;
const STREAM_RESET: u64 = 1;

/// Which single-site rotation axis a cycle guards against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Bit,
    Phase,
}

impl Basis {
    pub fn label(self) -> &'static str {
        match self {
            Basis::Bit => "bit",
            Basis::Phase => "phase",
        }
    }
}

/// Per-cycle basis assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisSchedule {
    Bit,
    Phase,
    Alternating,
}

impl AxisSchedule {
    pub fn basis_for(self, cycle: usize) -> Basis {
        match self {
            AxisSchedule::Bit => Basis::Bit,
            AxisSchedule::Phase => Basis::Phase,
            AxisSchedule::Alternating => {
                if cycle.is_multiple_of(2) {
                    Basis::Bit
                } else {
                    Basis::Phase
                }
            }
        }
    }
}

/// How error rotations are chosen each cycle.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorMode {
    /// Fixed angles (theta1, theta2, theta3) on sites (A1, D, A2).
    FixedAngles { thetas: [f64; 3] },
    /// One fixed angle on site `cycle mod 3`, sweeping the block.
    RotateSite { theta: f64 },
    /// One uniformly random site with a uniformly random angle.
    RandomSingle,
    /// Each site independently errs with probability `p_error`, at a
    /// uniformly random angle.
    RandomIndependent { p_error: f64 },
}

/// Full error-injection policy: what to rotate, along which axis per cycle,
/// and the master randomness seed.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ErrorModel {
    pub mode: ErrorMode,
    pub axis_schedule: AxisSchedule,
    pub seed: u64,
}

impl ErrorModel {
    pub fn validate(&self) -> Result<()> {
        match &self.mode {
            ErrorMode::FixedAngles { thetas } => {
                if thetas.iter().any(|t| !t.is_finite()) {
                    return Err(Error::Config("error angles must be finite".to_string()));
                }
            }
            ErrorMode::RotateSite { theta } => {
                if !theta.is_finite() {
                    return Err(Error::Config("error angle must be finite".to_string()));
                }
            }
            ErrorMode::RandomSingle => {}
            ErrorMode::RandomIndependent { p_error } => {
                if !(0.0..=1.0).contains(p_error) {
                    return Err(Error::Config(format!(
                        "p_error {p_error} must lie in [0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Unconditional qutrit reset: both excited levels are pumped toward |0>,
/// and a failure leaves the excited population in |1> instead.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ResetChannel {
    pub epsilon: f64,
    pub duration_ns: f64,
}

impl Default for ResetChannel {
    fn default() -> Self {
        Self {
            epsilon: 0.01,
            duration_ns: 280.0,
        }
    }
}

impl ResetChannel {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::Config(format!(
                "reset failure probability {epsilon} must lie in [0, 1]"
            )));
        }
        Ok(Self {
            epsilon,
            duration_ns: 280.0,
        })
    }

    pub fn ideal() -> Self {
        Self {
            epsilon: 0.0,
            duration_ns: 280.0,
        }
    }

    /// The five single-qutrit Kraus operators: |0><0|, sqrt(1-e)|0><1|,
    /// sqrt(1-e)|0><2|, sqrt(e)|1><1|, sqrt(e)|1><2|. They sum to identity
    /// under K^dag K, drain both excited levels at e=0, and model failure
    /// as excited population stranded in |1>.
    pub fn kraus(&self) -> Vec<Array2<C64>> {
        let e = self.epsilon;
        [
            (0usize, 0usize, 1.0),
            (0, 1, 1.0 - e),
            (0, 2, 1.0 - e),
            (1, 1, e),
            (1, 2, e),
        ]
        .iter()
        .map(|&(to, from, weight)| {
            let mut m = Array2::zeros((3, 3));
            m[(to, from)] = C64::new(f64::sqrt(weight), 0.0);
            m
        })
        .collect()
    }

    /// Exact channel action on one site of a density operator.
    pub fn apply_channel(&self, rho: &mut DensityOperator, site: usize) -> Result<()> {
        rho.apply_kraus(&self.kraus(), site)
    }

    /// Monte Carlo branch: samples one Kraus operator by its Born weight,
    /// applies it, renormalizes, and returns the branch index. Consumes
    /// exactly one random draw regardless of outcome.
    pub fn apply_trajectory(
        &self,
        state: &mut StateVector,
        site: usize,
        rng: &mut impl Rng,
    ) -> Result<usize> {
        let e = self.epsilon;
        let p1 = state.population(site, 1);
        let p2 = state.population(site, 2);
        let probs = [
            state.population(site, 0),
            (1.0 - e) * p1,
            (1.0 - e) * p2,
            e * p1,
            e * p2,
        ];
        let draw: f64 = rng.random();
        let mut fallback = 0;
        let mut branch = None;
        let mut acc = 0.0;
        for (k, &p) in probs.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            fallback = k;
            acc += p;
            if draw < acc {
                branch = Some(k);
                break;
            }
        }
        let branch = branch.unwrap_or(fallback);
        state.apply_matrix(&self.kraus()[branch], &[site])?;
        state.renormalize();
        Ok(branch)
    }
}

/// Diagnostics from one correction pass.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CycleDiagnostics {
    /// Purity of the data site's reduced state just before the resets.
    pub pre_reset_data_purity: f64,
    /// True when that purity deficit exceeds tolerance: the unconditional
    /// ancilla reset would then damage the data.
    pub entangled_reset_warning: bool,
    /// Kraus branch taken by each ancilla reset (A1, A2).
    pub reset_branches: [usize; 2],
}

/// One cycle's log line.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CycleRecord {
    pub cycle: usize,
    pub basis: String,
    pub error_sites: Vec<usize>,
    pub thetas: Vec<f64>,
    pub fidelity: f64,
    pub leakage_flag: bool,
}

/// Full protocol outcome.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FidelityReport {
    pub decomposition: String,
    pub cycles: usize,
    pub seed: u64,
    pub records: Vec<CycleRecord>,
    pub per_cycle_fidelity: Vec<f64>,
    pub final_fidelity: f64,
    pub mean_fidelity: f64,
    pub min_fidelity: f64,
    pub leakage_events: usize,
    pub entangled_reset_warnings: usize,
}

impl FidelityReport {
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// CSV with '.' decimals and LF endings; multi-valued fields join with
    /// ';' so the column count stays fixed.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("cycle,basis,error_sites,theta,fidelity,leakage_flag\n");
        for rec in &self.records {
            let sites = rec
                .error_sites
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(";");
            let thetas = rec
                .thetas
                .iter()
                .map(|t| format!("{t:.12}"))
                .collect::<Vec<_>>()
                .join(";");
            out.push_str(&format!(
                "{},{},{},{},{:.12},{}\n",
                rec.cycle,
                rec.basis,
                sites,
                thetas,
                rec.fidelity,
                u8::from(rec.leakage_flag)
            ));
        }
        out
    }
}

fn qec_register() -> QuditRegister {
    QuditRegister::qutrits(3).expect("three qutrits are valid")
}

fn qec_roles() -> RoleMap {
    RoleMap::new(SITE_A1, SITE_A2, SITE_DATA)
}

/// Two data-controlled flips copy the data value onto both ancillae.
pub fn encode_circuit() -> Circuit {
    let mut circuit = Circuit::new(qec_register(), qec_roles());
    circuit
        .push(gates::cnot(), &[SITE_DATA, SITE_A1])
        .expect("encode gate placement is fixed");
    circuit
        .push(gates::cnot(), &[SITE_DATA, SITE_A2])
        .expect("encode gate placement is fixed");
    circuit
}

/// Decoding repeats the encoding pair (each flip is self-inverse), moving
/// the syndrome onto the ancillae.
pub fn decode_circuit() -> Circuit {
    encode_circuit()
}

/// alpha|000> + beta|111> from the data amplitudes (alpha, beta).
pub fn encode(alpha: f64, beta: f64, tol: &Tolerances) -> Result<StateVector> {
    let register = qec_register();
    let mut amps = vec![C64::new(0.0, 0.0); register.total_dim()];
    amps[register.index_of(&[0, 0, 0])?] = C64::new(alpha, 0.0);
    amps[register.index_of(&[0, 1, 0])?] = C64::new(beta, 0.0);
    let mut state = StateVector::from_amplitudes(&register, amps, tol)?;
    encode_circuit().apply(&mut state)?;
    Ok(state)
}

/// The truncated decomposition rewired onto |A1 D A2>: control1 stays on
/// A1, control2 moves to A2, the target sits on the data site. A nonzero
/// `eps_cnot` swaps the central exclusive flip for the leaky hardware
/// variant; only decompositions whose center is the plain conditional flip
/// accept that substitution.
pub fn correction_circuit(decomposition_id: &str, eps_cnot: f64) -> Result<Circuit> {
    let entry = catalog::incomplete(decomposition_id)?;
    let remapped = entry.circuit.remap_sites(&[SITE_A1, SITE_A2, SITE_DATA])?;
    if eps_cnot == 0.0 {
        return Ok(remapped);
    }
    if !eps_cnot.is_finite() {
        return Err(Error::Config("eps_cnot must be finite".to_string()));
    }
    let mut rebuilt = Circuit::new(remapped.register.clone(), remapped.role_map);
    let last = remapped.ops().len() - 1;
    for (k, op) in remapped.ops().iter().enumerate() {
        if k == last {
            if op.gate.name != "CX[1;01]" {
                return Err(Error::Config(format!(
                    "imperfect central-gate substitution needs a plain conditional flip at the center; `{}` ends with `{}`",
                    entry.id, op.gate.name
                )));
            }
            rebuilt.push(gates::imperfect_cnot(eps_cnot), &op.sites)?;
        } else {
            rebuilt.push(op.gate.clone(), &op.sites)?;
        }
    }
    Ok(rebuilt)
}

fn substream(seed: u64, cycle: usize, site: usize, purpose: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(((cycle as u64) << 8) | ((site as u64) << 2) | purpose);
    rng
}

fn basis_change(state: &mut StateVector) -> Result<()> {
    let h = gates::qubit_hadamard_on_qutrit();
    for site in [SITE_A1, SITE_DATA, SITE_A2] {
        state.apply_gate(&h.matrix, &[site])?;
    }
    Ok(())
}

/// Applies this cycle's error rotations and returns the (site, angle) pairs
/// that were applied. Random modes draw from per-cycle-per-site substreams
/// of the model seed, so results do not depend on evaluation order.
pub fn inject_error(
    state: &mut StateVector,
    model: &ErrorModel,
    basis: Basis,
    cycle: usize,
) -> Result<Vec<(usize, f64)>> {
    use std::f64::consts::TAU;
    let draws: Vec<(usize, f64)> = match &model.mode {
        ErrorMode::FixedAngles { thetas } => thetas
            .iter()
            .enumerate()
            .filter(|(_, &theta)| theta != 0.0)
            .map(|(site, &theta)| (site, theta))
            .collect(),
        ErrorMode::RotateSite { theta } => vec![(cycle % 3, *theta)],
        ErrorMode::RandomSingle => {
            let mut rng = substream(model.seed, cycle, 0, STREAM_INJECT);
            vec![(rng.random_range(0..3), rng.random_range(0.0..TAU))]
        }
        ErrorMode::RandomIndependent { p_error } => (0..3)
            .filter_map(|site| {
                let mut rng = substream(model.seed, cycle, site, STREAM_INJECT);
                let hit: f64 = rng.random();
                (hit < *p_error).then(|| (site, rng.random_range(0.0..TAU)))
            })
            .collect(),
    };
    for &(site, theta) in &draws {
        let gate = match basis {
            Basis::Bit => gates::rx_error(theta),
            Basis::Phase => gates::rz_error(theta),
        };
        state.apply_gate(&gate.matrix, &[site])?;
    }
    Ok(draws)
}

/// One correction pass over an already-errored block: on phase cycles the
/// stored frame is first rotated back to the bit frame, then the syndrome
/// is decoded, consumed by the truncated flip, and both ancillae are reset.
/// Returns the state decoded, with the data corrected and ancillae near
/// |00>; re-encoding is the caller's step.
pub fn correct_cycle(
    state: &mut StateVector,
    decomposition_id: &str,
    reset: &ResetChannel,
    basis: Basis,
    eps_cnot: f64,
    cycle: usize,
    seed: u64,
) -> Result<CycleDiagnostics> {
    if basis == Basis::Phase {
        basis_change(state)?;
    }
    decode_circuit().apply(state)?;
    correction_circuit(decomposition_id, eps_cnot)?.apply(state)?;
    let pre_reset_data_purity = reduced_density(state, &[SITE_DATA])?.purity();
    let entangled_reset_warning = pre_reset_data_purity < 1.0 - ENTANGLED_RESET_TOL;
    let mut reset_branches = [0usize; 2];
    for (slot, site) in [SITE_A1, SITE_A2].into_iter().enumerate() {
        let mut rng = substream(seed, cycle, site, STREAM_RESET);
        reset_branches[slot] = reset.apply_trajectory(state, site, &mut rng)?;
    }
    Ok(CycleDiagnostics {
        pre_reset_data_purity,
        entangled_reset_warning,
        reset_branches,
    })
}

/// Runs the full protocol: encode once, then per cycle inject errors,
/// correct, log the data fidelity against (alpha, beta), and re-encode.
/// Identical arguments and seed give identical reports.
#[allow(clippy::too_many_arguments)]
pub fn run_protocol(
    alpha: f64,
    beta: f64,
    cycles: usize,
    decomposition_id: &str,
    model: &ErrorModel,
    reset: &ResetChannel,
    eps_cnot: f64,
    tol: &Tolerances,
) -> Result<FidelityReport> {
    model.validate()?;
    if cycles < 1 {
        return Err(Error::Config("cycle count must be at least 1".to_string()));
    }
    let entry = catalog::incomplete(decomposition_id)?;
    let mut state = encode(alpha, beta, tol)?;
    let target = [
        C64::new(alpha, 0.0),
        C64::new(beta, 0.0),
        C64::new(0.0, 0.0),
    ];
    let mut records = Vec::with_capacity(cycles);
    let mut warnings = 0usize;
    for cycle in 0..cycles {
        let basis = model.axis_schedule.basis_for(cycle);
        if basis == Basis::Phase {
            basis_change(&mut state)?;
        }
        let draws = inject_error(&mut state, model, basis, cycle)?;
        let diagnostics = correct_cycle(
            &mut state,
            decomposition_id,
            reset,
            basis,
            eps_cnot,
            cycle,
            model.seed,
        )?;
        if diagnostics.entangled_reset_warning {
            warnings += 1;
        }
        let fidelity = reduced_density(&state, &[SITE_DATA])?.fidelity_pure(&target);
        let leakage_flag = state.outside_qubit_norm() > LEAKAGE_TOL;
        encode_circuit().apply(&mut state)?;
        records.push(CycleRecord {
            cycle,
            basis: basis.label().to_string(),
            error_sites: draws.iter().map(|&(site, _)| site).collect(),
            thetas: draws.iter().map(|&(_, theta)| theta).collect(),
            fidelity,
            leakage_flag,
        });
    }
    let per_cycle_fidelity: Vec<f64> = records.iter().map(|r| r.fidelity).collect();
    let final_fidelity = *per_cycle_fidelity.last().expect("cycles >= 1");
    let mean_fidelity = per_cycle_fidelity.iter().sum::<f64>() / cycles as f64;
    let min_fidelity = per_cycle_fidelity
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let leakage_events = records.iter().filter(|r| r.leakage_flag).count();
    Ok(FidelityReport {
        decomposition: entry.id.clone(),
        cycles,
        seed: model.seed,
        records,
        per_cycle_fidelity,
        final_fidelity,
        mean_fidelity,
        min_fidelity,
        leakage_events,
        entangled_reset_warnings: warnings,
    })
}

/// Closed-form block amplitudes for a data-site rotation by `theta2`:
/// after the error, after decoding, and after the conditional flip. Indexed
/// as 9*a1 + 3*d + a2. The flip stage assumes an exact doubly-conditioned
/// flip; truncated variants relabel the all-ones ancilla term per their
/// declared junk pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticStages {
    pub post_error: Vec<C64>,
    pub post_decode: Vec<C64>,
    pub post_toffoli: Vec<C64>,
}

pub fn analytic_amplitudes(theta2: f64, alpha: f64, beta: f64) -> AnalyticStages {
    let c = (theta2 / 2.0).cos();
    let s = (theta2 / 2.0).sin();
    let a = C64::new(alpha, 0.0);
    let b = C64::new(beta, 0.0);
    let mi = C64::new(0.0, -1.0);
    let idx = |a1: usize, d: usize, a2: usize| 9 * a1 + 3 * d + a2;
    let zero = C64::new(0.0, 0.0);

    let mut post_error = vec![zero; 27];
    post_error[idx(0, 0, 0)] = a * c;
    post_error[idx(0, 1, 0)] = mi * a * s;
    post_error[idx(1, 0, 1)] = mi * b * s;
    post_error[idx(1, 1, 1)] = b * c;

    let mut post_decode = vec![zero; 27];
    post_decode[idx(0, 0, 0)] = a * c;
    post_decode[idx(0, 1, 0)] = b * c;
    post_decode[idx(1, 0, 1)] = mi * b * s;
    post_decode[idx(1, 1, 1)] = mi * a * s;

    let mut post_toffoli = vec![zero; 27];
    post_toffoli[idx(0, 0, 0)] = a * c;
    post_toffoli[idx(0, 1, 0)] = b * c;
    post_toffoli[idx(1, 0, 1)] = mi * a * s;
    post_toffoli[idx(1, 1, 1)] = mi * b * s;

    AnalyticStages {
        post_error,
        post_decode,
        post_toffoli,
    }
}
