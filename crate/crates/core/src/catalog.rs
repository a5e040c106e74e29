//! The library of doubly-controlled-NOT constructions on qutrit registers.
//!
//! Each entry is a circuit on |Q1 Q2 Q3> = |control1, control2, target>
//! that flips the target conditioned on the controls, lifting Q2 through
//! the |2> level instead of using ancilla qubits. Entries verify against
//! their declared behavior when built; a construction that fails its check
//! is never exposed.
//!
//! Entry ids:
//! - A1, B1, C1: three controlled-qutrit two-site gates.
//! - A2, B2, C2: three conventional CNOTs plus single-qutrit subspace flips.
//! - B3, C3: hybrids mixing both gate kinds to cut |2> exposure.
//! - D1, D2, D3: cyclic-shift and modular-sum ladders; D1S is the swapped
//!   variant acting as a NOT conditioned on controls |10>.
//! - ISWAP: an iSWAP-conjugated form with a trailing phase compensation.
//! - REF10CX: the plain-qubit nearest-neighbor reference circuit.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::circuit::{Circuit, RoleMap};
use crate::error::{Error, Result};
use crate::gates::{self, Cycle, GateDef};
use crate::register::QuditRegister;
use crate::tolerance::Tolerances;
use crate::verify;

/// Hardware requirements a construction relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct EntryFlags {
    /// The central conventional CNOT must act as exact identity for
    /// control |2>; a leaky CNOT corrupts the parked branches.
    pub needs_exclusive_cnot: bool,
    /// Uses X02, which requires a two-photon 0-2 drive.
    pub needs_x02_two_photon: bool,
    /// Built around iSWAP gates rather than controlled flips.
    pub iswap_based: bool,
}

/// What a circuit claims to implement on the qubit subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DeclaredBehavior {
    /// Flip the target iff both controls are |1>.
    Toffoli,
    /// Flip the target iff (control1, control2) match the given levels.
    ConditionedNot { controls: (u8, u8) },
    /// Flip the target iff all `controls` leading sites are |1>.
    MultiControlled { controls: usize },
}

impl DeclaredBehavior {
    pub fn label(&self) -> String {
        match self {
            DeclaredBehavior::Toffoli => "toffoli".to_string(),
            DeclaredBehavior::ConditionedNot { controls } => {
                format!("not-on-{}{}", controls.0, controls.1)
            }
            DeclaredBehavior::MultiControlled { controls } => {
                format!("{controls}-controlled-x")
            }
        }
    }
}

/// Map from control basis input (q1, q2) to the levels the control sites
/// hold after a truncated circuit.
pub type JunkPattern = BTreeMap<(u8, u8), (u8, u8)>;

/// One catalog construction with its metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionEntry {
    pub id: String,
    pub description: String,
    pub circuit: Circuit,
    /// True for the full circuit; false for truncated (incomplete) variants.
    pub complete: bool,
    /// Position of the central two-site gate; the incomplete variant is the
    /// prefix ending right after it. None for entries without one.
    pub central_index: Option<usize>,
    pub declared: DeclaredBehavior,
    pub flags: EntryFlags,
    pub expected_two_site_count: usize,
    /// Whether the |2>-occupancy metric applies (three-qutrit entries whose
    /// Q2 role carries the lift).
    pub tau_applicable: bool,
    /// Declared control-site levels after truncation, for incomplete
    /// variants only; verified against simulation by the incomplete check.
    pub junk_pattern: Option<JunkPattern>,
}

const COMPLETE_IDS: [&str; 14] = [
    "A1", "A2", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D1S", "D2", "D3", "ISWAP", "REF10CX",
];

/// Ids admitting an incomplete (truncated) variant.
const INCOMPLETE_IDS: [&str; 12] = [
    "A1", "A2", "B1", "B2", "B3", "C1", "C2", "C3", "D1", "D1S", "D2", "D3",
];

fn qutrit_circuit() -> Circuit {
    Circuit::new(
        QuditRegister::qutrits(3).expect("three qutrits"),
        RoleMap::new(0, 1, 2),
    )
}

fn push_all(circuit: &mut Circuit, ops: Vec<(GateDef, Vec<usize>)>) -> Result<()> {
    for (gate, sites) in ops {
        circuit.push(gate, &sites)?;
    }
    Ok(())
}

fn cx(level: usize, i: usize, j: usize) -> Result<GateDef> {
    gates::controlled_subspace_x(level, i, j)
}

fn raw_entry(id: &str) -> Result<DecompositionEntry> {
    let mut c = qutrit_circuit();
    let mut flags = EntryFlags::default();
    let declared = DeclaredBehavior::Toffoli;
    let (description, central_index, expected_two_site_count): (&str, Option<usize>, usize) =
        match id {
            "A1" => {
                push_all(
                    &mut c,
                    vec![
                        (cx(0, 1, 2)?, vec![0, 1]),
                        (gates::cnot(), vec![1, 2]),
                        (cx(0, 1, 2)?, vec![0, 1]),
                    ],
                )?;
                flags.needs_exclusive_cnot = true;
                (
                    "|0>-conditioned 1-2 lifts on Q2 around a central CNOT; the lift parks \
                     Q2 in |2> exactly when the CNOT must stay silent",
                    Some(1),
                    3,
                )
            }
            "A2" => {
                push_all(
                    &mut c,
                    vec![
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (gates::subspace_x(0, 2)?, vec![1]),
                        (gates::cnot(), vec![0, 1]),
                        (gates::subspace_x(0, 2)?, vec![1]),
                        (gates::cnot(), vec![1, 2]),
                        (gates::subspace_x(0, 2)?, vec![1]),
                        (gates::cnot(), vec![0, 1]),
                        (gates::subspace_x(0, 2)?, vec![1]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                    ],
                )?;
                flags.needs_exclusive_cnot = true;
                flags.needs_x02_two_photon = true;
                (
                    "three conventional CNOTs with X02/X12 relabelings of Q2 so the central \
                     CNOT fires only for controls |11>",
                    Some(4),
                    3,
                )
            }
            "B1" => {
                push_all(
                    &mut c,
                    vec![
                        (cx(1, 1, 2)?, vec![0, 1]),
                        (cx(2, 0, 1)?, vec![1, 2]),
                        (cx(1, 1, 2)?, vec![0, 1]),
                    ],
                )?;
                (
                    "|1>-conditioned 1-2 lift on Q2 around a |2>-conditioned target flip; \
                     Q2 reaches |2> only for controls |11>",
                    Some(1),
                    3,
                )
            }
            "B2" => {
                push_all(
                    &mut c,
                    vec![
                        (gates::subspace_x(0, 2)?, vec![1]),
                        (gates::cnot(), vec![0, 1]),
                        (gates::subspace_x(0, 2)?, vec![1]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (gates::cnot(), vec![1, 2]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (gates::subspace_x(0, 2)?, vec![1]),
                        (gates::cnot(), vec![0, 1]),
                        (gates::subspace_x(0, 2)?, vec![1]),
                    ],
                )?;
                flags.needs_exclusive_cnot = true;
                flags.needs_x02_two_photon = true;
                (
                    "three conventional CNOTs with an X02 shuttle on Q2; the X12 pair \
                     shields the central CNOT from every control input but |11>",
                    Some(4),
                    3,
                )
            }
            "B3" => {
                push_all(
                    &mut c,
                    vec![
                        (cx(1, 1, 2)?, vec![0, 1]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (gates::cnot(), vec![1, 2]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (cx(1, 1, 2)?, vec![0, 1]),
                    ],
                )?;
                flags.needs_exclusive_cnot = true;
                (
                    "hybrid: controlled lifts plus a conventional central CNOT; X12 drops \
                     the lifted branch back to |1> so |2> exposure is halved",
                    Some(2),
                    3,
                )
            }
            "C1" => {
                push_all(
                    &mut c,
                    vec![
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (cx(0, 0, 2)?, vec![0, 1]),
                        (cx(0, 0, 1)?, vec![1, 2]),
                        (cx(0, 0, 2)?, vec![0, 1]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                    ],
                )?;
                flags.needs_x02_two_photon = true;
                (
                    "inverted-control form: X01 swaps Q2's role, |0>-conditioned 0-2 lifts \
                     park the idle branches, and the target flip fires on Q2=|0>",
                    Some(2),
                    3,
                )
            }
            "C2" => {
                push_all(
                    &mut c,
                    vec![
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (gates::cnot(), vec![0, 1]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (gates::cnot(), vec![1, 2]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (gates::cnot(), vec![0, 1]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (gates::subspace_x(1, 2)?, vec![1]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                    ],
                )?;
                flags.needs_exclusive_cnot = true;
                (
                    "three conventional CNOTs with the 0-2 relabeling of Q2 synthesized \
                     from X01/X12 triples, avoiding the two-photon X02 drive entirely",
                    Some(6),
                    3,
                )
            }
            "C3" => {
                push_all(
                    &mut c,
                    vec![
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (cx(0, 0, 2)?, vec![0, 1]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (gates::cnot(), vec![1, 2]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                        (cx(0, 0, 2)?, vec![0, 1]),
                        (gates::subspace_x(0, 1)?, vec![1]),
                    ],
                )?;
                flags.needs_exclusive_cnot = true;
                flags.needs_x02_two_photon = true;
                (
                    "hybrid of the inverted-control form: one |0>-conditioned 0-2 lift per \
                     side with a conventional central CNOT re-targeted by X01 flips",
                    Some(3),
                    3,
                )
            }
            "D1" => {
                push_all(
                    &mut c,
                    vec![
                        (gates::controlled_cyclic_x(1, Cycle::Plus)?, vec![0, 1]),
                        (cx(2, 0, 1)?, vec![1, 2]),
                        (gates::controlled_cyclic_x(1, Cycle::Minus)?, vec![0, 1]),
                    ],
                )?;
                (
                    "|1>-conditioned cyclic shift of Q2 up and back around a \
                     |2>-conditioned target flip",
                    Some(1),
                    3,
                )
            }
            "D1S" => {
                push_all(
                    &mut c,
                    vec![
                        (gates::controlled_cyclic_x(1, Cycle::Minus)?, vec![0, 1]),
                        (cx(2, 0, 1)?, vec![1, 2]),
                        (gates::controlled_cyclic_x(1, Cycle::Plus)?, vec![0, 1]),
                    ],
                )?;
                return finish_raw(
                    id,
                    c,
                    "the cyclic shifts of the three-gate shift form swapped: the down-shift \
                     lifts Q2=|0> into |2>, so the target flips on controls |10> instead",
                    Some(1),
                    DeclaredBehavior::ConditionedNot { controls: (1, 0) },
                    flags,
                    3,
                    true,
                );
            }
            "D2" => {
                push_all(
                    &mut c,
                    vec![
                        (cx(1, 1, 2)?, vec![0, 1]),
                        (cx(1, 0, 1)?, vec![0, 1]),
                        (cx(2, 0, 1)?, vec![1, 2]),
                        (cx(1, 0, 1)?, vec![0, 1]),
                        (cx(1, 1, 2)?, vec![0, 1]),
                    ],
                )?;
                (
                    "the cyclic shifts of the three-gate shift form expanded into \
                     conditioned subspace-flip pairs; five two-site gates in total",
                    Some(2),
                    5,
                )
            }
            "D3" => {
                push_all(
                    &mut c,
                    vec![
                        (gates::csum(), vec![0, 1]),
                        (cx(2, 0, 1)?, vec![1, 2]),
                        (gates::cmin(), vec![0, 1]),
                    ],
                )?;
                (
                    "modular add/subtract of Q1 onto Q2 around a |2>-conditioned target \
                     flip; the sum reaches |2> only for controls |11>",
                    Some(1),
                    3,
                )
            }
            "ISWAP" => {
                push_all(&mut c, iswap_ops()?)?;
                flags.iswap_based = true;
                return finish_raw(
                    id,
                    c,
                    "iSWAP-conjugated form: X12 lifts Q1, the iSWAP pair shuttles the \
                     control onto Q2, and a trailing |0>-conditioned Z cancels the \
                     leftover pi phase on the |01> control branch",
                    None,
                    DeclaredBehavior::Toffoli,
                    flags,
                    4,
                    false,
                );
            }
            "REF10CX" => {
                let mut q = Circuit::new(
                    QuditRegister::qubits(3).expect("three qubits"),
                    RoleMap::new(0, 1, 2),
                );
                push_all(
                    &mut q,
                    vec![
                        (gates::qubit_hadamard(), vec![2]),
                        (gates::t_gate(), vec![0]),
                        (gates::t_gate(), vec![1]),
                        (gates::t_gate(), vec![2]),
                        (gates::qubit_cnot(), vec![1, 2]),
                        (gates::t_dagger(), vec![2]),
                        (gates::qubit_cnot(), vec![0, 1]),
                        (gates::t_dagger(), vec![1]),
                        (gates::qubit_cnot(), vec![1, 2]),
                        (gates::t_dagger(), vec![2]),
                        (gates::qubit_cnot(), vec![0, 1]),
                        (gates::qubit_cnot(), vec![1, 2]),
                        (gates::t_gate(), vec![2]),
                        (gates::qubit_cnot(), vec![1, 2]),
                        (gates::qubit_cnot(), vec![0, 1]),
                        (gates::qubit_cnot(), vec![1, 2]),
                        (gates::qubit_cnot(), vec![0, 1]),
                        (gates::qubit_cnot(), vec![1, 2]),
                        (gates::qubit_hadamard(), vec![2]),
                    ],
                )?;
                return finish_raw(
                    id,
                    q,
                    "plain-qubit nearest-neighbor reference: Clifford+T phase-polynomial \
                     construction with 10 CNOTs, 9 single-qubit gates, depth 15",
                    None,
                    DeclaredBehavior::Toffoli,
                    flags,
                    10,
                    false,
                );
            }
            other => return Err(Error::UnknownId(other.to_string())),
        };
    finish_raw(
        id,
        c,
        description,
        central_index,
        declared,
        flags,
        expected_two_site_count,
        true,
    )
}

fn iswap_ops() -> Result<Vec<(GateDef, Vec<usize>)>> {
    Ok(vec![
        (gates::subspace_x(1, 2)?, vec![0]),
        (gates::iswap(), vec![0, 1]),
        (gates::cnot(), vec![1, 2]),
        (gates::iswap(), vec![0, 1]),
        (gates::subspace_x(1, 2)?, vec![0]),
        (gates::controlled_z_on_level(0)?, vec![0, 1]),
    ])
}

/// The iSWAP construction without its trailing phase compensation. Not a
/// catalog entry: it deviates from the doubly-controlled NOT by a pi phase
/// on the |01> control branch, and exists to make that defect checkable.
pub fn iswap_uncompensated_circuit() -> Result<Circuit> {
    let mut c = qutrit_circuit();
    let mut ops = iswap_ops()?;
    ops.pop();
    push_all(&mut c, ops)?;
    Ok(c)
}

#[allow(clippy::too_many_arguments)]
fn finish_raw(
    id: &str,
    circuit: Circuit,
    description: &str,
    central_index: Option<usize>,
    declared: DeclaredBehavior,
    flags: EntryFlags,
    expected_two_site_count: usize,
    tau_applicable: bool,
) -> Result<DecompositionEntry> {
    Ok(DecompositionEntry {
        id: id.to_string(),
        description: description.to_string(),
        circuit,
        complete: true,
        central_index,
        declared,
        flags,
        expected_two_site_count,
        tau_applicable,
        junk_pattern: None,
    })
}

/// Control-site levels left behind by each truncated variant, frozen from
/// stepping the prefix over the four control basis inputs.
fn declared_junk(id: &str) -> Option<JunkPattern> {
    let rows: [((u8, u8), (u8, u8)); 4] = match id {
        "A1" | "A2" | "B2" | "B3" | "C2" | "C3" => [
            ((0, 0), (0, 0)),
            ((0, 1), (0, 2)),
            ((1, 0), (1, 0)),
            ((1, 1), (1, 1)),
        ],
        "B1" => [
            ((0, 0), (0, 0)),
            ((0, 1), (0, 1)),
            ((1, 0), (1, 0)),
            ((1, 1), (1, 2)),
        ],
        "C1" => [
            ((0, 0), (0, 1)),
            ((0, 1), (0, 2)),
            ((1, 0), (1, 1)),
            ((1, 1), (1, 0)),
        ],
        "D1" | "D2" | "D3" => [
            ((0, 0), (0, 0)),
            ((0, 1), (0, 1)),
            ((1, 0), (1, 1)),
            ((1, 1), (1, 2)),
        ],
        "D1S" => [
            ((0, 0), (0, 0)),
            ((0, 1), (0, 1)),
            ((1, 0), (1, 2)),
            ((1, 1), (1, 0)),
        ],
        _ => return None,
    };
    Some(rows.into_iter().collect())
}

fn verified_entry(id: &str) -> Result<DecompositionEntry> {
    let entry = raw_entry(id)?;
    let actual = entry.circuit.two_site_count();
    if actual != entry.expected_two_site_count {
        return Err(Error::ConstructionIntegrity {
            id: id.to_string(),
            reason: format!(
                "two-site gate count {actual} differs from the declared {}",
                entry.expected_two_site_count
            ),
        });
    }
    let tol = Tolerances::default();
    let report = verify::check_declared(&entry, &tol)?;
    if !report.equivalent {
        return Err(Error::ConstructionIntegrity {
            id: id.to_string(),
            reason: format!(
                "does not implement its declared {} action: max deviation {:.3e}, \
                 leakage {:.3e}",
                entry.declared.label(),
                report.max_deviation,
                report.leakage_norm
            ),
        });
    }
    Ok(entry)
}

fn complete_map() -> Result<&'static BTreeMap<String, DecompositionEntry>> {
    static MAP: OnceLock<std::result::Result<BTreeMap<String, DecompositionEntry>, String>> =
        OnceLock::new();
    let built = MAP.get_or_init(|| {
        let mut map = BTreeMap::new();
        for id in COMPLETE_IDS {
            let entry = verified_entry(id).map_err(|e| e.to_string())?;
            map.insert(id.to_string(), entry);
        }
        Ok(map)
    });
    built
        .as_ref()
        .map_err(|reason| Error::ConstructionIntegrity {
            id: "catalog".to_string(),
            reason: reason.clone(),
        })
}

fn incomplete_map() -> Result<&'static BTreeMap<String, DecompositionEntry>> {
    static MAP: OnceLock<std::result::Result<BTreeMap<String, DecompositionEntry>, String>> =
        OnceLock::new();
    let built = MAP.get_or_init(|| {
        let mut map = BTreeMap::new();
        for id in INCOMPLETE_IDS {
            let entry = build_incomplete(id).map_err(|e| e.to_string())?;
            map.insert(id.to_string(), entry);
        }
        Ok(map)
    });
    built
        .as_ref()
        .map_err(|reason| Error::ConstructionIntegrity {
            id: "catalog(incomplete)".to_string(),
            reason: reason.clone(),
        })
}

fn build_incomplete(id: &str) -> Result<DecompositionEntry> {
    let full = build(id)?;
    let central = full
        .central_index
        .ok_or_else(|| Error::NoIncompleteVariant(id.to_string()))?;
    let circuit = full.circuit.truncated(central + 1);
    let entry = DecompositionEntry {
        id: format!("{id}*"),
        description: format!(
            "{} truncated right after the central gate; controls keep distinguishable \
             junk levels and are meant to be reset immediately",
            full.id
        ),
        expected_two_site_count: circuit.two_site_count(),
        circuit,
        complete: false,
        central_index: Some(central),
        declared: full.declared,
        flags: full.flags,
        tau_applicable: full.tau_applicable,
        junk_pattern: declared_junk(id),
    };
    let tol = Tolerances::with_equivalence(1e-9);
    let report = verify::incomplete_check(&entry, &tol)?;
    if !report.equivalent {
        return Err(Error::ConstructionIntegrity {
            id: entry.id.clone(),
            reason: format!(
                "truncated variant fails the incomplete check: max deviation {:.3e}",
                report.max_deviation
            ),
        });
    }
    Ok(entry)
}

/// Builds (and verifies, once per process) the catalog entry with this id.
pub fn build(id: &str) -> Result<DecompositionEntry> {
    complete_map()?
        .get(id)
        .cloned()
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// The truncated variant of `id`, ending right after the central gate.
pub fn incomplete(id: &str) -> Result<DecompositionEntry> {
    let base = id.strip_suffix('*').unwrap_or(id);
    if complete_map()?.contains_key(base) {
        incomplete_map()?
            .get(base)
            .cloned()
            .ok_or_else(|| Error::NoIncompleteVariant(base.to_string()))
    } else {
        Err(Error::UnknownId(base.to_string()))
    }
}

/// The linear ladder generalization: n controls, one target, all qutrits.
/// Controls successively lift each other into |2>, one |2>-conditioned flip
/// hits the target, and the mirrored chain uncomputes; 2n-1 two-site gates.
pub fn n_controlled(n: usize) -> Result<DecompositionEntry> {
    if !(2..=5).contains(&n) {
        return Err(Error::BadControlCount(n));
    }
    let register = QuditRegister::qutrits(n + 1)?;
    let mut circuit = Circuit::new(register, RoleMap::new(0, 1, n));
    let forward: Vec<(GateDef, Vec<usize>)> = {
        let mut ops = vec![(cx(1, 1, 2)?, vec![0, 1])];
        for k in 1..n - 1 {
            ops.push((cx(2, 1, 2)?, vec![k, k + 1]));
        }
        ops
    };
    for (gate, sites) in &forward {
        circuit.push(gate.clone(), sites)?;
    }
    circuit.push(cx(2, 0, 1)?, &[n - 1, n])?;
    for (gate, sites) in forward.iter().rev() {
        circuit.push(gate.clone(), sites)?;
    }
    let entry = DecompositionEntry {
        id: format!("B1-N{n}"),
        description: format!(
            "linear ladder extending the three-gate lift form to {n} controls; \
             {} two-site gates",
            2 * n - 1
        ),
        circuit,
        complete: true,
        central_index: Some(n - 1),
        declared: DeclaredBehavior::MultiControlled { controls: n },
        flags: EntryFlags::default(),
        expected_two_site_count: 2 * n - 1,
        tau_applicable: n == 2,
        junk_pattern: None,
    };
    let tol = Tolerances::default();
    let report = verify::check_declared(&entry, &tol)?;
    if !report.equivalent {
        return Err(Error::ConstructionIntegrity {
            id: entry.id.clone(),
            reason: format!(
                "ladder fails the {n}-controlled check: max deviation {:.3e}",
                report.max_deviation
            ),
        });
    }
    Ok(entry)
}

/// Metadata row for one catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CatalogRow {
    pub id: String,
    pub complete: bool,
    pub two_site_count: usize,
    pub flags: EntryFlags,
    pub declared: String,
}

/// Deterministic, alphabetically ordered catalog metadata.
pub fn list_catalog() -> Result<Vec<CatalogRow>> {
    Ok(complete_map()?
        .values()
        .map(|entry| CatalogRow {
            id: entry.id.clone(),
            complete: entry.complete,
            two_site_count: entry.expected_two_site_count,
            flags: entry.flags,
            declared: entry.declared.label(),
        })
        .collect())
}

/// All complete entry ids in catalog order.
pub fn catalog_ids() -> Vec<&'static str> {
    COMPLETE_IDS.to_vec()
}

/// Ids with an incomplete variant.
pub fn incomplete_ids() -> Vec<&'static str> {
    INCOMPLETE_IDS.to_vec()
}
