//! Circuits: ordered gate lists over a register, with role annotations.
//!
//! Ops apply in list order (the first op acts first). Controlled two-site
//! ops list the control site first. The role map names which sites play
//! control1, control2, and target in the three-site constructions; circuits
//! with more sites keep the same three named roles.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gates::{gate_from_name, GateDef};
use crate::register::QuditRegister;
use crate::state::StateVector;
use crate::unitary::{Unitary, C64};

/// One gate bound to register sites, control site first where applicable.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub gate: GateDef,
    pub sites: Vec<usize>,
}

impl GateOp {
    pub fn is_two_site(&self) -> bool {
        self.sites.len() == 2
    }

    /// True when this op acts on exactly the two given sites (order-free).
    pub fn acts_on_pair(&self, a: usize, b: usize) -> bool {
        self.sites.len() == 2
            && ((self.sites[0] == a && self.sites[1] == b)
                || (self.sites[0] == b && self.sites[1] == a))
    }

    pub fn touches(&self, site: usize) -> bool {
        self.sites.contains(&site)
    }
}

/// Names the sites playing the two control roles and the target role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoleMap {
    pub control1: usize,
    pub control2: usize,
    pub target: usize,
}

impl RoleMap {
    pub fn new(control1: usize, control2: usize, target: usize) -> Self {
        Self {
            control1,
            control2,
            target,
        }
    }

    /// The two control roles exchanged; a Toffoli is symmetric under this.
    pub fn controls_swapped(self) -> Self {
        Self {
            control1: self.control2,
            control2: self.control1,
            target: self.target,
        }
    }
}

/// An ordered gate sequence over a register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub register: QuditRegister,
    pub role_map: RoleMap,
    ops: Vec<GateOp>,
}

/// Applies every op of `circuit` to `state` in order.
pub fn apply_circuit(circuit: &Circuit, state: &mut StateVector) -> Result<()> {
    circuit.apply(state)
}

/// Ordered product of the embedded gate unitaries of `circuit`.
pub fn circuit_unitary(circuit: &Circuit) -> Result<Unitary> {
    circuit.unitary()
}

/// Embeds a local unitary acting on the listed sites (in listed order) into
/// the full register space.
pub fn embed_gate(register: &QuditRegister, gate: &Unitary, sites: &[usize]) -> Result<Unitary> {
    let num_sites = register.num_sites();
    let mut seen = vec![false; num_sites];
    for &site in sites {
        if site >= num_sites || seen[site] {
            return Err(Error::BadSites(sites.to_vec()));
        }
        seen[site] = true;
    }
    let local_dims: Vec<usize> = sites.iter().map(|&s| register.dim(s)).collect();
    let local_dim: usize = local_dims.iter().product();
    if gate.dim() != local_dim {
        return Err(Error::MatrixDimension {
            expected: local_dim,
            found: gate.dim(),
        });
    }
    // Flat-index offset of each local basis state, first site most
    // significant; block bases are the indices with zeros on all `sites`.
    let mut offsets = vec![0usize; local_dim];
    for (l, offset) in offsets.iter_mut().enumerate() {
        let mut rem = l;
        let mut acc = 0usize;
        for (k, &site) in sites.iter().enumerate() {
            let trailing: usize = local_dims[k + 1..].iter().product();
            acc += (rem / trailing) * register.stride(site);
            rem %= trailing;
        }
        *offset = acc;
    }
    let dim = register.total_dim();
    let mut mat = ndarray::Array2::<C64>::zeros((dim, dim));
    for base in 0..dim {
        if sites.iter().any(|&s| register.digit_at(base, s) != 0) {
            continue;
        }
        for (r, &ro) in offsets.iter().enumerate() {
            for (c, &co) in offsets.iter().enumerate() {
                mat[(base + ro, base + co)] = gate.get(r, c);
            }
        }
    }
    Ok(Unitary::from_array_unchecked(mat))
}

impl Circuit {
    pub fn new(register: QuditRegister, role_map: RoleMap) -> Self {
        Self {
            register,
            role_map,
            ops: Vec::new(),
        }
    }

    /// Appends a gate on the listed sites after validating dimensions.
    pub fn push(&mut self, gate: GateDef, sites: &[usize]) -> Result<()> {
        let num_sites = self.register.num_sites();
        let mut seen = vec![false; num_sites];
        for &site in sites {
            if site >= num_sites || seen[site] {
                return Err(Error::BadSites(sites.to_vec()));
            }
            seen[site] = true;
        }
        let found: Vec<usize> = sites.iter().map(|&s| self.register.dim(s)).collect();
        if found != gate.local_dims {
            return Err(Error::DimensionMismatch {
                name: gate.name.clone(),
                expected: gate.local_dims.clone(),
                sites: sites.to_vec(),
                found,
            });
        }
        self.ops.push(GateOp {
            gate,
            sites: sites.to_vec(),
        });
        Ok(())
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Truncates to the first `count` ops.
    pub fn truncated(&self, count: usize) -> Self {
        Self {
            register: self.register.clone(),
            role_map: self.role_map,
            ops: self.ops[..count].to_vec(),
        }
    }

    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        for op in &self.ops {
            state.apply_gate(&op.gate.matrix, &op.sites)?;
        }
        Ok(())
    }

    /// Full-space unitary as the ordered product of embedded gates. The
    /// state-vector path in [`Circuit::apply`] is an independent
    /// implementation; tests hold the two routes together.
    pub fn unitary(&self) -> Result<Unitary> {
        let mut product = Unitary::identity(self.register.total_dim());
        for op in &self.ops {
            let embedded = embed_gate(&self.register, &op.gate.matrix, &op.sites)?;
            product = embedded.matmul(&product);
        }
        Ok(product)
    }

    pub fn two_site_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_two_site()).count()
    }

    pub fn single_site_count(&self) -> usize {
        self.ops.iter().filter(|op| op.sites.len() == 1).count()
    }

    /// Number of ops with the given gate name.
    pub fn count_named(&self, name: &str) -> usize {
        self.ops.iter().filter(|op| op.gate.name == name).count()
    }

    /// Circuit depth under as-soon-as-possible scheduling: each op starts at
    /// the first layer after every op sharing one of its sites.
    pub fn depth(&self) -> usize {
        let mut busy_until = vec![0usize; self.register.num_sites()];
        let mut depth = 0;
        for op in &self.ops {
            let layer = 1 + op.sites.iter().map(|&s| busy_until[s]).max().unwrap_or(0);
            for &s in &op.sites {
                busy_until[s] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    /// Rebuilds the circuit with site `s` renamed to `site_map[s]`, onto a
    /// register whose dimensions are permuted accordingly. `site_map` must
    /// be a permutation of 0..num_sites.
    pub fn remap_sites(&self, site_map: &[usize]) -> Result<Self> {
        let n = self.register.num_sites();
        if site_map.len() != n {
            return Err(Error::BadSites(site_map.to_vec()));
        }
        let mut new_dims = vec![0usize; n];
        let mut seen = vec![false; n];
        for (old, &new) in site_map.iter().enumerate() {
            if new >= n || seen[new] {
                return Err(Error::BadSites(site_map.to_vec()));
            }
            seen[new] = true;
            new_dims[new] = self.register.dim(old);
        }
        let register = QuditRegister::new(&new_dims)?;
        let role_map = RoleMap::new(
            site_map[self.role_map.control1],
            site_map[self.role_map.control2],
            site_map[self.role_map.target],
        );
        let mut out = Circuit::new(register, role_map);
        for op in &self.ops {
            let sites: Vec<usize> = op.sites.iter().map(|&s| site_map[s]).collect();
            out.push(op.gate.clone(), &sites)?;
        }
        Ok(out)
    }

    /// Serializes to the line-oriented text format:
    /// a register header, a roles header, then one `GATE site[,site]` per
    /// line. Round-trips exactly through [`Circuit::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let dims: Vec<String> = self.register.dims().iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "# register: {}", dims.join(" "));
        let _ = writeln!(
            out,
            "# roles: control1={} control2={} target={}",
            self.role_map.control1, self.role_map.control2, self.role_map.target
        );
        for op in &self.ops {
            let sites: Vec<String> = op.sites.iter().map(|s| s.to_string()).collect();
            let _ = writeln!(out, "{} {}", op.gate.name, sites.join(","));
        }
        out
    }

    /// Parses the text format produced by [`Circuit::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut register = None;
        let mut roles = None;
        let mut ops: Vec<(GateDef, Vec<usize>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: &str| Error::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# register:") {
                let dims: Vec<usize> = rest
                    .split_whitespace()
                    .map(|tok| tok.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| err("malformed register dimensions"))?;
                register = Some(QuditRegister::new(&dims)?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("# roles:") {
                let mut control1 = None;
                let mut control2 = None;
                let mut target = None;
                for tok in rest.split_whitespace() {
                    let (key, value) = tok.split_once('=').ok_or_else(|| err("malformed role"))?;
                    let value: usize = value.parse().map_err(|_| err("malformed role index"))?;
                    match key {
                        "control1" => control1 = Some(value),
                        "control2" => control2 = Some(value),
                        "target" => target = Some(value),
                        _ => return Err(err("unknown role name")),
                    }
                }
                match (control1, control2, target) {
                    (Some(c1), Some(c2), Some(t)) => roles = Some(RoleMap::new(c1, c2, t)),
                    _ => return Err(err("roles header must name control1, control2, target")),
                }
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let (name, sites_text) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| err("expected `GATE site[,site]`"))?;
            let gate = gate_from_name(name.trim())?;
            let sites: Vec<usize> = sites_text
                .trim()
                .split(',')
                .map(|tok| tok.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| err("malformed site list"))?;
            ops.push((gate, sites));
        }
        let register = register.ok_or(Error::Parse {
            line: 0,
            msg: "missing `# register:` header".to_string(),
        })?;
        let roles = roles.ok_or(Error::Parse {
            line: 0,
            msg: "missing `# roles:` header".to_string(),
        })?;
        let mut circuit = Circuit::new(register, roles);
        for (gate, sites) in ops {
            circuit.push(gate, &sites)?;
        }
        Ok(circuit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use crate::tolerance::Tolerances;

    fn toy_circuit() -> Circuit {
        let reg = QuditRegister::qutrits(3).unwrap();
        let mut c = Circuit::new(reg, RoleMap::new(0, 1, 2));
        c.push(gates::subspace_x(0, 1).unwrap(), &[1]).unwrap();
        c.push(gates::cnot(), &[1, 2]).unwrap();
        c.push(gates::rx_error(0.625), &[0]).unwrap();
        c
    }

    #[test]
    fn apply_and_unitary_routes_agree_on_all_basis_states() {
        let circuit = toy_circuit();
        let unitary = circuit.unitary().unwrap();
        let dim = circuit.register.total_dim();
        for col in 0..dim {
            let mut state = StateVector::basis_index(&circuit.register, col);
            circuit.apply(&mut state).unwrap();
            for row in 0..dim {
                assert!(
                    (state.amplitude(row) - unitary.get(row, col)).norm() < 1e-12,
                    "entry ({row}, {col})"
                );
            }
        }
    }

    #[test]
    fn embedding_multiplies_like_local_composition() {
        let reg = QuditRegister::qutrits(2).unwrap();
        let a = gates::qutrit_hadamard().matrix;
        let b = gates::cyclic_x(gates::Cycle::Plus).matrix;
        let ea = embed_gate(&reg, &a, &[1]).unwrap();
        let eb = embed_gate(&reg, &b, &[1]).unwrap();
        let eab = embed_gate(&reg, &a.matmul(&b), &[1]).unwrap();
        assert!(ea.matmul(&eb).approx_eq(&eab, 1e-12));
    }

    #[test]
    fn embedding_respects_listed_site_order() {
        let reg = QuditRegister::qutrits(2).unwrap();
        let gate = gates::cnot();
        let forward = embed_gate(&reg, &gate.matrix, &[0, 1]).unwrap();
        // Control on site 0: |10> -> |11>.
        assert!((forward.get(4, 3) - C64::new(1.0, 0.0)).norm() < 1e-12);
        let reversed = embed_gate(&reg, &gate.matrix, &[1, 0]).unwrap();
        // Control on site 1: |01> -> |11>.
        assert!((reversed.get(4, 1) - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((reversed.get(3, 3) - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn push_validates_site_dimensions() {
        let reg = QuditRegister::new(&[2, 3]).unwrap();
        let mut c = Circuit::new(reg, RoleMap::new(0, 0, 1));
        assert!(matches!(
            c.push(gates::qutrit_z(), &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            c.push(gates::cnot(), &[1, 1]),
            Err(Error::BadSites(_))
        ));
    }

    #[test]
    fn depth_uses_asap_layering() {
        let reg = QuditRegister::qutrits(3).unwrap();
        let mut c = Circuit::new(reg, RoleMap::new(0, 1, 2));
        c.push(gates::subspace_x(0, 1).unwrap(), &[0]).unwrap();
        c.push(gates::subspace_x(0, 1).unwrap(), &[2]).unwrap();
        assert_eq!(c.depth(), 1);
        c.push(gates::cnot(), &[0, 1]).unwrap();
        assert_eq!(c.depth(), 2);
        c.push(gates::cnot(), &[1, 2]).unwrap();
        assert_eq!(c.depth(), 3);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let circuit = toy_circuit();
        let text = circuit.to_text();
        let rebuilt = Circuit::from_text(&text).unwrap();
        assert_eq!(circuit, rebuilt);
        assert_eq!(rebuilt.to_text(), text);
    }

    #[test]
    fn from_text_rejects_unknown_gate_names() {
        let text = "# register: 3 3 3\n# roles: control1=0 control2=1 target=2\nBOGUS 0,1\n";
        assert!(matches!(
            Circuit::from_text(text),
            Err(Error::UnknownGate(_))
        ));
    }

    #[test]
    fn remap_transports_roles_and_behavior() {
        let circuit = toy_circuit();
        let remapped = circuit.remap_sites(&[2, 0, 1]).unwrap();
        assert_eq!(remapped.role_map, RoleMap::new(2, 0, 1));
        // Same circuit action read through the relabeled sites.
        let mut state = StateVector::basis_state(&remapped.register, &[0, 0, 0]).unwrap();
        remapped.apply(&mut state).unwrap();
        let mut reference = StateVector::basis_state(&circuit.register, &[0, 0, 0]).unwrap();
        circuit.apply(&mut reference).unwrap();
        let tol = Tolerances::default();
        assert!((state.norm() - 1.0).abs() < tol.normalization);
        // Site 1 of the original plays site 0 after the remap.
        for level in 0..3 {
            assert!((state.population(0, level) - reference.population(1, level)).abs() < 1e-12);
        }
    }
}
