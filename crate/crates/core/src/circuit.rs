//! Logical-circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of logical gates over numbered qubits.
//! Program order is significant: two gates touching the same qubit are
//! resource-ordered (a qubit participates in one gate at a time), so the
//! [`DependencyGraph`] chains, per qubit, each gate to the next gate on that
//! qubit. The graph is acyclic by construction.
//!
//! Circuits have an assembly-like text form, one gate per line:
//!
//! ```text
//! qubits 3
//! label demo
//! TOFFOLI q0 q1 q2
//! CNOT q0 q1
//! X q2
//! ```
//!
//! [`simulate_classical`] executes the reversible subset (X, CNOT, Toffoli)
//! on basis states and serves as the correctness oracle for the generated
//! arithmetic circuits.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Identifier of a logical qubit within a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QubitId(pub u32);

impl QubitId {
    pub fn index(&self) -> usize {
        self.0 as usize
    }
}

impl core::fmt::Display for QubitId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// Logical gate kinds carried by the IR. Phase angles are not modeled;
/// rotation-like gates are opaque labels with cost only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GateKind {
    X,
    Z,
    H,
    T,
    Cnot,
    Toffoli,
    Measure,
}

impl GateKind {
    pub fn operand_count(&self) -> usize {
        match self {
            GateKind::X | GateKind::Z | GateKind::H | GateKind::T | GateKind::Measure => 1,
            GateKind::Cnot => 2,
            GateKind::Toffoli => 3,
        }
    }

    /// True for gates with a classical truth table (the oracle subset).
    pub fn is_classical(&self) -> bool {
        matches!(self, GateKind::X | GateKind::Cnot | GateKind::Toffoli)
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::T => "T",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Measure => "MEASURE",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<GateKind> {
        Some(match s {
            "X" => GateKind::X,
            "Z" => GateKind::Z,
            "H" => GateKind::H,
            "T" => GateKind::T,
            "CNOT" => GateKind::Cnot,
            "TOFFOLI" => GateKind::Toffoli,
            "MEASURE" => GateKind::Measure,
            _ => return None,
        })
    }
}

/// One logical gate: a kind plus one, two, or three distinct operands.
/// For CNOT the order is (control, target); for Toffoli
/// (control, control, target).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Gate {
    pub kind: GateKind,
    operands: [u32; 3],
}

impl Gate {
    pub fn new(kind: GateKind, operands: &[u32]) -> Result<Gate> {
        if operands.len() != kind.operand_count() {
            return Err(Error::InvalidCircuit {
                what: alloc::format!(
                    "{} takes {} operand(s), got {}",
                    kind.mnemonic(),
                    kind.operand_count(),
                    operands.len()
                ),
            });
        }
        for (i, a) in operands.iter().enumerate() {
            for b in &operands[i + 1..] {
                if a == b {
                    return Err(Error::InvalidCircuit {
                        what: alloc::format!("duplicate operand q{a} on {}", kind.mnemonic()),
                    });
                }
            }
        }
        let mut ops = [u32::MAX; 3];
        ops[..operands.len()].copy_from_slice(operands);
        Ok(Gate { kind, operands: ops })
    }

    pub fn x(q: u32) -> Gate {
        Gate::new(GateKind::X, &[q]).unwrap()
    }

    pub fn cnot(control: u32, target: u32) -> Gate {
        Gate::new(GateKind::Cnot, &[control, target]).unwrap()
    }

    pub fn toffoli(c1: u32, c2: u32, target: u32) -> Gate {
        Gate::new(GateKind::Toffoli, &[c1, c2, target]).unwrap()
    }

    pub fn operands(&self) -> &[u32] {
        &self.operands[..self.kind.operand_count()]
    }
}

/// An ordered sequence of gates over `qubit_count` logical qubits.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Circuit {
    pub qubit_count: u32,
    pub gates: Vec<Gate>,
    pub label: String,
}

impl Circuit {
    pub fn new(qubit_count: u32, label: &str) -> Circuit {
        Circuit {
            qubit_count,
            gates: Vec::new(),
            label: label.to_string(),
        }
    }

    pub fn push(&mut self, gate: Gate) {
        debug_assert!(gate.operands().iter().all(|&q| q < self.qubit_count));
        self.gates.push(gate);
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn count_kind(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    /// Checks operand bounds and arity for every gate.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            for &q in g.operands() {
                if q >= self.qubit_count {
                    return Err(Error::InvalidCircuit {
                        what: alloc::format!(
                            "gate {i} references q{q} but circuit has {} qubits",
                            self.qubit_count
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Serializes to the one-gate-per-line text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&alloc::format!("qubits {}\n", self.qubit_count));
        if !self.label.is_empty() {
            out.push_str(&alloc::format!("label {}\n", self.label));
        }
        for g in &self.gates {
            out.push_str(g.kind.mnemonic());
            for &q in g.operands() {
                out.push_str(&alloc::format!(" q{q}"));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form produced by [`Circuit::to_text`].
    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut circuit = Circuit::new(0, "");
        let mut saw_qubits = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap();
            match head {
                "qubits" => {
                    let n = parts
                        .next()
                        .and_then(|s| s.parse::<u32>().ok())
                        .ok_or(Error::Parse {
                            line: lineno,
                            what: "expected `qubits <count>`".to_string(),
                        })?;
                    circuit.qubit_count = n;
                    saw_qubits = true;
                }
                "label" => {
                    circuit.label = parts.collect::<Vec<_>>().join(" ");
                }
                mnemonic => {
                    let kind = GateKind::from_mnemonic(mnemonic).ok_or_else(|| Error::Parse {
                        line: lineno,
                        what: alloc::format!("unknown gate `{mnemonic}`"),
                    })?;
                    let mut operands = Vec::new();
                    for tok in parts {
                        let q = tok
                            .strip_prefix('q')
                            .and_then(|s| s.parse::<u32>().ok())
                            .ok_or_else(|| Error::Parse {
                                line: lineno,
                                what: alloc::format!("bad operand `{tok}`"),
                            })?;
                        operands.push(q);
                    }
                    let gate = Gate::new(kind, &operands).map_err(|e| Error::Parse {
                        line: lineno,
                        what: alloc::format!("{e}"),
                    })?;
                    if !saw_qubits {
                        // Infer width when no header is present.
                        let max = operands.iter().max().copied().unwrap_or(0);
                        circuit.qubit_count = circuit.qubit_count.max(max + 1);
                    }
                    circuit.gates.push(gate);
                }
            }
        }
        circuit.validate()?;
        Ok(circuit)
    }
}

/// Resource-order dependency graph: for each qubit, consecutive gates on that
/// qubit are chained with a directed edge from the earlier to the later gate.
/// Edges therefore respect program order and the graph is acyclic. Edges are
/// per-qubit adjacent pairs, not a transitive reduction: an edge implied by a
/// longer path can still appear when the pair shares a different qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct DependencyGraph {
    gate_count: usize,
    /// Deduplicated successor lists, indexed by gate.
    succs: Vec<Vec<u32>>,
    /// Number of predecessors per gate.
    pred_count: Vec<u32>,
}

impl DependencyGraph {
    pub fn build(circuit: &Circuit) -> DependencyGraph {
        let n = circuit.gates.len();
        let mut succs: Vec<Vec<u32>> = alloc::vec![Vec::new(); n];
        let mut pred_count = alloc::vec![0u32; n];
        let mut last_touch: Vec<Option<u32>> = alloc::vec![None; circuit.qubit_count as usize];
        for (i, gate) in circuit.gates.iter().enumerate() {
            for &q in gate.operands() {
                if let Some(prev) = last_touch[q as usize] {
                    if prev as usize != i && !succs[prev as usize].contains(&(i as u32)) {
                        succs[prev as usize].push(i as u32);
                        pred_count[i] += 1;
                    }
                }
                last_touch[q as usize] = Some(i as u32);
            }
        }
        DependencyGraph {
            gate_count: n,
            succs,
            pred_count,
        }
    }

    pub fn gate_count(&self) -> usize {
        self.gate_count
    }

    pub fn successors(&self, gate: usize) -> &[u32] {
        &self.succs[gate]
    }

    pub fn predecessor_count(&self, gate: usize) -> u32 {
        self.pred_count[gate]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.succs
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i as u32, j)))
    }

    /// Topological order by Kahn's algorithm; `None` if a cycle exists
    /// (which `build` cannot produce).
    pub fn topological_order(&self) -> Option<Vec<u32>> {
        let mut indeg = self.pred_count.clone();
        let mut queue: alloc::collections::VecDeque<u32> = (0..self.gate_count as u32)
            .filter(|&i| indeg[i as usize] == 0)
            .collect();
        let mut order = Vec::with_capacity(self.gate_count);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &j in &self.succs[i as usize] {
                indeg[j as usize] -= 1;
                if indeg[j as usize] == 0 {
                    queue.push_back(j);
                }
            }
        }
        (order.len() == self.gate_count).then_some(order)
    }
}

/// Applies each classical-reversible gate's truth table in program order to a
/// basis state, returning the final bit-string. Gates outside the classical
/// subset (anything but X, CNOT, Toffoli) are rejected.
pub fn simulate_classical(circuit: &Circuit, input: &[bool]) -> Result<Vec<bool>> {
    if input.len() != circuit.qubit_count as usize {
        return Err(Error::InvalidCircuit {
            what: alloc::format!(
                "input has {} bits but circuit has {} qubits",
                input.len(),
                circuit.qubit_count
            ),
        });
    }
    let mut state = input.to_vec();
    for gate in &circuit.gates {
        let ops = gate.operands();
        match gate.kind {
            GateKind::X => state[ops[0] as usize] ^= true,
            GateKind::Cnot => {
                if state[ops[0] as usize] {
                    state[ops[1] as usize] ^= true;
                }
            }
            GateKind::Toffoli => {
                if state[ops[0] as usize] && state[ops[1] as usize] {
                    state[ops[2] as usize] ^= true;
                }
            }
            other => {
                return Err(Error::UnsupportedGate {
                    what: alloc::format!("{} is not classical-reversible", other.mnemonic()),
                })
            }
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_arity_and_distinctness() {
        assert!(Gate::new(GateKind::Cnot, &[0]).is_err());
        assert!(Gate::new(GateKind::Cnot, &[1, 1]).is_err());
        assert!(Gate::new(GateKind::Toffoli, &[0, 1, 2]).is_ok());
    }

    #[test]
    fn classical_sim_basics() {
        let mut c = Circuit::new(1, "x");
        c.push(Gate::x(0));
        assert_eq!(simulate_classical(&c, &[false]).unwrap(), alloc::vec![true]);

        let mut c = Circuit::new(2, "cnot");
        c.push(Gate::cnot(0, 1));
        // Control set flips the target; control clear is the identity.
        assert_eq!(
            simulate_classical(&c, &[true, false]).unwrap(),
            alloc::vec![true, true]
        );
        assert_eq!(
            simulate_classical(&c, &[false, true]).unwrap(),
            alloc::vec![false, true]
        );
    }

    #[test]
    fn non_classical_gate_rejected() {
        let mut c = Circuit::new(1, "h");
        c.push(Gate::new(GateKind::H, &[0]).unwrap());
        assert!(matches!(
            simulate_classical(&c, &[false]),
            Err(Error::UnsupportedGate { .. })
        ));
    }

    #[test]
    fn dependency_graph_chains_per_qubit() {
        let mut c = Circuit::new(3, "d");
        c.push(Gate::cnot(0, 1)); // 0
        c.push(Gate::cnot(1, 2)); // 1, shares q1 with 0
        c.push(Gate::x(0)); // 2, shares q0 with 0
        let dag = DependencyGraph::build(&c);
        let edges: Vec<_> = dag.edges().collect();
        assert!(edges.contains(&(0, 1)));
        assert!(edges.contains(&(0, 2)));
        assert!(!edges.contains(&(1, 2)));
        let order = dag.topological_order().unwrap();
        assert_eq!(order.len(), 3);
    }

    #[test]
    fn text_round_trip() {
        let mut c = Circuit::new(3, "demo adder");
        c.push(Gate::toffoli(0, 1, 2));
        c.push(Gate::cnot(0, 1));
        c.push(Gate::x(2));
        c.push(Gate::new(GateKind::Measure, &[2]).unwrap());
        let text = c.to_text();
        let back = Circuit::from_text(&text).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn text_parse_errors_carry_line_numbers() {
        let err = Circuit::from_text("qubits 2\nFROB q0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    proptest::proptest! {
        // Applying X or CNOT twice returns the input.
        #[test]
        fn involution(bits in proptest::collection::vec(proptest::bool::ANY, 4)) {
            let mut c = Circuit::new(4, "invol");
            c.push(Gate::x(1));
            c.push(Gate::x(1));
            c.push(Gate::cnot(2, 3));
            c.push(Gate::cnot(2, 3));
            let out = simulate_classical(&c, &bits).unwrap();
            proptest::prop_assert_eq!(out, bits);
        }

        // Random circuits always yield acyclic, program-ordered graphs.
        #[test]
        fn random_circuit_dag_acyclic(
            ops in proptest::collection::vec((0u32..6, 0u32..6, 0u32..6), 1..40)
        ) {
            let mut c = Circuit::new(6, "rand");
            for (a, b, t) in ops {
                if a != b && b != t && a != t {
                    c.push(Gate::toffoli(a, b, t));
                } else if a != b {
                    c.push(Gate::cnot(a, b));
                } else {
                    c.push(Gate::x(a));
                }
            }
            let dag = DependencyGraph::build(&c);
            let order = dag.topological_order();
            proptest::prop_assert!(order.is_some());
            for (from, to) in dag.edges() {
                proptest::prop_assert!(from < to, "edge ({from},{to}) violates program order");
            }
        }
    }
}
