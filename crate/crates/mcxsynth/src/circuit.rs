//! Core circuit representation: qubits, gates, composition, inversion,
//! size/depth metrics, and a peephole cancellation pass.
//!
//! Circuits are plain values. Builders construct them once and hand them
//! around immutably; nothing in this crate mutates a circuit after it is
//! built. Every gate in the alphabet (X, CX, CCX, SWAP) is self-inverse,
//! so circuit inversion is gate reversal.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Index of a qubit wire inside one circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitId(pub u32);

impl QubitId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// What a wire is for. Roles are fixed when the circuit is declared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitRole {
    Control,
    Support,
    Target,
    Auxiliary,
}

/// Declared wire: role plus a human-readable label such as `c3` or `s1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitInfo {
    pub role: QubitRole,
    pub label: String,
}

impl QubitInfo {
    pub fn new(role: QubitRole, label: impl Into<String>) -> Self {
        Self {
            role,
            label: label.into(),
        }
    }
}

/// One gate. For CX and CCX the last operand is the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    X(QubitId),
    Cx(QubitId, QubitId),
    Ccx(QubitId, QubitId, QubitId),
    Swap(QubitId, QubitId),
}

impl Gate {
    pub fn operands(&self) -> Vec<QubitId> {
        match *self {
            Gate::X(a) => vec![a],
            Gate::Cx(a, b) | Gate::Swap(a, b) => vec![a, b],
            Gate::Ccx(a, b, c) => vec![a, b, c],
        }
    }

    /// Control operands (empty for X and SWAP).
    pub fn controls(&self) -> Vec<QubitId> {
        match *self {
            Gate::X(_) | Gate::Swap(..) => vec![],
            Gate::Cx(c, _) => vec![c],
            Gate::Ccx(c1, c2, _) => vec![c1, c2],
        }
    }

    /// The wire this gate may flip (None for SWAP, which moves two).
    pub fn target(&self) -> Option<QubitId> {
        match *self {
            Gate::X(t) => Some(t),
            Gate::Cx(_, t) => Some(t),
            Gate::Ccx(_, _, t) => Some(t),
            Gate::Swap(..) => None,
        }
    }

    pub fn has_distinct_operands(&self) -> bool {
        let ops = self.operands();
        let set: BTreeSet<_> = ops.iter().collect();
        set.len() == ops.len()
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::X(a) => write!(f, "x {a}"),
            Gate::Cx(a, b) => write!(f, "cx {a},{b}"),
            Gate::Ccx(a, b, c) => write!(f, "ccx {a},{b},{c}"),
            Gate::Swap(a, b) => write!(f, "swap {a},{b}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("operand {0} is not declared in this circuit")]
    UnknownQubit(QubitId),
    #[error("gate repeats an operand: {0}")]
    DuplicateOperand(Gate),
}

/// Ordered gate list over a fixed set of declared wires.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubits: Vec<QubitInfo>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(qubits: Vec<QubitInfo>) -> Self {
        Self {
            qubits,
            gates: Vec::new(),
        }
    }

    /// Convenience constructor: `n` auxiliary wires labeled `q0..`.
    pub fn with_width(n: usize) -> Self {
        let qubits = (0..n)
            .map(|i| QubitInfo::new(QubitRole::Auxiliary, format!("q{i}")))
            .collect();
        Self::new(qubits)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[QubitInfo] {
        &self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Indices of declared wires with the given role.
    pub fn qubits_with_role(&self, role: QubitRole) -> Vec<QubitId> {
        self.qubits
            .iter()
            .enumerate()
            .filter(|(_, q)| q.role == role)
            .map(|(i, _)| QubitId(i as u32))
            .collect()
    }

    pub fn append(&mut self, gate: Gate) -> Result<(), CircuitError> {
        if !gate.has_distinct_operands() {
            return Err(CircuitError::DuplicateOperand(gate));
        }
        for op in gate.operands() {
            if op.index() >= self.qubits.len() {
                return Err(CircuitError::UnknownQubit(op));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<(), CircuitError> {
        for g in gates {
            self.append(g)?;
        }
        Ok(())
    }

    /// Total gate count.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn count_kind(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }

    pub fn x_count(&self) -> usize {
        self.count_kind(|g| matches!(g, Gate::X(_)))
    }

    pub fn cx_count(&self) -> usize {
        self.count_kind(|g| matches!(g, Gate::Cx(..)))
    }

    pub fn ccx_count(&self) -> usize {
        self.count_kind(|g| matches!(g, Gate::Ccx(..)))
    }

    pub fn swap_count(&self) -> usize {
        self.count_kind(|g| matches!(g, Gate::Swap(..)))
    }

    /// Greedy as-soon-as-possible layering. A gate joins the earliest layer
    /// after the last layer touching any of its qubits; the result is the
    /// number of layers.
    pub fn depth(&self) -> usize {
        let mut last_layer = vec![0usize; self.qubits.len()];
        let mut depth = 0;
        for gate in &self.gates {
            let layer = gate
                .operands()
                .iter()
                .map(|q| last_layer[q.index()])
                .max()
                .unwrap_or(0)
                + 1;
            for q in gate.operands() {
                last_layer[q.index()] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    /// Gates in reversed order. Every gate kind is self-inverse, so this is
    /// the circuit inverse: `c` followed by `c.inverse()` is the identity.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            qubits: self.qubits.clone(),
            gates: self.gates.iter().rev().copied().collect(),
        }
    }

    /// Concatenation over the same wire set.
    pub fn then(&self, other: &Circuit) -> Circuit {
        debug_assert_eq!(self.qubits.len(), other.qubits.len());
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Circuit {
            qubits: self.qubits.clone(),
            gates,
        }
    }

    /// Sub-circuit over the same wires taking gates from `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Circuit {
        Circuit {
            qubits: self.qubits.clone(),
            gates: self.gates[range].to_vec(),
        }
    }

    /// Removes pairs of identical adjacent gates until a fixpoint. Only
    /// literal sequence adjacency is considered; no commutation analysis.
    /// The permutation computed by the circuit is unchanged.
    pub fn cancel_adjacent_x(&self) -> Circuit {
        let mut stack: Vec<Gate> = Vec::with_capacity(self.gates.len());
        for &gate in &self.gates {
            if stack.last() == Some(&gate) {
                stack.pop();
            } else {
                stack.push(gate);
            }
        }
        Circuit {
            qubits: self.qubits.clone(),
            gates: stack,
        }
    }

    /// OpenQASM 2.0 text form. Wire `i` maps to `q[i]`.
    pub fn to_qasm(&self) -> String {
        let mut out = String::new();
        out.push_str("OPENQASM 2.0;\n");
        out.push_str("include \"qelib1.inc\";\n");
        out.push_str(&format!("qreg q[{}];\n", self.qubits.len()));
        for gate in &self.gates {
            let line = match *gate {
                Gate::X(a) => format!("x q[{}];", a.0),
                Gate::Cx(a, b) => format!("cx q[{}],q[{}];", a.0, b.0),
                Gate::Ccx(a, b, c) => format!("ccx q[{}],q[{}],q[{}];", a.0, b.0, c.0),
                Gate::Swap(a, b) => format!("swap q[{}],q[{}];", a.0, b.0),
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}
