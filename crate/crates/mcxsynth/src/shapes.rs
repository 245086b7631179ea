//! Builders for the basic staircase-shaped circuit structures.
//!
//! A stair is a run of CCX gates whose wiring follows one of four connection
//! rules between consecutive gates, optionally decorated with X gates that
//! flip the polarity of individual sub-product terms. Two composite shapes
//! are built on top of stairs: the V shape (a descending chain followed by
//! its shortened mirror) and the И shape (a V followed by one more
//! descending chain).
//!
//! Ascending stairs are defined as the exact gate reversal of the descending
//! stair with the opposite control/target rule, which is what makes an
//! ascending stair undo its descending partner gate for gate.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, QubitId};

/// How gate `i` connects to gate `i+1` in a stair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeRule {
    ControlToControl,
    TargetToTarget,
    ControlToTarget,
    TargetToControl,
}

impl ShapeRule {
    /// The rule obtained by reading the chain backwards.
    pub fn opposite(self) -> ShapeRule {
        match self {
            ShapeRule::ControlToTarget => ShapeRule::TargetToControl,
            ShapeRule::TargetToControl => ShapeRule::ControlToTarget,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Descending,
    Ascending,
}

/// (controls, supports, target, rule) plus the set of sub-product terms
/// whose polarity is negative. Marks index terms (one per CCX), not
/// individual controls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeTetrad {
    pub controls: Vec<QubitId>,
    pub supports: Vec<QubitId>,
    pub target: QubitId,
    pub rule: ShapeRule,
    pub negation_marks: BTreeSet<usize>,
}

impl ShapeTetrad {
    pub fn new(
        controls: Vec<QubitId>,
        supports: Vec<QubitId>,
        target: QubitId,
        rule: ShapeRule,
    ) -> Self {
        Self {
            controls,
            supports,
            target,
            rule,
            negation_marks: BTreeSet::new(),
        }
    }

    pub fn with_marks(mut self, marks: impl IntoIterator<Item = usize>) -> Self {
        self.negation_marks = marks.into_iter().collect();
        self
    }

    /// All wires the tetrad references, for disjointness checks.
    pub fn wires(&self) -> Vec<QubitId> {
        let mut w = self.controls.clone();
        w.extend_from_slice(&self.supports);
        w.push(self.target);
        w
    }

    pub fn is_disjoint(&self) -> bool {
        let w = self.wires();
        let set: BTreeSet<_> = w.iter().collect();
        set.len() == w.len()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("marked stairs accept only the control-target rules")]
    BadRule,
    #[error("{0}")]
    ArityMismatch(String),
    #[error("tetrad wires are not pairwise distinct")]
    QubitClash,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Width needed to host every wire a tetrad mentions.
fn width_for(wires: &[QubitId]) -> usize {
    wires.iter().map(|q| q.index() + 1).max().unwrap_or(0)
}

/// Emits a descending stair as raw gates (caller owns the circuit).
///
/// Receivers are the wires written by the chain: the supports in order, then
/// the target. A marked term gets an X on its receiver: after the CCX for
/// control-to-target, before it for target-to-control.
pub(crate) fn stair_gates_descending(tetrad: &ShapeTetrad) -> Result<Vec<Gate>, ShapeError> {
    let c = &tetrad.controls;
    let s = &tetrad.supports;
    let t = tetrad.target;
    let marks = &tetrad.negation_marks;
    let mut gates = Vec::new();

    match tetrad.rule {
        ShapeRule::TargetToControl => {
            if !tetrad.is_disjoint() {
                return Err(ShapeError::QubitClash);
            }
            // Linear chain: each CCX result feeds the next gate as a control.
            if c.len() < 2 || s.len() != c.len() - 2 {
                return Err(ShapeError::ArityMismatch(format!(
                    "target-to-control chain over {} controls needs {} supports, got {}",
                    c.len(),
                    c.len().saturating_sub(2),
                    s.len()
                )));
            }
            let receivers: Vec<QubitId> = s.iter().copied().chain([t]).collect();
            for (i, &r) in receivers.iter().enumerate() {
                if marks.contains(&i) {
                    gates.push(Gate::X(r));
                }
                let (a, b) = if i == 0 {
                    (c[0], c[1])
                } else {
                    (receivers[i - 1], c[i + 1])
                };
                gates.push(Gate::Ccx(a, b, r));
            }
        }
        ShapeRule::ControlToTarget => {
            let pairs = s.len() + 1;
            if c.len() == 2 * pairs || c.len() == 2 * pairs + 1 {
                // Pairwise form: consecutive control pairs land on the
                // receivers; an odd trailing control is left untouched.
                // A receiver may reuse a control wire as long as the pair
                // reading that wire comes first.
                let receivers: Vec<QubitId> = s.iter().copied().chain([t]).collect();
                let cset: BTreeSet<_> = c.iter().collect();
                let rset: BTreeSet<_> = receivers.iter().collect();
                if cset.len() != c.len() || rset.len() != receivers.len() {
                    return Err(ShapeError::QubitClash);
                }
                for (i, &r) in receivers.iter().enumerate() {
                    if let Some(pos) = c.iter().position(|&x| x == r) {
                        if pos / 2 >= i {
                            return Err(ShapeError::QubitClash);
                        }
                    }
                }
                for (i, &r) in receivers.iter().enumerate() {
                    gates.push(Gate::Ccx(c[2 * i], c[2 * i + 1], r));
                    if marks.contains(&i) {
                        gates.push(Gate::X(r));
                    }
                }
            } else if c.len() >= 3 && s.len() == c.len() - 2 {
                if !tetrad.is_disjoint() {
                    return Err(ShapeError::QubitClash);
                }
                // Interleaved form over the full wire stack; gate i reads
                // slots (2i, 2i+1) and writes slot 2i-1, so each gate's
                // second control is the next gate's target.
                let mut stack = vec![t, c[0], s[0]];
                for i in 1..c.len() - 2 {
                    stack.push(c[i]);
                    stack.push(s[i]);
                }
                stack.push(c[c.len() - 2]);
                stack.push(c[c.len() - 1]);
                debug_assert_eq!(stack.len(), 2 * c.len() - 1);
                for i in 0..c.len() - 1 {
                    let r = stack[2 * i];
                    gates.push(Gate::Ccx(stack[2 * i + 1], stack[2 * i + 2], r));
                    if marks.contains(&i) {
                        gates.push(Gate::X(r));
                    }
                }
            } else {
                return Err(ShapeError::ArityMismatch(format!(
                    "control-to-target stair over {} controls accepts {} or {} supports, got {}",
                    c.len(),
                    c.len().saturating_sub(2),
                    c.len().saturating_sub(1) / 2,
                    s.len()
                )));
            }
        }
        ShapeRule::ControlToControl => {
            if !marks.is_empty() {
                return Err(ShapeError::BadRule);
            }
            if !tetrad.is_disjoint() {
                return Err(ShapeError::QubitClash);
            }
            if c.len() < 2 || s.len() != c.len() - 2 {
                return Err(ShapeError::ArityMismatch(
                    "control-to-control stair needs controls - 2 supports".into(),
                ));
            }
            // All gates share the first control.
            let receivers: Vec<QubitId> = s.iter().copied().chain([t]).collect();
            for (i, &r) in receivers.iter().enumerate() {
                gates.push(Gate::Ccx(c[0], c[i + 1], r));
            }
        }
        ShapeRule::TargetToTarget => {
            if !marks.is_empty() {
                return Err(ShapeError::BadRule);
            }
            if !tetrad.is_disjoint() {
                return Err(ShapeError::QubitClash);
            }
            if c.len() < 2 || !c.len().is_multiple_of(2) || !s.is_empty() {
                return Err(ShapeError::ArityMismatch(
                    "target-to-target stair needs an even control count and no supports".into(),
                ));
            }
            // All gates share the target wire.
            for pair in c.chunks(2) {
                gates.push(Gate::Ccx(pair[0], pair[1], t));
            }
        }
    }
    Ok(gates)
}

pub(crate) fn stair_gates(
    tetrad: &ShapeTetrad,
    orientation: Orientation,
) -> Result<Vec<Gate>, ShapeError> {
    match orientation {
        Orientation::Descending => stair_gates_descending(tetrad),
        Orientation::Ascending => {
            let mirrored = ShapeTetrad {
                rule: tetrad.rule.opposite(),
                ..tetrad.clone()
            };
            // Marked stairs only exist for the control/target rules, and the
            // original rule decides that, not the mirrored one.
            if !tetrad.negation_marks.is_empty()
                && matches!(
                    tetrad.rule,
                    ShapeRule::ControlToControl | ShapeRule::TargetToTarget
                )
            {
                return Err(ShapeError::BadRule);
            }
            let mut gates = stair_gates_descending(&mirrored)?;
            gates.reverse();
            Ok(gates)
        }
    }
}

/// Builds one stair over a fresh circuit wide enough for its wires.
pub fn build_stair(tetrad: &ShapeTetrad, orientation: Orientation) -> Result<Circuit, ShapeError> {
    if !tetrad.negation_marks.is_empty()
        && matches!(
            tetrad.rule,
            ShapeRule::ControlToControl | ShapeRule::TargetToTarget
        )
    {
        return Err(ShapeError::BadRule);
    }
    let gates = stair_gates(tetrad, orientation)?;
    let mut circuit = Circuit::with_width(width_for(&tetrad.wires()));
    circuit.extend(gates)?;
    Ok(circuit)
}

/// V-shape gates over the given wires: a descending chain through all
/// controls followed by the reversed chain over all but the last control,
/// which restores every support.
pub(crate) fn vshape_gates(
    controls: &[QubitId],
    supports: &[QubitId],
    target: QubitId,
) -> Result<Vec<Gate>, ShapeError> {
    let n = controls.len();
    if n < 3 || supports.len() != n - 2 {
        return Err(ShapeError::ArityMismatch(format!(
            "V over {n} controls needs {} supports, got {}",
            n.saturating_sub(2),
            supports.len()
        )));
    }
    let down = ShapeTetrad::new(
        controls.to_vec(),
        supports.to_vec(),
        target,
        ShapeRule::TargetToControl,
    );
    let up = ShapeTetrad::new(
        controls[..n - 1].to_vec(),
        supports[..n - 3].to_vec(),
        supports[n - 3],
        ShapeRule::ControlToTarget,
    );
    let mut gates = stair_gates_descending(&down)?;
    gates.extend(stair_gates(&up, Orientation::Ascending)?);
    Ok(gates)
}

pub fn build_vshape(
    controls: &[QubitId],
    supports: &[QubitId],
    target: QubitId,
) -> Result<Circuit, ShapeError> {
    let gates = vshape_gates(controls, supports, target)?;
    let mut wires = controls.to_vec();
    wires.extend_from_slice(supports);
    wires.push(target);
    let mut circuit = Circuit::with_width(width_for(&wires));
    circuit.extend(gates)?;
    Ok(circuit)
}

/// И-shape: a V followed by one more descending chain whose head control is
/// the first support. The chain cancels the V's residue on the target, so
/// the target carries the clean product of all controls.
pub fn build_i_shape(
    controls: &[QubitId],
    supports: &[QubitId],
    target: QubitId,
) -> Result<Circuit, ShapeError> {
    let n = controls.len();
    if n < 3 || supports.len() != n - 2 {
        return Err(ShapeError::ArityMismatch(format!(
            "И over {n} controls needs {} supports, got {}",
            n.saturating_sub(2),
            supports.len()
        )));
    }
    let mut gates = vshape_gates(controls, supports, target)?;
    let mut tail_controls = vec![supports[0]];
    tail_controls.extend_from_slice(&controls[2..]);
    let tail = ShapeTetrad::new(
        tail_controls,
        supports[1..].to_vec(),
        target,
        ShapeRule::TargetToControl,
    );
    gates.extend(stair_gates_descending(&tail)?);
    let mut wires = controls.to_vec();
    wires.extend_from_slice(supports);
    wires.push(target);
    let mut circuit = Circuit::with_width(width_for(&wires));
    circuit.extend(gates)?;
    Ok(circuit)
}
