//! Composition of shaped structures into full synthesis circuits.
//!
//! A [`CompositionSequence`] lists shaped elements in a fixed shape order.
//! Composing a sequence emits the elements twice: once as written, and once
//! "step-decreased", with the gates that read the original values of the
//! first two controls removed and the first support promoted in their place.
//! The two halves write the same product terms except for that head factor,
//! so XOR-ing their target contributions leaves exactly the product of all
//! controls: the second half is what cancels the garbage terms the first
//! half parks on the target.
//!
//! Three canonical sequence generators are provided. `seq1` is the plain
//! V-shape ladder over dedicated supports, `seq2` trades supports for a
//! layer of pairwise products parked on reused (negated) control wires, and
//! `seq3` splits the controls into staircase chunks of growing length with a
//! single fresh support.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::Range;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, QubitId, QubitInfo, QubitRole};
use crate::shapes::{
    stair_gates, stair_gates_descending, vshape_gates, Orientation, ShapeError, ShapeRule,
    ShapeTetrad,
};

/// The basic shape an element instantiates, in canonical sequence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ShapeKind {
    Backslash,
    Downstairs,
    V,
    IShape,
    Upstairs,
    Slash,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Backslash => "backslash",
            ShapeKind::Downstairs => "downstairs",
            ShapeKind::V => "v",
            ShapeKind::IShape => "i",
            ShapeKind::Upstairs => "upstairs",
            ShapeKind::Slash => "slash",
        }
    }

    fn order_index(self) -> u8 {
        match self {
            ShapeKind::Backslash => 0,
            ShapeKind::Downstairs => 1,
            ShapeKind::V => 2,
            ShapeKind::IShape => 3,
            ShapeKind::Upstairs => 4,
            ShapeKind::Slash => 5,
        }
    }

    fn is_ascending(self) -> bool {
        matches!(self, ShapeKind::Upstairs | ShapeKind::Slash)
    }

    fn allows_marks(self) -> bool {
        matches!(self, ShapeKind::Downstairs | ShapeKind::Upstairs)
    }
}

/// One entry of a composition sequence: a repetition count and the tetrad
/// for each repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceElement {
    pub count: usize,
    pub shape: ShapeKind,
    pub tetrads: Vec<ShapeTetrad>,
}

impl SequenceElement {
    pub fn once(shape: ShapeKind, tetrad: ShapeTetrad) -> Self {
        Self {
            count: 1,
            shape,
            tetrads: vec![tetrad],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqVariant {
    Seq1,
    Seq2,
    Seq3,
    Custom,
}

impl SeqVariant {
    pub fn name(self) -> &'static str {
        match self {
            SeqVariant::Seq1 => "seq1",
            SeqVariant::Seq2 => "seq2",
            SeqVariant::Seq3 => "seq3",
            SeqVariant::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSequence {
    pub elements: Vec<SequenceElement>,
    pub total_controls: usize,
    pub support_count: usize,
    pub variant: SeqVariant,
}

/// Split of `n` controls into staircase chunk lengths 2, 3, .., k plus a
/// final chunk of m + 1 controls, with k maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderDecomposition {
    pub k: usize,
    pub m: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("sequence has no repetitions")]
    EmptySequence,
    #[error("a tetrad reuses a wire across controls, supports, and target")]
    QubitClash,
    #[error("support count {n_s} is not legal for {variant} with {n} controls")]
    BadSupportCount { variant: String, n: usize, n_s: usize },
    #[error("unknown sequence variant: {0}")]
    BadVariant(String),
    #[error("need at least 3 controls, got {0}")]
    TooFewControls(usize),
    #[error("elements violate the fixed shape order")]
    BadShapeOrder,
    #[error("shape {0} does not take negation marks")]
    MarkedShape(&'static str),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Gate range of one emitted element, for segment-level metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSpan {
    /// 0 for the leading half, 1 for the step-decreased half.
    pub half: u8,
    pub shape: ShapeKind,
    pub range: Range<usize>,
}

/// A composed circuit plus the boundary between its two halves.
#[derive(Debug, Clone)]
pub struct ComposeOutput {
    pub circuit: Circuit,
    /// Index of the first gate of the step-decreased half.
    pub split: usize,
    pub spans: Vec<ElementSpan>,
}

impl ComposeOutput {
    pub fn first_half(&self) -> Circuit {
        self.circuit.slice(0..self.split)
    }

    pub fn second_half(&self) -> Circuit {
        self.circuit.slice(self.split..self.circuit.size())
    }
}

pub fn ladder_split(n: usize) -> Result<LadderDecomposition, ComposeError> {
    if n < 3 {
        return Err(ComposeError::TooFewControls(n));
    }
    let mut k = 2;
    while (k + 1) * (k + 2) / 2 <= n {
        k += 1;
    }
    let m = n - k * (k + 1) / 2;
    debug_assert!(m <= k);
    Ok(LadderDecomposition { k, m })
}

/// V gates that tolerate degenerate control counts. Two controls multiply
/// directly into the target; fewer leave nothing to do.
fn v_gates_relaxed(
    controls: &[QubitId],
    supports: &[QubitId],
    target: QubitId,
) -> Result<Vec<Gate>, ShapeError> {
    match controls.len() {
        0 | 1 => Ok(Vec::new()),
        2 => {
            if !supports.is_empty() {
                return Err(ShapeError::ArityMismatch(
                    "a two-control product takes no supports".into(),
                ));
            }
            Ok(vec![Gate::Ccx(controls[0], controls[1], target)])
        }
        _ => vshape_gates(controls, supports, target),
    }
}

fn i_gates(
    controls: &[QubitId],
    supports: &[QubitId],
    target: QubitId,
) -> Result<Vec<Gate>, ShapeError> {
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
    Ok(gates)
}

fn element_gates(shape: ShapeKind, tetrad: &ShapeTetrad) -> Result<Vec<Gate>, ComposeError> {
    if !tetrad.negation_marks.is_empty() && !shape.allows_marks() {
        return Err(ComposeError::MarkedShape(shape.name()));
    }
    let gates = match shape {
        ShapeKind::Backslash | ShapeKind::Downstairs => stair_gates_descending(tetrad)?,
        ShapeKind::Upstairs | ShapeKind::Slash => stair_gates(tetrad, Orientation::Ascending)?,
        ShapeKind::V => v_gates_relaxed(&tetrad.controls, &tetrad.supports, tetrad.target)?,
        ShapeKind::IShape => i_gates(&tetrad.controls, &tetrad.supports, tetrad.target)?,
    };
    Ok(gates)
}

/// Step-decrease of one descending target-to-control chain: drop the head
/// gate that reads the two lead controls, promote the first support to lead
/// the chain, and keep a mark on the promoted wire as a polarity X.
fn decreased_chain_gates(tetrad: &ShapeTetrad) -> Result<Vec<Gate>, ComposeError> {
    let mut gates = Vec::new();
    if tetrad.supports.is_empty() {
        // Single-gate chain: only a surviving mark remains.
        if tetrad.negation_marks.contains(&0) {
            gates.push(Gate::X(tetrad.target));
        }
        return Ok(gates);
    }
    let lead = tetrad.supports[0];
    if tetrad.negation_marks.contains(&0) {
        gates.push(Gate::X(lead));
    }
    let mut controls = vec![lead];
    controls.extend_from_slice(&tetrad.controls[2..]);
    let marks: BTreeSet<usize> = tetrad
        .negation_marks
        .iter()
        .filter(|&&i| i >= 1)
        .map(|&i| i - 1)
        .collect();
    let decreased = ShapeTetrad {
        controls,
        supports: tetrad.supports[1..].to_vec(),
        target: tetrad.target,
        rule: tetrad.rule,
        negation_marks: marks,
    };
    gates.extend(stair_gates_descending(&decreased)?);
    Ok(gates)
}

/// Gates for the step-decreased form of one element, or `None` when the
/// element does not read the original values of the two lead controls and
/// is therefore kept as-is.
fn decreased_element_gates(
    shape: ShapeKind,
    tetrad: &ShapeTetrad,
    first_two: (QubitId, QubitId),
    written: &BTreeSet<QubitId>,
) -> Result<Option<Vec<Gate>>, ComposeError> {
    let leads = |t: &ShapeTetrad| {
        t.controls.len() >= 2
            && t.controls[0] == first_two.0
            && t.controls[1] == first_two.1
            && !written.contains(&first_two.0)
            && !written.contains(&first_two.1)
    };
    match shape {
        ShapeKind::Backslash | ShapeKind::Downstairs => {
            if tetrad.rule == ShapeRule::TargetToControl && leads(tetrad) {
                Ok(Some(decreased_chain_gates(tetrad)?))
            } else {
                Ok(None)
            }
        }
        ShapeKind::Upstairs | ShapeKind::Slash => {
            // An ascending element mirrors the descending chain with the
            // opposite rule; its step-decrease is that chain's, reversed.
            let desc = ShapeTetrad {
                rule: tetrad.rule.opposite(),
                ..tetrad.clone()
            };
            if desc.rule == ShapeRule::TargetToControl && leads(&desc) {
                let mut gates = decreased_chain_gates(&desc)?;
                gates.reverse();
                Ok(Some(gates))
            } else {
                Ok(None)
            }
        }
        ShapeKind::V => {
            if leads(tetrad) {
                if tetrad.supports.is_empty() {
                    return Ok(Some(Vec::new()));
                }
                let mut controls = vec![tetrad.supports[0]];
                controls.extend_from_slice(&tetrad.controls[2..]);
                Ok(Some(v_gates_relaxed(
                    &controls,
                    &tetrad.supports[1..],
                    tetrad.target,
                )?))
            } else {
                Ok(None)
            }
        }
        ShapeKind::IShape => {
            if leads(tetrad) {
                let mut controls = vec![tetrad.supports[0]];
                controls.extend_from_slice(&tetrad.controls[2..]);
                let mut gates =
                    v_gates_relaxed(&controls, &tetrad.supports[1..], tetrad.target)?;
                let tail = ShapeTetrad::new(
                    controls,
                    tetrad.supports[1..].to_vec(),
                    tetrad.target,
                    ShapeRule::TargetToControl,
                );
                gates.extend(stair_gates_descending(&tail)?);
                Ok(Some(gates))
            } else {
                Ok(None)
            }
        }
    }
}

/// Wires an element writes (descending) or un-writes (ascending), used to
/// distinguish original control values from values parked on reused wires.
fn receiver_wires(shape: ShapeKind, tetrad: &ShapeTetrad) -> Vec<QubitId> {
    match shape {
        ShapeKind::Backslash
        | ShapeKind::Downstairs
        | ShapeKind::Upstairs
        | ShapeKind::Slash => {
            let mut w = tetrad.supports.clone();
            w.push(tetrad.target);
            w
        }
        // V restores its supports; И additionally leaves residue on the
        // trailing supports.
        ShapeKind::V => vec![tetrad.target],
        ShapeKind::IShape => {
            let mut w = tetrad.supports[1..].to_vec();
            w.push(tetrad.target);
            w
        }
    }
}

/// Composes a sequence into a circuit over `pool`: the elements as written,
/// followed by their step-decreased forms.
pub fn compose(
    seq: &CompositionSequence,
    pool: Vec<QubitInfo>,
) -> Result<ComposeOutput, ComposeError> {
    let total: usize = seq.elements.iter().map(|e| e.count).sum();
    if total == 0 {
        return Err(ComposeError::EmptySequence);
    }
    let mut last_order = 0u8;
    for e in &seq.elements {
        if e.shape.order_index() < last_order {
            return Err(ComposeError::BadShapeOrder);
        }
        last_order = e.shape.order_index();
        if e.tetrads.len() != e.count {
            return Err(ComposeError::EmptySequence);
        }
    }

    let first_two = seq.elements.first().and_then(|e| {
        let t = e.tetrads.first()?;
        if t.controls.len() >= 2 {
            Some((t.controls[0], t.controls[1]))
        } else {
            None
        }
    });

    let mut circuit = Circuit::new(pool);
    let mut spans = Vec::new();

    let clash = |e: ComposeError| match e {
        ComposeError::Shape(ShapeError::QubitClash) => ComposeError::QubitClash,
        other => other,
    };

    for e in &seq.elements {
        for tetrad in &e.tetrads {
            let start = circuit.size();
            circuit.extend(element_gates(e.shape, tetrad).map_err(clash)?)?;
            spans.push(ElementSpan {
                half: 0,
                shape: e.shape,
                range: start..circuit.size(),
            });
        }
    }
    let split = circuit.size();

    let mut written: BTreeSet<QubitId> = BTreeSet::new();
    for e in &seq.elements {
        for tetrad in &e.tetrads {
            let start = circuit.size();
            let gates = match first_two {
                Some(ft) => {
                    decreased_element_gates(e.shape, tetrad, ft, &written).map_err(clash)?
                }
                None => None,
            };
            match gates {
                Some(g) => circuit.extend(g)?,
                None => circuit.extend(element_gates(e.shape, tetrad).map_err(clash)?)?,
            }
            spans.push(ElementSpan {
                half: 1,
                shape: e.shape,
                range: start..circuit.size(),
            });
            let receivers = receiver_wires(e.shape, tetrad);
            if e.shape.is_ascending() {
                for r in receivers {
                    written.remove(&r);
                }
            } else {
                written.extend(receivers);
            }
        }
    }

    Ok(ComposeOutput {
        circuit,
        split,
        spans,
    })
}

/// Standard wire pool for a synthesis over `n` controls and `n_s` supports:
/// controls first, then supports, then the target.
pub fn standard_pool(n: usize, n_s: usize) -> Vec<QubitInfo> {
    let mut pool = Vec::with_capacity(n + n_s + 1);
    for i in 1..=n {
        pool.push(QubitInfo::new(QubitRole::Control, format!("c{i}")));
    }
    for i in 1..=n_s {
        pool.push(QubitInfo::new(QubitRole::Support, format!("s{i}")));
    }
    pool.push(QubitInfo::new(QubitRole::Target, "t"));
    pool
}

/// Builds the canonical sequence for a variant. `n_s` may be omitted where
/// the variant fixes it (`seq1` uses n-2 supports, `seq3` exactly one).
pub fn make_sequence(
    variant: SeqVariant,
    n: usize,
    n_s: Option<usize>,
) -> Result<CompositionSequence, ComposeError> {
    if n < 3 {
        return Err(ComposeError::TooFewControls(n));
    }
    // 1-based wire accessors over the standard pool
    let c = |i: usize| QubitId((i - 1) as u32);
    match variant {
        SeqVariant::Seq1 => {
            let n_s = n_s.unwrap_or(n - 2);
            if n_s != n - 2 {
                return Err(ComposeError::BadSupportCount {
                    variant: "seq1".into(),
                    n,
                    n_s,
                });
            }
            let s = |i: usize| QubitId((n + i - 1) as u32);
            let t = QubitId((n + n_s) as u32);
            let tetrad = ShapeTetrad::new(
                (1..=n).map(c).collect(),
                (1..=n_s).map(s).collect(),
                t,
                ShapeRule::TargetToControl,
            );
            Ok(CompositionSequence {
                elements: vec![SequenceElement::once(ShapeKind::V, tetrad)],
                total_controls: n,
                support_count: n_s,
                variant,
            })
        }
        SeqVariant::Seq2 => {
            let n_s = n_s.ok_or(ComposeError::BadSupportCount {
                variant: "seq2".into(),
                n,
                n_s: 0,
            })?;
            if n_s < 1 || n_s > n - 2 {
                return Err(ComposeError::BadSupportCount {
                    variant: "seq2".into(),
                    n,
                    n_s,
                });
            }
            let s = |i: usize| QubitId((n + i - 1) as u32);
            let t = QubitId((n + n_s) as u32);
            let k = (n - n_s - 1) / 2;
            let odd = (n - n_s - 1) % 2 == 1;

            let mut elements = Vec::new();
            let opening = ShapeTetrad::new(
                (1..=n_s + 1).map(c).collect(),
                (1..n_s).map(s).collect(),
                s(n_s),
                ShapeRule::TargetToControl,
            );
            elements.push(SequenceElement::once(ShapeKind::Backslash, opening.clone()));

            let pair_layer = if k >= 1 {
                let tetrad = ShapeTetrad::new(
                    (n_s + 2..=n_s + 1 + 2 * k).map(c).collect(),
                    (1..k).map(c).collect(),
                    c(k),
                    ShapeRule::ControlToTarget,
                )
                .with_marks(0..k);
                elements.push(SequenceElement::once(ShapeKind::Downstairs, tetrad.clone()));
                Some(tetrad)
            } else {
                None
            };

            // effective controls: the parked pair products, the odd leftover
            // control, and the opening chain's accumulator
            let mut effective: Vec<QubitId> = (1..=k).map(c).collect();
            if odd {
                effective.push(c(n));
            }
            effective.push(s(n_s));

            let in_effective: BTreeSet<QubitId> = effective.iter().copied().collect();
            let mut free: Vec<QubitId> = (k + 1..=n)
                .map(c)
                .filter(|q| !in_effective.contains(q))
                .collect();
            free.extend((1..n_s).map(s));
            let wanted = effective.len().saturating_sub(2);
            let v_supports: Vec<QubitId> = free.into_iter().take(wanted).collect();
            debug_assert_eq!(v_supports.len(), wanted);

            elements.push(SequenceElement::once(
                ShapeKind::V,
                ShapeTetrad::new(
                    effective.clone(),
                    v_supports.clone(),
                    t,
                    ShapeRule::TargetToControl,
                ),
            ));
            if effective.len() >= 3 {
                let mut second: Vec<QubitId> = vec![v_supports[0]];
                second.extend_from_slice(&effective[2..]);
                elements.push(SequenceElement::once(
                    ShapeKind::V,
                    ShapeTetrad::new(
                        second,
                        v_supports[1..].to_vec(),
                        t,
                        ShapeRule::TargetToControl,
                    ),
                ));
            }

            if let Some(pairs) = pair_layer {
                elements.push(SequenceElement::once(
                    ShapeKind::Upstairs,
                    ShapeTetrad {
                        rule: ShapeRule::TargetToControl,
                        ..pairs
                    },
                ));
            }
            elements.push(SequenceElement::once(
                ShapeKind::Slash,
                ShapeTetrad {
                    rule: ShapeRule::ControlToTarget,
                    ..opening
                },
            ));

            Ok(CompositionSequence {
                elements,
                total_controls: n,
                support_count: n_s,
                variant,
            })
        }
        SeqVariant::Seq3 => {
            let n_s = n_s.unwrap_or(1);
            if n_s != 1 {
                return Err(ComposeError::BadSupportCount {
                    variant: "seq3".into(),
                    n,
                    n_s,
                });
            }
            let s1 = QubitId(n as u32);
            let t = QubitId((n + 1) as u32);
            let LadderDecomposition { k, m } = ladder_split(n)?;
            let tri = |i: usize| i * (i + 1) / 2;

            let opening = ShapeTetrad::new(
                vec![c(1), c(2)],
                vec![],
                s1,
                ShapeRule::TargetToControl,
            );
            let mut elements = vec![SequenceElement::once(ShapeKind::Backslash, opening.clone())];

            // middle chunks of sizes 3..k, each parked on the previous
            // chunk's control wires
            let mut chunk_tetrads = Vec::new();
            for i in 2..k {
                let controls: Vec<QubitId> = (tri(i)..=tri(i + 1) - 1).map(c).collect();
                let receivers: Vec<QubitId> = (tri(i - 1)..=tri(i) - 1).map(c).collect();
                let terms = receivers.len();
                let tetrad = ShapeTetrad::new(
                    controls,
                    receivers[..terms - 1].to_vec(),
                    receivers[terms - 1],
                    ShapeRule::TargetToControl,
                )
                .with_marks(0..terms);
                chunk_tetrads.push(tetrad);
            }
            // final chunk of m + 1 controls
            let final_wire = if m >= 1 {
                let controls: Vec<QubitId> = (tri(k)..=n).map(c).collect();
                let receivers: Vec<QubitId> =
                    (tri(k - 1)..tri(k - 1) + m).map(c).collect();
                let target = receivers[m - 1];
                let tetrad = ShapeTetrad::new(
                    controls,
                    receivers[..m - 1].to_vec(),
                    target,
                    ShapeRule::TargetToControl,
                )
                .with_marks(0..m);
                chunk_tetrads.push(tetrad);
                target
            } else {
                c(n)
            };
            for tetrad in &chunk_tetrads {
                elements.push(SequenceElement::once(ShapeKind::Downstairs, tetrad.clone()));
            }

            let mut effective = vec![s1];
            effective.extend((2..k).map(|i| c(tri(i) - 1)));
            effective.push(final_wire);
            debug_assert_eq!(effective.len(), k);

            let in_effective: BTreeSet<QubitId> = effective.iter().copied().collect();
            let free: Vec<QubitId> = (1..=n).map(c).filter(|q| !in_effective.contains(q)).collect();
            let wanted = effective.len().saturating_sub(2);
            let v_supports: Vec<QubitId> = free.into_iter().take(wanted).collect();
            debug_assert_eq!(v_supports.len(), wanted);

            elements.push(SequenceElement::once(
                ShapeKind::V,
                ShapeTetrad::new(
                    effective.clone(),
                    v_supports.clone(),
                    t,
                    ShapeRule::TargetToControl,
                ),
            ));
            if effective.len() >= 3 {
                let mut second = vec![v_supports[0]];
                second.extend_from_slice(&effective[2..]);
                elements.push(SequenceElement::once(
                    ShapeKind::V,
                    ShapeTetrad::new(
                        second,
                        v_supports[1..].to_vec(),
                        t,
                        ShapeRule::TargetToControl,
                    ),
                ));
            }

            for tetrad in chunk_tetrads.iter().rev() {
                elements.push(SequenceElement::once(
                    ShapeKind::Upstairs,
                    ShapeTetrad {
                        rule: ShapeRule::ControlToTarget,
                        ..tetrad.clone()
                    },
                ));
            }
            elements.push(SequenceElement::once(
                ShapeKind::Slash,
                ShapeTetrad {
                    rule: ShapeRule::ControlToTarget,
                    ..opening
                },
            ));

            Ok(CompositionSequence {
                elements,
                total_controls: n,
                support_count: 1,
                variant,
            })
        }
        SeqVariant::Custom => Err(ComposeError::BadVariant(
            "custom sequences are built directly, not generated".into(),
        )),
    }
}

fn rule_name(rule: ShapeRule) -> &'static str {
    match rule {
        ShapeRule::ControlToControl => "c2c",
        ShapeRule::TargetToTarget => "t2t",
        ShapeRule::ControlToTarget => "c2t",
        ShapeRule::TargetToControl => "t2c",
    }
}

fn wire_list(wires: &[QubitId]) -> String {
    if wires.is_empty() {
        return "-".into();
    }
    wires
        .iter()
        .map(|q| q.0.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Line-oriented text form of a sequence, one line per element:
/// `(count, shape, rule, controls, supports, target, marks)`.
pub fn sequence_text(seq: &CompositionSequence) -> String {
    let mut out = String::new();
    for e in &seq.elements {
        for tetrad in &e.tetrads {
            let marks = if tetrad.negation_marks.is_empty() {
                "-".to_string()
            } else {
                tetrad
                    .negation_marks
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let _ = writeln!(
                out,
                "({}, {}, {}, {}, {}, {}, {})",
                e.count,
                e.shape.name(),
                rule_name(tetrad.rule),
                wire_list(&tetrad.controls),
                wire_list(&tetrad.supports),
                tetrad.target.0,
                marks
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{apply, permutation_table, BasisState};

    fn q(i: u32) -> QubitId {
        QubitId(i)
    }

    #[test]
    fn ladder_split_canonical_values() {
        // frozen from enumerating k maximal with k(k+1)/2 <= n
        assert_eq!(ladder_split(3).unwrap(), LadderDecomposition { k: 2, m: 0 });
        assert_eq!(ladder_split(6).unwrap(), LadderDecomposition { k: 3, m: 0 });
        assert_eq!(ladder_split(8).unwrap(), LadderDecomposition { k: 3, m: 2 });
        assert_eq!(ladder_split(2).unwrap_err(), ComposeError::TooFewControls(2));
    }

    #[test]
    fn ladder_split_constraint_holds_up_to_200() {
        for n in 3..=200 {
            let LadderDecomposition { k, m } = ladder_split(n).unwrap();
            assert!(k >= 2);
            assert!(m <= k);
            assert_eq!(n, k * (k + 1) / 2 + m);
            // maximality of k
            assert!((k + 1) * (k + 2) / 2 > n);
        }
    }

    #[test]
    fn empty_sequence_rejected() {
        let seq = CompositionSequence {
            elements: vec![],
            total_controls: 3,
            support_count: 1,
            variant: SeqVariant::Custom,
        };
        assert_eq!(
            compose(&seq, standard_pool(3, 1)).unwrap_err(),
            ComposeError::EmptySequence
        );
    }

    #[test]
    fn qubit_clash_rejected() {
        let tetrad = ShapeTetrad::new(vec![q(0), q(1)], vec![], q(0), ShapeRule::TargetToControl);
        let seq = CompositionSequence {
            elements: vec![SequenceElement::once(ShapeKind::Backslash, tetrad)],
            total_controls: 2,
            support_count: 0,
            variant: SeqVariant::Custom,
        };
        assert_eq!(
            compose(&seq, standard_pool(2, 0)).unwrap_err(),
            ComposeError::QubitClash
        );
    }

    #[test]
    fn shape_order_enforced() {
        let a = ShapeTetrad::new(vec![q(0), q(1)], vec![], q(3), ShapeRule::TargetToControl);
        let b = ShapeTetrad::new(vec![q(0), q(1)], vec![], q(2), ShapeRule::TargetToControl)
            .with_marks([0]);
        let seq = CompositionSequence {
            elements: vec![
                SequenceElement::once(ShapeKind::Upstairs, b),
                SequenceElement::once(ShapeKind::Backslash, a),
            ],
            total_controls: 2,
            support_count: 1,
            variant: SeqVariant::Custom,
        };
        assert_eq!(
            compose(&seq, standard_pool(2, 1)).unwrap_err(),
            ComposeError::BadShapeOrder
        );
    }

    /// The worked two-element pair: a marked chain through three controls
    /// followed by the mirror that restores the reused support. Composition
    /// leaves the target holding c1c2c3 xor t with everything else restored.
    #[test]
    fn marked_pair_computes_c3x() {
        let pool = standard_pool(3, 1); // c1 c2 c3 s1 t -> wires 0..4
        let down = ShapeTetrad::new(
            vec![q(0), q(1), q(2)],
            vec![q(3)],
            q(4),
            ShapeRule::TargetToControl,
        )
        .with_marks([0]);
        let up = ShapeTetrad::new(vec![q(0), q(1)], vec![], q(3), ShapeRule::ControlToTarget)
            .with_marks([0]);
        let seq = CompositionSequence {
            elements: vec![
                SequenceElement::once(ShapeKind::Downstairs, down),
                SequenceElement::once(ShapeKind::Upstairs, up),
            ],
            total_controls: 3,
            support_count: 1,
            variant: SeqVariant::Custom,
        };
        let out = compose(&seq, pool).unwrap();
        for s in 0u64..(1 << 5) {
            let bit = |i: u32| (s >> i) & 1;
            let res = apply(&out.circuit, BasisState::new(s, 5)).unwrap().bits;
            assert_eq!((res >> 4) & 1, bit(4) ^ (bit(0) & bit(1) & bit(2)));
            assert_eq!(res & 0b1111, s & 0b1111);
        }
    }

    /// The singleton V realizes the same permutation as the two-element
    /// marked pair above.
    #[test]
    fn singleton_v_matches_marked_pair() {
        let v = ShapeTetrad::new(
            vec![q(0), q(1), q(2)],
            vec![q(3)],
            q(4),
            ShapeRule::TargetToControl,
        );
        let seq_v = CompositionSequence {
            elements: vec![SequenceElement::once(ShapeKind::V, v)],
            total_controls: 3,
            support_count: 1,
            variant: SeqVariant::Custom,
        };
        let down = ShapeTetrad::new(
            vec![q(0), q(1), q(2)],
            vec![q(3)],
            q(4),
            ShapeRule::TargetToControl,
        )
        .with_marks([0]);
        let up = ShapeTetrad::new(vec![q(0), q(1)], vec![], q(3), ShapeRule::ControlToTarget)
            .with_marks([0]);
        let seq_pair = CompositionSequence {
            elements: vec![
                SequenceElement::once(ShapeKind::Downstairs, down),
                SequenceElement::once(ShapeKind::Upstairs, up),
            ],
            total_controls: 3,
            support_count: 1,
            variant: SeqVariant::Custom,
        };
        let a = compose(&seq_v, standard_pool(3, 1)).unwrap();
        let b = compose(&seq_pair, standard_pool(3, 1)).unwrap();
        assert_eq!(
            permutation_table(&a.circuit).unwrap(),
            permutation_table(&b.circuit).unwrap()
        );
    }

    #[test]
    fn seq1_n5_counts() {
        let seq = make_sequence(SeqVariant::Seq1, 5, None).unwrap();
        assert_eq!(seq.support_count, 3);
        let out = compose(&seq, standard_pool(5, 3)).unwrap();
        assert_eq!(out.circuit.qubit_count(), 9);
        assert_eq!(out.circuit.ccx_count(), 12);
        assert_eq!(out.circuit.x_count(), 0);
    }

    #[test]
    fn seq2_n5_ns1_counts() {
        let seq = make_sequence(SeqVariant::Seq2, 5, Some(1)).unwrap();
        let out = compose(&seq, standard_pool(5, 1)).unwrap();
        assert_eq!(out.circuit.x_count(), 4);
        assert_eq!(out.circuit.ccx_count(), 14);
        assert_eq!(out.circuit.size(), 18);
    }

    #[test]
    fn seq3_n3_counts() {
        let seq = make_sequence(SeqVariant::Seq3, 3, None).unwrap();
        let out = compose(&seq, standard_pool(3, 1)).unwrap();
        assert_eq!(out.circuit.x_count(), 0);
        assert_eq!(out.circuit.ccx_count(), 4);
        assert_eq!(out.circuit.size(), 4);
    }

    #[test]
    fn seq2_with_max_supports_matches_seq1_counts() {
        for n in 3..=12 {
            let s1 = compose(
                &make_sequence(SeqVariant::Seq1, n, None).unwrap(),
                standard_pool(n, n - 2),
            )
            .unwrap();
            let s2 = compose(
                &make_sequence(SeqVariant::Seq2, n, Some(n - 2)).unwrap(),
                standard_pool(n, n - 2),
            )
            .unwrap();
            assert_eq!(s1.circuit.ccx_count(), s2.circuit.ccx_count(), "n={n}");
            assert_eq!(s2.circuit.x_count(), 0);
        }
    }

    /// For seq1 the step-decreased half touches exactly the first half's
    /// wires minus the two lead controls.
    #[test]
    fn seq1_second_half_drops_lead_controls() {
        for n in 3..=8usize {
            let seq = make_sequence(SeqVariant::Seq1, n, None).unwrap();
            let out = compose(&seq, standard_pool(n, n - 2)).unwrap();
            let touched = |c: &Circuit| -> BTreeSet<QubitId> {
                c.gates().iter().flat_map(|g| g.operands()).collect()
            };
            let mut expect = touched(&out.first_half());
            expect.remove(&q(0));
            expect.remove(&q(1));
            assert_eq!(touched(&out.second_half()), expect);
            assert_eq!(out.second_half().size(), out.first_half().size() - 2);
        }
    }

    #[test]
    fn bad_support_counts_rejected() {
        assert!(matches!(
            make_sequence(SeqVariant::Seq2, 5, Some(4)).unwrap_err(),
            ComposeError::BadSupportCount { .. }
        ));
        assert!(matches!(
            make_sequence(SeqVariant::Seq2, 5, Some(0)).unwrap_err(),
            ComposeError::BadSupportCount { .. }
        ));
        assert!(matches!(
            make_sequence(SeqVariant::Seq1, 5, Some(1)).unwrap_err(),
            ComposeError::BadSupportCount { .. }
        ));
        assert_eq!(
            make_sequence(SeqVariant::Seq1, 2, None).unwrap_err(),
            ComposeError::TooFewControls(2)
        );
    }

    #[test]
    fn sequence_text_is_stable() {
        let seq = make_sequence(SeqVariant::Seq3, 3, None).unwrap();
        let text = sequence_text(&seq);
        let expect = "\
(1, backslash, t2c, 0,1, -, 3, -)
(1, v, t2c, 3,2, -, 4, -)
(1, slash, c2t, 0,1, -, 3, -)
";
        assert_eq!(text, expect);

        let seq = make_sequence(SeqVariant::Seq2, 5, Some(1)).unwrap();
        let expect = "\
(1, backslash, t2c, 0,1, -, 5, -)
(1, downstairs, c2t, 2,3, -, 0, 0)
(1, v, t2c, 0,4,5, 1, 6, -)
(1, v, t2c, 1,5, -, 6, -)
(1, upstairs, t2c, 2,3, -, 0, 0)
(1, slash, c2t, 0,1, -, 5, -)
";
        assert_eq!(sequence_text(&seq), expect);
    }
}
