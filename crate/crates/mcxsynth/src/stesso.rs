//! Multi-controlled-X synthesizers.
//!
//! [`synth_pp`] realizes an (n+1)-bit Toffoli with all-positive control
//! polarities by composing the requested sequence variant. [`synth_mp`]
//! handles mixed polarities by conjugating negated control wires with X
//! gates around each half and running the cancellation pass. [`synth_g`]
//! wraps the two halves with caller-supplied constrained unitaries,
//! interleaving an undo of the first wrapper between the halves so the
//! second half sees fresh support values.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, QubitId, QubitRole};
use crate::compose::{
    compose, make_sequence, standard_pool, ComposeError, ElementSpan, SeqVariant,
};

/// Per-control polarity assignment. Bit `i` set means control `i+1` enters
/// its product negated. Term-level polarities for individual stair
/// sub-products are carried separately by shape tetrads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarityMask {
    control: Vec<bool>,
    pub term_polarity: BTreeSet<usize>,
}

impl PolarityMask {
    pub fn all_positive(n: usize) -> Self {
        Self {
            control: vec![false; n],
            term_polarity: BTreeSet::new(),
        }
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Self {
            control: bits,
            term_polarity: BTreeSet::new(),
        }
    }

    /// Parses a bitstring ordered c1..cn, leftmost bit first; '1' negates.
    pub fn parse(text: &str) -> Option<Self> {
        let mut control = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                '0' => control.push(false),
                '1' => control.push(true),
                _ => return None,
            }
        }
        Some(Self::from_bools(control))
    }

    pub fn len(&self) -> usize {
        self.control.len()
    }

    pub fn is_empty(&self) -> bool {
        self.control.is_empty()
    }

    pub fn is_negated(&self, i: usize) -> bool {
        self.control.get(i).copied().unwrap_or(false)
    }

    pub fn negated_count(&self) -> usize {
        self.control.iter().filter(|&&b| b).count()
    }

    pub fn is_all_positive(&self) -> bool {
        self.negated_count() == 0
    }
}

/// A circuit restricted to a declared wire footprint and to the X/CX/CCX
/// gate alphabet.
#[derive(Debug, Clone)]
pub struct ConstrainedUnitary {
    pub circuit: Circuit,
    pub footprint: BTreeSet<QubitId>,
}

impl ConstrainedUnitary {
    pub fn empty(width: usize) -> Self {
        Self {
            circuit: Circuit::with_width(width),
            footprint: BTreeSet::new(),
        }
    }

    pub fn new(circuit: Circuit) -> Self {
        let footprint = circuit
            .gates()
            .iter()
            .flat_map(|g| g.operands())
            .collect();
        Self { circuit, footprint }
    }
}

/// Accepts a constrained unitary iff its footprint stays inside `allowed`
/// and every gate is an X, CX, or CCX.
pub fn validate_constrained(u: &ConstrainedUnitary, allowed: &BTreeSet<QubitId>) -> bool {
    if !u.footprint.is_subset(allowed) {
        return false;
    }
    u.circuit.gates().iter().all(|g| {
        !matches!(g, Gate::Swap(..)) && g.operands().iter().all(|q| u.footprint.contains(q))
    })
}

#[derive(Debug, Error)]
pub enum StessoError {
    #[error("polarity mask has {got} bits, expected {want}")]
    MaskLengthMismatch { got: usize, want: usize },
    #[error("constrained unitary {which} touches wires outside its allowance")]
    FootprintViolation { which: &'static str },
    #[error("constrained unitary {which} uses a gate outside X/CX/CCX")]
    GateKindViolation { which: &'static str },
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// A synthesized multi-controlled X with its wire roles and the two
/// step-decreasing halves it was assembled from.
///
/// For mixed polarities the halves each carry their own polarity
/// conjugation, so either one restores every non-target wire on its own and
/// can be wrapped by [`synth_g`]; `circuit` is their concatenation after
/// the cancellation pass has removed the meeting X pairs at the seam.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub circuit: Circuit,
    /// Gate index in `circuit` where the second half's gates begin.
    pub split: usize,
    pub spans: Vec<ElementSpan>,
    halves: (Circuit, Circuit),
    pub controls: Vec<QubitId>,
    pub supports: Vec<QubitId>,
    pub target: QubitId,
    pub variant: SeqVariant,
    pub mask: PolarityMask,
}

impl Synthesis {
    pub fn first_half(&self) -> &Circuit {
        &self.halves.0
    }

    pub fn second_half(&self) -> &Circuit {
        &self.halves.1
    }
}

/// Positive-polarity synthesis: target picks up the product of all `n`
/// controls; every control and support is restored on every basis state and
/// the outcome is independent of the support initialization.
pub fn synth_pp(
    n: usize,
    variant: SeqVariant,
    n_s: Option<usize>,
) -> Result<Synthesis, StessoError> {
    let seq = make_sequence(variant, n, n_s)?;
    let n_s = seq.support_count;
    let out = compose(&seq, standard_pool(n, n_s))?;
    let halves = (out.first_half(), out.second_half());
    Ok(Synthesis {
        circuit: out.circuit,
        split: out.split,
        spans: out.spans,
        halves,
        controls: (0..n as u32).map(QubitId).collect(),
        supports: (n as u32..(n + n_s) as u32).map(QubitId).collect(),
        target: QubitId((n + n_s) as u32),
        variant,
        mask: PolarityMask::all_positive(n),
    })
}

/// Mixed-polarity synthesis: control `i` enters the product negated when
/// the mask says so. Each half of the positive-polarity circuit is
/// conjugated with X on the negated wires; the cancellation pass then
/// removes the meeting pair at the seam.
pub fn synth_mp(
    n: usize,
    mask: &PolarityMask,
    variant: SeqVariant,
    n_s: Option<usize>,
) -> Result<Synthesis, StessoError> {
    if mask.len() != n {
        return Err(StessoError::MaskLengthMismatch {
            got: mask.len(),
            want: n,
        });
    }
    let pp = synth_pp(n, variant, n_s)?;
    if mask.is_all_positive() {
        return Ok(pp);
    }
    let flips: Vec<Gate> = pp
        .controls
        .iter()
        .enumerate()
        .filter(|(i, _)| mask.is_negated(*i))
        .map(|(_, &q)| Gate::X(q))
        .collect();
    // the closing flips mirror the opening ones so that adjacent halves
    // meet in cancelling pairs
    let conjugate = |half: &Circuit| -> Result<Circuit, CircuitError> {
        let mut c = Circuit::new(half.qubits().to_vec());
        c.extend(flips.iter().copied())?;
        c.extend(half.gates().iter().copied())?;
        c.extend(flips.iter().rev().copied())?;
        Ok(c)
    };
    let m1 = conjugate(pp.first_half())?;
    let m2 = conjugate(pp.second_half())?;
    let circuit = m1.then(&m2).cancel_adjacent_x();
    let split = m1.size() - flips.len();
    Ok(Synthesis {
        circuit,
        split,
        spans: Vec::new(),
        halves: (m1, m2),
        mask: mask.clone(),
        ..pp
    })
}

/// Generalized synthesis: wraps the two halves `M` and `M'` with the
/// constrained unitaries `U1` and `U2`, emitting in execution order
/// `U1 U2 M U1^-1 M' U2^-1`. `U1` may touch only the first two controls and
/// the supports; `U2` only the remaining controls, supports, and target.
pub fn synth_g(
    mp_halves: (&Circuit, &Circuit),
    u1: &ConstrainedUnitary,
    u2: &ConstrainedUnitary,
) -> Result<Circuit, StessoError> {
    let (m, m_prime) = mp_halves;
    let controls: Vec<QubitId> = m.qubits_with_role(QubitRole::Control);
    let supports: Vec<QubitId> = m.qubits_with_role(QubitRole::Support);
    let targets: Vec<QubitId> = m.qubits_with_role(QubitRole::Target);

    let mut allowed_u1: BTreeSet<QubitId> = controls.iter().take(2).copied().collect();
    allowed_u1.extend(supports.iter().copied());
    let mut allowed_u2: BTreeSet<QubitId> = controls.iter().skip(2).copied().collect();
    allowed_u2.extend(supports.iter().copied());
    allowed_u2.extend(targets.iter().copied());

    for (which, u, allowed) in [("u1", u1, &allowed_u1), ("u2", u2, &allowed_u2)] {
        if u.circuit.gates().iter().any(|g| matches!(g, Gate::Swap(..))) {
            return Err(StessoError::GateKindViolation { which });
        }
        if !validate_constrained(u, allowed) {
            return Err(StessoError::FootprintViolation { which });
        }
    }

    let mut word = Circuit::new(m.qubits().to_vec());
    for part in [
        &u1.circuit,
        &u2.circuit,
        m,
        &u1.circuit.inverse(),
        m_prime,
        &u2.circuit.inverse(),
    ] {
        word.extend(part.gates().iter().copied())?;
    }
    Ok(word)
}
