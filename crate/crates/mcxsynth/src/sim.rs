//! Exact classical simulation of {X, CX, CCX, SWAP} circuits on
//! computational basis states.
//!
//! All gates in the alphabet permute basis states, so a state is just a bit
//! vector and a circuit is a permutation of `2^q` indices. Bit `i` of a state
//! word is qubit `i`; the text form prints qubit 0 leftmost.
//!
//! This module is the oracle for the whole crate: synthesizers are trusted
//! only as far as [`verify_mcx`] says their permutation is right.

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::stesso::PolarityMask;

/// Hard cap for exhaustive permutation tables (2^20 states).
pub const EXHAUSTIVE_QUBIT_CAP: usize = 20;

/// Number of random basis states checked per property in sampling mode.
pub const SAMPLE_BUDGET: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("basis state has {got} bits but the circuit has {want} qubits")]
    LengthMismatch { got: usize, want: usize },
    #[error("{0} qubits exceed the exhaustive cap of {EXHAUSTIVE_QUBIT_CAP}")]
    TooManyQubits(usize),
}

/// Computational basis state over a fixed number of qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisState {
    pub bits: u64,
    pub len: usize,
}

impl BasisState {
    pub fn new(bits: u64, len: usize) -> Self {
        debug_assert!(len == 64 || bits < (1u64 << len));
        Self { bits, len }
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    /// Text form, qubit 0 leftmost.
    pub fn to_text(&self) -> String {
        (0..self.len)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }
}

fn apply_bits(circuit: &Circuit, mut s: u64) -> u64 {
    for gate in circuit.gates() {
        match *gate {
            Gate::X(t) => s ^= 1 << t.0,
            Gate::Cx(c, t) => {
                if (s >> c.0) & 1 == 1 {
                    s ^= 1 << t.0;
                }
            }
            Gate::Ccx(c1, c2, t) => {
                if (s >> c1.0) & 1 == 1 && (s >> c2.0) & 1 == 1 {
                    s ^= 1 << t.0;
                }
            }
            Gate::Swap(a, b) => {
                let ba = (s >> a.0) & 1;
                let bb = (s >> b.0) & 1;
                if ba != bb {
                    s ^= (1 << a.0) | (1 << b.0);
                }
            }
        }
    }
    s
}

/// Applies the circuit to one basis state, gate by gate.
pub fn apply(circuit: &Circuit, state: BasisState) -> Result<BasisState, SimError> {
    if state.len != circuit.qubit_count() {
        return Err(SimError::LengthMismatch {
            got: state.len,
            want: circuit.qubit_count(),
        });
    }
    Ok(BasisState::new(
        apply_bits(circuit, state.bits),
        state.len,
    ))
}

/// Exhaustive input-to-output table over all `2^q` basis states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTable {
    pub mapping: Vec<u32>,
}

impl PermutationTable {
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.mapping.len()];
        for &out in &self.mapping {
            let out = out as usize;
            if out >= seen.len() || seen[out] {
                return false;
            }
            seen[out] = true;
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &o)| i as u32 == o)
    }
}

pub fn permutation_table(circuit: &Circuit) -> Result<PermutationTable, SimError> {
    let q = circuit.qubit_count();
    if q > EXHAUSTIVE_QUBIT_CAP {
        return Err(SimError::TooManyQubits(q));
    }
    let n = 1usize << q;
    let mut mapping = Vec::with_capacity(n);
    for s in 0..n as u64 {
        mapping.push(apply_bits(circuit, s) as u32);
    }
    let table = PermutationTable { mapping };
    debug_assert!(table.is_bijective());
    Ok(table)
}

/// Outcome of checking a circuit against multi-controlled-X semantics.
///
/// * `target_rule`: the target flips exactly when every control literal is 1;
/// * `restored`: all non-target wires map to themselves;
/// * `support_independent`: the target outcome does not depend on how the
///   support wires were initialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McxVerdict {
    pub target_rule: bool,
    pub restored: bool,
    pub support_independent: bool,
    pub counterexample: Option<u64>,
}

impl McxVerdict {
    pub fn all_ok(&self) -> bool {
        self.target_rule && self.restored && self.support_independent
    }
}

/// Expected output of a mixed-polarity multi-controlled X on one basis state,
/// built directly from the definition: flip the target iff every control
/// literal (plain or negated per mask) is 1.
pub fn mcx_reference(
    state: u64,
    controls: &[crate::circuit::QubitId],
    mask: &PolarityMask,
    target: crate::circuit::QubitId,
) -> u64 {
    let mut all_ones = true;
    for (i, c) in controls.iter().enumerate() {
        let bit = (state >> c.0) & 1 == 1;
        let literal = if mask.is_negated(i) { !bit } else { bit };
        if !literal {
            all_ones = false;
            break;
        }
    }
    if all_ones {
        state ^ (1 << target.0)
    } else {
        state
    }
}

/// Checks the three multi-controlled-X properties on every basis state when
/// the circuit fits under the exhaustive cap, or on [`SAMPLE_BUDGET`] random
/// states otherwise. Sampling failures are failures, not warnings.
pub fn verify_mcx(
    circuit: &Circuit,
    controls: &[crate::circuit::QubitId],
    mask: &PolarityMask,
    target: crate::circuit::QubitId,
    supports: &[crate::circuit::QubitId],
) -> McxVerdict {
    let q = circuit.qubit_count();
    let mut verdict = McxVerdict {
        target_rule: true,
        restored: true,
        support_independent: true,
        counterexample: None,
    };
    let support_mask: u64 = supports.iter().map(|s| 1u64 << s.0).sum();
    let target_bit = 1u64 << target.0;

    let check_state = |s: u64, verdict: &mut McxVerdict| {
        let out = apply_bits(circuit, s);
        let expect = mcx_reference(s, controls, mask, target);
        if (out ^ expect) & target_bit != 0 && verdict.target_rule {
            verdict.target_rule = false;
            verdict.counterexample.get_or_insert(s);
        }
        if (out ^ s) & !target_bit != 0 && verdict.restored {
            verdict.restored = false;
            verdict.counterexample.get_or_insert(s);
        }
        // Support independence: the target outcome must match the same state
        // with all support bits cleared. The target bit itself is equal in
        // both inputs, so comparing output target bits compares the flips.
        if support_mask != 0 {
            let base = s & !support_mask;
            let out_base = apply_bits(circuit, base);
            if (out ^ out_base) & target_bit != 0 && verdict.support_independent {
                verdict.support_independent = false;
                verdict.counterexample.get_or_insert(s);
            }
        }
    };

    if q <= EXHAUSTIVE_QUBIT_CAP {
        for s in 0..(1u64 << q) {
            check_state(s, &mut verdict);
        }
    } else {
        // Deterministic linear-congruential stream; good enough for a
        // counterexample search and reproducible across runs.
        let mut x: u64 = 0x9E3779B97F4A7C15;
        let bits_mask = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
        for _ in 0..SAMPLE_BUDGET {
            x = x
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            check_state(x & bits_mask, &mut verdict);
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Gate, QubitId};

    fn q(i: u32) -> QubitId {
        QubitId(i)
    }

    #[test]
    fn ccx_truth_table() {
        let mut c = Circuit::with_width(3);
        c.append(Gate::Ccx(q(0), q(1), q(2))).unwrap();
        // |110> -> |111>  (bit i of the word is qubit i)
        let s = BasisState::new(0b011, 3);
        assert_eq!(apply(&c, s).unwrap().bits, 0b111);
        // |010> -> |010>
        let s = BasisState::new(0b010, 3);
        assert_eq!(apply(&c, s).unwrap().bits, 0b010);
    }

    #[test]
    fn swap_exchanges_bits() {
        let mut c = Circuit::with_width(2);
        c.append(Gate::Swap(q(0), q(1))).unwrap();
        assert_eq!(apply(&c, BasisState::new(0b01, 2)).unwrap().bits, 0b10);
    }

    #[test]
    fn length_mismatch_rejected() {
        let c = Circuit::with_width(3);
        let err = apply(&c, BasisState::new(0, 2)).unwrap_err();
        assert_eq!(err, SimError::LengthMismatch { got: 2, want: 3 });
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::with_width(4);
        let t = permutation_table(&c).unwrap();
        assert!(t.is_identity());
    }

    #[test]
    fn single_x_is_a_transposition() {
        let mut c = Circuit::with_width(1);
        c.append(Gate::X(q(0))).unwrap();
        let t = permutation_table(&c).unwrap();
        assert_eq!(t.mapping, vec![1, 0]);
    }

    #[test]
    fn table_rejects_oversized_circuits() {
        let c = Circuit::with_width(21);
        assert_eq!(permutation_table(&c).unwrap_err(), SimError::TooManyQubits(21));
    }

    #[test]
    fn circuit_composed_with_inverse_is_identity() {
        let mut c = Circuit::with_width(4);
        c.extend([
            Gate::Ccx(q(0), q(1), q(2)),
            Gate::X(q(3)),
            Gate::Cx(q(2), q(3)),
            Gate::Swap(q(0), q(3)),
        ])
        .unwrap();
        let round_trip = c.then(&c.inverse());
        assert!(permutation_table(&round_trip).unwrap().is_identity());
    }

    #[test]
    fn cancel_pass_preserves_permutation() {
        let mut c = Circuit::with_width(3);
        c.extend([
            Gate::X(q(0)),
            Gate::X(q(0)),
            Gate::Ccx(q(0), q(1), q(2)),
            Gate::Cx(q(1), q(2)),
            Gate::Cx(q(1), q(2)),
            Gate::X(q(2)),
        ])
        .unwrap();
        let before = permutation_table(&c).unwrap();
        let after = permutation_table(&c.cancel_adjacent_x()).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn sampling_mode_runs_above_cap() {
        // 21 qubits: exhaustive is off the table, sampling must still verify
        // a plain CCX embedded in a wide circuit.
        let mut c = Circuit::with_width(21);
        c.append(Gate::Ccx(q(0), q(1), q(2))).unwrap();
        let v = verify_mcx(&c, &[q(0), q(1)], &PolarityMask::all_positive(2), q(2), &[]);
        assert!(v.all_ok());
    }

    /// A violation above the exhaustive cap is a hard sampling failure.
    #[test]
    fn sampling_mode_catches_violations() {
        let mut c = Circuit::with_width(21);
        c.append(Gate::Ccx(q(0), q(1), q(2))).unwrap();
        c.append(Gate::X(q(5))).unwrap(); // stray flip on a bystander wire
        let v = verify_mcx(&c, &[q(0), q(1)], &PolarityMask::all_positive(2), q(2), &[]);
        assert!(!v.restored);
        assert!(v.counterexample.is_some());
    }

    #[test]
    fn random_circuits_invert_cleanly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let width = rng.gen_range(2..=12);
            let mut c = Circuit::with_width(width);
            for _ in 0..rng.gen_range(1..=30) {
                let gate = loop {
                    let a = q(rng.gen_range(0..width) as u32);
                    let b = q(rng.gen_range(0..width) as u32);
                    let t = q(rng.gen_range(0..width) as u32);
                    let g = match rng.gen_range(0..4) {
                        0 => Gate::X(a),
                        1 => Gate::Cx(a, b),
                        2 => Gate::Ccx(a, b, t),
                        _ => Gate::Swap(a, b),
                    };
                    if g.has_distinct_operands() {
                        break g;
                    }
                };
                c.append(gate).unwrap();
            }
            let s = BasisState::new(rng.gen_range(0..(1u64 << width)), width);
            let forward = apply(&c, s).unwrap();
            let back = apply(&c.inverse(), forward).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn tables_are_bijective_for_random_circuits() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let width = rng.gen_range(1..=8);
            let mut c = Circuit::with_width(width);
            for _ in 0..rng.gen_range(0..=20) {
                let a = q(rng.gen_range(0..width) as u32);
                let t = q(rng.gen_range(0..width) as u32);
                if a != t {
                    c.append(Gate::Cx(a, t)).unwrap();
                } else {
                    c.append(Gate::X(a)).unwrap();
                }
            }
            assert!(permutation_table(&c).unwrap().is_bijective());
        }
    }

    #[test]
    fn basis_state_text_is_qubit0_leftmost() {
        let s = BasisState::new(0b001, 3);
        assert_eq!(s.to_text(), "100");
    }
}
