//! n-bit binary magnitude comparator synthesis.
//!
//! Compares two n-bit inputs and produces three one-hot outputs: less-than,
//! equal, greater-than. The less-than output folds the bitwise recurrence
//! L_i = (not x_i) y_i xor ((not x_i) xor y_i) L_{i-1} into the nested
//! output form of a single V shape over n + 1 controls: a preparation layer
//! of X and CX gates rewrites the input wires into the control and support
//! roles, the V deposits L_n on the less-than wire, and the inverse
//! preparation restores the inputs. Equality is the product of all
//! (not x_i) xor y_i terms, synthesized as a multi-controlled X that reuses
//! low y wires as supports, and greater-than is lt xor not(eq).
//!
//! No ancilla wires are used beyond the three result qubits: 2n inputs plus
//! three outputs.

use thiserror::Error;

use crate::circuit::{Circuit, Gate, QubitId, QubitInfo, QubitRole};
use crate::compose::{compose, CompositionSequence, SeqVariant, SequenceElement, ShapeKind};
use crate::shapes::{vshape_gates, ShapeRule, ShapeTetrad};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComparatorError {
    #[error("input {value} does not fit in {bits} bits")]
    OutOfRange { value: u64, bits: usize },
}

/// Reference comparator: (x < y, x == y, x > y) as bits.
pub fn classical_compare(
    x: u64,
    y: u64,
    n: usize,
) -> Result<(bool, bool, bool), ComparatorError> {
    let limit = 1u64 << n;
    for value in [x, y] {
        if value >= limit {
            return Err(ComparatorError::OutOfRange { value, bits: n });
        }
    }
    Ok((x < y, x == y, x > y))
}

/// A synthesized comparator with its wire map.
#[derive(Debug, Clone)]
pub struct ComparatorCircuit {
    pub circuit: Circuit,
    pub bits: usize,
    pub x_qubits: Vec<QubitId>,
    pub y_qubits: Vec<QubitId>,
    pub out_lt: QubitId,
    pub out_eq: QubitId,
    pub out_gt: QubitId,
}

impl ComparatorCircuit {
    /// Runs the circuit on classical inputs with cleared outputs and decodes
    /// the three result bits, checking that the inputs are restored.
    pub fn evaluate(&self, x: u64, y: u64) -> Result<(bool, bool, bool), ComparatorError> {
        classical_compare(x, y, self.bits)?; // range check
        let mut state = 0u64;
        for (i, q) in self.x_qubits.iter().enumerate() {
            if (x >> i) & 1 == 1 {
                state |= 1 << q.0;
            }
        }
        for (i, q) in self.y_qubits.iter().enumerate() {
            if (y >> i) & 1 == 1 {
                state |= 1 << q.0;
            }
        }
        let out = crate::sim::apply(
            &self.circuit,
            crate::sim::BasisState::new(state, self.circuit.qubit_count()),
        )
        .expect("state width matches")
        .bits;
        debug_assert_eq!(
            out & !((1 << self.out_lt.0) | (1 << self.out_eq.0) | (1 << self.out_gt.0)),
            state,
            "inputs restored"
        );
        Ok((
            (out >> self.out_lt.0) & 1 == 1,
            (out >> self.out_eq.0) & 1 == 1,
            (out >> self.out_gt.0) & 1 == 1,
        ))
    }
}

/// Builds the comparator over 2n input wires and three result wires.
pub fn synth_comparator(n: usize) -> ComparatorCircuit {
    assert!(n >= 1, "comparator needs at least one bit");
    let x = |i: usize| QubitId((i - 1) as u32); // x_i, i in 1..=n
    let y = |i: usize| QubitId((n + i - 1) as u32); // y_i
    let out_lt = QubitId((2 * n) as u32);
    let out_eq = QubitId((2 * n + 1) as u32);
    let out_gt = QubitId((2 * n + 2) as u32);

    let mut pool = Vec::new();
    for i in 1..=n {
        pool.push(QubitInfo::new(QubitRole::Control, format!("x{i}")));
    }
    for i in 1..=n {
        pool.push(QubitInfo::new(QubitRole::Control, format!("y{i}")));
    }
    pool.push(QubitInfo::new(QubitRole::Target, "lt"));
    pool.push(QubitInfo::new(QubitRole::Target, "eq"));
    pool.push(QubitInfo::new(QubitRole::Target, "gt"));

    let mut circuit = Circuit::new(pool.clone());
    let push = |c: &mut Circuit, g: Gate| c.append(g).expect("comparator wiring");

    // -- less-than: prepare roles, run one V, unprepare ------------------
    // role map: c1 = y1, c2 = not x1, c_{i+1} = not x_i xor y_i (i >= 2),
    //           s1 = y2, s_i = y_i xor y_{i+1} (i >= 2), t seeded with y_n
    // x preparations read the y wires first, while those still hold raw
    // values; the difference chain then rewrites high y wires in place,
    // each link reading its lower neighbour before that one is rewritten.
    // The seed copying y_n onto the result wire is part of the output
    // value, so it is not undone afterwards.
    let mut prep: Vec<Gate> = Vec::new();
    prep.push(Gate::X(x(1)));
    for i in 2..=n {
        prep.push(Gate::Cx(y(i), x(i)));
        prep.push(Gate::X(x(i)));
    }
    let mut chain: Vec<Gate> = Vec::new();
    if n >= 2 {
        for i in (2..n).rev() {
            chain.push(Gate::Cx(y(i), y(i + 1)));
        }
    }
    for &g in &prep {
        push(&mut circuit, g);
    }
    if n >= 2 {
        push(&mut circuit, Gate::Cx(y(n), out_lt));
    }
    for &g in &chain {
        push(&mut circuit, g);
    }
    let mut lt_controls = vec![y(1), x(1)];
    lt_controls.extend((2..=n).map(x));
    let lt_supports: Vec<QubitId> = (2..=n).map(y).collect();
    if n == 1 {
        push(&mut circuit, Gate::Ccx(y(1), x(1), out_lt));
    } else {
        for g in vshape_gates(&lt_controls, &lt_supports, out_lt).expect("lt core arity") {
            push(&mut circuit, g);
        }
    }
    for &g in chain.iter().rev() {
        push(&mut circuit, g);
    }
    for &g in prep.iter().rev() {
        push(&mut circuit, g);
    }

    // -- equality: product of (not x_i xor y_i) over all bits ------------
    let mut eq_prep: Vec<Gate> = Vec::new();
    for i in 1..=n {
        eq_prep.push(Gate::Cx(y(i), x(i)));
        eq_prep.push(Gate::X(x(i)));
    }
    for &g in &eq_prep {
        push(&mut circuit, g);
    }
    match n {
        1 => push(&mut circuit, Gate::Cx(x(1), out_eq)),
        2 => push(&mut circuit, Gate::Ccx(x(1), x(2), out_eq)),
        _ => {
            // multi-controlled X over the prepared x wires, reusing low y
            // wires as supports
            let controls: Vec<QubitId> = (1..=n).map(x).collect();
            let supports: Vec<QubitId> = (1..=n - 2).map(y).collect();
            let tetrad =
                ShapeTetrad::new(controls, supports, out_eq, ShapeRule::TargetToControl);
            let seq = CompositionSequence {
                elements: vec![SequenceElement::once(ShapeKind::V, tetrad)],
                total_controls: n,
                support_count: n - 2,
                variant: SeqVariant::Custom,
            };
            let out = compose(&seq, pool.clone()).expect("eq core");
            for &g in out.circuit.gates() {
                push(&mut circuit, g);
            }
        }
    }
    for &g in eq_prep.iter().rev() {
        push(&mut circuit, g);
    }

    // -- greater-than: lt xor not(eq) -------------------------------------
    push(&mut circuit, Gate::Cx(out_lt, out_gt));
    push(&mut circuit, Gate::Cx(out_eq, out_gt));
    push(&mut circuit, Gate::X(out_gt));

    ComparatorCircuit {
        circuit,
        bits: n,
        x_qubits: (1..=n).map(x).collect(),
        y_qubits: (1..=n).map(y).collect(),
        out_lt,
        out_eq,
        out_gt,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{apply, BasisState};
    use crate::stesso::{synth_g, ConstrainedUnitary};

    #[test]
    fn classical_table_one_bit() {
        assert_eq!(classical_compare(0, 0, 1).unwrap(), (false, true, false));
        assert_eq!(classical_compare(0, 1, 1).unwrap(), (true, false, false));
        assert_eq!(classical_compare(1, 1, 1).unwrap(), (false, true, false));
        assert_eq!(classical_compare(1, 0, 1).unwrap(), (false, false, true));
    }

    #[test]
    fn classical_equsince() {
        assert_eq!(classical_compare(9, 9, 4).unwrap(), (false, true, false));
        assert!(classical_compare(16, 0, 4).is_err());
    }

    #[test]
    fn gt_is_lt_xor_not_eq_classically() {
        for n in 1..=6usize {
            for x in 0..(1u64 << n) {
                for y in 0..(1u64 << n) {
                    let (lt, eq, gt) = classical_compare(x, y, n).unwrap();
                    assert_eq!(gt, lt ^ !eq);
                }
            }
        }
    }

    #[test]
    fn one_bit_circuit_reproduces_the_table() {
        let comp = synth_comparator(1);
        for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let got = comp.evaluate(x, y).unwrap();
            assert_eq!(got, classical_compare(x, y, 1).unwrap(), "x={x} y={y}");
        }
    }

    #[test]
    fn four_bit_circuit_matches_reference_exhaustively() {
        let comp = synth_comparator(4);
        for x in 0..16u64 {
            for y in 0..16u64 {
                let got = comp.evaluate(x, y).unwrap();
                let want = classical_compare(x, y, 4).unwrap();
                assert_eq!(got, want, "x={x} y={y}");
                let one_hot = [got.0, got.1, got.2].iter().filter(|&&b| b).count();
                assert_eq!(one_hot, 1);
            }
        }
    }

    #[test]
    fn spot_check_5_vs_12() {
        let comp = synth_comparator(4);
        assert_eq!(comp.evaluate(5, 12).unwrap(), (true, false, false));
    }

    #[test]
    fn no_ancilla_beyond_result_wires() {
        for n in 1..=6 {
            let comp = synth_comparator(n);
            assert_eq!(comp.circuit.qubit_count(), 2 * n + 3);
        }
    }

    /// Inputs are restored on every basis state, not just classical input
    /// embeddings with cleared outputs.
    #[test]
    fn inputs_restored_on_all_states() {
        let comp = synth_comparator(3);
        let width = comp.circuit.qubit_count();
        let input_mask = (1u64 << (2 * comp.bits)) - 1;
        for s in 0u64..(1 << width) {
            let out = apply(&comp.circuit, BasisState::new(s, width)).unwrap().bits;
            assert_eq!(out & input_mask, s & input_mask);
        }
    }

    /// The preparation layer realizes the reference 4-bit role assignment:
    /// c5 = not x4 xor y4 .. c2 = not x1, c1 = y1, s3 = y3 xor y4,
    /// s2 = y2 xor y3, s1 = y2, t = y4.
    #[test]
    fn four_bit_role_assignment_golden() {
        let n = 4usize;
        let comp = synth_comparator(n);
        // replay only the preparation prefix of the lt stage
        let prep_len = 1 + (n - 2) + 1 + 2 * (n - 1); // t seed, y chain, X(x1), x prep
        let prep = comp.circuit.slice(0..prep_len);
        let width = comp.circuit.qubit_count();
        for seed in [0u64, 0b1010_0110, 0b0111_1001, 0b1111_1111] {
            let s = seed & ((1 << (2 * n)) - 1);
            let bit = |st: u64, q: QubitId| (st >> q.0) & 1;
            let out = apply(&prep, BasisState::new(s, width)).unwrap().bits;
            let xb = |i: usize| bit(s, comp.x_qubits[i - 1]);
            let yb = |i: usize| bit(s, comp.y_qubits[i - 1]);
            // control roles live on x wires (and y1 stays put)
            assert_eq!(bit(out, comp.x_qubits[0]), 1 ^ xb(1));
            for i in 2..=n {
                assert_eq!(bit(out, comp.x_qubits[i - 1]), 1 ^ xb(i) ^ yb(i), "c{}", i + 1);
            }
            // support roles on high y wires
            assert_eq!(bit(out, comp.y_qubits[1]), yb(2), "s1");
            for i in 2..n {
                assert_eq!(bit(out, comp.y_qubits[i]), yb(i) ^ yb(i + 1), "s{i}");
            }
            assert_eq!(bit(out, comp.out_lt), yb(n), "t seed");
        }
    }

    /// The less-than stage factors through the generalized synthesis word:
    /// U1 holds the lead-control flip, U2 the remaining preparation, M the
    /// V core, M' is empty.
    #[test]
    fn lt_stage_expressible_as_generalized_word() {
        let n = 4usize;
        // pool ordered so the V's lead controls are the two lowest controls
        let mut pool = vec![
            QubitInfo::new(QubitRole::Control, "y1"),
            QubitInfo::new(QubitRole::Control, "x1"),
        ];
        for i in 2..=n {
            pool.push(QubitInfo::new(QubitRole::Control, format!("x{i}")));
        }
        for i in 2..=n {
            pool.push(QubitInfo::new(QubitRole::Support, format!("y{i}")));
        }
        pool.push(QubitInfo::new(QubitRole::Target, "lt"));
        let w = |i: u32| QubitId(i);
        let y1 = w(0);
        let x1 = w(1);
        let xw = |i: usize| w(i as u32); // x_i at index i for i >= 2
        let yw = |i: usize| w((n + i - 1) as u32); // y_i at index n+i-1 for i >= 2
        let lt = w((2 * n) as u32);

        // M seeds the target with y_n by telescoping the difference values
        // parked on the support wires, then runs the V core.
        let mut m = Circuit::new(pool.clone());
        for i in 2..=n {
            m.append(Gate::Cx(yw(i), lt)).unwrap();
        }
        let mut controls = vec![y1, x1];
        controls.extend((2..=n).map(xw));
        let supports: Vec<QubitId> = (2..=n).map(yw).collect();
        m.extend(vshape_gates(&controls, &supports, lt).unwrap()).unwrap();
        let m_empty = Circuit::new(pool.clone());

        let mut u1c = Circuit::new(pool.clone());
        u1c.append(Gate::X(x1)).unwrap();
        let mut u2c = Circuit::new(pool.clone());
        for i in 2..=n {
            u2c.append(Gate::Cx(yw(i), xw(i))).unwrap();
            u2c.append(Gate::X(xw(i))).unwrap();
        }
        for i in (2..n).rev() {
            u2c.append(Gate::Cx(yw(i), yw(i + 1))).unwrap();
        }

        let g = synth_g(
            (&m, &m_empty),
            &ConstrainedUnitary::new(u1c),
            &ConstrainedUnitary::new(u2c),
        )
        .unwrap();

        let width = 2 * n + 1;
        for x in 0..(1u64 << n) {
            for y in 0..(1u64 << n) {
                let mut s = 0u64;
                if x & 1 == 1 {
                    s |= 1 << x1.0;
                }
                for i in 2..=n {
                    if (x >> (i - 1)) & 1 == 1 {
                        s |= 1 << xw(i).0;
                    }
                }
                if y & 1 == 1 {
                    s |= 1 << y1.0;
                }
                for i in 2..=n {
                    if (y >> (i - 1)) & 1 == 1 {
                        s |= 1 << yw(i).0;
                    }
                }
                let out = apply(&g, BasisState::new(s, width)).unwrap().bits;
                assert_eq!(out & !(1 << lt.0), s & !(1 << lt.0), "inputs restored");
                assert_eq!((out >> lt.0) & 1 == 1, x < y, "x={x} y={y}");
            }
        }
    }
}
