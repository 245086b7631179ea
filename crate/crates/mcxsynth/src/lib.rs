//! Synthesis of multi-controlled Toffoli gates from staircase-shaped
//! structures of standard Toffoli and X gates, with exact brute-force
//! verification, closed-form cost prediction, layout-aware routing onto
//! symmetric coupling graphs, and an n-bit binary comparator generator.

pub mod circuit;
pub mod comparator;
pub mod compose;
pub mod cost;
pub mod layout;
pub mod shapes;
pub mod sim;
pub mod stesso;

pub use circuit::{Circuit, CircuitError, Gate, QubitId, QubitInfo, QubitRole};
pub use comparator::{classical_compare, synth_comparator, ComparatorCircuit, ComparatorError};
pub use compose::{
    compose, ladder_split, make_sequence, sequence_text, standard_pool, ComposeError,
    CompositionSequence, LadderDecomposition, SeqVariant, SequenceElement, ShapeKind,
};
pub use cost::{legal_supports, measure, predict, CostError, CostRecord};
pub use layout::{
    make_coupling, place_and_route, requirement_graph, route_with_assignment, CouplingGraph,
    CouplingKind, LayoutError, Placement, RequirementGraph,
};
pub use shapes::{
    build_i_shape, build_stair, build_vshape, Orientation, ShapeError, ShapeRule, ShapeTetrad,
};
pub use sim::{
    apply, mcx_reference, permutation_table, verify_mcx, BasisState, McxVerdict,
    PermutationTable, SimError,
};
pub use stesso::{
    synth_g, synth_mp, synth_pp, validate_constrained, ConstrainedUnitary, PolarityMask,
    StessoError, Synthesis,
};
