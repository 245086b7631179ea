//! Connectivity-requirement extraction and placement onto symmetric
//! coupling graphs.
//!
//! Every gate demands full connectivity among its operands, so a circuit's
//! requirement graph is the union of one clique per gate, deduplicated.
//! Placement maps logical wires onto a coupling graph and inserts SWAP
//! gates until each gate is executable at its position in the sequence.
//!
//! A CCX is executable on a triangle of physical qubits. Couplings without
//! any triangle (grids, heavy-hex) can never offer one, so there a CCX
//! executes on a connected triple with a center adjacent to both other
//! operands; such placements are tallied separately in
//! [`Placement::bridge_ccx_count`], since each stands for a fixed extra
//! two-qubit cost when the CCX is later expanded to native gates.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, QubitId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayoutError {
    #[error("coupling dims {0:?} are not valid for this kind")]
    BadDims((usize, usize)),
    #[error("circuit needs {logical} qubits but the coupling has {physical}")]
    NotEnoughQubits { logical: usize, physical: usize },
    #[error("routing made no progress; coupling too constrained")]
    RoutingStuck,
}

/// Undirected logical connectivity demanded by a circuit: the union of one
/// clique per gate. Repeated gates over the same wires count once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequirementGraph {
    pub vertices: usize,
    pub edges: BTreeSet<(u32, u32)>,
}

fn edge(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn requirement_graph(circuit: &Circuit) -> RequirementGraph {
    let mut edges = BTreeSet::new();
    for gate in circuit.gates() {
        let ops = gate.operands();
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                edges.insert(edge(ops[i].0, ops[j].0));
            }
        }
    }
    RequirementGraph {
        vertices: circuit.qubit_count(),
        edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingKind {
    TriangleChain,
    SquareLattice,
    SquareGrid,
    HeavyHex,
}

impl CouplingKind {
    pub fn name(self) -> &'static str {
        match self {
            CouplingKind::TriangleChain => "triangle_chain",
            CouplingKind::SquareLattice => "square_lattice",
            CouplingKind::SquareGrid => "square_grid",
            CouplingKind::HeavyHex => "heavy_hex",
        }
    }
}

/// Physical adjacency of a device layout. All generators are deterministic
/// and translation symmetric.
#[derive(Debug, Clone)]
pub struct CouplingGraph {
    pub kind: CouplingKind,
    pub dims: (usize, usize),
    pub vertex_count: usize,
    pub edges: BTreeSet<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
    dist: Vec<Vec<u32>>,
    has_triangle: bool,
}

impl CouplingGraph {
    fn from_edges(
        kind: CouplingKind,
        dims: (usize, usize),
        vertex_count: usize,
        edges: BTreeSet<(u32, u32)>,
    ) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in &edges {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let dist = all_pairs_bfs(vertex_count, &adjacency);
        let has_triangle = edges.iter().any(|&(a, b)| {
            adjacency[a as usize]
                .iter()
                .any(|&w| w != b && adjacency[b as usize].binary_search(&w).is_ok())
        });
        Self {
            kind,
            dims,
            vertex_count,
            edges,
            adjacency,
            dist,
            has_triangle,
        }
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&edge(a, b))
    }

    pub fn distance(&self, a: u32, b: u32) -> u32 {
        self.dist[a as usize][b as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_triangle(&self) -> bool {
        self.has_triangle
    }
}

fn all_pairs_bfs(n: usize, adjacency: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut dist = vec![vec![u32::MAX; n]; n];
    for start in 0..n {
        let d = &mut dist[start];
        d[start] = 0;
        let mut queue = VecDeque::from([start as u32]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v as usize] {
                if d[w as usize] == u32::MAX {
                    d[w as usize] = d[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

/// Deterministic coupling generators.
///
/// * `triangle_chain`: `dims.0` triangles in a chain, consecutive triangles
///   sharing one vertex.
/// * `square_lattice` / `square_grid`: a rows x cols grid with horizontal
///   and vertical unit edges (the two names cover the two vendor layouts
///   that share this adjacency).
/// * `heavy_hex`: a brick-wall hexagonal lattice over a rows x cols grid
///   with every edge subdivided by a midpoint qubit; degree never exceeds
///   three. The unit cell is dims (2, 3): one hexagon, twelve qubits.
pub fn make_coupling(kind: CouplingKind, dims: (usize, usize)) -> Result<CouplingGraph, LayoutError> {
    match kind {
        CouplingKind::TriangleChain => {
            let k = dims.0;
            if k == 0 {
                return Err(LayoutError::BadDims(dims));
            }
            let vertex_count = 2 * k + 1;
            let mut edges = BTreeSet::new();
            for i in 0..k {
                let base = 2 * i as u32;
                edges.insert(edge(base, base + 1));
                edges.insert(edge(base, base + 2));
                edges.insert(edge(base + 1, base + 2));
            }
            Ok(CouplingGraph::from_edges(kind, dims, vertex_count, edges))
        }
        CouplingKind::SquareLattice | CouplingKind::SquareGrid => {
            let (r, c) = dims;
            if r == 0 || c == 0 {
                return Err(LayoutError::BadDims(dims));
            }
            let idx = |i: usize, j: usize| (i * c + j) as u32;
            let mut edges = BTreeSet::new();
            for i in 0..r {
                for j in 0..c {
                    if j + 1 < c {
                        edges.insert(edge(idx(i, j), idx(i, j + 1)));
                    }
                    if i + 1 < r {
                        edges.insert(edge(idx(i, j), idx(i + 1, j)));
                    }
                }
            }
            Ok(CouplingGraph::from_edges(kind, dims, r * c, edges))
        }
        CouplingKind::HeavyHex => {
            let (r, c) = dims;
            if r < 2 || c < 2 {
                return Err(LayoutError::BadDims(dims));
            }
            // brick-wall hex lattice, then subdivide each edge
            let idx = |i: usize, j: usize| (i * c + j) as u32;
            let mut base_edges = Vec::new();
            for i in 0..r {
                for j in 0..c {
                    if j + 1 < c {
                        base_edges.push((idx(i, j), idx(i, j + 1)));
                    }
                    if i + 1 < r && (i + j) % 2 == 0 {
                        base_edges.push((idx(i, j), idx(i + 1, j)));
                    }
                }
            }
            let mut vertex_count = r * c;
            let mut edges = BTreeSet::new();
            for (a, b) in base_edges {
                let mid = vertex_count as u32;
                vertex_count += 1;
                edges.insert(edge(a, mid));
                edges.insert(edge(mid, b));
            }
            Ok(CouplingGraph::from_edges(kind, dims, vertex_count, edges))
        }
    }
}

/// One routed circuit: where each logical wire started and ended up, how
/// many SWAPs were inserted, and how many CCX gates ran on a bridged
/// (center-connected, non-triangle) triple.
#[derive(Debug, Clone)]
pub struct Placement {
    pub assignment: Vec<u32>,
    pub final_assignment: Vec<u32>,
    pub swap_count: usize,
    pub bridge_ccx_count: usize,
    pub routed: Circuit,
}

fn ccx_executable(coupling: &CouplingGraph, a: u32, b: u32, t: u32) -> bool {
    let ab = coupling.adjacent(a, b);
    let at = coupling.adjacent(a, t);
    let bt = coupling.adjacent(b, t);
    if coupling.has_triangle() {
        ab && at && bt
    } else {
        // center-connected triple
        (ab && at) || (ab && bt) || (at && bt)
    }
}

fn is_triangle(coupling: &CouplingGraph, a: u32, b: u32, t: u32) -> bool {
    coupling.adjacent(a, b) && coupling.adjacent(a, t) && coupling.adjacent(b, t)
}

struct Router<'a> {
    coupling: &'a CouplingGraph,
    pos: Vec<u32>,
    routed: Circuit,
    swap_count: usize,
    bridge_ccx_count: usize,
    budget: Option<usize>,
}

impl<'a> Router<'a> {
    fn new(coupling: &'a CouplingGraph, assignment: &[u32], budget: Option<usize>) -> Self {
        Self {
            coupling,
            pos: assignment.to_vec(),
            routed: Circuit::with_width(coupling.vertex_count),
            swap_count: 0,
            bridge_ccx_count: 0,
            budget,
        }
    }

    fn over_budget(&self) -> bool {
        matches!(self.budget, Some(b) if self.swap_count > b)
    }

    /// Swap the (possibly unassigned) contents of two adjacent vertices.
    fn emit_swap(&mut self, a: u32, b: u32) {
        debug_assert!(self.coupling.adjacent(a, b));
        self.routed.append(Gate::Swap(QubitId(a), QubitId(b))).unwrap();
        self.swap_count += 1;
        for p in &mut self.pos {
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    }

    /// One step of logical wire `l` along a shortest path toward vertex
    /// `goal`; ties break on the smallest vertex id.
    fn step_toward(&mut self, l: usize, goal: u32) {
        let from = self.pos[l];
        let next = self
            .coupling
            .neighbors(from)
            .iter()
            .copied()
            .min_by_key(|&w| (self.coupling.distance(w, goal), w))
            .expect("connected coupling");
        self.emit_swap(from, next);
    }

    fn route_two(&mut self, a: usize, b: usize) -> Result<(), LayoutError> {
        let mut guard = 0usize;
        while self.coupling.distance(self.pos[a], self.pos[b]) > 1 {
            self.step_toward(a, self.pos[b]);
            if self.over_budget() {
                return Err(LayoutError::RoutingStuck);
            }
            guard += 1;
            if guard > 4 * self.coupling.vertex_count {
                return Err(LayoutError::RoutingStuck);
            }
        }
        Ok(())
    }

    fn route_ccx(&mut self, ops: [usize; 3]) -> Result<(), LayoutError> {
        let cap = 10 * self.coupling.vertex_count * self.coupling.vertex_count;
        let mut guard = 0usize;
        loop {
            let [a, b, t] = ops.map(|l| self.pos[l]);
            if ccx_executable(self.coupling, a, b, t) {
                return Ok(());
            }
            guard += 1;
            if guard > cap || self.over_budget() {
                return Err(LayoutError::RoutingStuck);
            }
            // move the operand farthest from the other two one step toward
            // the neighbor that shrinks the total spread the most
            let positions = [a, b, t];
            let spread = |i: usize, at: u32| -> u32 {
                (0..3)
                    .filter(|&j| j != i)
                    .map(|j| self.coupling.distance(at, positions[j]))
                    .sum()
            };
            let worst = (0..3).max_by_key(|&i| spread(i, positions[i])).unwrap();
            let order = [worst, (worst + 1) % 3, (worst + 2) % 3];
            let mut moved = false;
            for i in order {
                let here = positions[i];
                let best = self
                    .coupling
                    .neighbors(here)
                    .iter()
                    .copied()
                    .min_by_key(|&w| (spread(i, w), w))
                    .unwrap();
                if spread(i, best) < spread(i, here) {
                    self.emit_swap(here, best);
                    moved = true;
                    break;
                }
            }
            if !moved {
                // plateau: nudge the worst operand to its smallest neighbor
                let here = self.pos[ops[worst]];
                let next = self.coupling.neighbors(here)[0];
                self.emit_swap(here, next);
            }
        }
    }

    fn run(mut self, circuit: &Circuit) -> Result<Placement, LayoutError> {
        let initial = self.pos.clone();
        for gate in circuit.gates() {
            match *gate {
                Gate::X(a) => {
                    let p = self.pos[a.index()];
                    self.routed.append(Gate::X(QubitId(p))).unwrap();
                }
                Gate::Cx(a, b) => {
                    self.route_two(a.index(), b.index())?;
                    let (pa, pb) = (self.pos[a.index()], self.pos[b.index()]);
                    self.routed.append(Gate::Cx(QubitId(pa), QubitId(pb))).unwrap();
                }
                Gate::Swap(a, b) => {
                    self.route_two(a.index(), b.index())?;
                    let (pa, pb) = (self.pos[a.index()], self.pos[b.index()]);
                    self.routed.append(Gate::Swap(QubitId(pa), QubitId(pb))).unwrap();
                }
                Gate::Ccx(a, b, t) => {
                    self.route_ccx([a.index(), b.index(), t.index()])?;
                    let (pa, pb, pt) =
                        (self.pos[a.index()], self.pos[b.index()], self.pos[t.index()]);
                    if !is_triangle(self.coupling, pa, pb, pt) {
                        self.bridge_ccx_count += 1;
                    }
                    self.routed
                        .append(Gate::Ccx(QubitId(pa), QubitId(pb), QubitId(pt)))
                        .unwrap();
                }
            }
        }
        Ok(Placement {
            assignment: initial,
            final_assignment: self.pos,
            swap_count: self.swap_count,
            bridge_ccx_count: self.bridge_ccx_count,
            routed: self.routed,
        })
    }
}

/// Routes with a fixed initial assignment and the greedy schedule.
pub fn route_with_assignment(
    circuit: &Circuit,
    coupling: &CouplingGraph,
    assignment: &[u32],
) -> Result<Placement, LayoutError> {
    Router::new(coupling, assignment, None).run(circuit)
}

/// Greedy initial assignment: logical wires in order of requirement degree,
/// each placed at the free vertex closest to its already-placed neighbors.
fn greedy_assignment(req: &RequirementGraph, coupling: &CouplingGraph) -> Vec<u32> {
    let n = req.vertices;
    let mut degree = vec![0usize; n];
    for &(a, b) in &req.edges {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(degree[v]));

    let mut assignment = vec![u32::MAX; n];
    let mut used = vec![false; coupling.vertex_count];
    for &v in &order {
        let placed_neighbors: Vec<u32> = req
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a as usize == v && assignment[b as usize] != u32::MAX {
                    Some(assignment[b as usize])
                } else if b as usize == v && assignment[a as usize] != u32::MAX {
                    Some(assignment[a as usize])
                } else {
                    None
                }
            })
            .collect();
        let best = (0..coupling.vertex_count as u32)
            .filter(|&p| !used[p as usize])
            .min_by_key(|&p| {
                let d: u32 = placed_neighbors.iter().map(|&q| coupling.distance(p, q)).sum();
                (d, std::cmp::Reverse(coupling.degree(p)), p)
            })
            .expect("enough physical qubits");
        assignment[v] = best;
        used[best as usize] = true;
    }
    assignment
}

/// Threshold below which every injective assignment is tried.
pub const EXHAUSTIVE_LOGICAL_CAP: usize = 8;

/// Finds an initial assignment and SWAP schedule making every gate
/// executable. Up to [`EXHAUSTIVE_LOGICAL_CAP`] logical qubits, every
/// injective assignment is tried and the cheapest schedule wins; beyond
/// that a requirement-driven greedy placement is routed once.
pub fn place_and_route(
    circuit: &Circuit,
    coupling: &CouplingGraph,
) -> Result<Placement, LayoutError> {
    let logical = circuit.qubit_count();
    if logical > coupling.vertex_count {
        return Err(LayoutError::NotEnoughQubits {
            logical,
            physical: coupling.vertex_count,
        });
    }
    if logical <= EXHAUSTIVE_LOGICAL_CAP {
        let mut best: Option<Placement> = None;
        for perm in (0..coupling.vertex_count as u32).permutations(logical) {
            let budget = best.as_ref().map(|p| p.swap_count);
            match Router::new(coupling, &perm, budget).run(circuit) {
                Ok(p) => {
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            (p.swap_count, p.bridge_ccx_count) < (b.swap_count, b.bridge_ccx_count)
                        }
                    };
                    if better {
                        best = Some(p);
                    }
                }
                Err(LayoutError::RoutingStuck) => continue,
                Err(e) => return Err(e),
            }
        }
        best.ok_or(LayoutError::RoutingStuck)
    } else {
        let req = requirement_graph(circuit);
        let assignment = greedy_assignment(&req, coupling);
        route_with_assignment(circuit, coupling, &assignment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::QubitRole;
    use crate::shapes::{build_stair, build_vshape, Orientation, ShapeRule, ShapeTetrad};
    use crate::sim::{apply, BasisState};

    fn q(i: u32) -> QubitId {
        QubitId(i)
    }

    /// The two five-wire structures with identical connectivity needs: a
    /// V over wires (controls b, d, e; support c; target a is the chain
    /// head... both reduce to cliques {a,b,c} and {c,d,e}.
    fn five_wire_pair() -> (Circuit, Circuit) {
        // V-shape: CCX(a,b->c), CCX(c,d->e), CCX(a,b->c)
        let v = build_vshape(&[q(0), q(1), q(3)], &[q(2)], q(4)).unwrap();
        // descending control-to-target stair with the same cliques
        let tetrad = ShapeTetrad::new(
            vec![q(1), q(3), q(4)],
            vec![q(2)],
            q(0),
            ShapeRule::ControlToTarget,
        );
        let stair = build_stair(&tetrad, Orientation::Descending).unwrap();
        (v, stair)
    }

    #[test]
    fn five_wire_shapes_share_requirements() {
        let (v, stair) = five_wire_pair();
        assert_eq!(requirement_graph(&v), requirement_graph(&stair));
        let expect: BTreeSet<(u32, u32)> =
            [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)].into_iter().collect();
        assert_eq!(requirement_graph(&v).edges, expect);
    }

    #[test]
    fn single_ccx_requires_a_triangle() {
        let mut c = Circuit::with_width(3);
        c.append(Gate::Ccx(q(0), q(1), q(2))).unwrap();
        let r = requirement_graph(&c);
        assert_eq!(r.edges, [(0, 1), (0, 2), (1, 2)].into_iter().collect());
    }

    #[test]
    fn empty_circuit_has_empty_requirements() {
        let r = requirement_graph(&Circuit::with_width(4));
        assert!(r.edges.is_empty());
    }

    #[test]
    fn requirements_ignore_order_and_repetition() {
        let mut a = Circuit::with_width(4);
        a.extend([
            Gate::Ccx(q(0), q(1), q(2)),
            Gate::Cx(q(2), q(3)),
            Gate::Ccx(q(0), q(1), q(2)),
        ])
        .unwrap();
        let mut b = Circuit::with_width(4);
        b.extend([Gate::Cx(q(2), q(3)), Gate::Ccx(q(1), q(0), q(2))]).unwrap();
        assert_eq!(requirement_graph(&a), requirement_graph(&b));
    }

    #[test]
    fn triangle_chain_two() {
        let g = make_coupling(CouplingKind::TriangleChain, (2, 0)).unwrap();
        assert_eq!(g.vertex_count, 5);
        assert_eq!(g.edges.len(), 6);
        assert!(g.has_triangle());
    }

    #[test]
    fn grid_three_by_three() {
        let g = make_coupling(CouplingKind::SquareGrid, (3, 3)).unwrap();
        assert_eq!(g.vertex_count, 9);
        assert_eq!(g.edges.len(), 12);
        assert_eq!((0..9).map(|v| g.degree(v)).max(), Some(4));
        assert!(!g.has_triangle());
    }

    #[test]
    fn heavy_hex_unit_cell_is_a_twelve_ring() {
        let g = make_coupling(CouplingKind::HeavyHex, (2, 3)).unwrap();
        assert_eq!(g.vertex_count, 12);
        assert_eq!(g.edges.len(), 12);
        assert!((0..12).all(|v| g.degree(v) <= 3));
        assert!(!g.has_triangle());
    }

    #[test]
    fn heavy_hex_degree_bound_holds_when_tiled() {
        let g = make_coupling(CouplingKind::HeavyHex, (4, 7)).unwrap();
        assert!((0..g.vertex_count as u32).all(|v| g.degree(v) <= 3));
    }

    #[test]
    fn bad_dims_rejected() {
        assert_eq!(
            make_coupling(CouplingKind::SquareGrid, (0, 3)).unwrap_err(),
            LayoutError::BadDims((0, 3))
        );
        assert_eq!(
            make_coupling(CouplingKind::TriangleChain, (0, 0)).unwrap_err(),
            LayoutError::BadDims((0, 0))
        );
    }

    #[test]
    fn five_wire_circuit_routes_onto_triangle_chain_swap_free() {
        let (v, _) = five_wire_pair();
        let coupling = make_coupling(CouplingKind::TriangleChain, (2, 0)).unwrap();
        let placement = place_and_route(&v, &coupling).unwrap();
        assert_eq!(placement.swap_count, 0);
        assert_eq!(placement.bridge_ccx_count, 0);
    }

    #[test]
    fn single_ccx_on_a_path_needs_bridging() {
        let mut c = Circuit::with_width(3);
        c.append(Gate::Ccx(q(0), q(1), q(2))).unwrap();
        let path = make_coupling(CouplingKind::SquareGrid, (1, 3)).unwrap();
        let placement = place_and_route(&c, &path).unwrap();
        // a 3-clique cannot sit on a path; the router reports the bridged
        // execution instead of a triangle placement
        assert!(placement.swap_count + placement.bridge_ccx_count >= 1);
        assert_eq!(placement.bridge_ccx_count, 1);
    }

    fn check_routed_equivalence(original: &Circuit, placement: &Placement) {
        let logical = original.qubit_count();
        let physical = placement.routed.qubit_count();
        for s in 0u64..(1 << logical) {
            let mut phys = 0u64;
            for (l, &p) in placement.assignment.iter().enumerate() {
                if (s >> l) & 1 == 1 {
                    phys |= 1 << p;
                }
            }
            let phys_out = apply(&placement.routed, BasisState::new(phys, physical))
                .unwrap()
                .bits;
            let logical_out = apply(original, BasisState::new(s, logical)).unwrap().bits;
            for (l, &p) in placement.final_assignment.iter().enumerate() {
                assert_eq!(
                    (phys_out >> p) & 1,
                    (logical_out >> l) & 1,
                    "wire {l} state {s:b}"
                );
            }
        }
    }

    #[test]
    fn routing_preserves_semantics_on_grid() {
        let (v, _) = five_wire_pair();
        let grid = make_coupling(CouplingKind::SquareGrid, (3, 3)).unwrap();
        let placement = place_and_route(&v, &grid).unwrap();
        check_routed_equivalence(&v, &placement);
    }

    #[test]
    fn routing_preserves_semantics_on_heavy_hex() {
        let (v, _) = five_wire_pair();
        let hex = make_coupling(CouplingKind::HeavyHex, (2, 3)).unwrap();
        let placement = place_and_route(&v, &hex).unwrap();
        check_routed_equivalence(&v, &placement);
    }

    #[test]
    fn exhaustive_beats_or_ties_greedy() {
        let (v, _) = five_wire_pair();
        for coupling in [
            make_coupling(CouplingKind::SquareGrid, (3, 3)).unwrap(),
            make_coupling(CouplingKind::HeavyHex, (2, 3)).unwrap(),
            make_coupling(CouplingKind::TriangleChain, (3, 0)).unwrap(),
        ] {
            let best = place_and_route(&v, &coupling).unwrap();
            let req = requirement_graph(&v);
            let greedy = route_with_assignment(&v, &coupling, &greedy_assignment(&req, &coupling))
                .unwrap();
            assert!(best.swap_count <= greedy.swap_count);
        }
    }

    #[test]
    fn not_enough_qubits_reported() {
        let c = Circuit::with_width(6);
        let tri = make_coupling(CouplingKind::TriangleChain, (2, 0)).unwrap();
        assert_eq!(
            place_and_route(&c, &tri).unwrap_err(),
            LayoutError::NotEnoughQubits {
                logical: 6,
                physical: 5
            }
        );
    }

    #[test]
    fn larger_synthesis_routes_on_wider_grid() {
        // a full synthesized circuit (7 wires) onto a 3x3 grid, greedy path
        let synth = crate::stesso::synth_pp(5, crate::compose::SeqVariant::Seq2, Some(1)).unwrap();
        let grid = make_coupling(CouplingKind::SquareGrid, (3, 3)).unwrap();
        let req = requirement_graph(&synth.circuit);
        let assignment = greedy_assignment(&req, &grid);
        let placement = route_with_assignment(&synth.circuit, &grid, &assignment).unwrap();
        check_routed_equivalence(&synth.circuit, &placement);
        assert_eq!(
            synth.circuit.qubits_with_role(QubitRole::Target).len(),
            1
        );
    }
}
