//! Splitting-edge recursion and the theorem checks built on it.
//!
//! For a triangulated `d`-uniform `H`, pick the lowest non-isolated vertex `x`
//! whose closed neighborhood is `d`-complete and the first edge `E` through
//! it. Then `E` splits `I(H)` and, with `t = |N(E)|` and `H'` the edges at
//! distance at least `d + 1` from `E`,
//!
//! ```text
//! β_{i,j}(H) = β_{i,j}(H∖E) + Σ_{l=0}^{i} C(t,l) β_{i-1-l, j-d-l}(H')
//! ```
//!
//! with `β_{-1,0}(H') = 1`. The far part `H'` is an induced sub-hypergraph and
//! stays triangulated. So does `H∖E` for graphs, but not always for `d >= 3`:
//! removing any edge from `K^3_5` leaves no vertex with a complete closed
//! neighborhood. Such nodes still split when they are properly-connected and
//! some edge passes the swap criterion. A node can also have no splitting
//! edge at all: `{023, 024, 123, 124}` is reached from a triangulated input
//! by two removals. The recursion then backtracks to the next candidate edge,
//! and reports [`Error::NotTriangulated`] only when every choice fails.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, Hypergraph, VertexSet};
use crate::ideal::{alexander_dual, edge_ideal, height, intersect_principal, intersection_decomposition, is_unmixed, matching_number, Monomial, MonomialIdeal};
use crate::metric::{self, ChainSearch, Distance};
use crate::oracle::{has_linear_resolution, table_diff, table_invariants, taylor_betti, BettiTable, FieldChar, TableDiff};
use crate::structure::{self, SplitWitness};

/// One step of the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub edge: VertexSet,
    /// Vertex certifying the split by the swap criterion.
    pub z: usize,
    /// Vertex with a `d`-complete closed neighborhood that selected `edge`;
    /// `None` when the node was not triangulated and `edge` is simply the
    /// first edge passing the swap criterion.
    pub pivot: Option<usize>,
    pub neighbors: VertexSet,
    pub t: usize,
    pub rest: Hypergraph,
    pub far: Hypergraph,
}

/// Audit trail of a recursive computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecursionTrace {
    Edgeless,
    /// A subproblem already solved elsewhere in the tree.
    Memo { table: BettiTable },
    Split {
        step: Box<SplitDecomposition>,
        table: BettiTable,
        rest: Box<RecursionTrace>,
        far: Box<RecursionTrace>,
    },
}

impl RecursionTrace {
    pub fn table(&self) -> BettiTable {
        match self {
            RecursionTrace::Edgeless => BettiTable::new(),
            RecursionTrace::Memo { table } | RecursionTrace::Split { table, .. } => table.clone(),
        }
    }

    /// Number of split nodes.
    pub fn splits(&self) -> usize {
        match self {
            RecursionTrace::Split { rest, far, .. } => 1 + rest.splits() + far.splits(),
            _ => 0,
        }
    }

    pub fn memo_hits(&self) -> usize {
        match self {
            RecursionTrace::Memo { .. } => 1,
            RecursionTrace::Split { rest, far, .. } => rest.memo_hits() + far.memo_hits(),
            RecursionTrace::Edgeless => 0,
        }
    }
}

/// Recursion settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecursionOptions {
    /// Re-check every precondition at every node.
    pub verify: bool,
    pub memo: bool,
}

impl Default for RecursionOptions {
    fn default() -> Self {
        RecursionOptions { verify: false, memo: true }
    }
}

impl RecursionOptions {
    pub fn verified() -> Self {
        RecursionOptions { verify: true, memo: true }
    }
}

fn require_triangulated(h: &Hypergraph) -> Result<usize> {
    let d = metric::require_properly_connected(h)?;
    if structure::elimination_order(h)?.is_none() {
        return Err(Error::NotTriangulated);
    }
    Ok(d)
}

/// Candidate splitting edges for one node, best first, as
/// `(edge, z, pivot, neighbors)`.
///
/// Edges through a vertex with a `d`-complete closed neighborhood come first,
/// lowest vertex first. Every other edge passing the swap criterion follows,
/// provided the node is properly-connected. For `d >= 3` a first choice can
/// lead to a node with no splitting edge at all, so the recursion backtracks
/// over this list.
fn candidates(h: &Hypergraph, d: usize) -> Result<Vec<(SplitWitness, Option<usize>, VertexSet)>> {
    let edges = h.edges();
    let all = h.vertices();
    let mut out: Vec<(SplitWitness, Option<usize>, VertexSet)> = Vec::new();
    let pivots: Vec<usize> = h.covered_vertices().iter().filter(|&x| structure::admissible(edges, all, x, d)).collect();
    for &x in &pivots {
        for &edge in edges.iter().filter(|e| e.contains(x)) {
            if out.iter().any(|c| c.0.edge == edge) {
                continue;
            }
            let neighbors = metric::neighbor_set(h, edge)?;
            match structure::swap_witness(h, edge, neighbors) {
                Some(w) => out.push((w, Some(x), neighbors)),
                None => {
                    return Err(Error::Verification(format!("edge {edge} chosen through vertex {x} does not split")));
                }
            }
        }
    }
    if pivots.is_empty() {
        metric::require_properly_connected(h)?;
    }
    for &edge in edges {
        if out.iter().any(|c| c.0.edge == edge) {
            continue;
        }
        let neighbors = metric::neighbor_set(h, edge)?;
        if let Some(w) = structure::swap_witness(h, edge, neighbors) {
            out.push((w, None, neighbors));
        }
    }
    Ok(out)
}

fn build_step(h: &Hypergraph, (witness, pivot, neighbors): (SplitWitness, Option<usize>, VertexSet)) -> Result<SplitDecomposition> {
    let SplitWitness { edge, z } = witness;
    Ok(SplitDecomposition {
        edge,
        z,
        pivot,
        neighbors,
        t: neighbors.len(),
        rest: h.remove_edge(edge)?,
        far: metric::far_subhypergraph(h, edge)?,
    })
}

fn choose_step(h: &Hypergraph, d: usize) -> Result<SplitDecomposition> {
    let first = candidates(h, d)?.into_iter().next().ok_or(Error::NotTriangulated)?;
    build_step(h, first)
}

/// One recursion step on a triangulated hypergraph with at least one edge.
pub fn split_step(h: &Hypergraph) -> Result<SplitDecomposition> {
    let d = require_triangulated(h)?;
    choose_step(h, d)
}

/// Checks every precondition the recursion relies on at a node.
fn verify_node(h: &Hypergraph, step: &SplitDecomposition) -> Result<()> {
    let fail = |msg: String| Err(Error::Verification(msg));
    if metric::is_properly_connected(h)?.0 == false {
        return fail(format!("node {h:?} is not properly-connected"));
    }
    let by_order = structure::elimination_order(h)?.is_some();
    match structure::is_triangulated_exact(h) {
        Ok(exact) if exact != by_order => {
            return fail(format!("triangulated checks disagree on {h:?}: exhaustive {exact}, elimination {by_order}"));
        }
        Err(Error::TooLarge { .. }) | Ok(_) => {}
        Err(e) => return Err(e),
    }
    if by_order && step.pivot.is_none() {
        return fail(format!("triangulated node {h:?} has no vertex with a complete closed neighborhood"));
    }
    let general = if h.edge_count() >= 2 { structure::is_splitting_edge(h, step.edge)?.is_some() } else { true };
    if !general {
        return fail(format!("edge {} fails the general splitting criterion", step.edge));
    }
    let decomposition = intersection_decomposition(h, step.edge, true)?;
    if decomposition.neighbors != step.neighbors || decomposition.far != step.far {
        return fail(format!("decomposition of {} is inconsistent", step.edge));
    }
    // far part of a properly-connected hypergraph stays properly-connected
    if !metric::is_properly_connected(&step.far)?.0 {
        return fail(format!("far part of {} is not properly-connected", step.edge));
    }
    let d = step.edge.len();
    let search = ChainSearch::new(h);
    let i = h.index_of(step.edge).unwrap();
    for j in 0..h.edge_count() {
        if let Some(cert) = search.shortest(i, j, Some(d)) {
            cert.check_shortest_shape(d)?;
        }
    }
    Ok(())
}

/// Order-preserving relabeling of the covered vertices, as a memo key.
fn memo_key(h: &Hypergraph) -> Vec<u64> {
    let covered = h.covered_vertices().to_vec();
    let mut position = [0u8; 64];
    for (k, &v) in covered.iter().enumerate() {
        position[v] = k as u8;
    }
    h.edges().iter().map(|e| e.iter().fold(0u64, |acc, v| acc | 1 << position[v])).collect()
}

struct Recursion {
    d: usize,
    options: RecursionOptions,
    tables: HashMap<Vec<u64>, BettiTable>,
    pairs: HashMap<Vec<u64>, (i64, i64)>,
    /// Nodes with no sequence of splits down to the empty hypergraph.
    dead: HashSet<Vec<u64>>,
}

impl Recursion {
    fn new(d: usize, options: RecursionOptions) -> Self {
        Recursion { d, options, tables: HashMap::new(), pairs: HashMap::new(), dead: HashSet::new() }
    }

    /// Steps for `h` in preference order; `Err(NotTriangulated)` for a known dead end.
    fn steps(&mut self, h: &Hypergraph, key: &[u64]) -> Result<Vec<(SplitWitness, Option<usize>, VertexSet)>> {
        if self.dead.contains(key) {
            return Err(Error::NotTriangulated);
        }
        candidates(h, self.d)
    }

    fn table(&mut self, h: &Hypergraph) -> Result<RecursionTrace> {
        if h.is_edgeless() {
            return Ok(RecursionTrace::Edgeless);
        }
        let key = memo_key(h);
        if let Some(table) = self.options.memo.then(|| self.tables.get(&key)).flatten() {
            return Ok(RecursionTrace::Memo { table: table.clone() });
        }
        for candidate in self.steps(h, &key)? {
            let step = build_step(h, candidate)?;
            if self.options.verify {
                verify_node(h, &step)?;
            }
            let sub = self.table(&step.rest).and_then(|rest| Ok((rest, self.table(&step.far)?)));
            let (rest, far) = match sub {
                Err(Error::NotTriangulated) => continue,
                other => other?,
            };
            let table = combine(&rest.table(), &far.table(), self.d, step.t);
            if self.options.memo {
                self.tables.insert(key, table.clone());
            }
            return Ok(RecursionTrace::Split { step: Box::new(step), table, rest: Box::new(rest), far: Box::new(far) });
        }
        self.dead.insert(key);
        Err(Error::NotTriangulated)
    }

    fn pair(&mut self, h: &Hypergraph) -> Result<(i64, i64)> {
        if h.is_edgeless() {
            return Ok((1, -1));
        }
        let key = memo_key(h);
        if let Some(&v) = self.options.memo.then(|| self.pairs.get(&key)).flatten() {
            return Ok(v);
        }
        for candidate in self.steps(h, &key)? {
            let step = build_step(h, candidate)?;
            if self.options.verify {
                verify_node(h, &step)?;
            }
            let sub = self.pair(&step.rest).and_then(|rest| Ok((rest, self.pair(&step.far)?)));
            let ((reg_rest, pdim_rest), (reg_far, pdim_far)) = match sub {
                Err(Error::NotTriangulated) => continue,
                other => other?,
            };
            let d = self.d as i64;
            // reg(J ∩ K) = reg(H') + d and pdim(J ∩ K) = pdim(H') + t
            let result = (reg_rest.max(reg_far + d - 1), pdim_rest.max(pdim_far + step.t as i64 + 1));
            if self.options.memo {
                self.pairs.insert(key, result);
            }
            return Ok(result);
        }
        self.dead.insert(key);
        Err(Error::NotTriangulated)
    }
}

/// `β(H∖E) + Σ_l C(t,l) β_{i-1-l, j-d-l}(H')`, including the `β_{-1,0} = 1` term.
fn combine(rest: &BettiTable, far: &BettiTable, d: usize, t: usize) -> BettiTable {
    let mut out = rest.clone();
    // (a + 1, b) stands for the far entry (a, b), shifted so that (-1, 0) is (0, 0)
    let shifted = std::iter::once((0, 0, 1)).chain(far.iter().map(|(a, b, v)| (a + 1, b, v)));
    for (a1, b, v) in shifted {
        for l in 0..=t {
            out.add(a1 + l, b + d + l, binomial(t as u64, l as u64) as u64 * v);
        }
    }
    out
}

/// Graded Betti numbers of a triangulated hypergraph by recursion, with its trace.
pub fn recursive_betti(h: &Hypergraph) -> Result<(BettiTable, RecursionTrace)> {
    recursive_betti_with(h, RecursionOptions::default())
}

pub fn recursive_betti_with(h: &Hypergraph, options: RecursionOptions) -> Result<(BettiTable, RecursionTrace)> {
    if h.is_edgeless() {
        return Ok((BettiTable::new(), RecursionTrace::Edgeless));
    }
    let d = require_triangulated(h)?;
    let trace = Recursion::new(d, options).table(h)?;
    Ok((trace.table(), trace))
}

/// How [`reg_pdim`] obtains its values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Recursion on `(reg, pdim)` pairs; triangulated input only.
    Recursive,
    Oracle(FieldChar),
}

/// `(reg I(H), pdim I(H))`, with `(1, -1)` for the zero ideal.
pub fn reg_pdim(h: &Hypergraph, strategy: Strategy) -> Result<(i64, i64)> {
    match strategy {
        Strategy::Oracle(p) => Ok(table_invariants(&taylor_betti(&edge_ideal(h), p)?)),
        Strategy::Recursive => {
            if h.is_edgeless() {
                return Ok((1, -1));
            }
            let d = require_triangulated(h)?;
            Recursion::new(d, RecursionOptions::default()).pair(h)
        }
    }
}

/// `((d-1)c + 1, α' + 1 for graphs)` with `c` the largest number of pairwise
/// `(d+1)`-disjoint edges.
pub fn reg_bounds(h: &Hypergraph) -> Result<(i64, Option<i64>)> {
    let d = metric::require_properly_connected(h)?;
    let (c, _) = metric::max_pairwise_t_disjoint(h, d + 1)?;
    let lower = (d as i64 - 1) * c as i64 + 1;
    let upper = if d == 2 { Some(matching_number(h)? as i64 + 1) } else { None };
    Ok((lower, upper))
}

/// Comparison of `β_{i-1, d i}` with the number of `i`-sets of pairwise
/// `(d+1)`-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandReport {
    /// `(i, β_{i-1,di}, count)` for `i = 1, 2, ...`.
    pub rows: Vec<(usize, u64, u64)>,
    pub holds: bool,
}

pub fn strand_count_check(h: &Hypergraph, p: FieldChar) -> Result<StrandReport> {
    let d = metric::require_properly_connected(h)?;
    let table = taylor_betti(&edge_ideal(h), p)?;
    strand_rows(h, d, &table)
}

pub(crate) fn strand_rows(h: &Hypergraph, d: usize, table: &BettiTable) -> Result<StrandReport> {
    let counts = metric::count_pairwise_t_disjoint(h, d + 1)?;
    let top = (table.pdim().unwrap_or(0) + 1).max(counts.len() - 1);
    let rows: Vec<(usize, u64, u64)> =
        (1..=top).map(|i| (i, table.get(i - 1, d * i), counts.get(i).copied().unwrap_or(0))).collect();
    let holds = rows.iter().all(|r| r.1 == r.2);
    Ok(StrandReport { rows, holds })
}

/// Entrywise check of `β(I) = β(J) + β(K) + β_{i-1}(J ∩ K)` for `J = (x^E)`, `K = I(H∖E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EkReport {
    pub witness: SplitWitness,
    pub diffs: Vec<TableDiff>,
}

impl EkReport {
    pub fn holds(&self) -> bool {
        self.diffs.is_empty()
    }
}

pub fn ek_identity_check(h: &Hypergraph, e: VertexSet, p: FieldChar) -> Result<EkReport> {
    let witness = structure::is_splitting_edge(h, e)?.ok_or(Error::NotASplittingEdge(e))?;
    let m = Monomial(e);
    let rest = edge_ideal(&h.remove_edge(e)?);
    let whole = taylor_betti(&edge_ideal(h), p)?;
    let principal = taylor_betti(&MonomialIdeal::principal(m), p)?;
    let rest_table = taylor_betti(&rest, p)?;
    let meet = taylor_betti(&intersect_principal(m, &rest), p)?;
    let mut predicted = BettiTable::new();
    for (i, j, v) in principal.iter().chain(rest_table.iter()) {
        predicted.add(i, j, v);
    }
    for (i, j, v) in meet.iter() {
        predicted.add(i + 1, j, v);
    }
    Ok(EkReport { witness, diffs: table_diff(&whole, &predicted) })
}

/// Linear first syzygies, linear resolution and diameter of a properly-connected hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearityReport {
    pub d: usize,
    pub first_syzygies_linear: bool,
    pub resolution_linear: bool,
    pub diameter: Distance,
    pub triangulated: bool,
}

impl LinearityReport {
    /// First syzygies are linear exactly when the diameter is at most `d`.
    pub fn syzygy_iff_holds(&self) -> bool {
        self.first_syzygies_linear == (self.diameter <= Distance::Finite(self.d))
    }

    /// For triangulated input: linear resolution, linear first syzygies and
    /// diameter at most `d` coincide.
    pub fn three_way_holds(&self) -> bool {
        !self.triangulated
            || (self.resolution_linear == self.first_syzygies_linear && self.syzygy_iff_holds())
    }

    pub fn holds(&self) -> bool {
        self.syzygy_iff_holds() && self.three_way_holds()
    }
}

pub fn linearity_report(h: &Hypergraph, p: FieldChar) -> Result<LinearityReport> {
    let d = metric::require_properly_connected(h)?;
    let table = taylor_betti(&edge_ideal(h), p)?;
    linearity_from_table(h, d, &table)
}

pub(crate) fn linearity_from_table(h: &Hypergraph, d: usize, table: &BettiTable) -> Result<LinearityReport> {
    Ok(LinearityReport {
        d,
        first_syzygies_linear: table.iter().all(|(i, j, _)| i != 1 || j == d + 1),
        resolution_linear: has_linear_resolution(table, d),
        diameter: metric::diameter(h)?,
        triangulated: structure::elimination_order(h)?.is_some(),
    })
}

/// Linear resolution of `I(G)` against chordality of the complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobergReport {
    pub linear: bool,
    pub complement_chordal: bool,
}

impl FrobergReport {
    pub fn holds(&self) -> bool {
        self.linear == self.complement_chordal
    }
}

pub fn froberg_check(g: &Hypergraph, p: FieldChar) -> Result<FrobergReport> {
    let table = taylor_betti(&edge_ideal(g), p)?;
    froberg_from_table(g, &table)
}

pub(crate) fn froberg_from_table(g: &Hypergraph, table: &BettiTable) -> Result<FrobergReport> {
    if g.edges().iter().any(|e| e.len() != 2) {
        return Err(Error::NotAGraph);
    }
    Ok(FrobergReport {
        linear: has_linear_resolution(table, 2),
        complement_chordal: structure::is_chordal(&g.complement(2)?)?,
    })
}

/// Invariants of `I(G)` and `I(G)^∨` entering the König-type inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KonigReport {
    pub unmixed: bool,
    pub height: i64,
    pub reg: i64,
    pub pdim: i64,
    pub dual_reg: i64,
    pub dual_pdim: i64,
}

impl KonigReport {
    pub fn inequalities_hold(&self) -> bool {
        let nu = self.height;
        if self.unmixed {
            self.reg <= nu + 1 && nu + 1 <= self.dual_reg + 1 && self.dual_pdim <= nu && nu <= self.pdim + 1
        } else {
            self.reg <= nu + 1 && nu + 1 <= self.dual_reg && self.dual_pdim <= nu && nu <= self.pdim
        }
    }

    /// `reg(I) = pdim(I^∨) + 1` and `reg(I^∨) = pdim(I) + 1`.
    pub fn duality_holds(&self) -> bool {
        self.reg == self.dual_pdim + 1 && self.dual_reg == self.pdim + 1
    }
}

/// Needs at least one edge: the dual of the zero ideal is the unit ideal.
pub fn konig_check(g: &Hypergraph, p: FieldChar) -> Result<KonigReport> {
    if g.edges().iter().any(|e| e.len() != 2) {
        return Err(Error::NotAGraph);
    }
    if g.is_edgeless() {
        return Err(Error::NoEdges);
    }
    let ideal = edge_ideal(g);
    let table = taylor_betti(&ideal, p)?;
    let dual = taylor_betti(&alexander_dual(&ideal), p)?;
    Ok(konig_from_tables(g, &table, &dual))
}

pub(crate) fn konig_from_tables(g: &Hypergraph, table: &BettiTable, dual: &BettiTable) -> KonigReport {
    let (reg, pdim) = table_invariants(table);
    let (dual_reg, dual_pdim) = table_invariants(dual);
    KonigReport { unmixed: is_unmixed(g), height: height(&edge_ideal(g)) as i64, reg, pdim, dual_reg, dual_pdim }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::OracleConfig;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn c5() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]).unwrap()
    }

    fn p5() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1], [1, 2], [2, 3], [3, 4]]).unwrap()
    }

    fn six_edge() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1, 2], [0, 1, 3], [0, 2, 4], [1, 2, 3], [1, 2, 4], [2, 3, 4]]).unwrap()
    }

    fn table(entries: &[(usize, usize, u64)]) -> BettiTable {
        entries.iter().copied().collect()
    }

    fn oracle(h: &Hypergraph) -> BettiTable {
        taylor_betti(&edge_ideal(h), FieldChar::TWO).unwrap()
    }

    #[test]
    fn single_edge() {
        let h = Hypergraph::from_edges(4, [[0, 1, 3]]).unwrap();
        let (t, trace) = recursive_betti_with(&h, RecursionOptions::verified()).unwrap();
        assert_eq!(t, table(&[(0, 3, 1)]));
        assert_eq!(trace.splits(), 1);
        let step = split_step(&h).unwrap();
        assert_eq!((step.edge, step.t), (set(&[0, 1, 3]), 0));
        assert!(step.rest.is_edgeless() && step.far.is_edgeless());
        assert_eq!(reg_pdim(&h, Strategy::Recursive).unwrap(), (3, 0));
    }

    #[test]
    fn path_on_five_vertices() {
        let h = p5();
        let expected = oracle(&h);
        let (t, _) = recursive_betti_with(&h, RecursionOptions::verified()).unwrap();
        assert_eq!(t, expected);
        // frozen from the Taylor oracle at p = 2
        assert_eq!(expected, table(&[(0, 2, 4), (1, 3, 3), (1, 4, 1), (2, 5, 1)]));
        assert_eq!(reg_pdim(&h, Strategy::Recursive).unwrap(), reg_pdim(&h, Strategy::Oracle(FieldChar::TWO)).unwrap());
    }

    #[test]
    fn star_split() {
        let star = Hypergraph::from_edges(4, [[0, 1], [0, 2], [0, 3]]).unwrap();
        let step = split_step(&star).unwrap();
        assert_eq!(step.pivot, Some(1));
        assert_eq!(step.edge, set(&[0, 1]));
        assert!(step.far.is_edgeless());
        assert_eq!(step.t, 2);
    }

    #[test]
    fn refuses_non_triangulated() {
        assert_eq!(recursive_betti(&c5()).unwrap_err(), Error::NotTriangulated);
        assert_eq!(split_step(&six_edge()).unwrap_err(), Error::NotTriangulated);
        let four = Hypergraph::from_edges(8, [[0, 1, 2, 3], [0, 1, 2, 6], [0, 1, 5, 6], [0, 4, 5, 6], [0, 4, 5, 7]]).unwrap();
        assert!(matches!(recursive_betti(&four), Err(Error::NotProperlyConnected(..))));
        let mixed = Hypergraph::from_edges(5, [vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert_eq!(recursive_betti(&mixed).unwrap_err(), Error::NotUniform);
    }

    #[test]
    fn removing_an_edge_can_break_triangulation() {
        let k = Hypergraph::complete(5, 3).unwrap();
        assert!(structure::is_triangulated_exact(&k).unwrap());
        for &e in k.edges() {
            let rest = k.remove_edge(e).unwrap();
            if metric::is_properly_connected(&rest).unwrap().0 {
                assert!(!structure::is_triangulated_exact(&rest).unwrap());
            }
        }
    }

    #[test]
    fn complete_hypergraphs() {
        for (n, d) in [(5, 3), (6, 2), (6, 4)] {
            let h = Hypergraph::complete(n, d).unwrap();
            let (t, trace) = recursive_betti_with(&h, RecursionOptions::verified()).unwrap();
            assert_eq!(t, oracle(&h));
            assert!(trace.splits() > 0);
        }
    }

    #[test]
    fn all_triangulated_triple_systems_on_five_vertices() {
        let triples = crate::hypergraph::k_subsets(VertexSet::full(5), 3);
        let mut checked = 0;
        for mask in 1u32..1 << triples.len() {
            let edges = triples.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            let h = Hypergraph::new(5, edges).unwrap();
            if !structure::is_triangulated(&h).unwrap() {
                continue;
            }
            checked += 1;
            let (t, _) = recursive_betti_with(&h, RecursionOptions::verified()).unwrap();
            assert_eq!(t, oracle(&h), "{h:?}");
            let rp = reg_pdim(&h, Strategy::Recursive).unwrap();
            assert_eq!(rp, table_invariants(&t));
        }
        assert!(checked > 0);
    }

    #[test]
    fn memo_does_not_change_results() {
        let k = Hypergraph::complete(6, 3).unwrap();
        let with = recursive_betti_with(&k, RecursionOptions { verify: false, memo: true }).unwrap().0;
        let without = recursive_betti_with(&k, RecursionOptions { verify: false, memo: false }).unwrap().0;
        assert_eq!(with, without);
        // 20 generators is beyond the default cap
        let big = taylor_betti_cap(&k, 20);
        assert_eq!(with, big);
    }

    fn taylor_betti_cap(h: &Hypergraph, cap: usize) -> BettiTable {
        crate::oracle::taylor_betti_with(&edge_ideal(h), FieldChar::TWO, OracleConfig { cap, reduce: true }).unwrap()
    }

    #[test]
    fn ek_checks() {
        let h = six_edge();
        assert!(ek_identity_check(&h, set(&[0, 1, 2]), FieldChar::TWO).unwrap().holds());
        assert_eq!(ek_identity_check(&c5(), set(&[0, 1]), FieldChar::TWO).unwrap_err(), Error::NotASplittingEdge(set(&[0, 1])));
        let tri = Hypergraph::from_edges(6, [[0, 1, 5], [1, 2, 3], [3, 4, 5]]).unwrap();
        for &e in tri.edges() {
            assert!(ek_identity_check(&tri, e, FieldChar::LARGE).unwrap().holds());
        }
    }

    #[test]
    fn bounds_and_strands() {
        assert_eq!(reg_bounds(&c5()).unwrap(), (2, Some(3)));
        assert_eq!(reg_pdim(&c5(), Strategy::Oracle(FieldChar::TWO)).unwrap(), (3, 2));
        let s = strand_count_check(&c5(), FieldChar::TWO).unwrap();
        assert!(s.holds);
        assert_eq!(s.rows[..2], [(1, 5, 5), (2, 0, 0)]);
        let s = strand_count_check(&p5(), FieldChar::TWO).unwrap();
        assert!(s.holds);
        assert_eq!(s.rows[1], (2, 1, 1));
        let single = Hypergraph::from_edges(3, [[0, 1, 2]]).unwrap();
        assert_eq!(strand_count_check(&single, FieldChar::TWO).unwrap().rows, vec![(1, 1, 1)]);
    }

    #[test]
    fn linearity() {
        let r = linearity_report(&c5(), FieldChar::TWO).unwrap();
        assert!(r.first_syzygies_linear && !r.resolution_linear);
        assert_eq!(r.diameter, Distance::Finite(2));
        assert!(r.holds() && !r.triangulated);
        let drop = [set(&[0, 1, 2]), set(&[2, 3, 4])];
        let k = Hypergraph::complete(5, 3).unwrap().filter_edges(|e| !drop.contains(&e));
        let r = linearity_report(&k, FieldChar::TWO).unwrap();
        assert!(r.resolution_linear && r.holds());
    }

    #[test]
    fn froberg_cases() {
        let k4 = Hypergraph::complete(4, 2).unwrap();
        let p3 = Hypergraph::from_edges(3, [[0, 1], [1, 2]]).unwrap();
        for (g, linear) in [(c5(), false), (k4, true), (p3, true)] {
            let r = froberg_check(&g, FieldChar::TWO).unwrap();
            assert_eq!(r.linear, linear);
            assert!(r.holds());
        }
    }

    #[test]
    fn konig_cases() {
        let r = konig_check(&c5(), FieldChar::TWO).unwrap();
        assert!(r.unmixed && r.height == 3 && r.reg == 3);
        assert!(r.inequalities_hold() && r.duality_holds());
        let p3 = Hypergraph::from_edges(3, [[0, 1], [1, 2]]).unwrap();
        let r = konig_check(&p3, FieldChar::TWO).unwrap();
        assert!(!r.unmixed && r.height == 1 && r.reg <= 2 && r.dual_reg >= 2);
        assert!(r.inequalities_hold() && r.duality_holds());
        let e = Hypergraph::from_edges(2, [[0, 1]]).unwrap();
        let r = konig_check(&e, FieldChar::TWO).unwrap();
        assert_eq!((r.reg, r.height, r.dual_reg), (2, 1, 1));
        assert!(r.inequalities_hold());
    }
}
