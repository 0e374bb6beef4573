//! Leaves, splitting edges and triangulated hypergraphs.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, Hypergraph, VertexSet};
use crate::ideal::{edge_ideal, intersect_principal, Monomial};
use crate::metric;

/// Default cap on non-isolated vertices for [`is_triangulated_exact`].
pub const EXHAUSTIVE_CAP: usize = 14;

/// An edge together with the vertex certifying that it splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitWitness {
    pub edge: VertexSet,
    pub z: usize,
}

/// Vertices of `e` lying in no other edge.
pub fn free_vertices(h: &Hypergraph, e: VertexSet) -> Result<VertexSet> {
    h.require_edge(e)?;
    let others = h.edges().iter().filter(|&&f| f != e).fold(VertexSet::EMPTY, |acc, &f| acc.union(f));
    Ok(e.difference(others))
}

pub fn is_v_leaf(h: &Hypergraph, e: VertexSet) -> Result<bool> {
    Ok(!free_vertices(h, e)?.is_empty())
}

/// Some other edge `F` has `E ∩ E' ⊆ E ∩ F` for every edge `E' ≠ E`.
pub fn is_f_leaf(h: &Hypergraph, e: VertexSet) -> Result<bool> {
    h.require_edge(e)?;
    let others: Vec<VertexSet> = h.edges().iter().copied().filter(|&f| f != e).collect();
    if others.is_empty() {
        return Ok(true);
    }
    Ok(others.iter().any(|&f| {
        let meet = e.intersection(f);
        others.iter().all(|&g| e.intersection(g).is_subset(meet))
    }))
}

/// General criterion: some `z ∈ E` has `(x^E) ∩ I(H∖E) ⊆ (x^E) ∩ I(H∖{z})`.
///
/// Returns the witness with the smallest `z`, or `None`.
pub fn is_splitting_edge(h: &Hypergraph, e: VertexSet) -> Result<Option<SplitWitness>> {
    h.require_edge(e)?;
    if h.edge_count() < 2 {
        return Err(Error::TooFewEdges);
    }
    let m = Monomial(e);
    let lhs = intersect_principal(m, &edge_ideal(&h.remove_edge(e)?));
    for z in e {
        let rhs = intersect_principal(m, &edge_ideal(&h.remove_vertex(z)?));
        if lhs.is_subideal_of(&rhs) {
            return Ok(Some(SplitWitness { edge: e, z }));
        }
    }
    Ok(None)
}

/// Properly-connected criterion: some `z ∈ E` has `(E∖{z}) ∪ {w} ∈ H` for all `w ∈ N(E)`.
pub fn is_splitting_edge_pc(h: &Hypergraph, e: VertexSet) -> Result<Option<SplitWitness>> {
    h.require_edge(e)?;
    metric::require_properly_connected(h)?;
    Ok(swap_witness(h, e, metric::neighbor_set(h, e)?))
}

pub(crate) fn swap_witness(h: &Hypergraph, e: VertexSet, neighbors: VertexSet) -> Option<SplitWitness> {
    e.iter()
        .find(|&z| neighbors.iter().all(|w| h.contains_edge(e.without(z).with(w))))
        .map(|z| SplitWitness { edge: e, z })
}

/// All splitting edges of `h` by the general criterion, in canonical order.
pub fn splitting_edges(h: &Hypergraph) -> Result<Vec<SplitWitness>> {
    if h.edge_count() < 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for &e in h.edges() {
        out.extend(is_splitting_edge(h, e)?);
    }
    Ok(out)
}

/// Union of the edges of `edges` that lie in `y` and contain `x`, plus `x`.
fn closed_neighborhood(edges: &[VertexSet], y: VertexSet, x: usize) -> VertexSet {
    edges
        .iter()
        .filter(|e| e.contains(x) && e.is_subset(y))
        .fold(VertexSet::singleton(x), |acc, &e| acc.union(e))
}

/// Whether the closed neighborhood of `x` in `H_Y` spans a `d`-complete hypergraph.
pub(crate) fn admissible(edges: &[VertexSet], y: VertexSet, x: usize, d: usize) -> bool {
    let closed = closed_neighborhood(edges, y, x);
    let size = closed.len();
    if size < d {
        return true;
    }
    let inside = edges.iter().filter(|e| e.is_subset(closed)).count();
    inside as u128 == binomial(size as u64, d as u64)
}

/// Whether `x` has a closed neighborhood inducing a `d`-complete hypergraph in `h`.
pub fn has_complete_neighborhood(h: &Hypergraph, x: usize) -> Result<bool> {
    h.require_vertex(x)?;
    let d = h.require_uniform()?;
    Ok(admissible(h.edges(), h.vertices(), x, d))
}

fn pc_degree(h: &Hypergraph) -> Result<usize> {
    if h.is_edgeless() {
        // every vertex is admissible for any degree of at least two
        return Ok(2);
    }
    metric::require_properly_connected(h)
}

/// A vertex order `x_1, x_2, ...` in which each `x_k` has a `d`-complete
/// closed neighborhood once `x_1..x_{k-1}` are removed.
///
/// Searches lowest index first with backtracking. An edgeless hypergraph
/// yields the identity order.
pub fn elimination_order(h: &Hypergraph) -> Result<Option<Vec<usize>>> {
    let d = pc_degree(h)?;
    let mut order = Vec::with_capacity(h.n());
    let mut failed = HashSet::new();
    let found = eliminate(h.edges(), h.vertices(), d, &mut order, &mut failed);
    Ok(found.then_some(order))
}

fn eliminate(edges: &[VertexSet], y: VertexSet, d: usize, order: &mut Vec<usize>, failed: &mut HashSet<u64>) -> bool {
    if y.is_empty() {
        return true;
    }
    if failed.contains(&y.bits()) {
        return false;
    }
    for x in y {
        if admissible(edges, y, x, d) {
            order.push(x);
            if eliminate(edges, y.without(x), d, order, failed) {
                return true;
            }
            order.pop();
        }
    }
    failed.insert(y.bits());
    false
}

/// The defining condition checked on every nonempty vertex subset.
///
/// Vertices isolated in `H` are admissible in every `H_Y`, so only subsets of
/// the covered vertices are enumerated; their number is capped.
pub fn is_triangulated_exact(h: &Hypergraph) -> Result<bool> {
    is_triangulated_exact_with_cap(h, EXHAUSTIVE_CAP)
}

pub fn is_triangulated_exact_with_cap(h: &Hypergraph, cap: usize) -> Result<bool> {
    let d = pc_degree(h)?;
    let covered = h.covered_vertices();
    if covered.len() > cap {
        return Err(Error::TooLarge { what: "non-isolated vertex count", size: covered.len(), cap });
    }
    let members = covered.to_vec();
    let edges = h.edges();
    for mask in 1u64..1 << members.len() {
        let y: VertexSet = members.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect();
        if !y.iter().any(|x| admissible(edges, y, x, d)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Properly-connected and admitting an elimination order.
///
/// Admissibility of a vertex survives passing to smaller induced
/// sub-hypergraphs that still contain it, so an order exists exactly when
/// the defining condition holds for all subsets.
pub fn is_triangulated(h: &Hypergraph) -> Result<bool> {
    match metric::is_properly_connected(h) {
        Ok((true, _)) => Ok(elimination_order(h)?.is_some()),
        Ok((false, _)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn require_graph(g: &Hypergraph) -> Result<()> {
    if g.edges().iter().all(|e| e.len() == 2) {
        Ok(())
    } else {
        Err(Error::NotAGraph)
    }
}

/// Chordality by repeated removal of simplicial vertices.
pub fn is_chordal(g: &Hypergraph) -> Result<bool> {
    require_graph(g)?;
    let edges = g.edges();
    let mut y = g.vertices();
    while !y.is_empty() {
        match y.iter().find(|&x| admissible(edges, y, x, 2)) {
            Some(x) => y.remove(x),
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// An induced cycle of length at least four, found by brute force over vertex
/// subsets. Meant for cross-checking [`is_chordal`] on small graphs.
pub fn chordless_cycle(g: &Hypergraph) -> Result<Option<VertexSet>> {
    require_graph(g)?;
    let n = g.n();
    if n > 20 {
        return Err(Error::TooLarge { what: "vertex count", size: n, cap: 20 });
    }
    let edges = g.edges();
    for mask in 0u64..1 << n {
        let y = VertexSet::from_bits(mask);
        if y.len() < 4 {
            continue;
        }
        let inside: Vec<VertexSet> = edges.iter().copied().filter(|e| e.is_subset(y)).collect();
        if inside.len() != y.len() || !y.iter().all(|v| inside.iter().filter(|e| e.contains(v)).count() == 2) {
            continue;
        }
        // 2-regular: a cycle exactly when connected
        let start = y.first().unwrap();
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = inside
                .iter()
                .filter(|e| !e.is_disjoint(frontier))
                .fold(VertexSet::EMPTY, |acc, &e| acc.union(e))
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        if seen == y {
            return Ok(Some(y));
        }
    }
    Ok(None)
}
