//! Finite simple hypergraphs.
//!
//! A [`Hypergraph`] is a vertex count together with a list of pairwise
//! incomparable edges, each of size at least two. Edges are kept in a
//! canonical order (cardinality first, then lexicographic on the sorted vertex
//! indices) so that iteration, serialization and recursion traces are
//! reproducible. Vertices are never dropped: removing a vertex leaves it
//! isolated.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count; vertex sets are stored as 64-bit masks.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Panics if a vertex is `>= 64`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut bits = 0u64;
        for v in vertices {
            assert!(v < MAX_VERTICES, "vertex {v} exceeds the 64-vertex limit");
            bits |= 1 << v;
        }
        VertexSet(bits)
    }

    /// The full set `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        Self::from_vertices([v])
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < MAX_VERTICES {
            self.0 &= !(1 << v);
        }
    }

    pub fn with(self, v: usize) -> Self {
        let mut s = self;
        s.insert(v);
        s
    }

    pub fn without(self, v: usize) -> Self {
        let mut s = self;
        s.remove(v);
        s
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member plus one, or zero for the empty set.
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical order: cardinality, then lexicographic on sorted members.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_vertices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Iterator over the members of a [`VertexSet`] in increasing order.
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Common edge cardinality of a hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniformity {
    /// Every edge has exactly this many vertices.
    Uniform(usize),
    /// Edges of at least two different sizes.
    NonUniform,
    /// No edges at all; callers that need a degree must supply one.
    NoEdges,
}

impl Uniformity {
    pub fn degree(self) -> Option<usize> {
        match self {
            Uniformity::Uniform(d) => Some(d),
            _ => None,
        }
    }
}

/// A finite simple hypergraph on the vertices `0..n`.
#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    labels: Option<Vec<String>>,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Validates the edge list and puts it in canonical order.
    ///
    /// Duplicate edges are reported as containment.
    pub fn new(n: usize, edges: Vec<VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { what: "vertex count", size: n, cap: MAX_VERTICES });
        }
        let full = VertexSet::full(n);
        for &e in &edges {
            if !e.is_subset(full) {
                let vertex = e.difference(full).first().unwrap_or(n);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            if e.len() < 2 {
                return Err(Error::LoopEdge(e));
            }
        }
        for (i, &a) in edges.iter().enumerate() {
            for (j, &b) in edges.iter().enumerate() {
                if i != j && a.is_subset(b) && (a != b || i > j) {
                    return Err(Error::ContainedEdge { inner: a, outer: b });
                }
            }
        }
        let mut edges = edges;
        edges.sort_by(VertexSet::canonical_cmp);
        Ok(Hypergraph { n, labels: None, edges })
    }

    /// Builds from edges given as vertex lists.
    pub fn from_edges<E, I>(n: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut sets = Vec::new();
        for e in edges {
            let mut set = VertexSet::EMPTY;
            for v in e {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                set.insert(v);
            }
            sets.push(set);
        }
        Self::new(n, sets)
    }

    /// The hypergraph with `n` isolated vertices.
    pub fn edgeless(n: usize) -> Self {
        Hypergraph { n, labels: None, edges: Vec::new() }
    }

    /// Attaches display labels; panics if the count is not `n`.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of a vertex; defaults to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Renders an edge using vertex labels, e.g. `abe`, `x1x2x5` or `10 11 12`.
    ///
    /// Labels are run together only when that stays unambiguous: all single
    /// characters, or all one letter followed by digits.
    pub fn edge_label(&self, e: VertexSet) -> String {
        let parts: Vec<String> = e.iter().map(|v| self.label(v)).collect();
        let indexed = |p: &String| {
            let mut chars = p.chars();
            chars.next().is_some_and(|c| c.is_alphabetic()) && chars.as_str().chars().all(|c| c.is_ascii_digit())
        };
        if parts.iter().all(|p| p.chars().count() == 1) || parts.iter().all(indexed) {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Union of all edges.
    pub fn covered_vertices(&self) -> VertexSet {
        self.edges.iter().fold(VertexSet::EMPTY, |acc, &e| acc.union(e))
    }

    pub fn contains_edge(&self, e: VertexSet) -> bool {
        self.index_of(e).is_some()
    }

    pub fn index_of(&self, e: VertexSet) -> Option<usize> {
        self.edges.binary_search_by(|x| x.canonical_cmp(&e)).ok()
    }

    pub(crate) fn require_edge(&self, e: VertexSet) -> Result<usize> {
        self.index_of(e).ok_or(Error::NoSuchEdge(e))
    }

    pub(crate) fn require_vertex(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: x, n: self.n })
        }
    }

    // Sub-hypergraphs of a simple hypergraph stay simple and sorted.
    fn sub(&self, edges: Vec<VertexSet>) -> Self {
        Hypergraph { n: self.n, labels: self.labels.clone(), edges }
    }

    pub fn uniformity(&self) -> Uniformity {
        match self.edges.first() {
            None => Uniformity::NoEdges,
            Some(first) => {
                let d = first.len();
                if self.edges.iter().all(|e| e.len() == d) {
                    Uniformity::Uniform(d)
                } else {
                    Uniformity::NonUniform
                }
            }
        }
    }

    /// `d` for a `d`-uniform hypergraph; `NoEdges` or `NotUniform` otherwise.
    pub fn require_uniform(&self) -> Result<usize> {
        match self.uniformity() {
            Uniformity::Uniform(d) => Ok(d),
            Uniformity::NoEdges => Err(Error::NoEdges),
            Uniformity::NonUniform => Err(Error::NotUniform),
        }
    }

    /// `H \ E`.
    pub fn remove_edge(&self, e: VertexSet) -> Result<Self> {
        let idx = self.require_edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(self.sub(edges))
    }

    /// `H \ {x}`: drops every edge through `x`, keeping `x` as an isolated vertex.
    pub fn remove_vertex(&self, x: usize) -> Result<Self> {
        self.require_vertex(x)?;
        Ok(self.sub(self.edges.iter().copied().filter(|e| !e.contains(x)).collect()))
    }

    /// Removes every edge meeting `set`.
    pub fn remove_vertices(&self, set: VertexSet) -> Self {
        self.sub(self.edges.iter().copied().filter(|e| e.is_disjoint(set)).collect())
    }

    /// `H_Y`: the edges contained in `y`. Vertices outside `y` stay isolated.
    pub fn induced(&self, y: VertexSet) -> Self {
        self.sub(self.edges.iter().copied().filter(|e| e.is_subset(y)).collect())
    }

    /// Keeps the edges selected by `keep`.
    pub fn filter_edges<F: FnMut(VertexSet) -> bool>(&self, mut keep: F) -> Self {
        self.sub(self.edges.iter().copied().filter(|&e| keep(e)).collect())
    }

    /// `N(x)`: vertices other than `x` sharing an edge with it.
    pub fn neighborhood(&self, x: usize) -> Result<VertexSet> {
        self.require_vertex(x)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.contains(x))
            .fold(VertexSet::EMPTY, |acc, &e| acc.union(e))
            .without(x))
    }

    /// `H^c`: every `d`-subset of the vertex set that is not an edge.
    pub fn complement(&self, d: usize) -> Result<Self> {
        match self.uniformity() {
            Uniformity::Uniform(k) if k == d => {}
            Uniformity::NoEdges => {}
            _ => return Err(Error::NotUniform),
        }
        if d < 2 {
            return Err(Error::LoopEdge(VertexSet::EMPTY));
        }
        let edges = k_subsets(VertexSet::full(self.n), d)
            .into_iter()
            .filter(|s| !self.contains_edge(*s))
            .collect();
        Hypergraph::new(self.n, edges).map(|h| match &self.labels {
            Some(l) => h.with_labels(l.clone()),
            None => h,
        })
    }

    /// Whether `H_Y` contains every `d`-subset of `y`. Vacuously true when `|y| < d`.
    pub fn is_d_complete(&self, y: VertexSet, d: usize) -> bool {
        let size = y.len();
        if size < d {
            return true;
        }
        let inside = self.edges.iter().filter(|e| e.len() == d && e.is_subset(y)).count();
        inside as u128 == binomial(size as u64, d as u64)
    }

    /// The `d`-complete hypergraph on `n` vertices.
    pub fn complete(n: usize, d: usize) -> Result<Self> {
        Hypergraph::new(n, k_subsets(VertexSet::full(n), d))
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges == other.edges
            && (self.labels == other.labels || (0..self.n).all(|v| self.label(v) == other.label(v)))
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Hypergraph(n=")?;
        write!(f, "{}; ", self.n)?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.edge_label(*e))?;
        }
        f.write_str(")")
    }
}

/// All `k`-element subsets of `set`, in canonical order.
pub fn k_subsets(set: VertexSet, k: usize) -> Vec<VertexSet> {
    let members = set.to_vec();
    let mut out = Vec::new();
    if k > members.len() {
        return out;
    }
    let m = members.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| members[i]).collect());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
