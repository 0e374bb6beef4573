//! Seeded instance streams for property testing.
//!
//! Every random stream is driven by a [`ChaCha8Rng`] seeded from
//! [`GenSpec::seed`], so the same spec always yields the same sequence.
//!
//! ```
//! use edge_betti::generators::{GenSpec, Kind};
//!
//! let spec = GenSpec::new(Kind::Chordal, 7).seed(3);
//! let a: Vec<_> = spec.stream().unwrap().take(5).collect();
//! let b: Vec<_> = spec.stream().unwrap().take(5).collect();
//! assert_eq!(a, b);
//! ```

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{k_subsets, Hypergraph, VertexSet, MAX_VERTICES};
use crate::metric;
use crate::structure;

pub const DEFAULT_ATTEMPTS: usize = 10_000;
/// Largest `n` for exhaustive graph enumeration.
pub const EXHAUSTIVE_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    /// Each pair is an edge independently with probability `density`.
    Graph,
    /// Vertices added one at a time, each joined to a random clique.
    Chordal,
    /// Each new edge keeps `d - 1` vertices of an old edge and adds a fresh one.
    VTree(usize),
    /// Random `d`-uniform hypergraphs kept only when properly-connected.
    PcUniform(usize),
    /// Every labeled graph on exactly `n` vertices, in bitmask order.
    ExhaustiveGraphs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub kind: Kind,
    /// Vertex counts are drawn uniformly from this range.
    pub n: RangeInclusive<usize>,
    pub density: f64,
    pub seed: u64,
    /// Instances with more edges are redrawn.
    pub max_edges: Option<usize>,
    /// Draws allowed per accepted instance.
    pub attempts: usize,
}

impl GenSpec {
    pub fn new(kind: Kind, n: usize) -> Self {
        GenSpec { kind, n: n..=n, density: 0.5, seed: 0, max_edges: None, attempts: DEFAULT_ATTEMPTS }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn vertices(mut self, n: RangeInclusive<usize>) -> Self {
        self.n = n;
        self
    }

    pub fn density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn max_edges(mut self, cap: usize) -> Self {
        self.max_edges = Some(cap);
        self
    }

    pub fn attempts(mut self, attempts: usize) -> Self {
        self.attempts = attempts;
        self
    }

    pub fn stream(&self) -> Result<Generator> {
        let (lo, hi) = (*self.n.start(), *self.n.end());
        if lo > hi {
            return Err(Error::CapExceeded(format!("empty vertex range {lo}..={hi}")));
        }
        if hi > MAX_VERTICES {
            return Err(Error::TooLarge { what: "vertex count", size: hi, cap: MAX_VERTICES });
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::CapExceeded(format!("density {} outside [0, 1]", self.density)));
        }
        match self.kind {
            Kind::ExhaustiveGraphs => {
                if lo != hi {
                    return Err(Error::CapExceeded("exhaustive enumeration needs a single n".into()));
                }
                if hi > EXHAUSTIVE_CAP {
                    return Err(Error::TooLarge { what: "exhaustive n", size: hi, cap: EXHAUSTIVE_CAP });
                }
            }
            Kind::VTree(d) | Kind::PcUniform(d) => {
                if d < 2 {
                    return Err(Error::CapExceeded(format!("uniformity {d} below 2")));
                }
                if lo < d {
                    return Err(Error::CapExceeded(format!("n = {lo} is below the uniformity {d}")));
                }
            }
            Kind::Graph | Kind::Chordal => {}
        }
        Ok(Generator {
            spec: self.clone(),
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            next_mask: 0,
            stats: Stats::default(),
        })
    }
}

/// Draw counts for a stream.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub attempts: u64,
    pub accepted: u64,
    /// v-trees failing the properly-connected or triangulated check.
    pub failed_checks: u64,
}

impl Stats {
    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            1.0
        } else {
            self.accepted as f64 / self.attempts as f64
        }
    }
}

/// Instance stream. Random kinds are endless; exhaustive enumeration ends.
///
/// An item is `Err(CapExceeded)` when `attempts` draws in a row were rejected.
#[derive(Debug, Clone)]
pub struct Generator {
    spec: GenSpec,
    rng: ChaCha8Rng,
    next_mask: u64,
    stats: Stats,
}

impl Generator {
    pub fn stats(&self) -> Stats {
        self.stats
    }

    fn draw_n(&mut self) -> usize {
        self.rng.gen_range(self.spec.n.clone())
    }

    fn draw(&mut self) -> Result<Option<Hypergraph>> {
        let n = self.draw_n();
        let p = self.spec.density;
        let h = match self.spec.kind {
            Kind::Graph => {
                let edges: Vec<VertexSet> =
                    k_subsets(VertexSet::full(n), 2).into_iter().filter(|_| self.rng.gen_bool(p)).collect();
                Hypergraph::new(n, edges)?
            }
            Kind::Chordal => self.chordal(n)?,
            Kind::VTree(d) => {
                let h = self.v_tree(n, d)?;
                let ok = metric::is_properly_connected(&h)?.0 && structure::is_triangulated(&h)?;
                if !ok {
                    self.stats.failed_checks += 1;
                    return Ok(None);
                }
                h
            }
            Kind::PcUniform(d) => {
                let edges: Vec<VertexSet> =
                    k_subsets(VertexSet::full(n), d).into_iter().filter(|_| self.rng.gen_bool(p)).collect();
                let h = Hypergraph::new(n, edges)?;
                if h.is_edgeless() || !metric::is_properly_connected(&h)?.0 {
                    return Ok(None);
                }
                h
            }
            Kind::ExhaustiveGraphs => unreachable!(),
        };
        Ok(Some(h))
    }

    fn chordal(&mut self, n: usize) -> Result<Hypergraph> {
        let mut adjacency = vec![VertexSet::default(); n];
        let mut edges = Vec::new();
        for v in 0..n {
            let mut order: Vec<usize> = (0..v).collect();
            order.shuffle(&mut self.rng);
            let mut clique = VertexSet::default();
            for u in order {
                if clique.is_subset(adjacency[u]) && self.rng.gen_bool(self.spec.density) {
                    clique.insert(u);
                }
            }
            for u in clique {
                adjacency[u].insert(v);
                adjacency[v].insert(u);
                edges.push(VertexSet::from_vertices([u, v]));
            }
        }
        let h = Hypergraph::new(n, edges)?;
        debug_assert!(structure::is_chordal(&h)?);
        Ok(h)
    }

    fn v_tree(&mut self, n: usize, d: usize) -> Result<Hypergraph> {
        let mut edges = vec![VertexSet::full(d)];
        for fresh in d..n {
            let old = edges[self.rng.gen_range(0..edges.len())];
            let drop = old.to_vec()[self.rng.gen_range(0..d)];
            edges.push(old.without(drop).with(fresh));
        }
        Hypergraph::new(n, edges)
    }

    fn next_exhaustive(&mut self) -> Option<Hypergraph> {
        let n = *self.spec.n.start();
        let pairs = k_subsets(VertexSet::full(n), 2);
        if self.next_mask >> pairs.len() != 0 {
            return None;
        }
        let mask = self.next_mask;
        self.next_mask += 1;
        let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
        self.stats.attempts += 1;
        self.stats.accepted += 1;
        Some(Hypergraph::new(n, edges).expect("pairs form a simple graph"))
    }
}

impl Iterator for Generator {
    type Item = Result<Hypergraph>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.spec.kind == Kind::ExhaustiveGraphs {
            return self.next_exhaustive().map(Ok);
        }
        for _ in 0..self.spec.attempts {
            self.stats.attempts += 1;
            match self.draw() {
                Err(e) => return Some(Err(e)),
                Ok(Some(h)) if self.spec.max_edges.map_or(true, |cap| h.edge_count() <= cap) => {
                    self.stats.accepted += 1;
                    return Some(Ok(h));
                }
                Ok(_) => {}
            }
        }
        Some(Err(Error::CapExceeded(format!(
            "{} draws without an acceptable {:?} instance (acceptance rate {:.4})",
            self.spec.attempts,
            self.spec.kind,
            self.stats.acceptance_rate()
        ))))
    }
}

/// The first `count` instances of `spec`, failing on the first rejected run.
pub fn sample(spec: &GenSpec, count: usize) -> Result<Vec<Hypergraph>> {
    spec.stream()?.take(count).collect()
}
