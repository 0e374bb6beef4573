//! Proper chains and the edge metric they induce.
//!
//! A chain `(E_0, x_1, E_1, ..., x_l, E_l)` uses distinct edges and distinct
//! linking vertices with `x_k` in `E_{k-1} ∩ E_k`. It is proper when each step
//! keeps all but one vertex of the next edge: `|E_i ∩ E_{i+1}| = |E_{i+1}| - 1`.
//! The distance between two edges is the shortest length of a proper chain
//! joining them, or [`Distance::Infinite`] when none exists.
//!
//! Consecutive proper adjacency alone only gives a lower bound: the linking
//! vertices must also be distinct, so the search below tracks the links it has
//! used and backtracks over the admissible choices.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Uniformity, VertexSet};
use crate::mis::{self, EdgeMask};

/// Length of a shortest proper chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(l) => Some(l),
            Distance::Infinite => None,
        }
    }

    pub fn at_least(self, t: usize) -> bool {
        match self {
            Distance::Finite(l) => l >= t,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(l) => write!(f, "{l}"),
            Distance::Infinite => f.write_str("infinite"),
        }
    }
}

/// An explicit proper chain witnessing a distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    pub edges: Vec<VertexSet>,
    pub links: Vec<usize>,
}

impl ChainCertificate {
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Checks the chain and properness conditions against `h`.
    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(format!("chain certificate: {msg}")));
        if self.edges.len() != self.links.len() + 1 {
            return fail("edge and link counts disagree".into());
        }
        for (k, &e) in self.edges.iter().enumerate() {
            if !h.contains_edge(e) {
                return fail(format!("{e} is not an edge"));
            }
            if self.edges[..k].contains(&e) {
                return fail(format!("edge {e} repeated"));
            }
        }
        let mut seen = VertexSet::EMPTY;
        for (k, &x) in self.links.iter().enumerate() {
            if seen.contains(x) {
                return fail(format!("link {x} repeated"));
            }
            seen.insert(x);
            if !self.edges[k].contains(x) || !self.edges[k + 1].contains(x) {
                return fail(format!("link {x} does not join steps {k} and {}", k + 1));
            }
        }
        for w in self.edges.windows(2) {
            if w[0].intersection(w[1]).len() + 1 != w[1].len() {
                return fail(format!("step {} -> {} is not proper", w[0], w[1]));
            }
        }
        Ok(())
    }

    /// Checks the shape of a short chain in a properly-connected `d`-uniform
    /// hypergraph: each step swaps one original vertex of `E_0` for a vertex
    /// not seen before, so `E_i = {y_1..y_i, x_{i+1}..x_d}`.
    pub fn check_shortest_shape(&self, d: usize) -> Result<()> {
        let t = self.len();
        if t > d {
            return Ok(());
        }
        let start = self.edges[0];
        for i in 1..=t {
            let (prev, cur) = (self.edges[i - 1], self.edges[i]);
            let removed = prev.difference(cur);
            let added = cur.difference(prev);
            let earlier = self.edges[..i].iter().fold(VertexSet::EMPTY, |acc, &e| acc.union(e));
            if removed.len() != 1 || added.len() != 1 || !removed.is_subset(start) || !added.is_disjoint(earlier) {
                return Err(Error::Verification(format!("chain step {i} breaks the swap structure")));
            }
            if start.intersection(cur).len() != d - i {
                return Err(Error::Verification(format!("chain step {i} keeps the wrong number of start vertices")));
            }
        }
        Ok(())
    }
}

/// Proper-chain search over a fixed hypergraph.
///
/// Builds the directed "proper step" adjacency once and answers distance
/// queries by iterative deepening, pruned by breadth-first lower bounds.
pub struct ChainSearch<'a> {
    h: &'a Hypergraph,
    adj: Vec<Vec<usize>>,
}

impl<'a> ChainSearch<'a> {
    pub fn new(h: &'a Hypergraph) -> Self {
        let edges = h.edges();
        let adj = edges
            .iter()
            .map(|&a| {
                (0..edges.len())
                    .filter(|&j| {
                        let b = edges[j];
                        a != b && a.intersection(b).len() + 1 == b.len()
                    })
                    .collect()
            })
            .collect();
        ChainSearch { h, adj }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        self.h
    }

    /// Lower bounds on the remaining steps to `target`, ignoring link distinctness.
    fn bounds_to(&self, target: usize) -> Vec<usize> {
        let m = self.adj.len();
        let mut rev = vec![Vec::new(); m];
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &b in nbrs {
                rev[b].push(a);
            }
        }
        let mut dist = vec![usize::MAX; m];
        dist[target] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(b) = queue.pop_front() {
            for &a in &rev[b] {
                if dist[a] == usize::MAX {
                    dist[a] = dist[b] + 1;
                    queue.push_back(a);
                }
            }
        }
        dist
    }

    /// Shortest proper chain from edge index `from` to `to`, of length at most `limit`.
    pub fn shortest(&self, from: usize, to: usize, limit: Option<usize>) -> Option<ChainCertificate> {
        let edges = self.h.edges();
        if from == to {
            return Some(ChainCertificate { edges: vec![edges[from]], links: vec![] });
        }
        let bounds = self.bounds_to(to);
        if bounds[from] == usize::MAX {
            return None;
        }
        let max_len = limit.unwrap_or(edges.len() - 1).min(edges.len() - 1);
        let mut state = Dfs {
            search: self,
            target: to,
            bounds: &bounds,
            used: EdgeMask::default(),
            path: vec![from],
            links: Vec::new(),
            failed: HashMap::new(),
        };
        state.used.insert(from);
        for len in bounds[from]..=max_len {
            if state.run(from, VertexSet::EMPTY, len) {
                return Some(ChainCertificate {
                    edges: state.path.iter().map(|&i| edges[i]).collect(),
                    links: state.links,
                });
            }
        }
        None
    }

    /// Distance between edge indices; the larger edge is taken as the start.
    pub fn distance(&self, i: usize, j: usize) -> (Distance, Option<ChainCertificate>) {
        let edges = self.h.edges();
        let (from, to) = if edges[i].len() >= edges[j].len() { (i, j) } else { (j, i) };
        match self.shortest(from, to, None) {
            Some(c) => (Distance::Finite(c.len()), Some(c)),
            None => (Distance::Infinite, None),
        }
    }

    /// Whether a proper chain of length at most `bound` joins the two edges.
    pub fn within(&self, i: usize, j: usize, bound: usize) -> bool {
        let edges = self.h.edges();
        let (from, to) = if edges[i].len() >= edges[j].len() { (i, j) } else { (j, i) };
        self.shortest(from, to, Some(bound)).is_some()
    }
}

struct Dfs<'s, 'a> {
    search: &'s ChainSearch<'a>,
    target: usize,
    bounds: &'s [usize],
    used: EdgeMask,
    path: Vec<usize>,
    links: Vec<usize>,
    // (edge, used edges, used links) -> largest remaining budget known to fail
    failed: HashMap<(usize, EdgeMask, u64), usize>,
}

impl Dfs<'_, '_> {
    fn run(&mut self, cur: usize, used_links: VertexSet, budget: usize) -> bool {
        if cur == self.target {
            return true;
        }
        if self.bounds[cur] > budget {
            return false;
        }
        let key = (cur, self.used, used_links.bits());
        if self.failed.get(&key).is_some_and(|&b| b >= budget) {
            return false;
        }
        let edges = self.search.h.edges();
        for &next in &self.search.adj[cur] {
            if self.used.contains(next) || self.bounds[next] == usize::MAX || self.bounds[next] + 1 > budget {
                continue;
            }
            let choices = edges[cur].intersection(edges[next]).difference(used_links);
            for x in choices {
                self.used.insert(next);
                self.path.push(next);
                self.links.push(x);
                if self.run(next, used_links.with(x), budget - 1) {
                    return true;
                }
                self.links.pop();
                self.path.pop();
                self.used.remove(next);
            }
        }
        let entry = self.failed.entry(key).or_insert(0);
        *entry = (*entry).max(budget);
        false
    }
}

/// `dist_H(E, F)` with a witnessing chain when finite.
pub fn distance(h: &Hypergraph, e: VertexSet, f: VertexSet) -> Result<(Distance, Option<ChainCertificate>)> {
    let i = h.require_edge(e)?;
    let j = h.require_edge(f)?;
    Ok(ChainSearch::new(h).distance(i, j))
}

/// All pairwise distances, indexed by canonical edge position.
pub fn distance_matrix(h: &Hypergraph) -> Vec<Vec<Distance>> {
    let search = ChainSearch::new(h);
    let m = h.edge_count();
    let mut out = vec![vec![Distance::Finite(0); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let d = search.distance(i, j).0;
            out[i][j] = d;
            out[j][i] = d;
        }
    }
    out
}

fn uniform_or_empty(h: &Hypergraph) -> Result<Option<usize>> {
    match h.uniformity() {
        Uniformity::Uniform(d) => Ok(Some(d)),
        Uniformity::NoEdges => Ok(None),
        Uniformity::NonUniform => Err(Error::NotUniform),
    }
}

/// Checks `dist(E, F) = d - |E ∩ F|` for every intersecting pair.
///
/// Returns the first offending pair in canonical order on failure. An
/// edgeless hypergraph is vacuously properly-connected.
pub fn is_properly_connected(h: &Hypergraph) -> Result<(bool, Option<(VertexSet, VertexSet)>)> {
    let Some(d) = uniform_or_empty(h)? else {
        return Ok((true, None));
    };
    let search = ChainSearch::new(h);
    let edges = h.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let common = edges[i].intersection(edges[j]).len();
            if common == 0 {
                continue;
            }
            // Each proper step swaps one vertex, so no chain is shorter than d - common.
            if !search.within(i, j, d - common) {
                return Ok((false, Some((edges[i], edges[j]))));
            }
        }
    }
    Ok((true, None))
}

pub(crate) fn require_properly_connected(h: &Hypergraph) -> Result<usize> {
    let d = h.require_uniform()?;
    match is_properly_connected(h)? {
        (true, _) => Ok(d),
        (false, Some((a, b))) => Err(Error::NotProperlyConnected(a, b)),
        (false, None) => unreachable!(),
    }
}

/// Largest pairwise edge distance.
pub fn diameter(h: &Hypergraph) -> Result<Distance> {
    if h.is_edgeless() {
        return Err(Error::NoEdges);
    }
    let matrix = distance_matrix(h);
    Ok(matrix.iter().flatten().copied().max().unwrap_or(Distance::Finite(0)))
}

/// `N(E)`: the vertices that distance-one edges add to `E`.
pub fn neighbor_set(h: &Hypergraph, e: VertexSet) -> Result<VertexSet> {
    h.require_edge(e)?;
    let d = h.require_uniform()?;
    Ok(h.edges()
        .iter()
        .filter(|f| f.intersection(e).len() + 1 == d)
        .fold(VertexSet::EMPTY, |acc, f| acc.union(f.difference(e))))
}

/// `H'`: the edges at distance at least `d + 1` from `E` (infinite included).
pub fn far_subhypergraph(h: &Hypergraph, e: VertexSet) -> Result<Hypergraph> {
    let i = h.require_edge(e)?;
    let d = h.require_uniform()?;
    let search = ChainSearch::new(h);
    let edges = h.edges();
    let far: Vec<bool> = (0..edges.len()).map(|j| j != i && !search.within(i, j, d)).collect();
    Ok(h.filter_edges(|f| h.index_of(f).is_some_and(|j| far[j])))
}

/// Conflict graph for `t`-disjointness: edges joined when `dist <= t - 1`.
pub fn disjointness_conflicts(h: &Hypergraph, t: usize) -> Result<Vec<EdgeMask>> {
    uniform_or_empty(h)?;
    let m = h.edge_count();
    if m > EdgeMask::CAPACITY {
        return Err(Error::TooLarge { what: "edge count", size: m, cap: EdgeMask::CAPACITY });
    }
    let search = ChainSearch::new(h);
    let mut adj = vec![EdgeMask::default(); m];
    for i in 0..m {
        for j in i + 1..m {
            if t > 0 && search.within(i, j, t - 1) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    Ok(adj)
}

/// Largest set of pairwise `t`-disjoint edges, with a witness.
pub fn max_pairwise_t_disjoint(h: &Hypergraph, t: usize) -> Result<(usize, Vec<VertexSet>)> {
    let adj = disjointness_conflicts(h, t)?;
    let best = mis::maximum_independent_set(&adj);
    Ok((best.len(), best.iter().map(|k| h.edges()[k]).collect()))
}

/// `counts[i]`: number of `i`-element pairwise `t`-disjoint edge sets.
pub fn count_pairwise_t_disjoint(h: &Hypergraph, t: usize) -> Result<Vec<u64>> {
    let adj = disjointness_conflicts(h, t)?;
    Ok(mis::count_independent_sets(&adj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn c5() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]).unwrap()
    }

    fn p5() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1], [1, 2], [2, 3], [3, 4]]).unwrap()
    }

    // x1..x8 -> 0..7
    fn four_uniform() -> Hypergraph {
        Hypergraph::from_edges(8, [[0, 1, 2, 3], [0, 1, 2, 6], [0, 1, 5, 6], [0, 4, 5, 6], [0, 4, 5, 7]]).unwrap()
    }

    fn six_edge() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1, 2], [0, 1, 3], [0, 2, 4], [1, 2, 3], [1, 2, 4], [2, 3, 4]]).unwrap()
    }

    /// Enumerates every proper chain (distinct edges, distinct links) and
    /// returns the shortest length, along with the shortest length among
    /// chains where no proper subsequence is also a proper chain.
    fn brute_force_lengths(h: &Hypergraph, from: usize, to: usize) -> (Option<usize>, Option<usize>) {
        fn is_chain(edges: &[VertexSet], seq: &[usize]) -> bool {
            let es: Vec<VertexSet> = seq.iter().map(|&i| edges[i]).collect();
            for w in es.windows(2) {
                if w[0].intersection(w[1]).len() + 1 != w[1].len() {
                    return false;
                }
            }
            // distinct representatives for the consecutive intersections
            fn sdr(sets: &[VertexSet], used: VertexSet) -> bool {
                match sets.split_first() {
                    None => true,
                    Some((s, rest)) => s.difference(used).iter().any(|x| sdr(rest, used.with(x))),
                }
            }
            let inters: Vec<VertexSet> = es.windows(2).map(|w| w[0].intersection(w[1])).collect();
            sdr(&inters, VertexSet::EMPTY)
        }
        fn extend(edges: &[VertexSet], to: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let last = *seq.last().unwrap();
            if last == to {
                if is_chain(edges, seq) {
                    out.push(seq.clone());
                }
                return;
            }
            for k in 0..edges.len() {
                if !seq.contains(&k) {
                    seq.push(k);
                    extend(edges, to, seq, out);
                    seq.pop();
                }
            }
        }
        let edges = h.edges();
        let mut all = Vec::new();
        extend(edges, to, &mut vec![from], &mut all);
        let shortest = all.iter().map(|s| s.len() - 1).min();
        let irredundant = all
            .iter()
            .filter(|s| {
                // proper subsequences keeping both ends
                let inner = s.len() - 2;
                (0..(1u32 << inner) - 1).all(|mask| {
                    let mut sub = vec![s[0]];
                    for k in 0..inner {
                        if mask & (1 << k) != 0 {
                            sub.push(s[k + 1]);
                        }
                    }
                    sub.push(*s.last().unwrap());
                    !is_chain(edges, &sub)
                })
            })
            .map(|s| s.len() - 1)
            .min();
        (shortest, irredundant)
    }

    #[test]
    fn four_uniform_distance() {
        let h = four_uniform();
        let (d, cert) = distance(&h, set(&[0, 1, 2, 3]), set(&[0, 4, 5, 7])).unwrap();
        assert_eq!(d, Distance::Finite(4));
        let cert = cert.unwrap();
        cert.validate(&h).unwrap();
        assert_eq!(cert.len(), 4);
        assert_eq!(cert.edges.len(), 5);
        let (pc, witness) = is_properly_connected(&h).unwrap();
        assert!(!pc);
        assert_eq!(witness, Some((set(&[0, 1, 2, 3]), set(&[0, 4, 5, 7]))));
    }

    #[test]
    fn trivial_and_small_distances() {
        let h = c5();
        assert_eq!(distance(&h, set(&[0, 1]), set(&[0, 1])).unwrap().0, Distance::Finite(0));
        let (d, cert) = distance(&h, set(&[0, 1]), set(&[2, 3])).unwrap();
        assert_eq!(d, Distance::Finite(2));
        assert_eq!(cert.unwrap().edges[1..2], [set(&[1, 2])]);
        assert!(matches!(distance(&h, set(&[0, 2]), set(&[0, 1])), Err(Error::NoSuchEdge(_))));
        let two = Hypergraph::from_edges(4, [[0, 1], [2, 3]]).unwrap();
        assert_eq!(distance(&two, set(&[0, 1]), set(&[2, 3])).unwrap().0, Distance::Infinite);
    }

    #[test]
    fn proper_connectivity() {
        assert!(is_properly_connected(&c5()).unwrap().0);
        assert!(is_properly_connected(&six_edge()).unwrap().0);
        let rest = six_edge().remove_edge(set(&[0, 1, 2])).unwrap();
        assert!(!is_properly_connected(&rest).unwrap().0);
        let mixed = Hypergraph::from_edges(5, [vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert!(matches!(is_properly_connected(&mixed), Err(Error::NotUniform)));
    }

    #[test]
    fn diameters() {
        let single = Hypergraph::from_edges(3, [[0, 1, 2]]).unwrap();
        assert_eq!(diameter(&single).unwrap(), Distance::Finite(0));
        assert_eq!(diameter(&c5()).unwrap(), Distance::Finite(2));
        let k35 = Hypergraph::complete(5, 3).unwrap();
        let h = k35.filter_edges(|e| e != set(&[0, 1, 2]) && e != set(&[2, 3, 4]));
        assert!(diameter(&h).unwrap() <= Distance::Finite(3));
        assert!(matches!(diameter(&Hypergraph::edgeless(2)), Err(Error::NoEdges)));
    }

    #[test]
    fn neighbor_sets() {
        assert_eq!(neighbor_set(&six_edge(), set(&[0, 1, 2])).unwrap(), set(&[3, 4]));
        let g = Hypergraph::from_edges(6, [[0, 1], [1, 2], [0, 3], [3, 4], [2, 5]]).unwrap();
        let e = set(&[0, 1]);
        let expected = g.neighborhood(0).unwrap().union(g.neighborhood(1).unwrap()).difference(e);
        assert_eq!(neighbor_set(&g, e).unwrap(), expected);
        let iso = Hypergraph::from_edges(4, [[0, 1], [2, 3]]).unwrap();
        assert_eq!(neighbor_set(&iso, set(&[0, 1])).unwrap(), VertexSet::EMPTY);
    }

    #[test]
    fn far_parts() {
        let single = Hypergraph::from_edges(2, [[0, 1]]).unwrap();
        assert!(far_subhypergraph(&single, set(&[0, 1])).unwrap().is_edgeless());
        assert!(far_subhypergraph(&c5(), set(&[0, 1])).unwrap().is_edgeless());
        assert_eq!(far_subhypergraph(&p5(), set(&[0, 1])).unwrap().edges(), &[set(&[3, 4])]);
    }

    #[test]
    fn t_disjoint_sets() {
        assert_eq!(max_pairwise_t_disjoint(&c5(), 3).unwrap().0, 1);
        let (c, w) = max_pairwise_t_disjoint(&p5(), 3).unwrap();
        assert_eq!(c, 2);
        assert_eq!(w, vec![set(&[0, 1]), set(&[3, 4])]);
        let single = Hypergraph::from_edges(3, [[0, 1, 2]]).unwrap();
        for t in 0..5 {
            assert_eq!(max_pairwise_t_disjoint(&single, t).unwrap().0, 1);
        }
        assert_eq!(count_pairwise_t_disjoint(&p5(), 3).unwrap(), vec![1, 4, 1]);
    }

    #[test]
    fn shortest_equals_shortest_irredundant() {
        for h in [c5(), p5(), four_uniform(), six_edge(), six_edge().remove_edge(set(&[0, 1, 2])).unwrap()] {
            let search = ChainSearch::new(&h);
            for i in 0..h.edge_count() {
                for j in 0..h.edge_count() {
                    if i == j {
                        continue;
                    }
                    let (shortest, irredundant) = brute_force_lengths(&h, i, j);
                    assert_eq!(shortest, irredundant);
                    let found = search.shortest(i, j, None).map(|c| c.len());
                    assert_eq!(found, shortest, "{h:?} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn certificates_have_swap_shape() {
        let h = six_edge();
        let search = ChainSearch::new(&h);
        for i in 0..h.edge_count() {
            for j in 0..h.edge_count() {
                if let Some(c) = search.shortest(i, j, None) {
                    c.validate(&h).unwrap();
                    c.check_shortest_shape(3).unwrap();
                }
            }
        }
    }
}
