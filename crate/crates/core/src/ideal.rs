//! Squarefree monomial ideals.
//!
//! A squarefree monomial is identified with its support. An ideal is stored by
//! its minimal generators in canonical order; the zero ideal has no
//! generators and the unit ideal is the single generator with empty support.

use std::fmt;

use crate::error::Result;
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::metric;
use crate::mis::{self, EdgeMask};

/// A squarefree monomial `x^S`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub VertexSet);

impl Monomial {
    pub const ONE: Monomial = Monomial(VertexSet::EMPTY);

    pub fn support(self) -> VertexSet {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.len()
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.0.is_subset(other.0)
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial(self.0.union(other.0))
    }

    /// Renders with vertex labels from `h`, e.g. `abe`.
    pub fn display_with(self, h: &Hypergraph) -> String {
        if self.0.is_empty() {
            "1".into()
        } else {
            h.edge_label(self.0)
        }
    }
}

impl From<VertexSet> for Monomial {
    fn from(s: VertexSet) -> Self {
        Monomial(s)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for v in self.0 {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A squarefree monomial ideal given by its minimal generators.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero() -> Self {
        MonomialIdeal { gens: Vec::new() }
    }

    pub fn unit() -> Self {
        MonomialIdeal { gens: vec![Monomial::ONE] }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal { gens: vec![m] }
    }

    /// Keeps the divisibility-minimal generators, deduplicated, in canonical order.
    pub fn minimalize<I: IntoIterator<Item = Monomial>>(gens: I) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        all.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
        for m in all {
            // canonical order lists every proper divisor before its multiples
            if !kept.iter().any(|k| k.divides(m)) {
                kept.push(m);
            }
        }
        MonomialIdeal { gens: kept }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&Monomial::ONE)
    }

    /// Union of the generator supports.
    pub fn support(&self) -> VertexSet {
        self.gens.iter().fold(VertexSet::EMPTY, |acc, m| acc.union(m.0))
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Ideal containment `self ⊆ other`.
    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|&g| other.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::minimalize(self.gens.iter().chain(&other.gens).copied())
    }

    /// Renders as `(abde, abce)` using labels from `h`.
    pub fn display_with(&self, h: &Hypergraph) -> String {
        let parts: Vec<String> = self.gens.iter().map(|m| m.display_with(h)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `I(H)`, generated by the edge monomials.
pub fn edge_ideal(h: &Hypergraph) -> MonomialIdeal {
    // edges are incomparable and already canonical
    MonomialIdeal { gens: h.edges().iter().map(|&e| Monomial(e)).collect() }
}

/// `(m) ∩ I`, generated by the lcms of `m` with the generators of `I`.
pub fn intersect_principal(m: Monomial, ideal: &MonomialIdeal) -> MonomialIdeal {
    MonomialIdeal::minimalize(ideal.gens().iter().map(|&g| g.lcm(m)))
}

/// The pieces of `(x^E) ∩ I(H∖E)` for a properly-connected `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionDecomposition {
    pub neighbors: VertexSet,
    pub far: Hypergraph,
    pub ideal: MonomialIdeal,
}

/// `(x^E) ∩ I(H∖E) = x^E ((z_1, ..., z_t) + I(H'))`.
///
/// With `verify` set, the right-hand side is compared against the direct
/// intersection.
pub fn intersection_decomposition(h: &Hypergraph, e: VertexSet, verify: bool) -> Result<IntersectionDecomposition> {
    h.require_edge(e)?;
    metric::require_properly_connected(h)?;
    let neighbors = metric::neighbor_set(h, e)?;
    let far = metric::far_subhypergraph(h, e)?;
    let inner = MonomialIdeal::minimalize(neighbors.iter().map(|z| Monomial(VertexSet::singleton(z)))).sum(&edge_ideal(&far));
    // far edges are disjoint from E, so these lcms are products
    let ideal = intersect_principal(Monomial(e), &inner);
    if verify {
        let direct = intersect_principal(Monomial(e), &edge_ideal(&h.remove_edge(e)?));
        if direct != ideal {
            return Err(crate::Error::Verification(format!(
                "intersection of {e} with the remaining edges is {direct}, decomposition gives {ideal}"
            )));
        }
    }
    Ok(IntersectionDecomposition { neighbors, far, ideal })
}

/// Minimal transversals of a family of supports.
fn minimal_transversals(family: &[VertexSet]) -> Vec<VertexSet> {
    let mut current = vec![VertexSet::EMPTY];
    for &g in family {
        let mut next: Vec<VertexSet> = Vec::with_capacity(current.len() * 2);
        for &t in &current {
            if !t.is_disjoint(g) {
                next.push(t);
            } else {
                next.extend(g.iter().map(|v| t.with(v)));
            }
        }
        current = MonomialIdeal::minimalize(next.into_iter().map(Monomial)).gens.into_iter().map(|m| m.0).collect();
    }
    current
}

/// `I^∨`, generated by the minimal transversals of the generator supports.
pub fn alexander_dual(ideal: &MonomialIdeal) -> MonomialIdeal {
    let family: Vec<VertexSet> = ideal.gens().iter().map(|m| m.0).collect();
    MonomialIdeal::minimalize(minimal_transversals(&family).into_iter().map(Monomial))
}

/// All inclusion-minimal vertex covers, in canonical order.
pub fn min_vertex_covers(h: &Hypergraph) -> Vec<VertexSet> {
    alexander_dual(&edge_ideal(h)).gens().iter().map(|m| m.0).collect()
}

/// Smallest generator degree of the Alexander dual. Zero for the zero ideal.
pub fn height(ideal: &MonomialIdeal) -> usize {
    alexander_dual(ideal).gens().iter().map(|m| m.degree()).min().unwrap_or(0)
}

/// Whether all minimal vertex covers have the same size.
pub fn is_unmixed(h: &Hypergraph) -> bool {
    let covers = min_vertex_covers(h);
    covers.windows(2).all(|w| w[0].len() == w[1].len())
}

/// `α'(H)`: the largest number of pairwise disjoint edges.
pub fn matching_number(h: &Hypergraph) -> Result<usize> {
    Ok(maximum_matching(h)?.len())
}

/// A maximum set of pairwise disjoint edges.
pub fn maximum_matching(h: &Hypergraph) -> Result<Vec<VertexSet>> {
    let m = h.edge_count();
    if m > EdgeMask::CAPACITY {
        return Err(crate::Error::TooLarge { what: "edge count", size: m, cap: EdgeMask::CAPACITY });
    }
    let edges = h.edges();
    let adj: Vec<EdgeMask> = (0..m)
        .map(|i| {
            let mut mask = EdgeMask::default();
            for j in 0..m {
                if i != j && !edges[i].is_disjoint(edges[j]) {
                    mask.insert(j);
                }
            }
            mask
        })
        .collect();
    Ok(mis::maximum_independent_set(&adj).iter().map(|k| edges[k]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn mono(v: &[usize]) -> Monomial {
        Monomial(set(v))
    }

    fn c5() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]).unwrap()
    }

    // a b c d e -> 0 1 2 3 4
    fn no_split() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1, 4], [0, 3, 4], [1, 2, 4], [2, 3, 4]]).unwrap()
    }

    fn six_edge() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1, 2], [0, 1, 3], [0, 2, 4], [1, 2, 3], [1, 2, 4], [2, 3, 4]]).unwrap()
    }

    fn p5() -> Hypergraph {
        Hypergraph::from_edges(5, [[0, 1], [1, 2], [2, 3], [3, 4]]).unwrap()
    }

    fn brute_covers(h: &Hypergraph) -> Vec<VertexSet> {
        let n = h.n();
        let covers: Vec<VertexSet> = (0u64..1 << n)
            .map(VertexSet::from_bits)
            .filter(|c| h.edges().iter().all(|e| !e.is_disjoint(*c)))
            .collect();
        let mut minimal: Vec<VertexSet> =
            covers.iter().copied().filter(|c| !covers.iter().any(|d| d != c && d.is_subset(*c))).collect();
        minimal.sort_by(|a, b| a.canonical_cmp(b));
        minimal
    }

    #[test]
    fn edge_ideals() {
        assert_eq!(edge_ideal(&c5()).len(), 5);
        assert_eq!(edge_ideal(&no_split()).to_string(), "(x0x1x4, x0x3x4, x1x2x4, x2x3x4)");
        assert!(edge_ideal(&Hypergraph::edgeless(3)).is_zero());
    }

    #[test]
    fn minimalize_cases() {
        let abde = mono(&[0, 1, 3, 4]);
        let abce = mono(&[0, 1, 2, 4]);
        let i = MonomialIdeal::minimalize([abde, abce, mono(&[0, 1, 2, 3, 4])]);
        assert_eq!(i.gens(), &[abce, abde]);
        assert_eq!(MonomialIdeal::minimalize([mono(&[0, 1]), mono(&[0, 1])]).len(), 1);
    }

    #[test]
    fn principal_intersections() {
        let h = no_split();
        let abe = mono(&[0, 1, 4]);
        let rest = edge_ideal(&h.remove_edge(abe.0).unwrap());
        assert_eq!(intersect_principal(abe, &rest), MonomialIdeal::minimalize([mono(&[0, 1, 3, 4]), mono(&[0, 1, 2, 4])]));
        let without_a = edge_ideal(&h.remove_vertex(0).unwrap());
        assert_eq!(intersect_principal(abe, &without_a).gens(), &[mono(&[0, 1, 2, 4])]);
        assert!(intersect_principal(abe, &MonomialIdeal::zero()).is_zero());
    }

    #[test]
    fn decompositions() {
        let d = intersection_decomposition(&six_edge(), set(&[0, 1, 2]), true).unwrap();
        assert_eq!(d.neighbors, set(&[3, 4]));
        assert!(d.far.is_edgeless());
        assert_eq!(d.ideal.gens(), &[mono(&[0, 1, 2, 3]), mono(&[0, 1, 2, 4])]);

        let d = intersection_decomposition(&p5(), set(&[0, 1]), true).unwrap();
        assert_eq!(d.neighbors, set(&[2]));
        assert_eq!(d.far.edges(), &[set(&[3, 4])]);
        assert_eq!(d.ideal.gens(), &[mono(&[0, 1, 2]), mono(&[0, 1, 3, 4])]);

        let single = Hypergraph::from_edges(3, [[0, 1, 2]]).unwrap();
        assert!(intersection_decomposition(&single, set(&[0, 1, 2]), true).unwrap().ideal.is_zero());
    }

    #[test]
    fn duals_and_covers() {
        let dual = alexander_dual(&edge_ideal(&c5()));
        assert_eq!(dual.len(), 5);
        assert!(dual.gens().iter().all(|m| m.degree() == 3));
        assert_eq!(alexander_dual(&MonomialIdeal::principal(mono(&[0, 1]))).gens(), &[mono(&[0]), mono(&[1])]);
        assert!(alexander_dual(&MonomialIdeal::zero()).is_unit());
        assert!(alexander_dual(&MonomialIdeal::unit()).is_zero());

        let p3 = Hypergraph::from_edges(3, [[0, 1], [1, 2]]).unwrap();
        assert_eq!(min_vertex_covers(&p3), vec![set(&[1]), set(&[0, 2])]);
        assert_eq!(height(&edge_ideal(&p3)), 1);
        assert!(!is_unmixed(&p3));
        assert_eq!(height(&edge_ideal(&c5())), 3);
        assert!(is_unmixed(&c5()));
        let k3 = Hypergraph::complete(3, 2).unwrap();
        assert_eq!(min_vertex_covers(&k3), vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]);
        assert_eq!(height(&edge_ideal(&k3)), 2);
    }

    #[test]
    fn matchings() {
        assert_eq!(matching_number(&c5()).unwrap(), 2);
        assert_eq!(matching_number(&p5()).unwrap(), 2);
        assert_eq!(matching_number(&Hypergraph::from_edges(2, [[0, 1]]).unwrap()).unwrap(), 1);
        assert_eq!(matching_number(&Hypergraph::edgeless(4)).unwrap(), 0);
    }

    fn random_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (2usize..8).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bits::u64::between(0, n), 0..8).prop_map(move |raw| {
                let sets: Vec<VertexSet> = raw.into_iter().map(VertexSet::from_bits).filter(|s| s.len() >= 2).collect();
                let kept = MonomialIdeal::minimalize(sets.into_iter().map(Monomial));
                Hypergraph::new(n, kept.gens().iter().map(|m| m.0).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn duality_is_an_involution(h in random_hypergraph()) {
            let i = edge_ideal(&h);
            prop_assert_eq!(alexander_dual(&alexander_dual(&i)), i);
        }

        #[test]
        fn covers_match_brute_force(h in random_hypergraph()) {
            prop_assert_eq!(min_vertex_covers(&h), brute_covers(&h));
        }

        #[test]
        fn matching_at_most_height(h in random_hypergraph()) {
            prop_assert!(matching_number(&h).unwrap() <= height(&edge_ideal(&h)));
        }
    }
}
