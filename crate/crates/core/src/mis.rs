//! Exact independent-set routines on small conflict graphs (at most 128 nodes).

/// Set of node indices below 128.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EdgeMask(pub u128);

impl EdgeMask {
    pub const CAPACITY: usize = 128;

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    fn full(n: usize) -> Self {
        if n == 128 {
            EdgeMask(u128::MAX)
        } else {
            EdgeMask((1u128 << n) - 1)
        }
    }
}

/// A maximum independent set; ties broken towards lower indices.
pub fn maximum_independent_set(adj: &[EdgeMask]) -> EdgeMask {
    let all = EdgeMask::full(adj.len());
    let mut best = greedy(adj, all);
    branch(adj, all.0, 0, &mut best);
    best
}

fn greedy(adj: &[EdgeMask], mut cands: EdgeMask) -> EdgeMask {
    let mut out = EdgeMask::default();
    while !cands.is_empty() {
        // fewest remaining conflicts first
        let v = cands.iter().min_by_key(|&v| (adj[v].0 & cands.0).count_ones()).unwrap();
        out.insert(v);
        cands.0 &= !adj[v].0;
        cands.remove(v);
    }
    out
}

fn branch(adj: &[EdgeMask], cands: u128, chosen: u128, best: &mut EdgeMask) {
    if cands == 0 {
        if chosen.count_ones() > best.0.count_ones() {
            *best = EdgeMask(chosen);
        }
        return;
    }
    if chosen.count_ones() + cands.count_ones() <= best.0.count_ones() {
        return;
    }
    let v = cands.trailing_zeros() as usize;
    let bit = 1u128 << v;
    branch(adj, cands & !adj[v].0 & !bit, chosen | bit, best);
    if adj[v].0 & cands != 0 {
        branch(adj, cands & !bit, chosen, best);
    }
}

/// `counts[k]` is the number of independent sets of size `k`, the empty set included.
pub fn count_independent_sets(adj: &[EdgeMask]) -> Vec<u64> {
    fn walk(adj: &[EdgeMask], cands: u128, size: usize, counts: &mut Vec<u64>) {
        if counts.len() <= size {
            counts.resize(size + 1, 0);
        }
        counts[size] += 1;
        let mut rest = cands;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            walk(adj, rest & !adj[v].0, size + 1, counts);
        }
    }
    let mut counts = Vec::new();
    walk(adj, EdgeMask::full(adj.len()).0, 0, &mut counts);
    counts
}
