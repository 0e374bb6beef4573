//! Graded Betti numbers from the Taylor complex.
//!
//! The Taylor complex of an ideal with generators `m_1..m_s` has a basis cell
//! for every nonempty subset `S`, in multidegree `lcm(S)`. After tensoring
//! with the residue field the differential keeps only the faces `S∖{g}` with
//! the same lcm, so the complex splits into one small complex per lcm. The
//! homology of the size-`k` cells in multidegree `W` is `β_{k-1,W}(I)`.
//!
//! Each lcm block is first shrunk by a matching on one generator `g ⊆ W`:
//! cells `S` and `S ∪ {g}` that both have lcm `W` cancel. The cells that
//! survive (those containing `g` whose other members do not reach `W`) are
//! closed under the differential, so their homology is read off directly.
//! Ranks are exact over `GF(p)` by sparse column reduction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Default generator cap.
pub const DEFAULT_CAP: usize = 18;

/// Ideal-indexed graded Betti numbers `β_{i,j}(I)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, value: u64) {
        if value > 0 {
            *self.entries.entry((i, j)).or_insert(0) += value;
        }
    }

    /// Nonzero entries `(i, j, β_{i,j})` in increasing `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.iter().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    pub fn pdim(&self) -> Option<usize> {
        self.iter().map(|e| e.0).max()
    }

    pub fn reg(&self) -> Option<usize> {
        self.iter().map(|e| e.1 - e.0).max()
    }

    /// Entries outside `i + d ≤ j ≤ min(n, d(i+1))`.
    pub fn degree_bound_violations(&self, n: usize, d: usize) -> Vec<(usize, usize)> {
        self.iter()
            .filter(|&(i, j, _)| j < i + d || j > n.min(d * (i + 1)))
            .map(|(i, j, _)| (i, j))
            .collect()
    }

    /// Nonzero values of `Σ_i (-1)^i β_{i,j}`, keyed by `j`.
    pub fn euler_characteristics(&self) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (i, j, v) in self.iter() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(j).or_insert(0) += sign * v as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

impl fmt::Debug for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter().map(|(i, j, v)| (format!("b{i},{j}"), v))).finish()
    }
}

impl FromIterator<(usize, usize, u64)> for BettiTable {
    fn from_iter<T: IntoIterator<Item = (usize, usize, u64)>>(iter: T) -> Self {
        let mut t = BettiTable::new();
        for (i, j, v) in iter {
            t.add(i, j, v);
        }
        t
    }
}

/// `(reg, pdim)`, with `reg(0) = 1` and `pdim(0) = -1` for the zero ideal.
pub fn table_invariants(t: &BettiTable) -> (i64, i64) {
    match (t.reg(), t.pdim()) {
        (Some(r), Some(p)) => (r as i64, p as i64),
        _ => (1, -1),
    }
}

/// Every nonzero entry sits on `j = i + d`.
pub fn has_linear_resolution(t: &BettiTable, d: usize) -> bool {
    t.iter().all(|(i, j, _)| j == i + d)
}

/// Prime characteristic of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldChar(u32);

impl FieldChar {
    pub const TWO: FieldChar = FieldChar(2);
    pub const LARGE: FieldChar = FieldChar(32003);

    /// Accepts primes below `2^31`.
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && p < 1 << 31 && (2..).take_while(|k: &u64| k * k <= p as u64).all(|k| p as u64 % k != 0);
        if prime {
            Ok(FieldChar(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn p(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Oracle settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest accepted number of generators.
    pub cap: usize,
    /// Cancel cells along one generator per lcm block before reducing.
    pub reduce: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP, reduce: true }
    }
}

/// Exact `β_{i,j}(I)` over `GF(p)`, generator cap [`DEFAULT_CAP`].
pub fn taylor_betti(ideal: &MonomialIdeal, p: FieldChar) -> Result<BettiTable> {
    taylor_betti_with(ideal, p, OracleConfig::default())
}

pub fn taylor_betti_with(ideal: &MonomialIdeal, p: FieldChar, config: OracleConfig) -> Result<BettiTable> {
    let s = ideal.len();
    if s > config.cap {
        return Err(Error::TooManyGenerators { count: s, cap: config.cap });
    }
    if s > 31 {
        return Err(Error::TooLarge { what: "generator count", size: s, cap: 31 });
    }
    let mut table = BettiTable::new();
    if s == 0 {
        return Ok(table);
    }
    let gens: Vec<u64> = ideal.gens().iter().map(|m| m.support().bits()).collect();
    let full = 1usize << s;
    let mut lcm = vec![0u64; full];
    for set in 1..full {
        lcm[set] = lcm[set & (set - 1)] | gens[set.trailing_zeros() as usize];
    }

    let mut blocks = Blocks::new(&gens);
    for set in 1..full {
        let w = lcm[set];
        let b = blocks.block_of(w);
        let block = &mut blocks.list[b];
        let keep = if config.reduce {
            let g = block.pivot;
            let rest = set & !(1 << g);
            set >> g & 1 == 1 && (rest == 0 || lcm[rest] != w)
        } else {
            true
        };
        if keep {
            block.cells.push(set as u32);
        }
    }

    let mut local = vec![0u32; full];
    let field = Field::new(p.p());
    for block in &mut blocks.list {
        let degree = block.w.count_ones() as usize;
        for (i, h) in block_homology(block, &lcm, &mut local, &field).into_iter().enumerate() {
            // h[k] is for cells of size k + 1
            table.add(i, degree, h);
        }
    }
    Ok(table)
}

struct Block {
    w: u64,
    pivot: usize,
    cells: Vec<u32>,
}

struct Blocks<'g> {
    gens: &'g [u64],
    dense: Option<(Vec<u32>, Vec<(u64, u64)>)>,
    sparse: HashMap<u64, usize>,
    list: Vec<Block>,
}

impl<'g> Blocks<'g> {
    fn new(gens: &'g [u64]) -> Self {
        let support = gens.iter().fold(0, |a, &g| a | g);
        let width = support.count_ones();
        // lcms range over subsets of the support; index them densely when small
        let dense = (width <= 20).then(|| {
            let mut bits = Vec::new();
            let mut rest = support;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                bits.push((low, 1u64 << bits.len()));
                rest &= rest - 1;
            }
            (vec![u32::MAX; 1 << width], bits)
        });
        Blocks { gens, dense, sparse: HashMap::new(), list: Vec::new() }
    }

    fn block_of(&mut self, w: u64) -> usize {
        let next = self.list.len();
        let slot = match &mut self.dense {
            Some((table, bits)) => {
                let key = bits.iter().filter(|(b, _)| w & b != 0).fold(0u64, |a, (_, c)| a | c) as usize;
                if table[key] != u32::MAX {
                    return table[key] as usize;
                }
                table[key] = next as u32;
                next
            }
            None => *self.sparse.entry(w).or_insert(next),
        };
        if slot == next {
            let pivot = self.gens.iter().position(|&g| g & !w == 0).unwrap();
            self.list.push(Block { w, pivot, cells: Vec::new() });
        }
        slot
    }
}

/// Homology dimensions of one lcm block, indexed by cell size minus one.
fn block_homology(block: &mut Block, lcm: &[u64], local: &mut [u32], field: &Field) -> Vec<u64> {
    let cells = &mut block.cells;
    cells.sort_by_key(|&c| (c.count_ones(), c));
    let top = cells.last().map_or(0, |c| c.count_ones() as usize);
    // ranges[k] covers the cells of size k
    let mut ranges = vec![0..0; top + 2];
    let mut start = 0;
    for k in 1..=top {
        let end = start + cells[start..].iter().take_while(|c| c.count_ones() as usize == k).count();
        ranges[k] = start..end;
        for (pos, &c) in cells[start..end].iter().enumerate() {
            local[c as usize] = pos as u32;
        }
        start = end;
    }

    let w = block.w;
    // rank[k] = rank of the differential out of size-k cells
    let mut rank = vec![0usize; top + 2];
    let mut cleared: Vec<bool> = Vec::new();
    for k in (2..=top).rev() {
        let columns = &cells[ranges[k].clone()];
        let rows = ranges[k - 1].len();
        let mut reducer = Reducer::new(rows, field);
        let mut next_cleared = vec![false; rows];
        for (pos, &set) in columns.iter().enumerate() {
            if cleared.get(pos).copied().unwrap_or(false) {
                continue;
            }
            let mut column: Vec<(u32, u32)> = Vec::with_capacity(k);
            let mut below = 0;
            let mut bits = set;
            while bits != 0 {
                let h = bits.trailing_zeros();
                bits &= bits - 1;
                let face = set & !(1 << h);
                if lcm[face as usize] == w {
                    let coeff = if below % 2 == 0 { 1 } else { field.p - 1 };
                    column.push((local[face as usize], coeff));
                }
                below += 1;
            }
            column.sort_unstable_by_key(|e| e.0);
            if let Some(pivot) = reducer.reduce(column) {
                next_cleared[pivot as usize] = true;
                rank[k] += 1;
            }
        }
        cleared = next_cleared;
    }
    (1..=top).map(|k| (ranges[k].len() - rank[k] - rank[k + 1]) as u64).collect()
}

struct Field {
    p: u32,
}

impl Field {
    fn new(p: u32) -> Self {
        Field { p }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    fn inv(&self, a: u32) -> u32 {
        let (mut base, mut exp, mut acc) = (a as u64, self.p as u64 - 2, 1u64);
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
}

/// Column reduction with pivots at the largest row index.
struct Reducer<'f> {
    field: &'f Field,
    owner: Vec<u32>,
    columns: Vec<Vec<(u32, u32)>>,
}

impl<'f> Reducer<'f> {
    fn new(rows: usize, field: &'f Field) -> Self {
        Reducer { field, owner: vec![u32::MAX; rows], columns: Vec::new() }
    }

    /// Reduces `column` against the stored pivots; returns its pivot row if nonzero.
    fn reduce(&mut self, mut column: Vec<(u32, u32)>) -> Option<u32> {
        let p = self.field.p;
        let mut scratch = Vec::new();
        while let Some(&(row, coeff)) = column.last() {
            let owner = self.owner[row as usize];
            if owner == u32::MAX {
                // normalize so the pivot coefficient is one
                let inv = self.field.inv(coeff);
                for e in column.iter_mut() {
                    e.1 = self.field.mul(e.1, inv);
                }
                self.owner[row as usize] = self.columns.len() as u32;
                self.columns.push(column);
                return Some(row);
            }
            // column -= coeff * stored (stored pivot is one)
            let stored = &self.columns[owner as usize];
            let factor = p - coeff;
            scratch.clear();
            let (mut a, mut b) = (0, 0);
            while a < column.len() || b < stored.len() {
                let take_a = b == stored.len() || (a < column.len() && column[a].0 < stored[b].0);
                let take_b = a == column.len() || (b < stored.len() && stored[b].0 < column[a].0);
                if take_a {
                    scratch.push(column[a]);
                    a += 1;
                } else if take_b {
                    scratch.push((stored[b].0, self.field.mul(stored[b].1, factor)));
                    b += 1;
                } else {
                    let v = (column[a].1 + self.field.mul(stored[b].1, factor)) % p;
                    if v != 0 {
                        scratch.push((column[a].0, v));
                    }
                    a += 1;
                    b += 1;
                }
            }
            std::mem::swap(&mut column, &mut scratch);
        }
        None
    }
}

/// One differing entry between two tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableDiff {
    pub i: usize,
    pub j: usize,
    pub left: u64,
    pub right: u64,
}

/// Entrywise differences, in increasing `(i, j)` order.
pub fn table_diff(a: &BettiTable, b: &BettiTable) -> Vec<TableDiff> {
    let keys: std::collections::BTreeSet<(usize, usize)> = a.entries.keys().chain(b.entries.keys()).copied().collect();
    keys.into_iter()
        .filter_map(|(i, j)| {
            let (left, right) = (a.get(i, j), b.get(i, j));
            (left != right).then_some(TableDiff { i, j, left, right })
        })
        .collect()
}

/// Compares the oracle tables over two characteristics.
pub fn char_compare(ideal: &MonomialIdeal, p1: FieldChar, p2: FieldChar) -> Result<(bool, Vec<TableDiff>)> {
    let diff = table_diff(&taylor_betti(ideal, p1)?, &taylor_betti(ideal, p2)?);
    Ok((diff.is_empty(), diff))
}
