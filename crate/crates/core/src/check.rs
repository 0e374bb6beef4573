//! Property-suite runner.
//!
//! Each suite is a predicate on one hypergraph. Instances outside a suite's
//! hypotheses are skipped. The first violation of a suite is shrunk by
//! greedy edge deletion to a small reproducer that still fails.
//!
//! Every Betti table computed here is also checked against the degree bounds
//! `i + d_min ≤ j ≤ min(n, d_max (i+1))`, where `d_min` and `d_max` are the
//! extreme generator degrees.
//!
//! ```
//! use edge_betti::check::{run, CheckConfig, Source, Suite};
//! use edge_betti::generators::{GenSpec, Kind};
//!
//! let config = CheckConfig::new(Suite::Froberg, Source::Random(GenSpec::new(Kind::Graph, 5).seed(1)), 20);
//! let report = run(&config).unwrap();
//! assert!(report.passed());
//! ```

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::betti::{self, recursive_betti_with, reg_pdim, RecursionOptions, Strategy};
use crate::error::{Error, Result};
use crate::generators::{GenSpec, Kind, Stats};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::ideal::{alexander_dual, edge_ideal, intersect_principal, matching_number, Monomial, MonomialIdeal};
use crate::metric;
use crate::oracle::{table_diff, table_invariants, taylor_betti, BettiTable, FieldChar};
use crate::structure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    RecursionVsOracle,
    EkIdentity,
    StrandCount,
    RegBounds,
    MatchingBound,
    Froberg,
    Konig,
    CharIndependence,
    LinearityIff,
    Duality,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::RecursionVsOracle,
        Suite::EkIdentity,
        Suite::StrandCount,
        Suite::RegBounds,
        Suite::MatchingBound,
        Suite::Froberg,
        Suite::Konig,
        Suite::CharIndependence,
        Suite::LinearityIff,
        Suite::Duality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RecursionVsOracle => "recursion-vs-oracle",
            Suite::EkIdentity => "ek-identity",
            Suite::StrandCount => "strand-count",
            Suite::RegBounds => "reg-bounds",
            Suite::MatchingBound => "matching-bound",
            Suite::Froberg => "froberg",
            Suite::Konig => "konig",
            Suite::CharIndependence => "char-independence",
            Suite::LinearityIff => "linearity-iff",
            Suite::Duality => "duality",
            Suite::All => "all",
        }
    }

    /// The suites this one runs.
    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }

    /// Instance kind used when none is given.
    pub fn default_kind(self) -> Kind {
        match self {
            Suite::RecursionVsOracle => Kind::Chordal,
            _ => Kind::Graph,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Deliberate oracle defects, for testing the harness itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to the last nonzero entry of every oracle table.
    OracleOffByOne,
}

/// Outcome of one suite on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip(String),
    Fail(String),
}

enum Stop {
    Skip(String),
    Fail(String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::TooManyGenerators { .. } | Error::TooLarge { .. } => Stop::Skip(e.to_string()),
            e => Stop::Fail(format!("unexpected error: {e}")),
        }
    }
}

type Check = std::result::Result<(), Stop>;

fn skip<T>(why: &str) -> std::result::Result<T, Stop> {
    Err(Stop::Skip(why.into()))
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(Stop::Fail(message()))
    }
}

/// Shared state for checking instances: field, options and a per-instance table cache.
pub struct Context {
    pub p: FieldChar,
    pub verify: bool,
    pub fault: Option<Fault>,
    cache: RefCell<HashMap<(Vec<Monomial>, usize, u32), BettiTable>>,
    tables: Cell<u64>,
    bound_violations: Cell<u64>,
}

impl Context {
    pub fn new(p: FieldChar) -> Self {
        Context { p, verify: false, fault: None, cache: RefCell::default(), tables: Cell::new(0), bound_violations: Cell::new(0) }
    }

    /// Number of tables checked against the degree bounds so far.
    pub fn tables_checked(&self) -> u64 {
        self.tables.get()
    }

    /// Number of those tables with an entry outside the degree bounds.
    pub fn bound_violations(&self) -> u64 {
        self.bound_violations.get()
    }

    pub fn clear_cache(&self) {
        self.cache.borrow_mut().clear();
    }

    fn bounds(&self, ideal: &MonomialIdeal, n: usize, table: &BettiTable) -> Check {
        self.tables.set(self.tables.get() + 1);
        let bad: Vec<(usize, usize)> = match ideal.gens().iter().map(|m| m.degree()).min() {
            None => table.iter().map(|(i, j, _)| (i, j)).collect(),
            Some(lo) => {
                let hi = ideal.gens().iter().map(|m| m.degree()).max().unwrap();
                table.iter().filter(|&(i, j, _)| j < i + lo || j > n.min(hi * (i + 1))).map(|(i, j, _)| (i, j)).collect()
            }
        };
        if !bad.is_empty() {
            self.bound_violations.set(self.bound_violations.get() + 1);
        }
        ensure(bad.is_empty(), || format!("entries {bad:?} of {table:?} violate the degree bounds"))
    }

    /// Checks a table computed elsewhere against the degree bounds of `ideal`.
    pub fn check_bounds(&self, ideal: &MonomialIdeal, n: usize, table: &BettiTable) -> bool {
        self.bounds(ideal, n, table).is_ok()
    }

    fn oracle_at(&self, ideal: &MonomialIdeal, n: usize, p: FieldChar) -> std::result::Result<BettiTable, Stop> {
        let key = (ideal.gens().to_vec(), n, p.p());
        if let Some(t) = self.cache.borrow().get(&key) {
            return Ok(t.clone());
        }
        let mut table = taylor_betti(ideal, p)?;
        if self.fault == Some(Fault::OracleOffByOne) {
            if let Some((i, j, _)) = table.iter().last() {
                table.add(i, j, 1);
            }
        }
        self.bounds(ideal, n, &table)?;
        self.cache.borrow_mut().insert(key, table.clone());
        Ok(table)
    }

    fn oracle(&self, ideal: &MonomialIdeal, n: usize) -> std::result::Result<BettiTable, Stop> {
        self.oracle_at(ideal, n, self.p)
    }

    fn edge_table(&self, h: &Hypergraph) -> std::result::Result<BettiTable, Stop> {
        self.oracle(&edge_ideal(h), h.n())
    }

    /// Runs one suite on one instance.
    pub fn check(&self, suite: Suite, h: &Hypergraph) -> Outcome {
        let result = match suite {
            Suite::RecursionVsOracle => self.recursion_vs_oracle(h),
            Suite::EkIdentity => self.ek_identity(h),
            Suite::StrandCount => self.strand_count(h),
            Suite::RegBounds => self.reg_bounds(h),
            Suite::MatchingBound => self.matching_bound(h),
            Suite::Froberg => self.froberg(h),
            Suite::Konig => self.konig(h, false),
            Suite::CharIndependence => self.char_independence(h),
            Suite::LinearityIff => self.linearity_iff(h),
            Suite::Duality => self.konig(h, true),
            Suite::All => {
                let mut skipped = true;
                for s in Suite::EACH {
                    match self.check(s, h) {
                        Outcome::Fail(m) => return Outcome::Fail(format!("{s}: {m}")),
                        Outcome::Pass => skipped = false,
                        Outcome::Skip(_) => {}
                    }
                }
                if skipped {
                    skip("no suite applies")
                } else {
                    Ok(())
                }
            }
        };
        match result {
            Ok(()) => Outcome::Pass,
            Err(Stop::Skip(m)) => Outcome::Skip(m),
            Err(Stop::Fail(m)) => Outcome::Fail(m),
        }
    }

    /// The uniformity of a nonempty properly-connected instance.
    fn pc_degree(&self, h: &Hypergraph) -> std::result::Result<usize, Stop> {
        if h.is_edgeless() {
            return skip("edgeless");
        }
        let Ok(d) = h.require_uniform() else {
            return skip("not uniform");
        };
        if !metric::is_properly_connected(h)?.0 {
            return skip("not properly-connected");
        }
        Ok(d)
    }

    fn graph(&self, h: &Hypergraph) -> Check {
        if h.is_edgeless() {
            return skip("edgeless");
        }
        if h.edges().iter().any(|e| e.len() != 2) {
            return skip("not a graph");
        }
        Ok(())
    }

    fn recursion_vs_oracle(&self, h: &Hypergraph) -> Check {
        if !h.is_edgeless() {
            self.pc_degree(h)?;
            if !structure::is_triangulated(h)? {
                return skip("not triangulated");
            }
        }
        let options = RecursionOptions { verify: self.verify, memo: true };
        let (table, _) = recursive_betti_with(h, options).map_err(|e| Stop::Fail(format!("recursion failed: {e}")))?;
        let ideal = edge_ideal(h);
        self.bounds(&ideal, h.n(), &table)?;
        let oracle = self.oracle(&ideal, h.n())?;
        let diffs = table_diff(&table, &oracle);
        ensure(diffs.is_empty(), || format!("recursion {table:?} differs from oracle {oracle:?} at {diffs:?}"))?;
        let pair = reg_pdim(h, Strategy::Recursive).map_err(|e| Stop::Fail(format!("pair recursion failed: {e}")))?;
        ensure(pair == table_invariants(&oracle), || format!("pair recursion gives {pair:?}"))
    }

    /// Splitting criteria agree, v-leaves split, and the EK identity holds for every splitting edge.
    fn ek_identity(&self, h: &Hypergraph) -> Check {
        if h.edge_count() < 2 {
            return skip("fewer than two edges");
        }
        let pc = h.require_uniform().is_ok() && metric::is_properly_connected(h)?.0;
        let whole = self.edge_table(h)?;
        for &e in h.edges() {
            let general = structure::is_splitting_edge(h, e)?;
            if pc {
                let swap = structure::is_splitting_edge_pc(h, e)?;
                ensure(general.is_some() == swap.is_some(), || {
                    format!("criteria disagree on {e}: general {general:?}, swap {swap:?}")
                })?;
            }
            if structure::is_v_leaf(h, e)? {
                ensure(general.is_some(), || format!("v-leaf {e} does not split"))?;
            }
            if general.is_none() {
                continue;
            }
            let m = Monomial(e);
            let rest = edge_ideal(&h.remove_edge(e)?);
            let mut predicted = self.oracle(&MonomialIdeal::principal(m), h.n())?;
            for (i, j, v) in self.oracle(&rest, h.n())?.iter() {
                predicted.add(i, j, v);
            }
            for (i, j, v) in self.oracle(&intersect_principal(m, &rest), h.n())?.iter() {
                predicted.add(i + 1, j, v);
            }
            let diffs = table_diff(&whole, &predicted);
            ensure(diffs.is_empty(), || format!("EK identity fails for splitting edge {e}: {diffs:?}"))?;
        }
        Ok(())
    }

    fn strand_count(&self, h: &Hypergraph) -> Check {
        let d = self.pc_degree(h)?;
        let report = betti::strand_rows(h, d, &self.edge_table(h)?)?;
        ensure(report.holds, || format!("strand rows (i, β, count) = {:?}", report.rows))
    }

    fn reg_bounds(&self, h: &Hypergraph) -> Check {
        let d = self.pc_degree(h)?;
        let (c, _) = metric::max_pairwise_t_disjoint(h, d + 1)?;
        let lower = (d as i64 - 1) * c as i64 + 1;
        let (reg, _) = table_invariants(&self.edge_table(h)?);
        ensure(lower <= reg, || format!("reg {reg} below (d-1)c+1 = {lower}"))?;
        if structure::is_triangulated(h)? {
            ensure(lower == reg, || format!("triangulated but reg {reg} != (d-1)c+1 = {lower}"))?;
        }
        Ok(())
    }

    fn matching_bound(&self, h: &Hypergraph) -> Check {
        self.graph(h)?;
        let (reg, _) = table_invariants(&self.edge_table(h)?);
        let matching = matching_number(h)? as i64;
        ensure(reg - 1 <= matching, || format!("reg {reg} exceeds matching number {matching} + 1"))
    }

    fn froberg(&self, h: &Hypergraph) -> Check {
        self.graph(h)?;
        let report = betti::froberg_from_table(h, &self.edge_table(h)?)?;
        ensure(report.holds(), || {
            format!("linear resolution {} but complement chordal {}", report.linear, report.complement_chordal)
        })
    }

    fn konig(&self, h: &Hypergraph, duality: bool) -> Check {
        self.graph(h)?;
        let ideal = edge_ideal(h);
        let table = self.oracle(&ideal, h.n())?;
        let dual = self.oracle(&alexander_dual(&ideal), h.n())?;
        let report = betti::konig_from_tables(h, &table, &dual);
        if duality {
            ensure(report.duality_holds(), || format!("duality fails: {report:?}"))
        } else {
            ensure(report.inequalities_hold(), || format!("inequalities fail: {report:?}"))
        }
    }

    fn char_independence(&self, h: &Hypergraph) -> Check {
        if h.is_edgeless() {
            return skip("edgeless");
        }
        let other = if self.p == FieldChar::TWO { FieldChar::LARGE } else { FieldChar::TWO };
        let ideal = edge_ideal(h);
        let a = self.oracle(&ideal, h.n())?;
        let b = self.oracle_at(&ideal, h.n(), other)?;
        let diffs = table_diff(&a, &b);
        ensure(diffs.is_empty(), || format!("characteristics {} and {} differ: {diffs:?}", self.p.p(), other.p()))
    }

    fn linearity_iff(&self, h: &Hypergraph) -> Check {
        let d = self.pc_degree(h)?;
        let report = betti::linearity_from_table(h, d, &self.edge_table(h)?)?;
        ensure(report.syzygy_iff_holds(), || format!("first syzygies vs diameter: {report:?}"))?;
        ensure(report.three_way_holds(), || format!("triangulated three-way equivalence: {report:?}"))
    }
}

/// Where instances come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    /// All labeled graphs on exactly `n` vertices.
    Exhaustive(usize),
    Random(GenSpec),
    /// A fixed list.
    List(Vec<Hypergraph>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub suite: Suite,
    pub source: Source,
    /// Instances drawn from a random source.
    pub trials: usize,
    pub p: FieldChar,
    /// Re-check recursion preconditions at every node.
    pub verify: bool,
    pub fault: Option<Fault>,
}

impl CheckConfig {
    pub fn new(suite: Suite, source: Source, trials: usize) -> Self {
        CheckConfig { suite, source, trials, p: FieldChar::TWO, verify: false, fault: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub suite: Suite,
    /// Position of the failing instance in the stream.
    pub index: usize,
    pub message: String,
    pub instance: Hypergraph,
    pub reproducer: Hypergraph,
    pub reproducer_message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub skipped: usize,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub instances: usize,
    pub suites: Vec<SuiteReport>,
    pub generator: Option<Stats>,
    pub tables_checked: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.violation.is_none())
    }
}

/// Greedily deletes edges, then isolated vertices, while `fails` stays true.
pub fn minimize(h: &Hypergraph, fails: impl Fn(&Hypergraph) -> bool) -> Hypergraph {
    let mut current = h.clone();
    'outer: loop {
        for &e in current.edges() {
            let smaller = current.remove_edge(e).expect("edge of current");
            if fails(&smaller) {
                current = smaller;
                continue 'outer;
            }
        }
        break;
    }
    let compact = compact(&current);
    if compact.n() < current.n() && fails(&compact) {
        current = compact;
    }
    current
}

/// Drops isolated vertices, keeping labels.
pub fn compact(h: &Hypergraph) -> Hypergraph {
    let kept = h.covered_vertices().to_vec();
    let mut position = vec![usize::MAX; h.n()];
    for (k, &v) in kept.iter().enumerate() {
        position[v] = k;
    }
    let edges = h.edges().iter().map(|e| e.iter().map(|v| position[v]).collect::<VertexSet>()).collect();
    Hypergraph::new(kept.len(), edges)
        .expect("relabeling keeps simplicity")
        .with_labels(kept.iter().map(|&v| h.label(v)).collect())
}

/// Runs the configured suites over the instance stream.
pub fn run(config: &CheckConfig) -> Result<CheckReport> {
    let mut ctx = Context::new(config.p);
    ctx.verify = config.verify;
    ctx.fault = config.fault;
    let members = config.suite.members();
    let mut reports: Vec<SuiteReport> =
        members.iter().map(|&suite| SuiteReport { suite, passed: 0, skipped: 0, violation: None }).collect();
    let (instances, generator): (Box<dyn Iterator<Item = Result<Hypergraph>>>, _) = match &config.source {
        Source::Exhaustive(n) => (Box::new(GenSpec::new(Kind::ExhaustiveGraphs, *n).stream()?), None),
        Source::Random(spec) => {
            let stream = spec.stream()?;
            (Box::new(stream.take(config.trials)), Some(spec.clone()))
        }
        Source::List(list) => (Box::new(list.clone().into_iter().map(Ok)), None),
    };
    let mut count = 0;
    for (index, h) in instances.enumerate() {
        let h = h?;
        count += 1;
        ctx.clear_cache();
        for report in reports.iter_mut().filter(|r| r.violation.is_none()) {
            match ctx.check(report.suite, &h) {
                Outcome::Pass => report.passed += 1,
                Outcome::Skip(_) => report.skipped += 1,
                Outcome::Fail(message) => {
                    let suite = report.suite;
                    let fails = |g: &Hypergraph| matches!(ctx.check(suite, g), Outcome::Fail(_));
                    let reproducer = minimize(&h, fails);
                    let reproducer_message = match ctx.check(suite, &reproducer) {
                        Outcome::Fail(m) => m,
                        _ => unreachable!("minimizer keeps a failing instance"),
                    };
                    report.violation =
                        Some(Violation { suite, index, message, instance: h.clone(), reproducer, reproducer_message });
                }
            }
        }
    }
    // replay the generator to report its acceptance statistics
    let generator = match generator {
        Some(spec) => {
            let mut stream = spec.stream()?;
            stream.by_ref().take(config.trials).for_each(drop);
            Some(stream.stats())
        }
        None => None,
    };
    Ok(CheckReport { instances: count, suites: reports, generator, tables_checked: ctx.tables_checked() })
}
