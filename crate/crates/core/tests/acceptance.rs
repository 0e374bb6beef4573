//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each.
//!
//! Runs as a plain binary (`harness = false`); every instance set is seeded.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use edge_betti::check::{Context, Outcome, Suite};
use edge_betti::generators::{sample, GenSpec, Kind};
use edge_betti::hypergraph::k_subsets;
use edge_betti::ideal::edge_ideal;
use edge_betti::metric::{self, Distance};
use edge_betti::oracle::{has_linear_resolution, table_invariants, taylor_betti, BettiTable, FieldChar, DEFAULT_CAP};
use edge_betti::structure;
use edge_betti::{Hypergraph, VertexSet};

/// Oracle generator cap; random instances with more edges are redrawn.
const EDGE_CAP: usize = DEFAULT_CAP;

struct Verdict {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { failures: Vec::new(), notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Requires `suite` to pass on every instance; skips count as failures
    /// unless `allow_skip` accepts the reason.
    fn suite(&mut self, ctx: &Context, suite: Suite, set: &[Hypergraph], allow_skip: impl Fn(&Hypergraph) -> bool) -> usize {
        let mut checked = 0;
        for h in set {
            match ctx.check(suite, h) {
                Outcome::Pass => checked += 1,
                Outcome::Skip(why) => self.require(allow_skip(h), || format!("{suite} skipped {h:?}: {why}")),
                Outcome::Fail(why) => self.require(false, || format!("{suite} fails on {h:?}: {why}")),
            }
        }
        checked
    }
}

struct Runner {
    results: Vec<bool>,
}

impl Runner {
    fn criterion(&mut self, id: usize, title: &str, limit: Option<Duration>, body: impl FnOnce(&mut Verdict)) {
        let start = Instant::now();
        let mut verdict = Verdict::new();
        body(&mut verdict);
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            verdict.require(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        let ok = verdict.failures.is_empty();
        let status = if ok { "PASS" } else { "FAIL" };
        let notes = if verdict.notes.is_empty() { String::new() } else { format!(" [{}]", verdict.notes.join("; ")) };
        println!("[{status}] {id:>2}. {title} ({elapsed:.2?}){notes}");
        for f in verdict.failures.iter().filter(|f| !f.is_empty()) {
            println!("         {f}");
        }
        if verdict.failures.len() > 5 {
            println!("         ... {} failures in total", verdict.failures.len());
        }
        self.results.push(ok);
    }
}

fn set(v: &[usize]) -> VertexSet {
    VertexSet::from_vertices(v.iter().copied())
}

fn table(entries: &[(usize, usize, u64)]) -> BettiTable {
    entries.iter().copied().collect()
}

/// The first `count` draws with at least `min_edges` edges.
fn draw(spec: GenSpec, count: usize, min_edges: usize) -> Vec<Hypergraph> {
    let stream = spec.max_edges(EDGE_CAP).stream().expect("generator");
    stream.map(|h| h.expect("generator")).filter(|h| h.edge_count() >= min_edges).take(count).collect()
}

fn exhaustive_graphs(max_n: usize) -> Vec<Hypergraph> {
    (1..=max_n).flat_map(|n| sample(&GenSpec::new(Kind::ExhaustiveGraphs, n), usize::MAX).unwrap()).collect()
}

fn is_pc(h: &Hypergraph) -> bool {
    !h.is_edgeless() && h.require_uniform().is_ok() && metric::is_properly_connected(h).unwrap().0
}

fn main() -> ExitCode {
    let suite_start = Instant::now();
    let two = FieldChar::TWO;
    let large = FieldChar::LARGE;
    let ctx2 = Context::new(two);
    let ctx_large = Context::new(large);
    let mut run = Runner { results: Vec::new() };

    let c5 = Hypergraph::from_edges(5, [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]).unwrap();
    let k35_minus = {
        let drop = [set(&[0, 1, 2]), set(&[2, 3, 4])];
        let edges = k_subsets(VertexSet::full(5), 3).into_iter().filter(|e| !drop.contains(e)).collect();
        Hypergraph::new(5, edges).unwrap()
    };

    run.criterion(1, "golden tables", None, |v| {
        for (label, h, expected, linear) in [
            ("C5", &c5, table(&[(0, 2, 5), (1, 3, 5), (2, 5, 1)]), false),
            ("K^3_5 minus two edges", &k35_minus, table(&[(0, 3, 8), (1, 4, 11), (2, 5, 4)]), true),
        ] {
            let start = Instant::now();
            for p in [two, large] {
                let t = taylor_betti(&edge_ideal(h), p).unwrap();
                v.require(ctx2.check_bounds(&edge_ideal(h), h.n(), &t), || format!("{label}: degree bounds"));
                v.require(t == expected, || format!("{label} at p={}: {t:?}", p.p()));
                v.require(has_linear_resolution(&t, h.require_uniform().unwrap()) == linear, || {
                    format!("{label}: linearity")
                });
            }
            let elapsed = start.elapsed();
            v.require(elapsed < Duration::from_secs(1), || format!("{label} took {elapsed:?}"));
        }
        let (reg, pdim) = table_invariants(&taylor_betti(&edge_ideal(&c5), two).unwrap());
        v.require((reg, pdim) == (3, 2), || format!("C5 reg, pdim = {reg}, {pdim}"));
    });

    run.criterion(2, "golden combinatorics", Some(Duration::from_secs(1)), |v| {
        // a b c d e = 0 1 2 3 4
        let no_split = Hypergraph::from_edges(5, [[0, 1, 4], [0, 3, 4], [1, 2, 4], [2, 3, 4]]).unwrap();
        v.require(structure::splitting_edges(&no_split).unwrap().is_empty(), || "abe/ade/bce/cde splits".into());
        // a b c d e f = 0 1 2 3 4 5
        let leaves = Hypergraph::from_edges(6, [[0, 1, 5], [1, 2, 3], [3, 4, 5]]).unwrap();
        let v_leaves = leaves.edges().iter().filter(|&&e| structure::is_v_leaf(&leaves, e).unwrap()).count();
        let f_leaves = leaves.edges().iter().filter(|&&e| structure::is_f_leaf(&leaves, e).unwrap()).count();
        v.require((v_leaves, f_leaves) == (3, 0), || format!("abf/bcd/def leaves {v_leaves}, {f_leaves}"));
        // x1..x5 = 0..4
        let six = Hypergraph::from_edges(5, [[0, 1, 2], [0, 1, 3], [0, 2, 4], [1, 2, 3], [1, 2, 4], [2, 3, 4]]).unwrap();
        let e = set(&[0, 1, 2]);
        v.require(metric::is_properly_connected(&six).unwrap().0, || "six-edge not properly-connected".into());
        let w = structure::is_splitting_edge(&six, e).unwrap();
        v.require(w.is_some_and(|w| w.z == 0), || format!("six-edge witness {w:?}"));
        let neighbors = metric::neighbor_set(&six, e).unwrap();
        v.require(neighbors == set(&[3, 4]), || format!("N(E) = {neighbors}"));
        v.require(!structure::is_v_leaf(&six, e).unwrap(), || "x1x2x3 is a v-leaf".into());
        let rest = six.remove_edge(e).unwrap();
        v.require(!metric::is_properly_connected(&rest).unwrap().0, || "H minus E is properly-connected".into());
        let four = Hypergraph::from_edges(8, [[0, 1, 2, 3], [0, 1, 2, 6], [0, 1, 5, 6], [0, 4, 5, 6], [0, 4, 5, 7]]).unwrap();
        let (d, cert) = metric::distance(&four, four.edges()[0], four.edges()[4]).unwrap();
        v.require(d == Distance::Finite(4), || format!("4-uniform distance {d}"));
        v.require(cert.is_some_and(|c| c.validate(&four).is_ok()), || "bad certificate".into());
        v.require(!metric::is_properly_connected(&four).unwrap().0, || "4-uniform example is properly-connected".into());
    });

    // instance sets shared by several criteria
    let all_graphs_6 = exhaustive_graphs(6);
    let chordal: Vec<Hypergraph> = {
        let mut set: Vec<Hypergraph> =
            all_graphs_6.iter().filter(|g| structure::is_chordal(g).unwrap()).cloned().collect();
        set.extend(draw(GenSpec::new(Kind::Chordal, 9).vertices(2..=9).seed(2024), 200, 1));
        set
    };
    let strand_graphs = draw(GenSpec::new(Kind::Graph, 8).vertices(2..=8).seed(7), 100, 1);
    let v_trees = draw(GenSpec::new(Kind::VTree(3), 10).vertices(3..=10).seed(11), 50, 1);
    let matching_graphs = draw(GenSpec::new(Kind::Graph, 9).vertices(2..=9).seed(13), 500, 1);
    let split_graphs = draw(GenSpec::new(Kind::Graph, 8).vertices(3..=8).seed(17), 300, 2);
    let pc_triples = {
        let spec = GenSpec::new(Kind::PcUniform(3), 7).vertices(4..=7).density(0.3).seed(19).max_edges(EDGE_CAP);
        let mut stream = spec.stream().unwrap();
        let set: Vec<Hypergraph> =
            stream.by_ref().map(|h| h.unwrap()).filter(|h| h.edge_count() >= 2).take(50).collect();
        (set, stream.stats())
    };
    let konig_graphs = draw(GenSpec::new(Kind::Graph, 8).vertices(2..=8).seed(23), 300, 1);

    run.criterion(3, "recursion equals oracle on chordal graphs", Some(Duration::from_secs(120)), |v| {
        let a = v.suite(&ctx2, Suite::RecursionVsOracle, &chordal, |_| false);
        let b = v.suite(&ctx_large, Suite::RecursionVsOracle, &chordal, |_| false);
        v.note(format!("{} chordal graphs, {a} at p=2 and {b} at p=32003", chordal.len()));
    });

    run.criterion(4, "characteristic independence", Some(Duration::from_secs(120)), |v| {
        let n = v.suite(&ctx2, Suite::CharIndependence, &chordal, |h| h.is_edgeless());
        v.note(format!("{n} instances"));
    });

    run.criterion(5, "strand theorem", Some(Duration::from_secs(120)), |v| {
        let a = v.suite(&ctx2, Suite::StrandCount, &strand_graphs, |_| false);
        let b = v.suite(&ctx2, Suite::StrandCount, &v_trees, |_| false);
        v.note(format!("{a} graphs, {b} v-trees"));
    });

    run.criterion(6, "regularity formulas", Some(Duration::from_secs(120)), |v| {
        let mut exact = 0;
        for h in chordal.iter().chain(&strand_graphs).chain(&v_trees) {
            if h.is_edgeless() || !structure::is_triangulated(h).unwrap() {
                continue;
            }
            exact += 1;
            let d = h.require_uniform().unwrap() as i64;
            let (c, _) = metric::max_pairwise_t_disjoint(h, d as usize + 1).unwrap();
            let t = taylor_betti(&edge_ideal(h), two).unwrap();
            v.require(ctx2.check_bounds(&edge_ideal(h), h.n(), &t), || format!("degree bounds on {h:?}"));
            let reg = table_invariants(&t).0;
            v.require(reg == (d - 1) * c as i64 + 1, || format!("reg {reg} vs c {c} on {h:?}"));
        }
        let m = v.suite(&ctx2, Suite::MatchingBound, &matching_graphs, |_| false);
        let mut lower = 0;
        let tested = [&chordal, &strand_graphs, &v_trees, &matching_graphs, &split_graphs, &pc_triples.0, &konig_graphs];
        for set in tested {
            let pc: Vec<Hypergraph> = set.iter().filter(|h| is_pc(h)).cloned().collect();
            lower += v.suite(&ctx2, Suite::RegBounds, &pc, |_| false);
        }
        v.note(format!("{exact} triangulated, {m} matching, {lower} lower-bound instances"));
    });

    run.criterion(7, "splitting-edge coherence and EK identity", Some(Duration::from_secs(180)), |v| {
        let a = v.suite(&ctx2, Suite::EkIdentity, &split_graphs, |_| false);
        let b = v.suite(&ctx2, Suite::EkIdentity, &pc_triples.0, |_| false);
        v.note(format!(
            "{a} graphs, {b} properly-connected triple systems (acceptance rate {:.3})",
            pc_triples.1.acceptance_rate()
        ));
    });

    run.criterion(8, "linearity iff diameter", None, |v| {
        let mut n = 0;
        let tested = [&chordal, &strand_graphs, &v_trees, &matching_graphs, &split_graphs, &pc_triples.0, &konig_graphs];
        for set in tested {
            let pc: Vec<Hypergraph> = set.iter().filter(|h| is_pc(h)).cloned().collect();
            n += v.suite(&ctx2, Suite::LinearityIff, &pc, |_| false);
        }
        v.note(format!("{n} properly-connected instances"));
    });

    run.criterion(9, "Froberg cross-check, all graphs with n <= 6", Some(Duration::from_secs(180)), |v| {
        let n = v.suite(&ctx2, Suite::Froberg, &all_graphs_6, |h| h.is_edgeless());
        v.note(format!("{n} graphs with edges, {} in total", all_graphs_6.len()));
    });

    run.criterion(10, "Konig-type inequalities and duality", None, |v| {
        let a = v.suite(&ctx2, Suite::Konig, &konig_graphs, |_| false);
        let b = v.suite(&ctx2, Suite::Duality, &konig_graphs, |_| false);
        v.require(konig_graphs.len() == 300, || "fewer than 300 graphs".into());
        v.note(format!("{a} inequality, {b} duality checks"));
    });

    run.criterion(11, "degree bounds on every table", None, |v| {
        let tables = ctx2.tables_checked() + ctx_large.tables_checked();
        let bad = ctx2.bound_violations() + ctx_large.bound_violations();
        v.require(bad == 0, || format!("{bad} tables violate the bounds"));
        v.require(tables > 0, || "no tables checked".into());
        v.note(format!("{tables} tables"));
    });

    let total = suite_start.elapsed();
    let within = total < Duration::from_secs(15 * 60);
    println!("[{}] full suite under 15 minutes ({total:.2?})", if within { "PASS" } else { "FAIL" });
    let passed = run.results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", run.results.len());
    if passed == run.results.len() && within {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
