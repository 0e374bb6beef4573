use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};

use edge_betti::betti::{recursive_betti_with, RecursionOptions};
use edge_betti::check::{self, CheckConfig, Fault, Source, Suite};
use edge_betti::format::{self, BettiReport};
use edge_betti::generators::{GenSpec, Kind};
use edge_betti::ideal::{alexander_dual, edge_ideal, height, is_unmixed, matching_number, Monomial};
use edge_betti::metric::{self, Distance};
use edge_betti::oracle::{has_linear_resolution, table_invariants, taylor_betti, BettiTable, FieldChar};
use edge_betti::structure::{self, EXHAUSTIVE_CAP};
use edge_betti::{Error, Hypergraph, VertexSet};

const USAGE: u8 = 1;
const INVALID: u8 = 2;
const VIOLATION: u8 = 3;
const INAPPLICABLE: u8 = 4;

#[derive(Parser)]
#[command(name = "edge-betti", version, about = "Betti tables and structure of hypergraph edge ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the graded Betti table of I(H).
    Betti {
        /// Input file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Field characteristic for the oracle; a prime.
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u32,
        #[arg(long, value_enum, default_value_t = Format::Grid)]
        format: Format,
        /// Re-check every recursion precondition at every node.
        #[arg(long)]
        verify: bool,
    },
    /// Report structural and homological invariants.
    Invariants {
        file: PathBuf,
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u32,
    },
    /// Distance between two edges, with a shortest proper chain.
    Distance {
        file: PathBuf,
        /// Edge index in canonical order, or comma-separated vertex labels.
        first: String,
        second: String,
    },
    /// Generators of the Alexander dual.
    Dual { file: PathBuf },
    /// Splitting edges with their witnesses.
    Split { file: PathBuf },
    /// Run a property suite over generated instances.
    Check {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Largest vertex count; exact count with --exhaustive.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Random seed; a fresh one is chosen and printed when absent.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "char", default_value_t = 2)]
        characteristic: u32,
        /// graph, chordal, v-tree(D), pc-uniform(D) or exhaustive-graphs.
        #[arg(long, value_parser = parse_kind)]
        kind: Option<Kind>,
        /// Every labeled graph on exactly n vertices.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        verify: bool,
        /// Edge probability for random kinds.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Redraw random instances with more edges.
        #[arg(long)]
        max_edges: Option<usize>,
        /// Deliberately break the oracle to test the harness.
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Oracle,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Grid,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    OracleOffByOne,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    let (name, degree) = match s.split_once(['(', ':']) {
        Some((name, rest)) => {
            let digits = rest.trim_end_matches(')');
            (name, Some(digits.parse::<usize>().map_err(|_| format!("bad uniformity in `{s}`"))?))
        }
        None => (s, None),
    };
    let d = degree.unwrap_or(3);
    match name {
        "graph" if degree.is_none() => Ok(Kind::Graph),
        "chordal" if degree.is_none() => Ok(Kind::Chordal),
        "exhaustive-graphs" if degree.is_none() => Ok(Kind::ExhaustiveGraphs),
        "v-tree" => Ok(Kind::VTree(d)),
        "pc-uniform" => Ok(Kind::PcUniform(d)),
        _ => Err(format!("unknown kind `{s}`")),
    }
}

/// A failure with its exit code.
struct Exit(u8, String);

impl Exit {
    fn invalid(e: impl std::fmt::Display) -> Self {
        Exit(INVALID, e.to_string())
    }
}

type Outcome = Result<(), Exit>;

fn read_input(path: &PathBuf) -> Result<Hypergraph, Exit> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Exit::invalid(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Exit::invalid(format!("{}: {e}", path.display())))?
    };
    format::parse(&text).map_err(|e| Exit::invalid(format!("{}: {e}", path.display())))
}

fn field(p: u32) -> Result<FieldChar, Exit> {
    FieldChar::new(p).map_err(|e| Exit(USAGE, e.to_string()))
}

fn name(h: &Hypergraph, e: VertexSet) -> String {
    h.edge_label(e)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Oracle failures other than size caps are bugs, not user errors.
fn oracle_table(h: &Hypergraph, p: FieldChar) -> Result<BettiTable, Exit> {
    taylor_betti(&edge_ideal(h), p).map_err(|e| match e {
        Error::TooManyGenerators { .. } => Exit(INAPPLICABLE, format!("oracle: {e}")),
        e => Exit::invalid(e),
    })
}

fn cmd_betti(file: &PathBuf, method: Method, p: u32, fmt: Format, verify: bool) -> Outcome {
    let p = field(p)?;
    let h = read_input(file)?;
    let triangulated = || structure::is_triangulated(&h).unwrap_or(false);
    let use_recursion = match method {
        Method::Recursive => {
            if !h.is_edgeless() && !triangulated() {
                return Err(Exit(INAPPLICABLE, "recursive method needs a triangulated uniform hypergraph".into()));
            }
            true
        }
        Method::Oracle => false,
        Method::Auto => h.is_edgeless() || triangulated(),
    };
    let (table, label, characteristic) = if use_recursion {
        let options = RecursionOptions { verify, memo: true };
        let (table, _) = recursive_betti_with(&h, options).map_err(|e| match e {
            Error::Verification(_) => Exit(VIOLATION, e.to_string()),
            e => Exit(INAPPLICABLE, format!("recursion: {e}")),
        })?;
        (table, "recursive", None)
    } else {
        (oracle_table(&h, p)?, "oracle", Some(p.p()))
    };
    match fmt {
        Format::Grid => {
            print!("{}", format::render_grid(&table));
            if !table.is_empty() {
                let (reg, pdim) = table_invariants(&table);
                let field = characteristic.map(|c| format!(", char {c}")).unwrap_or_default();
                println!("reg={reg}, pdim={pdim} ({label}{field})");
            }
        }
        Format::Csv => print!("{}", format::render_csv(&table)),
        Format::Json => print!("{}", format::render_json(&BettiReport::new(&h, &table, label, characteristic))),
    }
    Ok(())
}

fn cmd_invariants(file: &PathBuf, p: u32) -> Outcome {
    let p = field(p)?;
    let h = read_input(file)?;
    println!("n: {}", h.n());
    let d = h.uniformity().degree();
    match d {
        Some(d) => println!("d: {d}"),
        None if h.is_edgeless() => println!("d: none (no edges)"),
        None => println!("d: non-uniform"),
    }
    println!("edges: {}", h.edge_count());
    let pc = d.is_some() && metric::is_properly_connected(&h).map_err(Exit::invalid)?.0;
    println!("properly-connected: {}", if d.is_some() { yes(pc) } else { "n/a" });
    let triangulated = pc && structure::is_triangulated(&h).map_err(Exit::invalid)?;
    if pc {
        let how = if h.covered_vertices().len() <= EXHAUSTIVE_CAP {
            let exact = structure::is_triangulated_exact(&h).map_err(Exit::invalid)?;
            if exact != triangulated {
                return Err(Exit(VIOLATION, "exhaustive and elimination-order checks disagree".into()));
            }
            "exhaustive check"
        } else {
            "elimination order"
        };
        println!("triangulated: {} ({how})", yes(triangulated));
    } else {
        println!("triangulated: no");
    }
    if let (Some(d), false) = (d, h.is_edgeless()) {
        println!("diam: {}", metric::diameter(&h).map_err(Exit::invalid)?);
        let (c, _) = metric::max_pairwise_t_disjoint(&h, d + 1).map_err(Exit::invalid)?;
        println!("c (pairwise {}-disjoint): {c}", d + 1);
    }
    println!("matching number: {}", matching_number(&h).map_err(Exit::invalid)?);
    let ideal = edge_ideal(&h);
    if !h.is_edgeless() {
        println!("cover number: {}", height(&ideal));
        println!("unmixed: {}", yes(is_unmixed(&h)));
    }
    let table = if triangulated {
        recursive_betti_with(&h, RecursionOptions::default()).map(|t| (t.0, "recursive".to_string())).ok()
    } else {
        taylor_betti(&ideal, p).map(|t| (t, format!("oracle, char {}", p.p()))).ok()
    };
    match table {
        Some((t, how)) => {
            let (reg, pdim) = table_invariants(&t);
            println!("reg: {reg} ({how})");
            println!("pdim: {pdim}");
            if let Some(d) = d {
                println!("linear resolution: {}", yes(has_linear_resolution(&t, d)));
            }
        }
        None => println!("reg, pdim: unavailable (more than {} edges)", edge_betti::oracle::DEFAULT_CAP),
    }
    if !h.is_edgeless() {
        let leaves = |test: fn(&Hypergraph, VertexSet) -> edge_betti::Result<bool>| -> Result<String, Exit> {
            let mut hits = Vec::new();
            for &e in h.edges() {
                if test(&h, e).map_err(Exit::invalid)? {
                    hits.push(name(&h, e));
                }
            }
            Ok(if hits.is_empty() {
                "none".into()
            } else if hits.len() == h.edge_count() {
                "all".into()
            } else {
                hits.join(", ")
            })
        };
        println!("v-leaves: {}", leaves(structure::is_v_leaf)?);
        println!("f-leaves: {}", leaves(structure::is_f_leaf)?);
    }
    println!("splitting edges: {}", splitting_list(&h)?.unwrap_or_else(|| "none".into()));
    Ok(())
}

fn splitting_list(h: &Hypergraph) -> Result<Option<String>, Exit> {
    let witnesses = structure::splitting_edges(h).map_err(Exit::invalid)?;
    if witnesses.is_empty() {
        return Ok(None);
    }
    let parts: Vec<String> =
        witnesses.iter().map(|w| format!("{} (z={})", name(h, w.edge), h.label(w.z))).collect();
    Ok(Some(parts.join(", ")))
}

fn resolve_edge(h: &Hypergraph, spec: &str) -> Result<VertexSet, Exit> {
    if let Ok(k) = spec.parse::<usize>() {
        return h.edges().get(k).copied().ok_or_else(|| {
            Exit::invalid(format!("edge index {k} out of range ({} edges)", h.edge_count()))
        });
    }
    let mut set = VertexSet::EMPTY;
    for label in spec.split(',').map(str::trim) {
        let v = (0..h.n()).find(|&v| h.label(v) == label).ok_or_else(|| Exit::invalid(format!("unknown vertex `{label}`")))?;
        set.insert(v);
    }
    if !h.contains_edge(set) {
        return Err(Exit::invalid(format!("`{spec}` is not an edge")));
    }
    Ok(set)
}

fn cmd_distance(file: &PathBuf, first: &str, second: &str) -> Outcome {
    let h = read_input(file)?;
    let e = resolve_edge(&h, first)?;
    let f = resolve_edge(&h, second)?;
    let (distance, certificate) = metric::distance(&h, e, f).map_err(Exit::invalid)?;
    println!("distance {distance}");
    if let (Distance::Finite(_), Some(cert)) = (distance, certificate) {
        let chain: Vec<String> = cert.edges.iter().map(|&g| name(&h, g)).collect();
        println!("chain: {}", chain.join(" -> "));
        if !cert.links.is_empty() {
            let links: Vec<String> = cert.links.iter().map(|&v| h.label(v)).collect();
            println!("links: {}", links.join(" "));
        }
    }
    Ok(())
}

fn cmd_dual(file: &PathBuf) -> Outcome {
    let h = read_input(file)?;
    if h.is_edgeless() {
        println!("dual of the zero ideal is the unit ideal");
        return Ok(());
    }
    let dual = alexander_dual(&edge_ideal(&h));
    println!("{} generators", dual.len());
    for &m in dual.gens() {
        println!("{} (degree {})", Monomial::display_with(m, &h), m.degree());
    }
    Ok(())
}

fn cmd_split(file: &PathBuf) -> Outcome {
    let h = read_input(file)?;
    match splitting_list(&h)? {
        None => println!("no splitting edges"),
        Some(_) => {
            for w in structure::splitting_edges(&h).map_err(Exit::invalid)? {
                println!("{} (z={})", name(&h, w.edge), h.label(w.z));
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    suite: Suite,
    n: usize,
    trials: usize,
    seed: Option<u64>,
    p: u32,
    kind: Option<Kind>,
    exhaustive: bool,
    verify: bool,
    density: f64,
    max_edges: Option<usize>,
    fault: Option<FaultArg>,
) -> Outcome {
    let p = field(p)?;
    let kind = kind.unwrap_or(if exhaustive { Kind::ExhaustiveGraphs } else { suite.default_kind() });
    let source = if exhaustive || kind == Kind::ExhaustiveGraphs {
        if kind != Kind::ExhaustiveGraphs {
            return Err(Exit(USAGE, "--exhaustive enumerates graphs; drop --kind".into()));
        }
        Source::Exhaustive(n)
    } else {
        let seed = seed.unwrap_or_else(|| {
            let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos()).unwrap_or(0);
            nanos as u64
        });
        println!("seed: {seed}");
        let lo = match kind {
            Kind::VTree(d) | Kind::PcUniform(d) => d,
            _ => 2,
        };
        let mut spec = GenSpec::new(kind, n).vertices(lo.min(n)..=n).seed(seed).density(density);
        if let Some(cap) = max_edges {
            spec = spec.max_edges(cap);
        }
        Source::Random(spec)
    };
    let mut config = CheckConfig::new(suite, source, trials);
    config.p = p;
    config.verify = verify;
    config.fault = fault.map(|FaultArg::OracleOffByOne| Fault::OracleOffByOne);
    let report = check::run(&config).map_err(|e| match e {
        Error::CapExceeded(_) | Error::TooLarge { .. } => Exit(USAGE, e.to_string()),
        e => Exit(VIOLATION, e.to_string()),
    })?;
    println!("instances: {}", report.instances);
    for s in &report.suites {
        match &s.violation {
            None => println!("{}: pass ({} checked, {} skipped)", s.suite, s.passed, s.skipped),
            Some(v) => {
                println!("{}: FAIL at instance {}: {}", s.suite, v.index, v.message);
                println!(
                    "minimized reproducer ({} vertices, {} edges): {}",
                    v.reproducer.n(),
                    v.reproducer.edge_count(),
                    v.reproducer_message
                );
                print!("{}", format::to_text(&v.reproducer));
            }
        }
    }
    if let Some(stats) = report.generator {
        println!(
            "generator: {} accepted of {} draws (acceptance rate {:.4})",
            stats.accepted,
            stats.attempts,
            stats.acceptance_rate()
        );
    }
    if report.passed() {
        println!("result: pass");
        Ok(())
    } else {
        println!("result: violation");
        Err(Exit(VIOLATION, String::new()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Betti { file, method, characteristic, format, verify } => {
            cmd_betti(file, *method, *characteristic, *format, *verify)
        }
        Command::Invariants { file, characteristic } => cmd_invariants(file, *characteristic),
        Command::Distance { file, first, second } => cmd_distance(file, first, second),
        Command::Dual { file } => cmd_dual(file),
        Command::Split { file } => cmd_split(file),
        Command::Check {
            suite,
            n,
            trials,
            seed,
            characteristic,
            kind,
            exhaustive,
            verify,
            density,
            max_edges,
            inject_fault,
        } => cmd_check(
            *suite,
            *n,
            *trials,
            *seed,
            *characteristic,
            *kind,
            *exhaustive,
            *verify,
            *density,
            *max_edges,
            *inject_fault,
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code, message)) => {
            if !message.is_empty() {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}
