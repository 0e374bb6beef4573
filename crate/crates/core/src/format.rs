//! Hypergraph input formats and Betti-table rendering.
//!
//! Text format, one item per line:
//!
//! ```text
//! # the square with a pendant
//! vertices: a b c d e
//! edge: a b
//! edge: b c
//! ```
//!
//! A `vertices:` line fixes the vertex order and must come before any edge.
//! Without it, labels are registered in order of first appearance. Labels are
//! whitespace-free tokens without `#` or `:`.
//!
//! The structured format is a JSON object `{"vertices": [...], "edges": [[...], ...]}`
//! with `vertices` optional. [`parse`] accepts either, picking JSON when the
//! first non-blank character is `{`.
//!
//! ```
//! use edge_betti::format::{parse, to_text};
//!
//! let h = parse("edge: a b e\nedge: a d e\nedge: b c e\nedge: c d e\n").unwrap();
//! assert_eq!(h.n(), 5);
//! assert_eq!(parse(&to_text(&h)).unwrap(), h);
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet, MAX_VERTICES};
use crate::oracle::{table_invariants, BettiTable};

/// Parses either input format.
pub fn parse(input: &str) -> Result<Hypergraph> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
    fixed: bool,
}

impl Labels {
    fn new() -> Self {
        Labels { names: Vec::new(), index: HashMap::new(), fixed: false }
    }

    fn register(&mut self, name: &str) -> std::result::Result<usize, String> {
        if let Some(&v) = self.index.get(name) {
            return Ok(v);
        }
        if self.fixed {
            return Err(format!("unknown vertex `{name}`"));
        }
        if self.names.len() == MAX_VERTICES {
            return Err(format!("more than {MAX_VERTICES} vertices"));
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }
}

fn valid_label(name: &str) -> bool {
    !name.is_empty() && !name.contains(|c: char| c.is_whitespace() || c == '#' || c == ':')
}

/// Splits a line into tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(k),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..k]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// Parses the line-based format.
pub fn parse_text(input: &str) -> Result<Hypergraph> {
    let mut labels = Labels::new();
    let mut edges: Vec<(usize, VertexSet)> = Vec::new();
    let mut seen_vertices = false;
    for (k, raw) in input.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap();
        if line.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: String| Error::Parse { line: line_no, column, message };
        let indent = line.len() - line.trim_start().len();
        let Some(colon) = line.find(':') else {
            return Err(err(indent + 1, "expected `vertices:` or `edge:`".into()));
        };
        let key = line[..colon].trim();
        let body = &line[colon + 1..];
        let offset = line[..colon + 1].chars().count();
        let items: Vec<(usize, &str)> = tokens(body).into_iter().map(|(c, t)| (c + offset, t)).collect();
        if let Some(&(c, t)) = items.iter().find(|(_, t)| !valid_label(t)) {
            return Err(err(c, format!("invalid label `{t}`")));
        }
        match key {
            "vertices" => {
                if seen_vertices {
                    return Err(err(indent + 1, "repeated `vertices:` line".into()));
                }
                if !edges.is_empty() {
                    return Err(err(indent + 1, "`vertices:` must precede every edge".into()));
                }
                seen_vertices = true;
                for &(c, t) in &items {
                    if labels.index.contains_key(t) {
                        return Err(err(c, format!("vertex `{t}` listed twice")));
                    }
                    labels.register(t).map_err(|m| err(c, m))?;
                }
                labels.fixed = true;
            }
            "edge" => {
                let mut set = VertexSet::EMPTY;
                for &(c, t) in &items {
                    let v = labels.register(t).map_err(|m| err(c, m))?;
                    if set.contains(v) {
                        return Err(err(c, format!("vertex `{t}` repeated in edge")));
                    }
                    set.insert(v);
                }
                edges.push((line_no, set));
            }
            other => return Err(err(indent + 1, format!("unknown key `{other}`"))),
        }
    }
    build(labels.names, edges)
}

/// Checks simplicity edge by edge so errors point at the offending line.
fn build(names: Vec<String>, edges: Vec<(usize, VertexSet)>) -> Result<Hypergraph> {
    let n = names.len();
    for (k, &(line, e)) in edges.iter().enumerate() {
        let located = |source: Error| Error::Located { line, source: Box::new(source) };
        if e.len() < 2 {
            return Err(located(Error::LoopEdge(e)));
        }
        for &(_, f) in &edges[..k] {
            if f.is_subset(e) {
                return Err(located(Error::ContainedEdge { inner: f, outer: e }));
            }
            if e.is_subset(f) {
                return Err(located(Error::ContainedEdge { inner: e, outer: f }));
            }
        }
    }
    Ok(Hypergraph::new(n, edges.into_iter().map(|(_, e)| e).collect())?.with_labels(names))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<String>>,
    edges: Vec<Vec<String>>,
}

/// Parses the structured format. Errors carry the JSON line and column;
/// simplicity errors are located by edge position (1-based) instead.
pub fn parse_json(input: &str) -> Result<Hypergraph> {
    let doc: Document = serde_json::from_str(input)
        .map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut labels = Labels::new();
    let invalid = |message: String| Error::Parse { line: 0, column: 0, message };
    if let Some(vs) = &doc.vertices {
        for v in vs {
            if labels.index.contains_key(v) {
                return Err(invalid(format!("vertex `{v}` listed twice")));
            }
            labels.register(v).map_err(invalid)?;
        }
        labels.fixed = true;
    }
    let mut edges = Vec::new();
    for (k, edge) in doc.edges.iter().enumerate() {
        let mut set = VertexSet::EMPTY;
        for name in edge {
            let v = labels.register(name).map_err(invalid)?;
            if set.contains(v) {
                return Err(invalid(format!("vertex `{name}` repeated in edge {}", k + 1)));
            }
            set.insert(v);
        }
        edges.push((k + 1, set));
    }
    build(labels.names, edges)
}

fn names(h: &Hypergraph) -> Vec<String> {
    (0..h.n()).map(|v| h.label(v)).collect()
}

/// Canonical text form: a `vertices:` line, then edges in canonical order.
///
/// Labels must be valid text tokens; use [`to_json`] otherwise.
pub fn to_text(h: &Hypergraph) -> String {
    let mut out = String::from("vertices:");
    for name in names(h) {
        write!(out, " {name}").unwrap();
    }
    out.push('\n');
    for &e in h.edges() {
        out.push_str("edge:");
        for v in e {
            write!(out, " {}", h.label(v)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Canonical structured form.
pub fn to_json(h: &Hypergraph) -> String {
    let doc = Document {
        vertices: Some(names(h)),
        edges: h.edges().iter().map(|e| e.iter().map(|v| h.label(v)).collect()).collect(),
    };
    serde_json::to_string(&doc).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Grid,
    Csv,
    Json,
}

/// Grid with rows `j - i` and columns `i`, headed by a `total:` row.
///
/// ```
/// use edge_betti::format::render_grid;
/// use edge_betti::oracle::BettiTable;
///
/// let t: BettiTable = [(0, 2, 5), (1, 3, 5), (2, 5, 1)].into_iter().collect();
/// let expected = "       0 1 2\ntotal: 5 5 1\n    2: 5 5 .\n    3: . . 1\n";
/// assert_eq!(render_grid(&t), expected);
/// ```
pub fn render_grid(table: &BettiTable) -> String {
    let Some(pdim) = table.pdim() else {
        return "zero ideal; reg=1, pdim=-1\n".into();
    };
    let rows: Vec<usize> = {
        let lo = table.iter().map(|(i, j, _)| j - i).min().unwrap();
        (lo..=table.reg().unwrap()).collect()
    };
    let mut cells: Vec<Vec<String>> = Vec::new();
    cells.push(std::iter::once(String::new()).chain((0..=pdim).map(|i| i.to_string())).collect());
    cells.push(std::iter::once("total:".into()).chain((0..=pdim).map(|i| table.total(i).to_string())).collect());
    for &r in &rows {
        let mut row = vec![format!("{r}:")];
        for i in 0..=pdim {
            let v = table.get(i, i + r);
            row.push(if v == 0 { ".".into() } else { v.to_string() });
        }
        cells.push(row);
    }
    let columns = pdim + 2;
    let widths: Vec<usize> = (0..columns).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap()).collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// `i,j,value` rows for the nonzero entries, with a header.
pub fn render_csv(table: &BettiTable) -> String {
    let mut out = String::from("i,j,value\n");
    for (i, j, v) in table.iter() {
        writeln!(out, "{i},{j},{v}").unwrap();
    }
    out
}

/// Machine-readable report; the schema ships with the guide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub n: usize,
    pub d: Option<usize>,
    pub edges: usize,
    pub method: String,
    pub characteristic: Option<u32>,
    pub entries: Vec<BettiEntry>,
    pub reg: i64,
    pub pdim: i64,
    pub linear: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub value: u64,
}

impl BettiReport {
    pub fn new(h: &Hypergraph, table: &BettiTable, method: &str, characteristic: Option<u32>) -> Self {
        let (reg, pdim) = table_invariants(table);
        let d = h.uniformity().degree();
        BettiReport {
            n: h.n(),
            d,
            edges: h.edge_count(),
            method: method.into(),
            characteristic,
            entries: table.iter().map(|(i, j, value)| BettiEntry { i, j, value }).collect(),
            reg,
            pdim,
            linear: d.is_some_and(|d| crate::oracle::has_linear_resolution(table, d)),
        }
    }

    pub fn table(&self) -> BettiTable {
        self.entries.iter().map(|e| (e.i, e.j, e.value)).collect()
    }
}

pub fn render_json(report: &BettiReport) -> String {
    serde_json::to_string_pretty(report).unwrap() + "\n"
}
