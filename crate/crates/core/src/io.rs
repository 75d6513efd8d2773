//! Text graph files and JSON result records.
//!
//! ```text
//! c comment
//! p edge 3 3          (or: p vert <n> <m>)
//! v 0 5               (vert mode only, one per vertex)
//! a 0 1 4             (tail head weight; no weight in vert mode)
//! ```
//!
//! Vertex labels are kept verbatim. When every label is an integer below n
//! the ids are the labels themselves; otherwise labels are numbered in order
//! of first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CutValue, EdgeCut, Mode, VertexCut, VertexSet, Weight, WeightedDigraph, MAX_WEIGHT};
use crate::rescale::lift_zero_weights;

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    /// Graph to solve: zero-weight edges dropped, or zero vertex weights lifted.
    pub graph: WeightedDigraph,
    /// Graph exactly as written.
    pub original: WeightedDigraph,
    pub labels: Vec<String>,
    /// True when vertex weights were lifted.
    pub lifted: bool,
}

impl GraphFile {
    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_graph(path: &Path, allow_zero_weights: bool) -> Result<GraphFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph_str(&text, allow_zero_weights)
}

struct Labels {
    n: usize,
    raw: Vec<(String, usize)>,
}

pub fn parse_graph_str(text: &str, allow_zero_weights: bool) -> Result<GraphFile> {
    let mut header: Option<(Mode, usize, usize, usize)> = None;
    let mut vlines: Vec<(String, Weight, usize)> = Vec::new();
    let mut alines: Vec<(String, String, Weight, usize)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = toks.first() else { continue };
        let weight = |t: &str| -> Result<Weight> {
            let w: Weight = t.parse().map_err(|_| perr(line, format!("bad weight `{t}`")))?;
            if (w == 0 && !allow_zero_weights) || w > MAX_WEIGHT {
                return Err(Error::WeightOutOfRange { weight: w, line: Some(line) });
            }
            Ok(w)
        };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                if toks.len() != 4 {
                    return Err(perr(line, "header must be `p <edge|vert> <n> <m>`"));
                }
                let mode = match toks[1] {
                    "edge" => Mode::EdgeWeighted,
                    "vert" => Mode::VertexWeighted,
                    other => return Err(perr(line, format!("unknown mode `{other}`"))),
                };
                let n = toks[2].parse().map_err(|_| perr(line, "bad vertex count"))?;
                let m = toks[3].parse().map_err(|_| perr(line, "bad edge count"))?;
                header = Some((mode, n, m, line));
            }
            "v" => {
                let Some((mode, ..)) = header else { return Err(perr(line, "vertex line before header")) };
                if mode != Mode::VertexWeighted {
                    return Err(perr(line, "vertex lines only appear in vert mode"));
                }
                if toks.len() != 3 {
                    return Err(perr(line, "vertex line must be `v <id> <weight>`"));
                }
                vlines.push((toks[1].to_string(), weight(toks[2])?, line));
            }
            "a" => {
                let Some((mode, ..)) = header else { return Err(perr(line, "arc line before header")) };
                let want = if mode == Mode::EdgeWeighted { 4 } else { 3 };
                if toks.len() != want {
                    let shape = if want == 4 { "`a <tail> <head> <weight>`" } else { "`a <tail> <head>`" };
                    return Err(perr(line, format!("arc line must be {shape}")));
                }
                let w = if want == 4 { weight(toks[3])? } else { 0 };
                alines.push((toks[1].to_string(), toks[2].to_string(), w, line));
            }
            other => return Err(perr(line, format!("unknown line type `{other}`"))),
        }
    }
    let (mode, n, m, hline) = header.ok_or_else(|| perr(0, "missing `p` header"))?;
    if alines.len() != m {
        return Err(perr(hline, format!("header declares {m} arcs, found {}", alines.len())));
    }
    if mode == Mode::VertexWeighted && vlines.len() != n {
        return Err(perr(hline, format!("header declares {n} vertices, found {} vertex lines", vlines.len())));
    }
    let mut labels = Labels { n, raw: Vec::new() };
    for (l, _, line) in &vlines {
        labels.raw.push((l.clone(), *line));
    }
    for (t, h, _, line) in &alines {
        labels.raw.push((t.clone(), *line));
        labels.raw.push((h.clone(), *line));
    }
    let (names, index) = labels.resolve()?;
    let mut edges: Vec<(usize, usize, Weight)> = Vec::with_capacity(m);
    for (t, h, w, line) in &alines {
        let (t, h) = (index[t.as_str()], index[h.as_str()]);
        if t == h {
            return Err(Error::SelfLoop { vertex: t, line: Some(*line) });
        }
        edges.push((t, h, *w));
    }
    let (graph, original, lifted) = match mode {
        Mode::EdgeWeighted => {
            let original = WeightedDigraph::edge_weighted_nonneg(n, edges.iter().copied())?;
            let graph = WeightedDigraph::edge_weighted(n, edges.iter().copied().filter(|e| e.2 > 0))?;
            (graph, original, false)
        }
        Mode::VertexWeighted => {
            let mut weights = vec![0; n];
            let mut seen = vec![false; n];
            for (l, w, line) in &vlines {
                let v = index[l.as_str()];
                if seen[v] {
                    return Err(perr(*line, format!("vertex `{l}` listed twice")));
                }
                seen[v] = true;
                weights[v] = *w;
            }
            let arcs = edges.iter().map(|e| (e.0, e.1));
            let original = WeightedDigraph::vertex_weighted_nonneg(weights.clone(), arcs.clone())?;
            if weights.contains(&0) {
                let lifted = lift_zero_weights(&weights, n)?;
                let graph = WeightedDigraph::vertex_weighted_nonneg(lifted, arcs)?;
                (graph, original, true)
            } else {
                (original.clone(), original, false)
            }
        }
    };
    Ok(GraphFile { graph, original, labels: names, lifted })
}

impl Labels {
    fn resolve(&self) -> Result<(Vec<String>, HashMap<&str, usize>)> {
        let numeric = self.raw.iter().all(|(l, _)| l.parse::<usize>().is_ok_and(|v| v < self.n));
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut names: Vec<String> = Vec::new();
        if numeric {
            names = (0..self.n).map(|v| v.to_string()).collect();
            for (l, _) in &self.raw {
                index.insert(l.as_str(), l.parse().expect("checked numeric"));
            }
            // "01" and "1" would alias; reject to keep labels verbatim
            if let Some((l, line)) = self.raw.iter().find(|(l, _)| names[index[l.as_str()]] != *l) {
                return Err(perr(*line, format!("label `{l}` is not in canonical form")));
            }
        } else {
            for (l, line) in &self.raw {
                if !index.contains_key(l.as_str()) {
                    if names.len() == self.n {
                        return Err(perr(*line, format!("more than {} distinct vertex labels", self.n)));
                    }
                    index.insert(l.as_str(), names.len());
                    names.push(l.clone());
                }
            }
            if names.len() != self.n {
                return Err(perr(0, format!("header declares {} vertices, found {} labels", self.n, names.len())));
            }
        }
        Ok((names, index))
    }
}

/// Serializes a graph in the text format, using `labels` when given.
/// Edge-mode files carry no vertex lines, so named isolated vertices are lost.
pub fn write_graph(g: &WeightedDigraph, labels: Option<&[String]>) -> String {
    let name = |v: usize| labels.map_or_else(|| v.to_string(), |l| l[v].clone());
    let mut out = String::new();
    let kind = if g.mode() == Mode::EdgeWeighted { "edge" } else { "vert" };
    writeln!(out, "p {kind} {} {}", g.n(), g.m()).unwrap();
    if g.mode() == Mode::VertexWeighted {
        for v in 0..g.n() {
            writeln!(out, "v {} {}", name(v), g.vertex_weight(v)).unwrap();
        }
    }
    for e in g.edges() {
        match g.mode() {
            Mode::EdgeWeighted => writeln!(out, "a {} {} {}", name(e.tail), name(e.head), e.weight).unwrap(),
            Mode::VertexWeighted => writeln!(out, "a {} {}", name(e.tail), name(e.head)).unwrap(),
        }
    }
    out
}

/// A vertex label as it appears in JSON: a number when numeric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Id(u64),
    Name(String),
}

impl Label {
    pub fn new(s: &str) -> Self {
        s.parse().map(Label::Id).unwrap_or_else(|_| Label::Name(s.to_string()))
    }

    pub fn text(&self) -> String {
        match self {
            Label::Id(v) => v.to_string(),
            Label::Name(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sides {
    Edge {
        #[serde(rename = "X")]
        x: Vec<Label>,
        #[serde(rename = "Y")]
        y: Vec<Label>,
    },
    Vertex {
        #[serde(rename = "L")]
        l: Vec<Label>,
        #[serde(rename = "S")]
        s: Vec<Label>,
        #[serde(rename = "R")]
        r: Vec<Label>,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BudgetStats {
    pub queries: u64,
    pub query_edges: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResultRecord {
    pub kind: String,
    pub value: CutValue,
    pub sides: Sides,
    pub epsilon: String,
    pub seed: u64,
    pub repeats: usize,
    pub trial_stats: Vec<CutValue>,
    pub budget_stats: BudgetStats,
}

fn labelled(set: &VertexSet, labels: &[String]) -> Vec<Label> {
    set.iter().map(|v| Label::new(&labels[v])).collect()
}

impl Sides {
    pub fn edge(cut: &EdgeCut, labels: &[String]) -> Self {
        Sides::Edge { x: labelled(&cut.x, labels), y: labelled(&cut.y, labels) }
    }

    pub fn vertex(cut: &VertexCut, labels: &[String]) -> Self {
        Sides::Vertex { l: labelled(&cut.l, labels), s: labelled(&cut.s, labels), r: labelled(&cut.r, labels) }
    }
}

/// Checks that a record's sides form a feasible cut of `g` with the stated
/// value, resolving labels through `file`.
pub fn validate_record(record: &ResultRecord, file: &GraphFile) -> Result<()> {
    let g = &file.original;
    let ids = |ls: &[Label]| -> Result<VertexSet> {
        ls.iter()
            .map(|l| file.id_of(&l.text()).ok_or_else(|| Error::InvalidCut(format!("unknown label {}", l.text()))))
            .collect()
    };
    let value = match &record.sides {
        Sides::Edge { x, y } => {
            let cut = EdgeCut::from_source_side(g, ids(x)?)?;
            if cut.y != ids(y)? {
                return Err(Error::InvalidCut("X and Y do not partition V".into()));
            }
            cut.value
        }
        Sides::Vertex { l, s, r } => VertexCut::from_parts(g, ids(l)?, ids(s)?, ids(r)?)?.value,
    };
    if value != record.value {
        return Err(Error::InvalidCut(format!("record says {} but the cut is worth {value}", record.value)));
    }
    Ok(())
}
