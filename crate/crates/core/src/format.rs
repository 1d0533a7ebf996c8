//! Line-oriented text formats for graphs, colorings and the objects the
//! constructions and searches produce.
//!
//! Graph file:
//!
//! ```text
//! # optional comment lines
//! n 4          first non-comment line, exactly once
//! bip 2        optional: vertices 0..2 form side A
//! e 0 2        one line per edge, in edge-index order
//! ```
//!
//! Coloring file: `s <colors>` followed by one `c <edge> <color>` per edge.

use std::fmt::Write as _;

use thiserror::Error;

use crate::construct::{Factorization, SupergraphWitness};
use crate::graph::{EdgeColoring, Embedding, Graph, GraphError};
use crate::patterns::PeelResult;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("{0}")]
    Incomplete(String),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines as (1-based line number, tokens).
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn number(line: usize, token: &str) -> Result<usize, FormatError> {
    token.parse().map_err(|_| {
        syntax(
            line,
            format!("expected a non-negative integer, found `{token}`"),
        )
    })
}

fn arity(line: usize, tokens: &[&str], want: usize) -> Result<(), FormatError> {
    if tokens.len() != want {
        return Err(syntax(
            line,
            format!(
                "`{}` takes {} argument(s), found {}",
                tokens[0],
                want - 1,
                tokens.len() - 1
            ),
        ));
    }
    Ok(())
}

/// Graph records plus the lines that carried them, for error reporting.
struct GraphRecords {
    vertex_count: usize,
    split: Option<(usize, usize)>,
    edges: Vec<(usize, usize)>,
    edge_lines: Vec<usize>,
}

fn graph_records<'a>(
    recs: impl Iterator<Item = (usize, Vec<&'a str>)>,
    mut extra: impl FnMut(usize, &[&str]) -> Result<bool, FormatError>,
) -> Result<GraphRecords, FormatError> {
    let mut vertex_count = None;
    let mut split = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    for (line, tokens) in recs {
        match (tokens[0], vertex_count) {
            ("n", None) => {
                arity(line, &tokens, 2)?;
                vertex_count = Some(number(line, tokens[1])?);
            }
            ("n", Some(_)) => return Err(syntax(line, "duplicate `n` line")),
            (_, None) => return Err(syntax(line, "first record must be `n <vertex_count>`")),
            ("bip", Some(_)) => {
                arity(line, &tokens, 2)?;
                if split.is_some() {
                    return Err(syntax(line, "duplicate `bip` line"));
                }
                split = Some((number(line, tokens[1])?, line));
            }
            ("e", Some(_)) => {
                arity(line, &tokens, 3)?;
                edges.push((number(line, tokens[1])?, number(line, tokens[2])?));
                edge_lines.push(line);
            }
            (_, Some(_)) => {
                if !extra(line, &tokens)? {
                    return Err(syntax(line, format!("unknown record `{}`", tokens[0])));
                }
            }
        }
    }
    let vertex_count =
        vertex_count.ok_or_else(|| FormatError::Incomplete("missing `n` line".into()))?;
    Ok(GraphRecords {
        vertex_count,
        split,
        edges,
        edge_lines,
    })
}

fn build_graph(recs: GraphRecords) -> Result<Graph, FormatError> {
    let GraphRecords {
        vertex_count,
        split,
        edges,
        edge_lines,
    } = recs;
    let g = Graph::new(vertex_count, edges).map_err(|e| locate(e, &edge_lines, 0))?;
    match split {
        None => Ok(g),
        Some((k, line)) => g
            .with_bipartition(k)
            .map_err(|e| locate(e, &edge_lines, line)),
    }
}

fn locate(err: GraphError, edge_lines: &[usize], fallback: usize) -> FormatError {
    let line = match err {
        GraphError::Loop { index, .. }
        | GraphError::EndpointOutOfRange { index, .. }
        | GraphError::BipartitionViolated { index, .. } => edge_lines[index],
        _ => fallback,
    };
    FormatError::Invalid { line, source: err }
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    build_graph(graph_records(records(text), |_, _| Ok(false))?)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    if let Some(k) = g.bipartition() {
        writeln!(out, "bip {k}").unwrap();
    }
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Parses a coloring file. Edge indices may appear in any order but each
/// exactly once, covering `0..edge_count`.
pub fn parse_coloring(text: &str, edge_count: usize) -> Result<EdgeColoring, FormatError> {
    let mut colors = None;
    let mut assignment: Vec<Option<usize>> = vec![None; edge_count];
    for (line, tokens) in records(text) {
        match tokens[0] {
            "s" if colors.is_none() => {
                arity(line, &tokens, 2)?;
                let s = number(line, tokens[1])?;
                if s == 0 {
                    return Err(syntax(line, "color count must be positive"));
                }
                colors = Some(s);
            }
            "s" => return Err(syntax(line, "duplicate `s` line")),
            "c" => {
                let s = colors.ok_or_else(|| syntax(line, "`c` before `s` line"))?;
                arity(line, &tokens, 3)?;
                let edge = number(line, tokens[1])?;
                let color = number(line, tokens[2])?;
                if edge >= edge_count {
                    return Err(syntax(
                        line,
                        format!("edge index {edge} but the host has {edge_count} edges"),
                    ));
                }
                if color >= s {
                    return Err(syntax(line, format!("color {color} outside [0, {s})")));
                }
                if assignment[edge].replace(color).is_some() {
                    return Err(syntax(line, format!("edge {edge} colored twice")));
                }
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
    }
    let colors = colors.ok_or_else(|| FormatError::Incomplete("missing `s` line".into()))?;
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| FormatError::Incomplete(format!("edge {i} has no color"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EdgeColoring::new(colors, assignment).expect("colors validated while parsing"))
}

pub fn serialize_coloring(col: &EdgeColoring) -> String {
    let mut out = String::new();
    writeln!(out, "s {}", col.colors()).unwrap();
    for (i, c) in col.assignment().iter().enumerate() {
        writeln!(out, "c {i} {c}").unwrap();
    }
    out
}

pub fn serialize_factorization(f: &Factorization) -> String {
    let mut out = String::new();
    for (k, factor) in f.factors.iter().enumerate() {
        for e in factor {
            writeln!(out, "f {k} {e}").unwrap();
        }
    }
    out
}

pub fn parse_factorization(text: &str) -> Result<Factorization, FormatError> {
    let mut factors: Vec<Vec<usize>> = Vec::new();
    for (line, tokens) in records(text) {
        if tokens[0] != "f" {
            return Err(syntax(line, format!("unknown record `{}`", tokens[0])));
        }
        arity(line, &tokens, 3)?;
        let k = number(line, tokens[1])?;
        let e = number(line, tokens[2])?;
        if factors.len() <= k {
            factors.resize(k + 1, Vec::new());
        }
        factors[k].push(e);
    }
    Ok(Factorization { factors })
}

/// Graph file of the supergraph followed by `vm <orig_vertex> <super_vertex>`
/// and `inc <orig_edge> <super_edge>` lines.
pub fn serialize_witness(w: &SupergraphWitness) -> String {
    let mut out = serialize_graph(&w.supergraph);
    for (v, s) in w.vertex_map.iter().enumerate() {
        writeln!(out, "vm {v} {s}").unwrap();
    }
    for (e, s) in w.inclusion.iter().enumerate() {
        writeln!(out, "inc {e} {s}").unwrap();
    }
    out
}

pub fn parse_witness(text: &str) -> Result<SupergraphWitness, FormatError> {
    let mut vertex_map = Vec::new();
    let mut inclusion = Vec::new();
    let recs = graph_records(records(text), |line, tokens| {
        let target = match tokens[0] {
            "vm" => &mut vertex_map,
            "inc" => &mut inclusion,
            _ => return Ok(false),
        };
        arity(line, tokens, 3)?;
        let (from, to) = (number(line, tokens[1])?, number(line, tokens[2])?);
        if from != target.len() {
            return Err(syntax(
                line,
                format!("expected index {}, found {from}", target.len()),
            ));
        }
        target.push(to);
        Ok(true)
    })?;
    let supergraph = build_graph(recs)?;
    Ok(SupergraphWitness {
        supergraph,
        vertex_map,
        inclusion,
    })
}

pub fn serialize_embedding(e: &Embedding) -> String {
    let mut out = String::new();
    for (p, h) in e.map.iter().enumerate() {
        writeln!(out, "m {p} {h}").unwrap();
    }
    out
}

pub fn parse_embedding(text: &str) -> Result<Embedding, FormatError> {
    let mut map = Vec::new();
    for (line, tokens) in records(text) {
        if tokens[0] != "m" {
            return Err(syntax(line, format!("unknown record `{}`", tokens[0])));
        }
        arity(line, &tokens, 3)?;
        let p = number(line, tokens[1])?;
        if p != map.len() {
            return Err(syntax(
                line,
                format!("expected pattern vertex {}, found {p}", map.len()),
            ));
        }
        map.push(number(line, tokens[2])?);
    }
    Ok(Embedding { map })
}

/// `r <vertex>` per deleted vertex (deletion order), then the core graph
/// file, then `vm <core_vertex> <input_vertex>` lines.
pub fn serialize_peel(p: &PeelResult) -> String {
    let mut out = String::new();
    for v in &p.removed {
        writeln!(out, "r {v}").unwrap();
    }
    out.push_str(&serialize_graph(&p.core));
    for (c, v) in p.vertex_map.iter().enumerate() {
        writeln!(out, "vm {c} {v}").unwrap();
    }
    out
}
