//! Plain-text graph blocks:
//!
//! ```text
//! graph k=2
//! nodes 3
//! label 1 0
//! label 2 2
//! edge 0 1
//! edge 1 2 2   # optional multiplicity
//! ```
//!
//! Node indices are 0-based; `#` starts a comment.

use super::LabeledGraph;
use crate::error::{Error, Result};

struct Block {
    k: usize,
    line: usize,
    nodes: Option<usize>,
    labels: Vec<Option<usize>>,
    edges: Vec<(usize, usize, u32, usize)>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::ParseAt {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

fn number<T: std::str::FromStr>(line: usize, tok: Option<&(usize, &str)>, what: &str, eol: usize) -> Result<T> {
    let (col, s) = tok.ok_or_else(|| err(line, eol, format!("missing {what}")))?;
    s.parse()
        .map_err(|_| err(line, *col, format!("expected {what}, found `{s}`")))
}

fn finish(b: Block) -> Result<LabeledGraph> {
    let n = b
        .nodes
        .ok_or_else(|| err(b.line, 1, "graph block has no `nodes` line"))?;
    let mut labels = Vec::with_capacity(b.k);
    for (i, l) in b.labels.iter().enumerate() {
        labels.push(l.ok_or_else(|| err(b.line, 1, format!("label {} is never assigned", i + 1)))?);
    }
    let mut g = LabeledGraph::new(n, labels).map_err(|e| err(b.line, 1, e.to_string()))?;
    for (u, v, m, line) in b.edges {
        g.add_edge(u, v, m).map_err(|e| err(line, 1, e.to_string()))?;
    }
    Ok(g)
}

pub fn parse_graphs(text: &str) -> Result<Vec<LabeledGraph>> {
    let mut out = Vec::new();
    let mut cur: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        let eol = raw.len() + 1;
        if head == "graph" {
            if let Some(b) = cur.take() {
                out.push(finish(b)?);
            }
            let k = match toks.get(1) {
                None => 0,
                Some(&(c, t)) => {
                    let v = t
                        .strip_prefix("k=")
                        .ok_or_else(|| err(line, c, format!("expected `k=<k>`, found `{t}`")))?;
                    v.parse()
                        .map_err(|_| err(line, c + 2, format!("bad label count `{v}`")))?
                }
            };
            cur = Some(Block {
                k,
                line,
                nodes: None,
                labels: vec![None; k],
                edges: Vec::new(),
            });
            continue;
        }
        let b = cur
            .as_mut()
            .ok_or_else(|| err(line, col, "expected `graph` to open a block"))?;
        match head {
            "nodes" => {
                if b.nodes.is_some() {
                    return Err(err(line, col, "duplicate `nodes` line"));
                }
                b.nodes = Some(number(line, toks.get(1), "node count", eol)?);
            }
            "label" => {
                let i: usize = number(line, toks.get(1), "label index", eol)?;
                let v: usize = number(line, toks.get(2), "node index", eol)?;
                if i == 0 || i > b.k {
                    return Err(err(line, toks[1].0, format!("label {i} outside 1..={}", b.k)));
                }
                if b.labels[i - 1].is_some() {
                    return Err(err(line, toks[1].0, format!("duplicate label {i}")));
                }
                if b.labels.contains(&Some(v)) {
                    return Err(err(line, toks[2].0, format!("node {v} already carries a label")));
                }
                if b.nodes.is_some_and(|n| v >= n) {
                    return Err(err(line, toks[2].0, format!("node {v} out of range")));
                }
                b.labels[i - 1] = Some(v);
            }
            "edge" => {
                let u: usize = number(line, toks.get(1), "node index", eol)?;
                let v: usize = number(line, toks.get(2), "node index", eol)?;
                let m: u32 = match toks.get(3) {
                    Some(t) => number(line, Some(t), "multiplicity", eol)?,
                    None => 1,
                };
                if let Some(n) = b.nodes {
                    for (t, x) in [(1, u), (2, v)] {
                        if x >= n {
                            return Err(err(line, toks[t].0, format!("node {x} out of range")));
                        }
                    }
                }
                b.edges.push((u, v, m, line));
            }
            other => return Err(err(line, col, format!("unknown directive `{other}`"))),
        }
    }
    if let Some(b) = cur {
        out.push(finish(b)?);
    }
    Ok(out)
}

/// Parse exactly one graph block.
pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    let mut gs = parse_graphs(text)?;
    match gs.len() {
        1 => Ok(gs.pop().expect("one")),
        n => Err(Error::Parse(format!("expected one graph block, found {n}"))),
    }
}

pub fn format_graph(g: &LabeledGraph) -> String {
    let mut s = format!("graph k={}\nnodes {}\n", g.k(), g.node_count());
    for (i, v) in g.labels().iter().enumerate() {
        s.push_str(&format!("label {} {}\n", i + 1, v));
    }
    for (u, v, m) in g.edges() {
        if m == 1 {
            s.push_str(&format!("edge {u} {v}\n"));
        } else {
            s.push_str(&format!("edge {u} {v} {m}\n"));
        }
    }
    s
}
