//! Edge-list text format.
//!
//! ```text
//! # comment; everything after '#' is ignored
//! a b        an edge between labels a and b
//! c          a vertex (useful for isolated vertices)
//! w a 2.5    weight of vertex a (default 1)
//! ```
//!
//! Labels are whitespace-free tokens. Vertex ids follow first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_number(token: &str, line: usize) -> Result<f64> {
    token
        .parse::<f64>()
        .map_err(|_| parse_error(line, format!("`{token}` is not a number")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [v] => {
                b.vertex(v);
            }
            [a, c] => b.edge(a, c).map_err(|e| parse_error(line, e.to_string()))?,
            ["w", v, x] => {
                let w = parse_number(x, line)?;
                b.weight(v, w).map_err(|e| parse_error(line, e.to_string()))?;
            }
            _ => return Err(parse_error(line, format!("cannot parse `{}`", raw.trim()))),
        }
    }
    b.build()
}

/// Vertex weights from lines `label number` or `w label number`.
pub fn parse_weights(text: &str) -> Result<HashMap<String, f64>> {
    let mut out = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (label, value) = match tokens.as_slice() {
            [] => continue,
            [v, x] | ["w", v, x] => (*v, *x),
            _ => return Err(parse_error(line, format!("cannot parse `{}`", raw.trim()))),
        };
        out.insert(label.to_string(), parse_number(value, line)?);
    }
    Ok(out)
}

/// Applies `weights` by label; unknown labels are an error.
pub fn apply_weights(g: Graph, weights: &HashMap<String, f64>) -> Result<Graph> {
    let mut w = g.weights().to_vec();
    for (label, &x) in weights {
        let id = g.id_of(label).ok_or_else(|| Error::Precondition {
            op: "apply_weights",
            detail: format!("unknown vertex `{label}`"),
        })?;
        w[id] = x;
    }
    g.with_weights(w)
}

/// Writes edges, then isolated vertices, then non-unit weights.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    for (a, b) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(a), g.label(b));
    }
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        let _ = writeln!(out, "{}", g.label(v));
    }
    for v in g.vertices().filter(|&v| g.weight(v) != 1.0) {
        let _ = writeln!(out, "w {} {}", g.label(v), g.weight(v));
    }
    out
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

pub fn write_string(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_to_string(path)?)
}
