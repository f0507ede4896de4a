//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! V 3
//! 0 1 1
//! 1 2 2.5
//! ```
//!
//! The header gives the vertex count; each further line is `from to weight`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(from: usize, to: usize, weight: f64) -> Self {
        Edge { from, to, weight }
    }
}

/// Validated list of directed, positively weighted edges.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl EdgeList {
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidParameter(
                "vertex count must be positive".into(),
            ));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            for index in [e.from, e.to] {
                if index >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index,
                        vertex_count,
                    });
                }
            }
            if e.from == e.to {
                return Err(Error::SelfLoop(e.from));
            }
            if !(e.weight > 0.0 && e.weight.is_finite()) {
                return Err(Error::InvalidWeight {
                    from: e.from,
                    to: e.to,
                    weight: e.weight,
                    kind: "positively weighted",
                });
            }
            if !seen.insert((e.from, e.to)) {
                return Err(Error::DuplicateEdge {
                    from: e.from,
                    to: e.to,
                });
            }
        }
        Ok(EdgeList {
            vertex_count,
            edges,
        })
    }

    pub(crate) fn from_parts_unchecked(vertex_count: usize, edges: Vec<Edge>) -> Self {
        EdgeList {
            vertex_count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match vertex_count {
                None => {
                    if fields.len() != 2 || fields[0] != "V" {
                        return Err(err(format!("expected `V <count>`, found `{line}`")));
                    }
                    let count = fields[1]
                        .parse()
                        .map_err(|e| err(format!("bad vertex count `{}`: {e}", fields[1])))?;
                    vertex_count = Some(count);
                }
                Some(_) => {
                    if fields.len() != 3 {
                        return Err(err(format!("expected `from to weight`, found `{line}`")));
                    }
                    let from = fields[0]
                        .parse()
                        .map_err(|e| err(format!("bad vertex `{}`: {e}", fields[0])))?;
                    let to = fields[1]
                        .parse()
                        .map_err(|e| err(format!("bad vertex `{}`: {e}", fields[1])))?;
                    let weight = fields[2]
                        .parse()
                        .map_err(|e| err(format!("bad weight `{}`: {e}", fields[2])))?;
                    edges.push(Edge { from, to, weight });
                }
            }
        }
        let vertex_count = vertex_count.ok_or_else(|| Error::Parse {
            line: 0,
            message: "missing `V <count>` header".into(),
        })?;
        EdgeList::new(vertex_count, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("V {}\n", self.vertex_count);
        for e in &self.edges {
            // `{}` on f64 prints the shortest representation that parses back exactly.
            let _ = writeln!(out, "{} {} {}", e.from, e.to, e.weight);
        }
        out
    }
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<EdgeList> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    EdgeList::parse(&text)
}

pub fn write_edge_list(edges: &EdgeList, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, edges.to_text()).map_err(|e| Error::io(path, e))
}
