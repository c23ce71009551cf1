//! Plain-text edge lists.
//!
//! One edge per line, endpoints given by the first two whitespace- or
//! comma-separated tokens. Lines that are empty or start with `#` or `%` are
//! skipped, trailing tokens (weights) are ignored, self-loops are dropped and
//! counted, and duplicate or reversed duplicate edges collapse. Labels map to
//! indices in first-seen order.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

/// Parsed edge-list file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListDocument {
    /// Distinct labels in first-seen order.
    pub node_labels: Vec<String>,
    /// Deduplicated undirected edges as `(i, j)` label indices, `i < j`.
    pub edges: Vec<(usize, usize)>,
    pub skipped_self_loops: usize,
    pub deduplicated: usize,
    /// Lines that carried extra tokens beyond the two endpoints.
    pub ignored_extra_tokens: usize,
}

impl EdgeListDocument {
    pub fn node_count(&self) -> usize {
        self.node_labels.len()
    }

    /// Build the adjacency matrix. `nodes_override` grows the node count
    /// beyond the observed labels (isolated nodes cannot appear in an edge
    /// list); it may not shrink it.
    pub fn to_matrix(&self, nodes_override: Option<usize>) -> Result<AdjacencyMatrix> {
        let observed = self.node_count();
        let n = match nodes_override {
            Some(n) if n < observed => {
                return Err(Error::InvalidParams(format!(
                    "node override {n} is below the {observed} labels observed"
                )));
            }
            Some(n) => n,
            None => observed,
        };
        AdjacencyMatrix::from_edge_pairs(n, &self.edges)
    }
}

/// Parse an edge list from raw bytes.
pub fn parse_edge_list(bytes: &[u8]) -> Result<EdgeListDocument> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Encoding)?;
    let mut labels: Vec<String> = Vec::new();
    let mut index_of: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut skipped_self_loops = 0;
    let mut deduplicated = 0;
    let mut ignored_extra_tokens = 0;

    let intern = |label: &str, labels: &mut Vec<String>, index_of: &mut HashMap<String, usize>| {
        if let Some(&idx) = index_of.get(label) {
            idx
        } else {
            let idx = labels.len();
            labels.push(label.to_string());
            index_of.insert(label.to_string(), idx);
            idx
        }
    };

    for (line_no, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty());
        let first = match tokens.next() {
            Some(t) => t,
            None => continue, // separators only, treat as blank
        };
        let second = tokens.next().ok_or_else(|| Error::Parse {
            line: line_no + 1,
            message: format!("expected two endpoint labels, found only {first:?}"),
        })?;
        if tokens.next().is_some() {
            ignored_extra_tokens += 1;
        }

        let a = intern(first, &mut labels, &mut index_of);
        let b = intern(second, &mut labels, &mut index_of);
        if a == b {
            skipped_self_loops += 1;
            continue;
        }
        let key = (a.min(b), a.max(b));
        if seen.insert(key) {
            edges.push(key);
        } else {
            deduplicated += 1;
        }
    }

    Ok(EdgeListDocument {
        node_labels: labels,
        edges,
        skipped_self_loops,
        deduplicated,
        ignored_extra_tokens,
    })
}

/// Write a graph as an edge list: optional `#`-prefixed header lines, then
/// one ascending `i j` pair per line.
pub fn write_edge_list<W: Write>(
    out: &mut W,
    a: &AdjacencyMatrix,
    header_lines: &[String],
) -> io::Result<()> {
    for line in header_lines {
        writeln!(out, "# {line}")?;
    }
    for (i, j) in a.edges() {
        writeln!(out, "{i} {j}")?;
    }
    Ok(())
}
