//! Whitespace-separated edge-list reader.
//!
//! One edge per line, two tokens; anything after the second token is
//! ignored. Lines starting with `#` or `%` and blank lines are skipped.
//! Tokens may be any strings and are relabeled to dense ids in order of
//! first appearance.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::error::ParseError;
use crate::graph::Graph;

/// A graph together with the original token of each node id.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

/// Builds a graph from unordered pairs of arbitrary ids. Self-loops are
/// dropped but their endpoint is kept as a node.
pub fn build_graph<T, I>(pairs: I) -> LoadedGraph
where
    T: AsRef<str>,
    I: IntoIterator<Item = (T, T)>,
{
    let mut interner = Interner::default();
    let mut edges = Vec::new();
    for (a, b) in pairs {
        let u = interner.id(a.as_ref());
        let v = interner.id(b.as_ref());
        edges.push((u, v));
    }
    LoadedGraph {
        graph: Graph::from_edges(interner.labels.len(), edges),
        labels: interner.labels,
    }
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph, ParseError> {
    let mut interner = Interner::default();
    let mut edges = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line.map_err(|source| ParseError::Io {
            line: Some(line_no),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(ParseError::Arity {
                line: line_no,
                found: 1,
            });
        };
        let u = interner.id(a);
        let v = interner.id(b);
        edges.push((u, v));
    }
    Ok(LoadedGraph {
        graph: Graph::from_edges(interner.labels.len(), edges),
        labels: interner.labels,
    })
}

pub fn load_edge_list(path: &Path) -> Result<LoadedGraph, ParseError> {
    let file = std::fs::File::open(path).map_err(|source| ParseError::Io { line: None, source })?;
    read_edge_list(std::io::BufReader::new(file))
}

/// Writes `u v` per edge using dense ids.
pub fn write_edge_list<W: std::io::Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

#[derive(Default)]
struct Interner {
    ids: HashMap<String, usize>,
    labels: Vec<String>,
}

impl Interner {
    fn id(&mut self, token: &str) -> usize {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = self.labels.len();
        self.ids.insert(token.to_owned(), id);
        self.labels.push(token.to_owned());
        id
    }
}
