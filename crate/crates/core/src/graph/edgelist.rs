//! SNAP-style whitespace-separated edge lists.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{sample, BinaryGraph, Graph};
use crate::error::{Error, Result};

/// Sparse undirected graph as read from an edge list, with the original
/// node identifiers. Node `k` is the `k`-th identifier in order of first
/// appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListGraph {
    ids: Vec<String>,
    adjacency: Vec<Vec<u32>>,
    edges: usize,
}

/// Parses an edge list. Lines starting with `#` and blank lines are
/// skipped; every other line must hold exactly two tokens. Self loops
/// register their node but add no edge; duplicate edges collapse.
pub fn from_edge_list<R: BufRead>(reader: R) -> Result<EdgeListGraph> {
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut ids: Vec<String> = Vec::new();
    let mut adjacency: Vec<Vec<u32>> = Vec::new();

    let mut intern = |token: &str, ids: &mut Vec<String>, adjacency: &mut Vec<Vec<u32>>| -> u32 {
        if let Some(&k) = index.get(token) {
            return k;
        }
        let k = ids.len() as u32;
        index.insert(token.to_owned(), k);
        ids.push(token.to_owned());
        adjacency.push(Vec::new());
        k
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected two node identifiers, got {:?}", trimmed),
            });
        };
        let u = intern(a, &mut ids, &mut adjacency);
        let v = intern(b, &mut ids, &mut adjacency);
        if u != v {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
    }

    if ids.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut edges = 0;
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
        edges += list.len();
    }
    Ok(EdgeListGraph {
        ids,
        adjacency,
        edges: edges / 2,
    })
}

/// Writes one `i j` line per edge with `i < j`; isolated nodes are written
/// as a self loop `i i` so they survive a round trip.
pub fn write_edge_list<W: Write>(graph: &BinaryGraph, mut out: W) -> Result<()> {
    for i in 0..graph.n() {
        let mut isolated = true;
        for j in graph.neighbors(i) {
            if j != i {
                isolated = false;
            }
            if j > i {
                writeln!(out, "{i} {j}")?;
            }
        }
        if isolated {
            writeln!(out, "{i} {i}")?;
        }
    }
    Ok(())
}

impl EdgeListGraph {
    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        from_edge_list(BufReader::new(File::open(path)?))
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.adjacency[node]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u == v || self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Connected fraction of distinct node pairs.
    pub fn density(&self) -> Result<f64> {
        let n = self.n() as f64;
        if self.n() < 2 {
            return Err(crate::error::param("density needs at least two nodes"));
        }
        Ok(2.0 * self.edges as f64 / (n * (n - 1.0)))
    }

    /// Dense graph over the first-appearance order.
    pub fn to_graph(&self) -> Graph {
        let order: Vec<usize> = (0..self.n()).collect();
        Graph::Binary(self.induced(&order))
    }

    /// Dense induced subgraph; position `k` of the result is `nodes[k]`.
    pub fn induced(&self, nodes: &[usize]) -> BinaryGraph {
        let position: HashMap<u32, usize> = nodes.iter().enumerate().map(|(k, &u)| (u as u32, k)).collect();
        let mut g = BinaryGraph::identity(nodes.len());
        for (a, &u) in nodes.iter().enumerate() {
            for v in &self.adjacency[u] {
                if let Some(&b) = position.get(v) {
                    if a < b {
                        g.add_edge(a, b);
                    }
                }
            }
        }
        g
    }

    /// Uniform node-induced sample of `k` nodes in random arrival order.
    /// Also returns the sampled node indices in that order.
    pub fn induced_subgraph_sample(&self, k: usize, seed: u64) -> Result<(Graph, Vec<usize>)> {
        let nodes = sample::sample_nodes(self.n(), k, seed)?;
        Ok((Graph::Binary(self.induced(&nodes)), nodes))
    }
}
