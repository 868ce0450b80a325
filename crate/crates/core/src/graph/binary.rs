use super::Adjacency;
use crate::error::{param, Error, Result};

const WORD: usize = 64;

/// Bit-packed symmetric 0/1 adjacency with a unit diagonal.
///
/// Each row is stored in full (`n` bits), so entry reads are O(1) and a
/// row prefix is read in O(len / 64) words. A 10000-node graph takes
/// about 12.5 MB.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryGraph {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for BinaryGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BinaryGraph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl BinaryGraph {
    /// Graph with self loops only.
    pub fn identity(n: usize) -> Self {
        let words_per_row = n.div_ceil(WORD);
        let mut g = BinaryGraph {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        };
        for i in 0..n {
            g.set_bit(i, i);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Builds a graph from undirected edges; self loops in the input are
    /// ignored and duplicates collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::identity(n);
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(param(format!("edge ({i}, {j}) out of range for n = {n}")));
            }
            if i != j {
                g.add_edge(i, j);
            }
        }
        Ok(g)
    }

    /// Builds a graph from a full 0/1 matrix.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::identity(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(param("adjacency matrix is not square"));
            }
            for (j, &v) in row.iter().enumerate() {
                if rows[j].get(i) != Some(&v) {
                    return Err(param(format!("entry ({i}, {j}) is not symmetric")));
                }
                match v {
                    0 | 1 if i == j => {}
                    0 => {}
                    1 => g.add_edge(i, j),
                    _ => return Err(param(format!("entry ({i}, {j}) is not 0/1"))),
                }
            }
        }
        g.check_invariants()?;
        Ok(g)
    }

    #[inline]
    fn set_bit(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / WORD] |= 1u64 << (j % WORD);
    }

    pub(crate) fn add_edge(&mut self, i: usize, j: usize) {
        self.set_bit(i, j);
        self.set_bit(j, i);
    }

    #[inline]
    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.row_words(i)[j / WORD] >> (j % WORD) & 1 == 1
    }

    /// Number of neighbors of `i`, counting its self loop.
    pub fn degree(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of undirected edges between distinct nodes.
    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|i| self.degree(i)).sum();
        (total - self.n) / 2
    }

    /// Nodes adjacent to both `i` and `j` (self loops included).
    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        self.row_words(i)
            .iter()
            .zip(self.row_words(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Neighbors of `i` in increasing order, including `i` itself.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + t)
            })
        })
    }

    /// Undirected edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn density(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(param("density needs at least two nodes"));
        }
        let pairs = self.n as f64 * (self.n as f64 - 1.0);
        Ok(2.0 * self.edge_count() as f64 / pairs)
    }

    pub fn check_invariants(&self) -> Result<()> {
        for i in 0..self.n {
            if !self.has_edge(i, i) {
                return Err(Error::Contract(format!("missing self loop at {i}")));
            }
            for j in self.neighbors(i) {
                if j >= self.n {
                    return Err(Error::Contract(format!("bit set past the last column in row {i}")));
                }
                if !self.has_edge(j, i) {
                    return Err(Error::Contract(format!("asymmetric entry ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    /// Induced subgraph on `nodes`; position `k` of the result is `nodes[k]`.
    pub fn induced(&self, nodes: &[usize]) -> BinaryGraph {
        let mut g = BinaryGraph::identity(nodes.len());
        for (a, &u) in nodes.iter().enumerate() {
            for (b, &v) in nodes.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}

impl Adjacency for BinaryGraph {
    type Value = i64;

    fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn entry(&self, i: usize, j: usize) -> i64 {
        self.has_edge(i, j) as i64
    }

    fn row_prefix(&self, i: usize, len: usize, out: &mut Vec<i64>) {
        out.clear();
        out.reserve(len);
        let words = self.row_words(i);
        for (k, &w) in words.iter().enumerate().take(len.div_ceil(WORD)) {
            let upto = (len - k * WORD).min(WORD);
            for b in 0..upto {
                out.push((w >> b & 1) as i64);
            }
        }
    }

    fn row_prefix_dot_signs(&self, i: usize, len: usize, signs: &[i8]) -> i64 {
        let mut acc = 0i64;
        for (k, &w) in self.row_words(i).iter().enumerate().take(len.div_ceil(WORD)) {
            let mut w = w;
            let upto = len - k * WORD;
            if upto < WORD {
                w &= (1u64 << upto) - 1;
            }
            while w != 0 {
                let j = k * WORD + w.trailing_zeros() as usize;
                acc += signs[j] as i64;
                w &= w - 1;
            }
        }
        acc
    }

    fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        self.neighbors(i).map(|j| x[j]).sum()
    }
}
