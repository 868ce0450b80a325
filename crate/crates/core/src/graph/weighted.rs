use super::Adjacency;
use crate::error::{param, Error, Result};

/// Dense symmetric real-weighted adjacency.
///
/// All diagonal entries share one value, 1 for every generated graph.
/// [`WeightedGraph::scaled`] multiplies the whole matrix, diagonal
/// included, so imbalance is homogeneous in the scale factor.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    diagonal: f64,
    data: Vec<f64>,
}

impl WeightedGraph {
    /// Unit diagonal and no off-diagonal weight.
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        WeightedGraph { n, diagonal: 1.0, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::identity(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(param("adjacency matrix is not square"));
            }
            for (j, &w) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if !w.is_finite() || rows[j][i] != w {
                    return Err(param(format!("entry ({i}, {j}) is not a finite symmetric weight")));
                }
                g.data[i * n + j] = w;
            }
        }
        Ok(g)
    }

    pub(crate) fn set_weight(&mut self, i: usize, j: usize, w: f64) {
        self.data[i * self.n + j] = w;
        self.data[j * self.n + i] = w;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonal(&self) -> f64 {
        self.diagonal
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Every entry multiplied by `c`.
    pub fn scaled(&self, c: f64) -> WeightedGraph {
        WeightedGraph {
            n: self.n,
            diagonal: self.diagonal * c,
            data: self.data.iter().map(|w| w * c).collect(),
        }
    }

    /// Off-diagonal weights `A[i][j]` with `i < j`, row by row.
    pub fn off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| self.weight(i, j)))
    }

    pub fn check_invariants(&self) -> Result<()> {
        for i in 0..self.n {
            if self.weight(i, i) != self.diagonal {
                return Err(Error::Contract(format!(
                    "diagonal entry {i} differs from {}",
                    self.diagonal
                )));
            }
            for j in i + 1..self.n {
                let w = self.weight(i, j);
                if !w.is_finite() || w != self.weight(j, i) {
                    return Err(Error::Contract(format!("entry ({i}, {j}) is not finite and symmetric")));
                }
            }
        }
        Ok(())
    }

    pub fn induced(&self, nodes: &[usize]) -> WeightedGraph {
        let k = nodes.len();
        let mut data = Vec::with_capacity(k * k);
        for &u in nodes {
            data.extend(nodes.iter().map(|&v| self.weight(u, v)));
        }
        WeightedGraph {
            n: k,
            diagonal: self.diagonal,
            data,
        }
    }
}

impl Adjacency for WeightedGraph {
    type Value = f64;

    fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn entry(&self, i: usize, j: usize) -> f64 {
        self.weight(i, j)
    }

    fn row_prefix(&self, i: usize, len: usize, out: &mut Vec<f64>) {
        out.clear();
        out.extend_from_slice(&self.data[i * self.n..i * self.n + len]);
    }

    fn row_prefix_dot_signs(&self, i: usize, len: usize, signs: &[i8]) -> f64 {
        self.data[i * self.n..i * self.n + len]
            .iter()
            .zip(signs)
            .map(|(&w, &s)| if s < 0 { -w } else { w })
            .sum()
    }

    fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        self.data[i * self.n..(i + 1) * self.n]
            .iter()
            .zip(x)
            .map(|(w, v)| w * v)
            .sum()
    }
}
