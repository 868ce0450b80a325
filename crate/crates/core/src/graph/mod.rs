//! Symmetric networks with self loops.
//!
//! Two storage kinds back the [`Graph`] type: a bit-packed [`BinaryGraph`]
//! and a dense [`WeightedGraph`]. Large edge lists are ingested into the
//! sparse [`EdgeListGraph`] and reduced to a dense sample before a design
//! is run on them.

mod binary;
mod edgelist;
mod generate;
mod sample;
mod view;
mod weighted;

pub use binary::BinaryGraph;
pub use edgelist::{from_edge_list, write_edge_list, EdgeListGraph};
pub use generate::{gen_er, gen_goe, gen_sbm, gen_sbm_with_labels, ErParams, GoeParams, SbmParams};
pub use view::RevealedView;
pub use weighted::WeightedGraph;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Entry type of an adjacency matrix.
///
/// Binary graphs use `i64` so imbalance state is carried in exact integer
/// arithmetic; weighted graphs use `f64`.
pub trait Scalar:
    Copy
    + Debug
    + Default
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;
    const ONE: Self;
    /// Arithmetic on this type is exact.
    const EXACT: bool;

    fn to_f64(self) -> f64;

    /// `self` multiplied by a sign in {-1, +1}.
    #[inline]
    fn signed(self, sign: i8) -> Self {
        if sign < 0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    fn square(self) -> Self {
        self * self
    }

    /// Equality used by cross-checks: exact for integers, relative
    /// tolerance for floats.
    fn close(self, other: Self) -> bool;
}

impl Scalar for i64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
    const EXACT: bool = true;

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }

    fn close(self, other: Self) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const EXACT: bool = false;

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    fn close(self, other: Self) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= 1e-9 * scale
    }
}

/// Read access to a symmetric adjacency matrix.
pub trait Adjacency: Sync {
    type Value: Scalar;

    fn n(&self) -> usize;

    fn entry(&self, i: usize, j: usize) -> Self::Value;

    /// Replaces `out` with `A[i][0..len]`.
    fn row_prefix(&self, i: usize, len: usize, out: &mut Vec<Self::Value>) {
        out.clear();
        out.extend((0..len).map(|j| self.entry(i, j)));
    }

    /// `sum_{j < len} A[i][j] * signs[j]`.
    fn row_prefix_dot_signs(&self, i: usize, len: usize, signs: &[i8]) -> Self::Value {
        let mut acc = Self::Value::ZERO;
        for (j, &s) in signs[..len].iter().enumerate() {
            acc += self.entry(i, j).signed(s);
        }
        acc
    }

    /// `sum_j A[i][j] * x[j]` over the full row.
    fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        x.iter()
            .enumerate()
            .map(|(j, &xj)| self.entry(i, j).to_f64() * xj)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Binary,
    Weighted,
}

/// A symmetric network with self loops on every node.
#[derive(Debug, Clone, PartialEq)]
pub enum Graph {
    Binary(BinaryGraph),
    Weighted(WeightedGraph),
}

impl Graph {
    pub fn n(&self) -> usize {
        match self {
            Graph::Binary(g) => g.n(),
            Graph::Weighted(g) => g.n(),
        }
    }

    pub fn kind(&self) -> GraphKind {
        match self {
            Graph::Binary(_) => GraphKind::Binary,
            Graph::Weighted(_) => GraphKind::Weighted,
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        match self {
            Graph::Binary(g) => g.entry(i, j) as f64,
            Graph::Weighted(g) => g.entry(i, j),
        }
    }

    pub fn as_binary(&self) -> Option<&BinaryGraph> {
        match self {
            Graph::Binary(g) => Some(g),
            Graph::Weighted(_) => None,
        }
    }

    pub fn as_weighted(&self) -> Option<&WeightedGraph> {
        match self {
            Graph::Weighted(g) => Some(g),
            Graph::Binary(_) => None,
        }
    }

    /// Fraction of off-diagonal pairs that are connected; self loops are
    /// not counted.
    pub fn density(&self) -> Result<f64> {
        match self {
            Graph::Binary(g) => g.density(),
            Graph::Weighted(_) => Err(Error::UnsupportedKind),
        }
    }

    /// Checks symmetry, the diagonal and the entry domain.
    pub fn check_invariants(&self) -> Result<()> {
        match self {
            Graph::Binary(g) => g.check_invariants(),
            Graph::Weighted(g) => g.check_invariants(),
        }
    }

    /// Uniform node-induced sample of `k` nodes, returned in a fresh
    /// uniformly random order.
    pub fn induced_subgraph_sample(&self, k: usize, seed: u64) -> Result<Graph> {
        let nodes = sample::sample_nodes(self.n(), k, seed)?;
        Ok(match self {
            Graph::Binary(g) => Graph::Binary(g.induced(&nodes)),
            Graph::Weighted(g) => Graph::Weighted(g.induced(&nodes)),
        })
    }
}

impl From<BinaryGraph> for Graph {
    fn from(g: BinaryGraph) -> Self {
        Graph::Binary(g)
    }
}

impl From<WeightedGraph> for Graph {
    fn from(g: WeightedGraph) -> Self {
        Graph::Weighted(g)
    }
}
