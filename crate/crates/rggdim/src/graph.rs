//! Bit-packed adjacency matrices and closed-walk kernels.
//!
//! Rows are stored as `u64` words, one bit per potential neighbor, so
//! common-neighbor counts reduce to AND + popcount over row words and the
//! full pair census costs `O(n^2 * n/64)` word operations. Everything here is
//! exact integer arithmetic; the node-count cap keeps every walk sum within
//! `u64` (all sums computed here are bounded by `n^4`).

use crate::error::{Error, Result};

/// Symmetric 0/1 adjacency matrix with zero diagonal, one bit per entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

/// Closed-walk ingredients: `tr(A^3)`, `tr(A^4)`, `1'A^2 1`, `1'A^3 1`, and
/// the per-node diagonal of `A^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCounts {
    pub trace_a3: u64,
    pub trace_a4: u64,
    pub total_a2: u64,
    pub total_a3: u64,
    pub diag_a3: Vec<u64>,
}

impl AdjacencyMatrix {
    /// Node-count cap: `n^4` must fit in `u64` for the walk and motif sums.
    pub const MAX_NODES: usize = 55_000;

    /// Edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams(
                "graph must have at least one node".into(),
            ));
        }
        if n > Self::MAX_NODES {
            return Err(Error::InvalidParams(format!(
                "graph on {n} nodes exceeds the supported maximum of {}",
                Self::MAX_NODES
            )));
        }
        let words_per_row = n.div_ceil(64);
        Ok(Self {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        })
    }

    /// Build from undirected index pairs. Self-pairs are ignored and
    /// duplicates are idempotent.
    pub fn from_edge_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut a = Self::empty(n)?;
        for &(i, j) in pairs {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            if i != j {
                a.set_edge(i, j);
            }
        }
        Ok(a)
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j && i < self.n && j < self.n);
        self.bits[i * self.words_per_row + j / 64] |= 1u64 << (j % 64);
        self.bits[j * self.words_per_row + i / 64] |= 1u64 << (i % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Neighbor indices of node `i`, ascending.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| BitIter { word, base: w * 64 })
    }

    /// Per-node degrees (row popcounts).
    pub fn degrees(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|w| w.count_ones() as u64).sum())
            .collect()
    }

    pub fn edge_count(&self) -> u64 {
        self.degrees().iter().sum::<u64>() / 2
    }

    /// Undirected edge set as ascending `(i, j)` pairs with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.neighbors(i) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of nodes adjacent to both `i` and `j`; equals `(A^2)_{ij}` off
    /// the diagonal.
    pub fn common_neighbors(&self, i: usize, j: usize) -> Result<u64> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                n: self.n,
            });
        }
        if i == j {
            return Err(Error::SameNode(i));
        }
        Ok(self.common_neighbors_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn common_neighbors_unchecked(&self, i: usize, j: usize) -> u64 {
        and_popcount(self.row(i), self.row(j))
    }

    /// One pass over all node pairs collecting the closed-walk ingredients.
    ///
    /// With `c_ik = (A^2)_{ik}` for `i != k`:
    /// `tr(A^3) = sum A_ik c_ik`, `tr(A^4) = sum c_ik^2 + sum d_i^2`,
    /// `1'A^2 1 = sum d_i^2`, `1'A^3 1 = d' A d`, and
    /// `diag(A^3)_i = sum_k A_ik c_ik`.
    pub fn closed_walk_counts(&self) -> WalkCounts {
        let n = self.n;
        let degrees = self.degrees();
        let mut trace_a3 = 0u64;
        let mut offdiag_c2 = 0u64;
        let mut diag_a3 = vec![0u64; n];
        for i in 0..n {
            let row_i = self.row(i);
            for k in (i + 1)..n {
                let c = and_popcount(row_i, self.row(k));
                if c != 0 {
                    offdiag_c2 += 2 * c * c;
                    if self.has_edge(i, k) {
                        trace_a3 += 2 * c;
                        diag_a3[i] += c;
                        diag_a3[k] += c;
                    }
                }
            }
        }
        let total_a2: u64 = degrees.iter().map(|&d| d * d).sum();
        let trace_a4 = offdiag_c2 + total_a2;
        let mut total_a3 = 0u64;
        for i in 0..n {
            let neighbor_degree_sum: u64 = self.neighbors(i).map(|k| degrees[k]).sum();
            total_a3 += degrees[i] * neighbor_degree_sum;
        }
        WalkCounts {
            trace_a3,
            trace_a4,
            total_a2,
            total_a3,
            diag_a3,
        }
    }
}

struct BitIter {
    word: u64,
    base: usize,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let bit = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.base + bit)
    }
}

#[inline]
fn and_popcount(a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as u64)
        .sum()
}
