//! Exact ordered-tuple motif sums.
//!
//! `tri3` and `path2` are the two three-node sums entering the pivotal
//! statistic; `raw1`..`raw5` are the five four-node sums behind the variance
//! estimator, *without* their `1/n^4` normalization (division happens in
//! [`crate::dimtest`], keeping everything here exact integers):
//!
//! ```text
//! tri3  = sum_{i!=j!=k}    A_ij A_jk A_ki
//! path2 = sum_{i!=j!=k}    A_ij A_ik
//! raw1  = sum_{i!=j!=k!=l} A_ij A_jk A_kl A_li A_ik
//! raw2  = sum_{i!=j!=k!=l} A_ij A_jk A_ki A_il
//! raw3  = sum_{i!=j!=k!=l} A_ij A_ik A_il
//! raw4  = sum_{i!=j!=k!=l} A_ij A_jk A_kl A_li
//! raw5  = sum_{i!=j!=k!=l} A_ij A_jk A_kl
//! ```
//!
//! [`motif_counts_oracle`] evaluates the defining sums by direct enumeration;
//! [`motif_counts_fast`] produces identical numbers from closed forms over
//! the bit-row kernels. One tempting closed form for `raw2`,
//! `diag(A^3 - 2A.*A^2)'A1 - 1'[A^2.*A + A^2.*A^2]1`, is wrong: it evaluates
//! to -36 on the complete graph K4 where the defining sum gives 24 (the
//! Hadamard square keeps diagonal terms the sum excludes). The identity used
//! here, `raw2 = diag(A^3) . degrees - 2 tr(A^3)`, is validated against the
//! enumeration oracle. Closed-form terms involving `tr(A)` or `tr(A .* A^3)`
//! vanish under the zero-diagonal invariant and are dropped.

use crate::graph::AdjacencyMatrix;

/// Ordered-tuple motif counts of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifCounts {
    pub n: usize,
    pub tri3: u64,
    pub path2: u64,
    pub raw1: u64,
    pub raw2: u64,
    pub raw3: u64,
    pub raw4: u64,
    pub raw5: u64,
}

/// Direct enumeration of the defining sums over all ordered distinct
/// triples and quadruples. Exact but `O(n^4)`; meant for small graphs and as
/// the ground truth the fast path is checked against.
pub fn motif_counts_oracle(a: &AdjacencyMatrix) -> MotifCounts {
    let n = a.n();
    // Dense byte copy keeps the inner loops free of bit extraction.
    let mut adj = vec![0u8; n * n];
    for i in 0..n {
        for j in a.neighbors(i) {
            adj[i * n + j] = 1;
        }
    }
    let at = |i: usize, j: usize| -> u64 { adj[i * n + j] as u64 };

    let mut tri3 = 0u64;
    let mut path2 = 0u64;
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                tri3 += at(i, j) * at(j, k) * at(k, i);
                path2 += at(i, j) * at(i, k);
            }
        }
    }

    let mut raw = [0u64; 5];
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                for l in 0..n {
                    if l == i || l == j || l == k {
                        continue;
                    }
                    raw[0] += at(i, j) * at(j, k) * at(k, l) * at(l, i) * at(i, k);
                    raw[1] += at(i, j) * at(j, k) * at(k, i) * at(i, l);
                    raw[2] += at(i, j) * at(i, k) * at(i, l);
                    raw[3] += at(i, j) * at(j, k) * at(k, l) * at(l, i);
                    raw[4] += at(i, j) * at(j, k) * at(k, l);
                }
            }
        }
    }

    MotifCounts {
        n,
        tri3,
        path2,
        raw1: raw[0],
        raw2: raw[1],
        raw3: raw[2],
        raw4: raw[3],
        raw5: raw[4],
    }
}

/// Closed-form evaluation of the same counts from bit-row kernels.
///
/// With `d` the degree vector, `c_ik` the common-neighbor count, and the
/// walk ingredients from [`AdjacencyMatrix::closed_walk_counts`]:
///
/// ```text
/// tri3  = tr(A^3)
/// path2 = 1'A^2 1 - 1'A 1
/// raw1  = sum_{ik} A_ik (c_ik^2 - c_ik)
/// raw2  = sum_i diag(A^3)_i (d_i - 2)
/// raw3  = sum_i d_i (d_i - 1)(d_i - 2)
/// raw4  = tr(A^4) - 2 sum_i d_i^2 + sum_i d_i
/// raw5  = 1'A^3 1 - 2 1'A^2 1 + 1'A 1 - tr(A^3)
/// ```
///
/// Cost is `O(n^2 * n/64)` word operations; all arithmetic stays in `u64`
/// (sums are bounded by `n^4`, within range for the supported node counts).
pub fn motif_counts_fast(a: &AdjacencyMatrix) -> MotifCounts {
    let n = a.n();
    let walks = a.closed_walk_counts();
    let degrees = a.degrees();
    let sum_d: u64 = degrees.iter().sum();
    let sum_d2 = walks.total_a2;

    let tri3 = walks.trace_a3;
    let path2 = sum_d2 - sum_d;

    let mut raw1 = 0u64;
    for i in 0..n {
        for k in a.neighbors(i) {
            if k <= i {
                continue;
            }
            let c = a.common_neighbors_unchecked(i, k);
            raw1 += 2 * (c * c - c);
        }
    }

    // Every node on a triangle has degree >= 2, so d - 2 never underflows
    // where diag(A^3) is nonzero.
    let raw2 = walks
        .diag_a3
        .iter()
        .zip(&degrees)
        .map(|(&t, &d)| if t == 0 { 0 } else { t * (d - 2) })
        .sum();

    let raw3 = degrees
        .iter()
        .map(|&d| if d >= 2 { d * (d - 1) * (d - 2) } else { 0 })
        .sum();

    let raw4 = walks.trace_a4 + sum_d - 2 * sum_d2;
    let raw5 = walks.total_a3 + sum_d - 2 * sum_d2 - tri3;

    MotifCounts {
        n,
        tri3,
        path2,
        raw1,
        raw2,
        raw3,
        raw4,
        raw5,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate_rgg, RggParams};
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn complete(n: usize) -> AdjacencyMatrix {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }
        AdjacencyMatrix::from_edge_pairs(n, &pairs).unwrap()
    }

    fn assert_counts(c: &MotifCounts, expected: [u64; 7]) {
        assert_eq!(
            [c.tri3, c.path2, c.raw1, c.raw2, c.raw3, c.raw4, c.raw5],
            expected
        );
    }

    #[test]
    fn k4_counts() {
        let expected = [24, 24, 24, 24, 24, 24, 24];
        assert_counts(&motif_counts_oracle(&complete(4)), expected);
        assert_counts(&motif_counts_fast(&complete(4)), expected);
    }

    #[test]
    fn star_counts() {
        let star = AdjacencyMatrix::from_edge_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let expected = [0, 6, 0, 0, 6, 0, 0];
        assert_counts(&motif_counts_oracle(&star), expected);
        assert_counts(&motif_counts_fast(&star), expected);
    }

    #[test]
    fn four_cycle_counts() {
        let c4 = AdjacencyMatrix::from_edge_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let expected = [0, 8, 0, 0, 0, 8, 8];
        assert_counts(&motif_counts_oracle(&c4), expected);
        assert_counts(&motif_counts_fast(&c4), expected);
    }

    #[test]
    fn empty_graph_counts_are_zero() {
        let empty = AdjacencyMatrix::empty(7).unwrap();
        assert_counts(&motif_counts_oracle(&empty), [0; 7]);
        assert_counts(&motif_counts_fast(&empty), [0; 7]);
    }

    /// All graphs on up to 4 nodes, by subset of the 6 possible edges.
    #[test]
    fn fast_matches_oracle_exhaustively_to_n4() {
        let all_pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for n in 1..=4usize {
            let pairs: Vec<_> = all_pairs
                .iter()
                .copied()
                .filter(|&(i, j)| i < n && j < n)
                .collect();
            for mask in 0..(1u32 << pairs.len()) {
                let chosen: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let a = AdjacencyMatrix::from_edge_pairs(n, &chosen).unwrap();
                assert_eq!(
                    motif_counts_fast(&a),
                    motif_counts_oracle(&a),
                    "mask {mask} n {n}"
                );
            }
        }
    }

    #[test]
    fn fast_matches_oracle_on_rgg_samples() {
        for seed in 0..20 {
            let params = RggParams::new(10, 2, 0.25, seed).unwrap();
            let (_, a) = generate_rgg(&params).unwrap();
            assert_eq!(motif_counts_fast(&a), motif_counts_oracle(&a));
        }
    }

    #[test]
    fn adding_an_edge_never_decreases_counts() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..40 {
            let n = 6 + (rng.next_u64() % 4) as usize;
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.next_f64() < 0.4 {
                        pairs.push((i, j));
                    }
                }
            }
            let base = AdjacencyMatrix::from_edge_pairs(n, &pairs).unwrap();
            let before = motif_counts_fast(&base);
            // first absent pair
            let absent = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .find(|&(i, j)| !base.has_edge(i, j));
            if let Some(extra) = absent {
                let mut with_extra = pairs.clone();
                with_extra.push(extra);
                let after =
                    motif_counts_fast(&AdjacencyMatrix::from_edge_pairs(n, &with_extra).unwrap());
                assert!(after.tri3 >= before.tri3);
                assert!(after.path2 >= before.path2);
                assert!(after.raw1 >= before.raw1);
                assert!(after.raw2 >= before.raw2);
                assert!(after.raw3 >= before.raw3);
                assert!(after.raw4 >= before.raw4);
                assert!(after.raw5 >= before.raw5);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn fast_matches_oracle_on_random_graphs(
            n in 5usize..11,
            edge_bits in proptest::collection::vec(any::<bool>(), 55),
            density_pick in 0usize..4,
        ) {
            let densities = [0.1, 0.3, 0.7, 1.0];
            let density = densities[density_pick];
            let mut pairs = Vec::new();
            let mut idx = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    // thin a uniform mask down to the target density
                    if edge_bits[idx % edge_bits.len()] && (idx as f64 * 0.618).fract() < density {
                        pairs.push((i, j));
                    }
                    idx += 1;
                }
            }
            let a = AdjacencyMatrix::from_edge_pairs(n, &pairs).unwrap();
            prop_assert_eq!(motif_counts_fast(&a), motif_counts_oracle(&a));
        }

        #[test]
        fn counts_are_isomorphism_invariant(
            seed in 0u64..1000,
            perm_seed in 0u64..1000,
        ) {
            let params = RggParams::new(9, 1, 0.2, seed).unwrap();
            let (_, a) = generate_rgg(&params).unwrap();
            let n = a.n();
            // Fisher-Yates from a seeded stream
            let mut perm: Vec<usize> = (0..n).collect();
            let mut rng = SplitMix64::new(perm_seed);
            for i in (1..n).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                perm.swap(i, j);
            }
            let relabeled: Vec<_> = a.edges().iter().map(|&(i, j)| (perm[i], perm[j])).collect();
            let b = AdjacencyMatrix::from_edge_pairs(n, &relabeled).unwrap();
            prop_assert_eq!(motif_counts_fast(&a), motif_counts_fast(&b));
        }

        #[test]
        fn divisibility_invariants(seed in 0u64..500) {
            let params = RggParams::new(11, 2, 0.3, seed).unwrap();
            let (_, a) = generate_rgg(&params).unwrap();
            let c = motif_counts_fast(&a);
            prop_assert_eq!(c.tri3 % 6, 0);
            prop_assert_eq!(c.path2 % 2, 0);
            prop_assert_eq!(c.raw4 % 8, 0);
            prop_assert!(c.tri3 <= c.path2);
        }
    }
}
