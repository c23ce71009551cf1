//! The dimension test.
//!
//! For a hypothesized dimension `m0` the pivotal statistic is
//!
//! ```text
//! D_n = tri3 - (3/4)^m0 * path2
//! ```
//!
//! whose plug-in variance estimator combines the five four-node motif
//! densities `S_i = raw_i / n^4`:
//!
//! ```text
//! sigma2_hat = [36 - 24 t] S1 + [16 t^2 - 48 t] S2 + 8 t^2 S3 + 4 t^2 S4 + 8 t^2 S5,
//! t = (3/4)^m0.
//! ```
//!
//! Under the null the standardized statistic `sqrt(2) D_n / (n^2 sigma_hat)`
//! is asymptotically standard normal; the test rejects at level `alpha` when
//! its absolute value reaches `Z_{alpha/2}` (ties reject). The two-sided
//! p-value is `2 (1 - Phi(|T|))`.
//!
//! `sigma2_hat` can come out non-positive on small or pathological graphs
//! because the `S2` coefficient is negative; its positivity is only
//! guaranteed asymptotically under the model. Such graphs get a typed
//! [`Error::DegenerateVariance`] instead of a fabricated p-value.

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::motifs::{motif_counts_fast, MotifCounts};
use crate::normal::standard_normal_cdf;

/// Outcome of one dimension test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestResult {
    pub n: usize,
    pub m0: u32,
    pub alpha: f64,
    pub d_n: f64,
    pub sigma2_hat: f64,
    pub statistic: f64,
    pub p_value: f64,
    pub reject: bool,
}

/// One entry of a multi-`m0` scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScanOutcome {
    Tested(TestResult),
    /// The variance estimate was non-positive at this `m0`; the statistic is
    /// undefined but the ingredients are still reported.
    Degenerate {
        m0: u32,
        d_n: f64,
        sigma2_hat: f64,
    },
}

/// `(3/4)^m0` by repeated multiplication (exact to one ulp per step).
fn three_quarters_pow(m0: u32) -> f64 {
    let mut value = 1.0f64;
    for _ in 0..m0 {
        value *= 0.75;
    }
    value
}

fn validate_m0(m0: u32) -> Result<()> {
    if m0 < 1 {
        return Err(Error::InvalidParams(
            "hypothesized dimension m0 must be at least 1".into(),
        ));
    }
    Ok(())
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParams(format!(
            "significance level must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// The pivotal statistic `D_n = tri3 - (3/4)^m0 * path2`.
pub fn compute_dn(counts: &MotifCounts, m0: u32) -> f64 {
    counts.tri3 as f64 - three_quarters_pow(m0) * counts.path2 as f64
}

/// The plug-in variance estimator; requires at least 4 nodes (the four-node
/// sums are empty below that).
pub fn compute_sigma2_hat(counts: &MotifCounts, m0: u32) -> Result<f64> {
    validate_m0(m0)?;
    if counts.n < 4 {
        return Err(Error::TooFewNodes { n: counts.n });
    }
    let t = three_quarters_pow(m0);
    let n4 = (counts.n as f64).powi(4);
    let s1 = counts.raw1 as f64 / n4;
    let s2 = counts.raw2 as f64 / n4;
    let s3 = counts.raw3 as f64 / n4;
    let s4 = counts.raw4 as f64 / n4;
    let s5 = counts.raw5 as f64 / n4;
    Ok((36.0 - 24.0 * t) * s1
        + (16.0 * t * t - 48.0 * t) * s2
        + 8.0 * t * t * s3
        + 4.0 * t * t * s4
        + 8.0 * t * t * s5)
}

/// Run the test on precomputed motif counts.
pub fn test_from_counts(counts: &MotifCounts, m0: u32, alpha: f64) -> Result<TestResult> {
    validate_m0(m0)?;
    validate_alpha(alpha)?;
    let d_n = compute_dn(counts, m0);
    let sigma2_hat = compute_sigma2_hat(counts, m0)?;
    if sigma2_hat <= 0.0 || sigma2_hat.is_nan() {
        return Err(Error::DegenerateVariance { sigma2_hat });
    }
    let n = counts.n as f64;
    let statistic = std::f64::consts::SQRT_2 * d_n / (n * n * sigma2_hat.sqrt());
    let p_value = 2.0 * (1.0 - standard_normal_cdf(statistic.abs()));
    let reject = p_value <= alpha;
    Ok(TestResult {
        n: counts.n,
        m0,
        alpha,
        d_n,
        sigma2_hat,
        statistic,
        p_value,
        reject,
    })
}

/// Run the dimension test for hypothesis `m = m0` at level `alpha`.
pub fn run_test(a: &AdjacencyMatrix, m0: u32, alpha: f64) -> Result<TestResult> {
    let counts = motif_counts_fast(a);
    test_from_counts(&counts, m0, alpha)
}

/// Run the test for each `m0` in `m0_values`, computing motif counts once.
/// Degenerate-variance entries are reported in place rather than aborting
/// the scan.
pub fn scan_m0(a: &AdjacencyMatrix, m0_values: &[u32], alpha: f64) -> Result<Vec<ScanOutcome>> {
    validate_alpha(alpha)?;
    let counts = motif_counts_fast(a);
    let mut out = Vec::with_capacity(m0_values.len());
    for &m0 in m0_values {
        validate_m0(m0)?;
        let d_n = compute_dn(&counts, m0);
        let sigma2_hat = compute_sigma2_hat(&counts, m0)?;
        if sigma2_hat > 0.0 {
            out.push(ScanOutcome::Tested(test_from_counts(&counts, m0, alpha)?));
        } else {
            out.push(ScanOutcome::Degenerate {
                m0,
                d_n,
                sigma2_hat,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motifs::motif_counts_oracle;

    fn complete(n: usize) -> AdjacencyMatrix {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }
        AdjacencyMatrix::from_edge_pairs(n, &pairs).unwrap()
    }

    #[test]
    fn dn_on_triangle() {
        let counts = motif_counts_oracle(&complete(3));
        assert_eq!(compute_dn(&counts, 1), 6.0 - 0.75 * 6.0);
    }

    #[test]
    fn dn_on_empty_graph_is_zero() {
        let counts = motif_counts_oracle(&AdjacencyMatrix::empty(5).unwrap());
        assert_eq!(compute_dn(&counts, 3), 0.0);
    }

    #[test]
    fn dn_on_complete_graphs() {
        for n in [4usize, 6, 9] {
            let counts = motif_counts_fast(&complete(n));
            let tuples = (n * (n - 1) * (n - 2)) as f64;
            for m0 in 1..=4 {
                let expected = tuples * (1.0 - three_quarters_pow(m0));
                assert!((compute_dn(&counts, m0) - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn sigma2_on_k4() {
        let counts = motif_counts_fast(&complete(4));
        let s2 = compute_sigma2_hat(&counts, 1).unwrap();
        assert_eq!(s2, 0.2109375);
    }

    #[test]
    fn sigma2_on_star() {
        let star = AdjacencyMatrix::from_edge_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let s2 = compute_sigma2_hat(&motif_counts_fast(&star), 1).unwrap();
        assert_eq!(s2, 0.10546875);
    }

    #[test]
    fn sigma2_on_empty_graph_is_zero() {
        let counts = motif_counts_fast(&AdjacencyMatrix::empty(6).unwrap());
        assert_eq!(compute_sigma2_hat(&counts, 2).unwrap(), 0.0);
    }

    #[test]
    fn sigma2_rejects_tiny_graphs() {
        let counts = motif_counts_fast(&complete(3));
        assert!(matches!(
            compute_sigma2_hat(&counts, 1),
            Err(Error::TooFewNodes { n: 3 })
        ));
    }

    #[test]
    fn k4_full_chain() {
        let result = run_test(&complete(4), 1, 0.05).unwrap();
        assert_eq!(result.d_n, 6.0);
        assert_eq!(result.sigma2_hat, 0.2109375);
        // statistic is exactly 2/sqrt(3)
        assert!((result.statistic - 1.154_700_538_379_251_7).abs() < 1e-14);
        // reference p-value from 40-digit arithmetic
        assert!((result.p_value - 0.248_213_078_989_923_5).abs() < 1e-12);
        assert!(!result.reject);
    }

    #[test]
    fn zero_statistic_gives_p_one() {
        // Not a realizable graph; exercises the formula at D_n = 0.
        let counts = MotifCounts {
            n: 5,
            tri3: 0,
            path2: 0,
            raw1: 0,
            raw2: 0,
            raw3: 6,
            raw4: 0,
            raw5: 0,
        };
        let result = test_from_counts(&counts, 1, 0.05).unwrap();
        assert_eq!(result.statistic, 0.0);
        assert_eq!(result.p_value, 1.0);
        assert!(!result.reject);
    }

    #[test]
    fn degenerate_variance_is_a_typed_error() {
        let empty = AdjacencyMatrix::empty(5).unwrap();
        assert!(matches!(
            run_test(&empty, 1, 0.05),
            Err(Error::DegenerateVariance { sigma2_hat }) if sigma2_hat == 0.0
        ));
    }

    #[test]
    fn paw_graph_has_strictly_negative_variance_estimate() {
        // triangle 0-1-2 plus pendant 3: raw = (0, 2, 6, 0, 4), so the
        // negative S2 coefficient dominates at m0 = 1.
        let paw = AdjacencyMatrix::from_edge_pairs(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let counts = motif_counts_fast(&paw);
        assert_eq!(
            [
                counts.raw1,
                counts.raw2,
                counts.raw3,
                counts.raw4,
                counts.raw5
            ],
            [0, 2, 6, 0, 4]
        );
        let sigma2 = compute_sigma2_hat(&counts, 1).unwrap();
        assert_eq!(sigma2, -9.0 / 256.0);
        assert!(matches!(
            run_test(&paw, 1, 0.05),
            Err(Error::DegenerateVariance { sigma2_hat }) if sigma2_hat < 0.0
        ));
    }

    #[test]
    fn invalid_m0_and_alpha_are_rejected() {
        let k4 = complete(4);
        assert!(run_test(&k4, 0, 0.05).is_err());
        assert!(run_test(&k4, 1, 0.0).is_err());
        assert!(run_test(&k4, 1, 1.0).is_err());
    }

    #[test]
    fn boundary_tie_rejects() {
        // p_value == alpha must reject (the rejection region is closed).
        let counts = motif_counts_fast(&complete(4));
        let result = test_from_counts(&counts, 1, 0.05).unwrap();
        let tie = test_from_counts(&counts, 1, result.p_value).unwrap();
        assert!(tie.reject);
    }

    #[test]
    fn scan_reuses_counts_and_reports_degenerates() {
        let k10 = complete(10);
        let outcomes = scan_m0(&k10, &[1, 2, 3], 0.05).unwrap();
        assert_eq!(outcomes.len(), 3);
        let stats: Vec<f64> = outcomes
            .iter()
            .map(|o| match o {
                ScanOutcome::Tested(t) => t.statistic.abs(),
                ScanOutcome::Degenerate { .. } => panic!("unexpected degenerate"),
            })
            .collect();
        assert!(stats.iter().all(|s| s.is_finite()));
        // On a complete graph every motif sum is saturated, so D_n and
        // sigma_hat both scale by (1 - (3/4)^m0) and the standardized
        // statistic is the same at every m0.
        assert!((stats[0] - stats[1]).abs() < 1e-9, "{stats:?}");
        assert!((stats[1] - stats[2]).abs() < 1e-9, "{stats:?}");

        let empty = AdjacencyMatrix::empty(5).unwrap();
        let outcomes = scan_m0(&empty, &[1, 2, 3], 0.05).unwrap();
        assert!(outcomes.iter().all(
            |o| matches!(o, ScanOutcome::Degenerate { sigma2_hat, .. } if *sigma2_hat == 0.0)
        ));

        assert!(scan_m0(&k10, &[], 0.05).unwrap().is_empty());
    }

    #[test]
    fn scan_matches_individual_runs() {
        let params = crate::geometry::RggParams::new(30, 2, 0.25, 5).unwrap();
        let (_, a) = crate::geometry::generate_rgg(&params).unwrap();
        let outcomes = scan_m0(&a, &[1, 2, 3, 4], 0.05).unwrap();
        for (idx, m0) in [1u32, 2, 3, 4].into_iter().enumerate() {
            match (&outcomes[idx], run_test(&a, m0, 0.05)) {
                (ScanOutcome::Tested(s), Ok(direct)) => assert_eq!(s, &direct),
                (
                    ScanOutcome::Degenerate { sigma2_hat, .. },
                    Err(Error::DegenerateVariance { sigma2_hat: direct }),
                ) => {
                    assert_eq!(*sigma2_hat, direct)
                }
                (scan, direct) => panic!("scan {scan:?} vs direct {direct:?}"),
            }
        }
    }

    #[test]
    fn four_pow_m0_times_dn_is_integer() {
        // 4^m0 D_n = 4^m0 tri3 - 3^m0 path2 exactly, at scales where the
        // float products are exact.
        let params = crate::geometry::RggParams::new(60, 1, 0.1, 77).unwrap();
        let (_, a) = crate::geometry::generate_rgg(&params).unwrap();
        let counts = motif_counts_fast(&a);
        for m0 in 1..=6u32 {
            let dn = compute_dn(&counts, m0);
            let scaled = 4f64.powi(m0 as i32) * dn;
            let exact = 4i128.pow(m0) * counts.tri3 as i128 - 3i128.pow(m0) * counts.path2 as i128;
            assert_eq!(scaled, exact as f64, "m0 = {m0}");
        }
    }
}
