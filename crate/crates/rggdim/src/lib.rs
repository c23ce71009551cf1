//! Dimension testing for torus random geometric graphs.
//!
//! A random geometric graph (RGG) places `n` points uniformly on the unit
//! hypercube `[0,1]^m` with wrap-around (torus) geometry and joins two nodes
//! whenever their L-infinity torus distance is at most a radius `r`. Given an
//! observed graph, this crate tests whether its latent dimension equals a
//! hypothesized value `m0`: it contrasts ordered triangle counts against
//! `(3/4)^m0`-weighted ordered two-path counts, normalizes by a plug-in
//! variance estimator built from five four-node motif densities, and compares
//! the standardized statistic against standard normal quantiles.
//!
//! The crate is organized around the pipeline:
//!
//! * [`geometry`] — torus metric, point sampling, RGG generation;
//! * [`graph`] — bit-packed adjacency matrices and closed-walk kernels;
//! * [`motifs`] — exact ordered-tuple motif sums (fast path plus a
//!   brute-force enumeration oracle);
//! * [`dimtest`] — the test statistic, variance estimator, p-values and
//!   multi-`m0` scans;
//! * [`simulate`] — seeded Monte Carlo estimation of empirical Type I error
//!   and power;
//! * [`edgelist`] — plain-text edge-list parsing and serialization;
//! * [`normal`] — standard normal CDF and quantiles;
//! * [`rng`] — deterministic splittable random streams.
//!
//! All randomness flows through splitmix64 streams keyed by explicit seeds,
//! so every sampled graph and every simulation report is reproducible
//! bit-for-bit across runs, platforms, and thread counts.

pub mod dimtest;
pub mod edgelist;
mod error;
pub mod geometry;
pub mod graph;
pub mod motifs;
pub mod normal;
pub mod rng;
pub mod simulate;

pub use dimtest::{run_test, scan_m0, ScanOutcome, TestResult};
pub use edgelist::{parse_edge_list, EdgeListDocument};
pub use error::{Error, Result};
pub use geometry::{generate_rgg, sample_points, torus_distance, PointCloud, RggParams};
pub use graph::AdjacencyMatrix;
pub use motifs::{motif_counts_fast, motif_counts_oracle, MotifCounts};
pub use simulate::{estimate_rejection_rate, run_replicate, SimConfig, SimReport};
