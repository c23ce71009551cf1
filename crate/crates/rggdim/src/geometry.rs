//! Torus point sampling and RGG generation.
//!
//! Points live on the unit hypercube `[0,1)^m` with opposite faces
//! identified, and distances are measured coordinate-wise on the circle and
//! combined with a maximum: `d(a, b) = max_k min(|a_k - b_k|, 1 - |a_k - b_k|)`.
//! Two nodes are joined whenever their distance is at most the connection
//! radius, so `r = 0.5` yields the complete graph and `r = 0` the empty one.

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::rng::SplitMix64;

/// Parameters of one torus RGG draw: node count, latent dimension,
/// connection radius, and the stream seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RggParams {
    pub n: usize,
    pub m: usize,
    pub r: f64,
    pub seed: u64,
}

impl RggParams {
    pub fn new(n: usize, m: usize, r: f64, seed: u64) -> Result<Self> {
        let params = Self { n, m, r, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidParams(
                "node count n must be at least 1".into(),
            ));
        }
        if self.n > AdjacencyMatrix::MAX_NODES {
            return Err(Error::InvalidParams(format!(
                "node count {} exceeds the supported maximum of {}",
                self.n,
                AdjacencyMatrix::MAX_NODES
            )));
        }
        if self.m < 1 {
            return Err(Error::InvalidParams(
                "dimension m must be at least 1".into(),
            ));
        }
        if !(self.r >= 0.0 && self.r <= 0.5) {
            return Err(Error::InvalidParams(format!(
                "connection radius must lie in [0, 0.5], got {}",
                self.r
            )));
        }
        Ok(())
    }
}

/// `n` sampled positions in `[0,1)^m`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn n(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Translate every point by `shift` modulo 1. Torus geometry is
    /// invariant under this map.
    pub fn translated(&self, shift: &[f64]) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: shift.len(),
                right: self.dim,
            });
        }
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(idx, &x)| {
                let s = (x + shift[idx % self.dim]).rem_euclid(1.0);
                // rem_euclid can return 1.0 when the sum rounds up to it
                if s >= 1.0 {
                    0.0
                } else {
                    s
                }
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            coords,
        })
    }
}

/// L-infinity torus distance between two points of equal dimension.
///
/// Coordinates are expected in `[0, 1]`; the result lies in `[0, 0.5]` and is
/// symmetric in its arguments.
pub fn torus_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::InvalidParams(
            "points must have at least one coordinate".into(),
        ));
    }
    Ok(torus_distance_unchecked(a, b))
}

#[inline]
fn torus_distance_unchecked(a: &[f64], b: &[f64]) -> f64 {
    let mut dist = 0.0f64;
    for (&x, &y) in a.iter().zip(b) {
        let delta = (x - y).abs();
        let circular = delta.min(1.0 - delta);
        if circular > dist {
            dist = circular;
        }
    }
    dist
}

/// Draw `n * m` i.i.d. uniform `[0,1)` coordinates from the stream keyed by
/// `params.seed`. Coordinate `k` of node `i` sits at stream position
/// `i*m + k`, so equal seeds give bit-identical clouds.
pub fn sample_points(params: &RggParams) -> Result<PointCloud> {
    params.validate()?;
    let mut rng = SplitMix64::new(params.seed);
    let coords = (0..params.n * params.m).map(|_| rng.next_f64()).collect();
    Ok(PointCloud {
        dim: params.m,
        coords,
    })
}

/// Sample a point cloud and connect every pair within distance `r`.
pub fn generate_rgg(params: &RggParams) -> Result<(PointCloud, AdjacencyMatrix)> {
    let cloud = sample_points(params)?;
    let adjacency = adjacency_from_points(&cloud, params.r)?;
    Ok((cloud, adjacency))
}

/// Threshold an existing cloud: `A_ij = 1` iff `d(X_i, X_j) <= r`, `i != j`.
pub fn adjacency_from_points(cloud: &PointCloud, r: f64) -> Result<AdjacencyMatrix> {
    let n = cloud.n();
    let mut adjacency = AdjacencyMatrix::empty(n)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if torus_distance_unchecked(cloud.point(i), cloud.point(j)) <= r {
                adjacency.set_edge(i, j);
            }
        }
    }
    Ok(adjacency)
}
