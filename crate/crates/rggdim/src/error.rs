use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("point dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("node index {index} out of range for a graph on {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("common neighbors are defined for distinct nodes, got node {0} twice")]
    SameNode(usize),

    #[error("the dimension test requires at least 4 nodes, got {n}")]
    TooFewNodes { n: usize },

    /// The plug-in variance estimate came out non-positive, so the
    /// standardized statistic is undefined on this graph.
    #[error("degenerate variance estimate: sigma2_hat = {sigma2_hat}")]
    DegenerateVariance { sigma2_hat: f64 },

    #[error("all {reps} replicates had degenerate variance; no rejection rate to report")]
    AllReplicatesDegenerate { reps: u64 },

    #[error("edge list parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list input is not valid UTF-8")]
    Encoding,
}

pub type Result<T> = std::result::Result<T, Error>;
