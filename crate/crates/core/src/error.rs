use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside the domain of {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("circulant embedding failed: negative eigenvalue mass {negative_mass:.3e} exceeds tolerance")]
    EmbeddingFailure { negative_mass: f64 },

    #[error(
        "covariance matrix is not numerically positive definite (pivot {pivot} = {value:.3e})"
    )]
    NonPositiveDefinite { pivot: usize, value: f64 },

    #[error("quadrature error estimate {estimate:.3e} above tolerance {tolerance:.3e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("oracle did not converge under node doubling: |{coarse} - {fine}| > {tolerance:.1e}")]
    NonConvergence {
        coarse: f64,
        fine: f64,
        tolerance: f64,
    },

    #[error(
        "Hermite rank undetermined: all coefficients up to order {max_order} below {tolerance:.1e}"
    )]
    RankUndetermined { max_order: usize, tolerance: f64 },

    #[error("sample is degenerate: {0}")]
    DegenerateSample(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error(
        "cell D={d}, n={n} aborted: {failed} of {reps} replications failed (first error: {first})"
    )]
    CellAborted {
        d: f64,
        n: usize,
        failed: usize,
        reps: usize,
        first: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("cache entry is corrupt: {0}")]
    Cache(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
