//! Error type shared by the whole crate.

/// Errors reported by the library.
///
/// Numerical failures are never silent: quadrature that cannot reach its
/// tolerance reports the value it did reach together with the achieved error
/// estimate, and size guards refuse work instead of returning biased results.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter is outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A measure description violates a structural invariant.
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// A series (file or literal) violates a structural invariant.
    #[error("invalid series: {0}")]
    InvalidSeries(String),

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    #[error(
        "quadrature did not converge: value {value:.9e}, achieved error {achieved:.3e}, \
         requested {requested:.3e}"
    )]
    Quadrature {
        value: f64,
        achieved: f64,
        requested: f64,
    },

    /// A reference (oracle) path was asked for more work than it guards.
    #[error("size guard: truncation {n} exceeds the reference-path limit {max}")]
    SizeGuard { n: usize, max: usize },

    /// The coefficient membership test only applies to nonnegative series.
    #[error("coefficient criterion requires nonnegative coefficients, found a[{index}] = {value}")]
    NegativeCoefficient { index: usize, value: f64 },

    /// A truncation is too small for the requested family or radius.
    #[error("truncation cap: {0}")]
    TruncationCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
