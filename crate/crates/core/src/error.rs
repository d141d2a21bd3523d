use thiserror::Error;

/// Failure modes of the numerical routines.
///
/// Domain errors are raised before any work is done; the numerical variants
/// carry whatever diagnostic the failing routine had at hand.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("quadrature did not converge: estimate {estimate:e} with error bound {error:e}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("oscillatory sum did not converge after {terms} half-periods (last partial sum {partial:e})")]
    Oscillatory { terms: usize, partial: f64 },

    #[error("evaluation failure in {func}: {msg}")]
    Evaluation { func: &'static str, msg: String },

    #[error("pole case: {0}")]
    Pole(String),

    #[error("quadrature failure at matrix entry ({i}, {j}): {source}")]
    MatrixEntry {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("eigensolver failure: {0}")]
    Eigen(String),

    #[error("leading eigenvalue is degenerate (multiplicity {multiplicity})")]
    Degenerate { multiplicity: usize },

    #[error("divergent momentum integral: |a| = {a:e} is not below the zero tolerance {tol:e}")]
    DivergentMomentum { a: f64, tol: f64 },

    #[error("coupling {lambda} is below the threshold {lambda0}")]
    BelowThreshold { lambda: f64, lambda0: f64 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain {
        func,
        msg: msg.into(),
    }
}
