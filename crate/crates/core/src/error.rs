use thiserror::Error;

/// Errors reported by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument `{what}` out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid parameter `{what}`: {value}")]
    InvalidParameter { what: &'static str, value: f64 },

    #[error("series did not converge within {terms} terms (partial sum {partial})")]
    SeriesNotConverged { terms: usize, partial: f64 },

    #[error("quadrature missed its tolerance (estimate {estimate}, error bound {error})")]
    QuadratureFailed { estimate: f64, error: f64 },

    #[error("root is not bracketed by the search interval")]
    RootNotBracketed,

    #[error("data set is empty")]
    EmptyData,

    #[error("observation {0} is not a positive finite number")]
    InvalidObservation(f64),

    #[error("degenerate data: all observations are equal")]
    DegenerateData,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("likelihood is unbounded above for this family")]
    UnboundedLikelihood,

    #[error("fit did not converge")]
    NotConverged,

    #[error("distribution function returned {0}, outside [0, 1]")]
    CdfOutOfRange(f64),

    #[error("distribution function decreases between sorted observations")]
    CdfDecreasing,

    #[error("incomplete-beta factor is negative ({0})")]
    NegativeBetaFactor(f64),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
