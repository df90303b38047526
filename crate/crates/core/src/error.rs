use thiserror::Error;

use crate::channel::PauliEigenvalues;
use crate::family::Family;
use crate::region::RegionId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probabilities sum to {sum}, expected 1")]
    NonUnitSum { sum: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("{0} is not a completely positive trace-preserving map")]
    NotAChannel(PauliEigenvalues),

    #[error("family {family} takes {expected} parameter(s), got {got}")]
    DimensionMismatch {
        family: Family,
        expected: usize,
        got: usize,
    },

    #[error("region {region} is not supported for family {family} by this engine")]
    UnsupportedRegion { family: Family, region: RegionId },

    #[error("denominator region {0} has zero volume")]
    ZeroDenominator(RegionId),

    #[error("decoherence rate {0} is negative")]
    NegativeRate(f64),

    #[error("time {0} is negative")]
    NegativeTime(f64),

    #[error("quadrature on [{a}, {b}] did not reach tolerance {tol} within the evaluation budget")]
    QuadratureFailure { a: f64, b: f64, tol: f64 },

    #[error("{0} has a non-positive eigenvalue and is not reachable at finite time")]
    NotTlgObtainable(PauliEigenvalues),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
