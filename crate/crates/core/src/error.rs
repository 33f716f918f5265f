use thiserror::Error;

use crate::quat::Quaternion;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {0} lies outside the open unit ball")]
    OutsideBall(Quaternion),
    #[error("a real Möbius parameter needs an explicit slice axis")]
    MissingAxis,
    #[error("requested axis does not span the slice of the Möbius parameter")]
    AxisMismatch,
    #[error("point does not lie on the requested slice")]
    NotOnSlice,
    #[error("integrand is not finite at node z = {re} + {im}i")]
    NonFinite { re: f64, im: f64 },
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
