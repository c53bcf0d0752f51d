use alloc::string::String;
use core::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Invalid grid specification (dimension, exponent, extents).
    InvalidSpec(String),
    /// A grid value is NaN or infinite; carries the flat index.
    NonFinite { index: usize, value_repr: String },
    /// A weight value is not strictly positive; carries the flat index.
    NonPositiveWeight { index: usize },
    /// A box escapes a clipped grid; names the axis.
    BoxOutOfRange { axis: &'static str },
    /// Empty region where a nonempty one is required.
    EmptyRegion,
    /// Time lag / half-width misalignment: γ·m^p is not an integer.
    LagAlignment { gamma: String, m: i64 },
    /// No admissible rectangle anywhere on the grid.
    DegenerateGrid,
    /// Invalid parameter (exponents, orders, truncations, ...).
    InvalidParam(String),
    /// Contour rule would alias: nodes ≤ 2·series truncation.
    ContourAliasing { nodes: usize, trunc: usize },
    /// Scenario/config rejected (e.g. off-diagonal relation violated).
    Refused(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpec(s) => write!(f, "invalid grid spec: {s}"),
            Error::NonFinite { index, value_repr } => {
                write!(f, "non-finite value {value_repr} at flat index {index}")
            }
            Error::NonPositiveWeight { index } => {
                write!(f, "weight not strictly positive at flat index {index}")
            }
            Error::BoxOutOfRange { axis } => {
                write!(f, "box escapes clipped grid along {axis} axis")
            }
            Error::EmptyRegion => write!(f, "empty region"),
            Error::LagAlignment { gamma, m } => {
                write!(f, "time lag {gamma} does not align with half-width m={m}")
            }
            Error::DegenerateGrid => write!(f, "degenerate grid: no admissible rectangle"),
            Error::InvalidParam(s) => write!(f, "invalid parameter: {s}"),
            Error::ContourAliasing { nodes, trunc } => write!(
                f,
                "contour rule aliases: {nodes} nodes with series truncation {trunc} (need nodes > 2·trunc)"
            ),
            Error::Refused(s) => write!(f, "refused: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
