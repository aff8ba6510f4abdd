use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("non-finite input: coordinate {axis} of point {index} is {value}")]
    NonFinite { index: usize, axis: usize, value: f64 },
    #[error("unsupported dimension {0}; only 2 and 3 are supported")]
    UnsupportedDim(usize),
    #[error("coordinate buffer of length {len} is not a multiple of dimension {dim}")]
    RaggedCoords { len: usize, dim: usize },
    #[error("same region {0} given twice")]
    SameRegion(u8),
    #[error("region {region} out of range for dimension {dim}")]
    RegionOutOfRange { region: u8, dim: usize },
    #[error("hull baseline is planar only (got dimension {0})")]
    PlanarOnly(usize),
    #[error("d below box height, square root of negative ({d} < {b})")]
    BelowBoxHeight { d: f64, b: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}
