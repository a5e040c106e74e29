//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error enum. Construction-time validation failures are hard
/// errors; no module falls back to silently unverified data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid qudit dimension {dim} at site {site}: only 2 and 3 are supported")]
    InvalidDimension { site: usize, dim: usize },

    #[error("register with {0} sites exceeds the supported maximum of {max}", max = crate::register::MAX_SITES)]
    RegisterTooLarge(usize),

    #[error("empty register")]
    EmptyRegister,

    #[error("amplitude vector length {len} does not match register dimension {expected}")]
    StateLengthMismatch { len: usize, expected: usize },

    #[error("state norm {norm} deviates from 1 beyond the normalization tolerance")]
    NotNormalized { norm: f64 },

    #[error("digit {digit} is out of range for site {site} of dimension {dim}")]
    DigitOutOfRange {
        site: usize,
        digit: usize,
        dim: usize,
    },

    #[error("digit string has {len} entries but the register has {expected} sites")]
    DigitCountMismatch { len: usize, expected: usize },

    #[error("gate `{name}` expects local dimensions {expected:?} but sites {sites:?} have dimensions {found:?}")]
    DimensionMismatch {
        name: String,
        expected: Vec<usize>,
        sites: Vec<usize>,
        found: Vec<usize>,
    },

    #[error("site list {0:?} contains a duplicate or out-of-range index")]
    BadSites(Vec<usize>),

    #[error("matrix is not unitary: max |U U† - I| entry is {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("matrix dimension {found} does not match expected {expected}")]
    MatrixDimension { expected: usize, found: usize },

    #[error("invalid subspace levels ({i}, {j}): need two distinct levels below 3")]
    BadSubspace { i: usize, j: usize },

    #[error("invalid qutrit level {0}: must be 0, 1, or 2")]
    BadLevel(usize),

    #[error("unknown decomposition id `{0}`")]
    UnknownId(String),

    #[error("decomposition `{id}` failed its construction integrity check: {reason}")]
    ConstructionIntegrity { id: String, reason: String },

    #[error("`{0}` has no incomplete variant (no central gate is defined for it)")]
    NoIncompleteVariant(String),

    #[error("the |2>-occupancy metric is not applicable to `{0}`")]
    TauNotApplicable(String),

    #[error("incomplete-variant check was given the complete circuit `{0}`; use the equivalence checker instead")]
    WrongChecker(String),

    #[error("controlled-gate count {0} is outside the supported range 2..=5")]
    BadControlCount(usize),

    #[error("unknown gate name `{0}`")]
    UnknownGate(String),

    #[error("invalid timing budget: {0}")]
    InvalidBudget(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
