use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inner product requires ℓ₂")]
    NotHilbert,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("Möbius denominator |1 - <x,a>| = {0:e} is singular")]
    Singular(f64),
    #[error("dimension cap {cap} exceeded (needed {needed})")]
    DimensionCap { cap: usize, needed: usize },
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("point leaves the open unit ball (norm {0})")]
    OutsideBall(f64),
    #[error("not contracting at this scale: no convergence after {0} iterations")]
    NotContracting(usize),
    #[error("Schwarz hypothesis violated: symbol does not fix 0 (|φ(0)| = {0:e})")]
    SchwarzHypothesis(f64),
    #[error("exact composition unavailable; use pointwise")]
    NonPolynomial,
    #[error("exponent overflow in exact composition")]
    ExponentOverflow,
    #[error("empty dictionary")]
    EmptyDictionary,
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dictionary entry {label:?} is not sup-normalized (estimate {estimate})")]
    NotNormalized { label: String, estimate: f64 },
    #[error("duplicate dictionary label {0:?}")]
    DuplicateLabel(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
