use thiserror::Error;

/// A parameter bundle that fails one of its structural constraints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("message-part length k={k} is below the minimum of 7")]
    MessageTooShort { k: usize },
    #[error("message-part length k={k} exceeds the supported maximum {max}")]
    MessageTooLong { k: usize, max: usize },
    #[error("coefficient shape parameter r_hat={r_hat} must be at least 4")]
    ShapeTooSmall { r_hat: usize },
    #[error("run-length limit r={r} is below r_hat={r_hat}")]
    RunLimitBelowShape { r: usize, r_hat: usize },
    #[error("free coefficient d={d} outside [{lo}, {hi}]")]
    FreeCoefficientOutOfRange { d: u64, lo: u64, hi: u64 },
    #[error("(k, r, d) = (14, 4, 5) is excluded: the run-length guarantee does not hold")]
    ExcludedTriple,
    #[error("residue b={b} outside [0, {}]", modulus - 1)]
    ResidueOutOfRange { b: u64, modulus: u64 },
    #[error("run-length limit r={r} must be at least 2")]
    RunLimitTooSmall { r: usize },
    #[error("front-end length k={k} must be at least 2")]
    FrontTooShort { k: usize },
    #[error("front-end length k={k} exceeds {bound}, the longest injective length for r={r}")]
    FrontInfeasible { k: usize, r: usize, bound: usize },
    #[error("code length n={n} must be at least 1")]
    EmptyCode { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("{0}")]
    Range(String),
    #[error("{0}")]
    Data(String),
    #[error("no codeword within one insertion/deletion of the received word")]
    Uncorrectable,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{what}={value} exceeds the exhaustive guard {max}")]
    Guard {
        what: &'static str,
        value: usize,
        max: usize,
    },
}

impl Error {
    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
