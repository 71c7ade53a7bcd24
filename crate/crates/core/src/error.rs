use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("factor {index}: {reason}")]
    Dimension { index: usize, reason: String },

    #[error("invalid factor selection: {0}")]
    InvalidSelection(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("squeezing bound violated: M = {m} exceeds sqrt(N(N+1)) = {bound} for N = {n}")]
    SqueezingBound { n: f64, m: f64, bound: f64 },

    #[error("transformed model requires perfect squeezing and no spontaneous emission: {0}")]
    ImperfectSqueezing(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("steady state is not unique (null space dimension > 1, gap estimate {gap:.3e})")]
    NonUnique { gap: f64 },

    #[error("steady state not converged after {steps} steps, residual {residual:.3e}")]
    NotConverged { steps: usize, residual: f64 },

    #[error("steady state has eigenvalue {min_eig:.3e} below the positivity floor")]
    NotPositive { min_eig: f64 },

    #[error("truncation tail {tail:.3e} exceeds {limit:.1e}; raise n_max")]
    TruncationTail { tail: f64, limit: f64 },

    #[error("filter success probability {0:.3e} is below 1e-12")]
    FilteredOut(f64),

    #[error("basis is not orthonormal (deviation {0:.3e})")]
    NotOrthonormal(f64),

    #[error("config line {line}: {reason}")]
    Config { line: usize, reason: String },

    #[error("i/o: {0}")]
    Io(String),

    #[error("at {point}: {source}")]
    GridPoint { point: String, source: Box<Error> },
}

impl Error {
    /// Attaches a description of the sweep point that failed.
    pub fn at(self, point: impl Into<String>) -> Self {
        Error::GridPoint { point: point.into(), source: Box::new(self) }
    }

    /// The innermost error, with grid-point context removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::GridPoint { source, .. } => source.root(),
            other => other,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
