use thiserror::Error;

use crate::game::TerminalCause;

/// Errors produced by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("speed ratio {0} outside the open interval (0, 1)")]
    InvalidRatio(f64),
    #[error("pursuer bisector does not cross the goal axis (x1 == x2)")]
    VerticalBisector,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unsupported speed regime: vE={ve}, v1={v1}, v2={v2} (one pursuer slower than the evader)")]
    UnsupportedRegime { ve: f64, v1: f64, v2: f64 },
    #[error("state outside the playing field: {0}")]
    OutOfDomain(String),
    #[error("state is already terminal: {0:?}")]
    AlreadyTerminal(TerminalCause),
    #[error("cross-section inconsistency: {0}")]
    SectionInconsistency(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("malformed scenario: {0}")]
    Scenario(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
