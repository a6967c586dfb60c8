use thiserror::Error;

/// Errors raised by kernel, symbol, and certification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("kernel {0} has no singular transform expansion")]
    UnsupportedKernel(String),
    #[error("inconsistent moment system: {0}")]
    InconsistentSystem(String),
    #[error("underdetermined moment system: {0}")]
    UnderdeterminedSystem(String),
    #[error("symbolic operation not supported: {0}")]
    UnsupportedSymbol(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),
    #[error("symbol vanishes: min |sigma| = {0:e}")]
    SymbolVanishes(f64),
    #[error("lattice tail bound too loose: {0:e}")]
    TailBoundTooLoose(f64),
    #[error("moment cancellation fails: {0}")]
    DivergentCombination(String),
    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),
    #[error("derivative {order} not defined at {at}: left {left:e}, right {right:e}")]
    NonDifferentiablePoint { at: f64, order: usize, left: f64, right: f64 },
    #[error("series does not converge: {0}")]
    ConvergenceFailure(String),
    #[error("series converges too slowly: {0}")]
    SlowConvergence(String),
    #[error("polynomial series not absolutely summable: degree {degree} needs decay > {needed}, have {decay}")]
    SummabilityViolation { degree: usize, needed: f64, decay: f64 },
    #[error("samples below evaluation noise floor: {0}")]
    BelowNoiseFloor(String),
    #[error("lattice window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
