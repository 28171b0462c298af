use thiserror::Error;

/// Errors raised by the exact, big-float and rendering layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid angle: denominator is zero")]
    InvalidAngle,

    #[error("repetend not found within {max_len} digits")]
    RepetendNotFound { max_len: usize },

    #[error("series is not invertible: leading coefficient is zero")]
    NotInvertible,

    #[error("Schröder first-kind order {0} is not implemented (supported: 2, 3)")]
    OrderNotImplemented(u32),

    #[error("secant step undefined: x_n + x_(n-1) = 0")]
    SecantPole,

    #[error("pole of the iteration map at x = {0}")]
    Pole(String),

    #[error("{0} has no closed-form solution")]
    NoClosedForm(String),

    #[error("{0} has no exact oracle")]
    NoOracle(String),

    #[error("seed lies on a root of x^2 + 1")]
    AtRoot,

    #[error("orbit blows up at step {step}, before the requested horizon")]
    OrbitBlowsUp { step: usize },

    #[error("method {0} needs a second seed")]
    MissingSecondSeed(String),

    #[error("{0} takes a single seed")]
    UnexpectedSecondSeed(String),

    #[error("root of multiplicity {0} is not supported")]
    UnsupportedMultiplicity(usize),

    #[error("x - H(x) vanishes identically")]
    DegenerateIteration,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("cannot parse angle {0:?}")]
    AngleParse(String),

    #[error("cannot parse method {0:?}")]
    MethodParse(String),

    #[error("invalid precision: {0} decimal digits (need at least 5)")]
    InvalidPrecision(u32),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("palette needs {needed} colours, got {got}")]
    InvalidPalette { needed: usize, got: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
