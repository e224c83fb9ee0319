use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("composition requires a series with zero constant term")]
    NonzeroConstantTerm,

    #[error("descent requires μ_u-invariant operator (coefficient not in Q[z^u])")]
    DescentNotInvariant,

    #[error("division by the zero operator")]
    ZeroDivisor,

    #[error("operator is zero")]
    ZeroOperator,

    #[error("edge of slope -1: not of exponential type")]
    NotExponentialType,

    #[error("no slope-0 edge at {0}: purely irregular part")]
    NoIndicialEdge(String),

    #[error("bad prime {p}: {why}")]
    BadPrime { p: u64, why: String },

    #[error("leading recurrence coefficient vanishes at index {0} and no initial value covers it")]
    SingularIndex(i64),

    #[error("section elimination degenerate: no relation of order <= {0} found")]
    EliminationDegenerate(usize),

    #[error("window too short: need at least {need} terms, got {got}")]
    WindowTooShort { need: usize, got: usize },

    #[error("Pochhammer pole: {0} is a nonpositive integer")]
    PochhammerPole(String),

    #[error("slope {0} at infinity outside {{0, 1}}")]
    SlopeOutOfRange(String),

    #[error("operator is not in the image of the Mellin map (needs z-clearing)")]
    NotInMellinImage,

    #[error("factorial series conversion requires rho = 0")]
    NicoleNeedsRhoZero,

    #[error("transform not invertible on this input: {0}")]
    NotInTransformImage(String),

    #[error("Gamma evaluated at nonpositive integer {0}")]
    GammaPole(String),

    #[error("rational root search overflow: coefficient too large to factor")]
    RootSearchOverflow,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
