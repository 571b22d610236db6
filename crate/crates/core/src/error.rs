use thiserror::Error;

pub type Result<T, E = CrError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole: denominator `{denominator}` vanishes at the evaluation point")]
    Pole { denominator: String },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("exponent too large at offset {offset} (max {max})")]
    ExponentOverflow { offset: usize, max: u32 },

    #[error("phi[{index}] is not real: conj(phi) != phi")]
    RealityViolation { index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("frame system det(i*I + Phi_u) {0}")]
    FrameSingular(String),

    #[error("frame fields are dependent: no invertible row selection")]
    DependentFrame,

    #[error("vector field is not in the span of the frame")]
    NotInSpan,

    #[error("change-of-frame matrix is singular")]
    SingularMatrix,

    #[error("generic Levi rank is {rank}, expected 1")]
    RankMismatch { rank: usize },

    #[error("no candidate frame change makes the (1,1) Levi entry nonzero")]
    NormalizationFailure,

    #[error("invalid manifold file: {0}")]
    Format(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),
}
