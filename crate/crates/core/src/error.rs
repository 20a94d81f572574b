use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse rational: {0:?}")]
    ParseRational(String),

    #[error("degenerate quadratic: leading coefficient is zero")]
    DegenerateQuadratic,

    #[error("radicand {0} is the square of a rational")]
    SquareRadicand(String),

    #[error("[0:0] is not a projective point")]
    ZeroProjectivePoint,

    #[error("invalid step weights: {0}")]
    InvalidWeights(String),

    #[error("model has no steps")]
    NoSteps,

    #[error("anti-diagonal step would create a large step after the change of variables")]
    AntiDiagonalStep,

    #[error("model is not diagonally symmetric without anti-diagonal steps")]
    NotDiagonallySymmetric,

    #[error("unknown model {0:?}")]
    UnknownModel(String),

    #[error("t = {0} is outside the open interval (0, 1)")]
    TOutOfRange(String),

    #[error("fiber is identically zero (singular kernel curve)")]
    DegenerateFiber,

    #[error("point is not on the kernel curve")]
    NotOnCurve,

    #[error("unknown section {0:?}")]
    UnknownSection(String),

    #[error("model file: {0}")]
    ModelFile(String),

    #[error("{0}")]
    Unsupported(String),
}
