use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range user input.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: surface has NS rank {expected}, class has {got} coordinates")]
    DimensionMismatch { expected: usize, got: usize },

    /// `P2` is not defined on the plane `s = 0`.
    #[error("projection undefined: s-component is zero")]
    ProjectionUndefined,

    #[error("undefined for rank-zero class: {0}")]
    RankZero(String),

    /// A root whose hole does not meet the upper half plane. Not an input error.
    #[error("no geometric hole: {0}")]
    NoGeometricHole(String),

    #[error("degenerate wall: both classes project to the same point")]
    DegenerateWall,

    #[error("theorem inapplicable: {0}")]
    Inapplicable(String),

    #[error("condition (*) violated: {0}")]
    ConditionStar(String),
}

impl Error {
    /// True for errors caused by malformed input (CLI exit code 2).
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Input(_) | Error::DimensionMismatch { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
