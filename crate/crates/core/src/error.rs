use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot substitute q = 0")]
    ZeroSubstitution,
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("generator index ({row},{col}) out of range 1..{n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("generators belong to different algebra sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("stage {t} out of range for n = {n}")]
    StageOutOfRange { n: usize, t: usize },
    #[error("{what} = {value} out of range")]
    OutOfRange { what: &'static str, value: i64 },
    #[error("pair is not strictly increasing in lex order")]
    NotIncreasing,
    #[error("position {0} is not a descent")]
    NotADescent(usize),
    #[error("invalid relation for pair ({0},{1}): {2}")]
    InvalidRelation(usize, usize, String),
    #[error("weighting is not compatible with the mutation system")]
    IncompatibleWeighting,
    #[error("element is not an invariant of the coaction")]
    NotInvariant,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
