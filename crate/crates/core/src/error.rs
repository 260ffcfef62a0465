use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("empty {op} cell at ({a}, {b})")]
    EmptyCell {
        op: &'static str,
        a: String,
        b: String,
    },
    #[error("invalid catalog key: {0}")]
    InvalidKey(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial `{0}` is reducible")]
    Reducible(String),
    #[error("subset is not Marshall coherent: {0}")]
    NotCoherent(String),
    #[error("subset contains 0, the quotient is trivial")]
    TrivialQuotient,
    #[error("morphism does not send the subset to 1: {0}")]
    NotConstantOnSubset(String),
    #[error("degenerate tower scalar at stage {stage}: class of `{alpha}` is {class}")]
    DegenerateScalar {
        stage: usize,
        alpha: String,
        class: String,
    },
    #[error("search budget of {budget} states exceeded")]
    Budget { budget: u64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0}")]
    Hypothesis(String),
    #[error("no isomorphism found: {0}")]
    NoIsomorphism(String),
}

pub type Result<T> = std::result::Result<T, Error>;
