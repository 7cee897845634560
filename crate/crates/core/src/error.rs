use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent at position {0}")]
    NegativeExponent(usize),
    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("variable sets differ")]
    VarSetMismatch,
    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),
    #[error("frame mismatch: `{0}` vs `{1}`")]
    FrameMismatch(String, String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(isize, isize),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("algebroid mismatch")]
    AlgebroidMismatch,
    #[error("not a linear multivector field: {0}")]
    NotLinear(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A precondition checked by residuals; carries the printed nonzero residuals.
    #[error("{what}: {}", format_defects(.defects))]
    Precondition {
        what: String,
        defects: Vec<(String, String)>,
    },
}

fn format_defects(defects: &[(String, String)]) -> String {
    defects
        .iter()
        .map(|(l, v)| format!("{l} = {v}"))
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
