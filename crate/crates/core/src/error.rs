//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not homogeneous: monomial degrees {0} and {1} both occur")]
    NonHomogeneous(usize, usize),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("model validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("precision exhausted: result only determined to order t^{available}")]
    PrecisionExhausted { available: usize },
    #[error("element is not a section at the requested twist: {0}")]
    NotASection(String),
    #[error("iteration bound {0} exceeded in {1}; this signals a modeling or precision failure")]
    IterationBound(usize, &'static str),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("linearly dependent input forms")]
    DependentForms,
    #[error("zero input where a nonzero form is required")]
    ZeroInput,
    #[error("exact division failed: {0}")]
    ExactDivision(String),
    #[error("operation requires a rational point, got an irrational locus")]
    IrrationalPoint,
    #[error("unknown built-in example `{0}`")]
    UnknownExample(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid family description: {0}")]
    BadFamily(String),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
