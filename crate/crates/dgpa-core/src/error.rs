use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("mismatched ambient generator lists")]
    AmbientMismatch,

    #[error("invalid generator: {0}")]
    BadGenerator(String),

    #[error("permutation length mismatch: {degrees} degrees vs {permutation} positions")]
    PermutationMismatch { degrees: usize, permutation: usize },

    #[error("relation {label:?} is not homogeneous")]
    InhomogeneousRelation { label: String },

    #[error("{what} has wrong degree: expected {expected}, got {got}")]
    DegreeMismatch {
        what: String,
        expected: i64,
        got: String,
    },

    #[error("element is outside the truncation window: {0}")]
    OutOfWindow(String),

    #[error("window explosion guard: {words} words exceed the cap of {cap} (set DGPA_WORD_CAP to raise)")]
    WordCapExceeded { words: usize, cap: usize },

    #[error("invalid truncation window: {0}")]
    BadWindow(String),

    #[error("algebra has not been verified against the DGPA axioms")]
    Unverified,

    #[error("not a valid map: {0}")]
    NotAMap(String),

    #[error("invalid structure data: {0}")]
    BadStructure(String),

    #[error("syntax error at byte {offset} in {context:?}: {message}")]
    Parse {
        offset: usize,
        context: String,
        message: String,
    },

    #[error("invalid input document: {0}")]
    BadDocument(String),
}
