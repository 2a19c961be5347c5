use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty document")]
    EmptyDocument,
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("document `{0}` has zero length")]
    ZeroLengthDocument(String),
    #[error("corpus weights must be non-negative and sum to 1 (sum = {0})")]
    InvalidWeights(f64),
    #[error("masks belong to different documents")]
    DocumentMismatch,
    #[error("antecedent wider than topic (antecedent width {antecedent}, topic width {topic})")]
    AntecedentWiderThanTopic { antecedent: usize, topic: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("poset has no designated {0}")]
    MissingBound(&'static str),
    #[error("empty valuation set")]
    NoValuations,
    #[error("invalid quantum state: {0}")]
    InvalidState(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("keyword `{0}` is not covered by the alignment")]
    AlignmentGap(String),
    #[error("invalid alignment: {0}")]
    InvalidAlignment(String),
    #[error("vocabulary too small to sample {needed} keywords")]
    VocabularyTooSmall { needed: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
