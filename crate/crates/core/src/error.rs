use thiserror::Error;

/// Errors produced by ingestion, alignment, metric evaluation and scenario handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    MalformedRow { line: u64, message: String },

    #[error("line {line}: duplicate key (example_id={example_id}, finding={finding})")]
    DuplicateKey {
        line: u64,
        example_id: String,
        finding: String,
    },

    #[error("missing required column `{0}` in header")]
    MissingColumn(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error(
        "finding `{finding}` has no {missing} records; every finding needs at least one positive and one negative"
    )]
    DegenerateFinding { finding: String, missing: &'static str },

    #[error("candidate `{model_id}` does not align with the baseline: {} offending key(s), first {}: {}", .total, .keys.len(), .keys.join("; "))]
    Alignment {
        model_id: String,
        total: usize,
        keys: Vec<String>,
    },

    #[error("unknown finding `{0}`")]
    UnknownFinding(String),

    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),

    #[error("undefined AUROC: {0}")]
    UndefinedAuroc(&'static str),

    #[error("non-finite score passed to AUROC")]
    NonFiniteScore,

    #[error("finding `{0}` has no group included under the policy in both models")]
    NoJointlyIncludedGroup(String),

    #[error("need at least two jointly included groups, got {0}")]
    TooFewGroups(usize),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("oracle size guard exceeded: {0} scores (limit {1})")]
    OracleTooLarge(usize, usize),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
