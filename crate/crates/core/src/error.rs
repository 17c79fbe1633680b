use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("malformed dataset: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },
    #[error("invalid generator range `{name}`: {reason}")]
    Range { name: String, reason: String },
}

impl ModelError {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ModelError::Invalid { field: field.into(), reason: reason.into() }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("instance is infeasible by capacity: {vnfs} VNFs but only {nodes} nodes")]
    InsufficientNodes { vnfs: usize, nodes: usize },
    #[error("exhaustive search space of at least {size} candidates exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
