use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum WorkbenchError {
    #[error(transparent)]
    Core(#[from] teamsem::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad team file: {0}")]
    TeamFile(String),
    #[error("{0}")]
    Usage(String),
    #[error("failed to serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl WorkbenchError {
    /// 3 for exceeded resource caps, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            WorkbenchError::Core(teamsem::Error::ResourceCap(_) | teamsem::Error::ContextCap { .. }) => {
                crate::EXIT_RESOURCE
            }
            _ => crate::EXIT_USAGE,
        }
    }
}
