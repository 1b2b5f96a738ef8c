use thiserror::Error;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("config: {0}")]
    Config(String),
    #[error("invalid key {0:?}: use letters, digits, '-' or '_'")]
    InvalidKey(String),
    #[error("storage: {0}")]
    Storage(#[from] std::io::Error),
    #[error("encoding: {0}")]
    Encoding(#[from] serde_json::Error),
    #[error("library: {0}")]
    Library(#[from] cubetutor_core::MacroError),
    #[error("profile: {0}")]
    Profile(#[from] cubetutor_dialogue::ProfileError),
    #[error("fixture: {0}")]
    Fixture(String),
}
