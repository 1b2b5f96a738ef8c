//! The deployable tutor: HTTP API, file-backed stores, library loading and
//! transcript replay. The `cubetutor` binary wraps these.

pub mod api;
pub mod cli;
pub mod config;
pub mod error;
pub mod library;
pub mod replay;
pub mod store;

pub use api::{router, AppState};
pub use config::Config;
pub use error::ServiceError;
