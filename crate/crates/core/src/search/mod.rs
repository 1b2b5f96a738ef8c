//! Goal-conditioned shortest-path search over cube states.

pub mod astar;
pub mod bfs;
pub mod focused;
pub mod heuristic;
pub mod value_table;

pub use astar::{astar_solve, SearchError, SearchResult, DEFAULT_NODE_BUDGET};
pub use bfs::{bfs_oracle, OracleError, ORACLE_MAX_DEPTH};
pub use focused::{solve_focused, FocusedEffect, FocusedError};
pub use heuristic::{HeuristicProvider, MisplacedBound, ZeroHeuristic};
pub use value_table::{
    train_value_table, LearnedHeuristic, TrainingMetadata, TrainingParams, ValueTable,
    ValueTableError,
};
