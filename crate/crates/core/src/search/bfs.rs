use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::cube::{CubeState, Move};
use crate::goal::PartialGoal;

/// Deepest level the oracle will enumerate; depth 7 already means millions of states.
pub const ORACLE_MAX_DEPTH: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("goal not reached within {0} moves")]
    NotFound(usize),
    #[error("oracle depth {0} exceeds the limit of {ORACLE_MAX_DEPTH}")]
    DepthTooLarge(usize),
}

/// Exact distance to `goal` by exhaustive breadth-first enumeration.
pub fn bfs_oracle(
    start: &CubeState,
    goal: &PartialGoal,
    max_depth: usize,
) -> Result<usize, OracleError> {
    if max_depth > ORACLE_MAX_DEPTH {
        return Err(OracleError::DepthTooLarge(max_depth));
    }
    if goal.matches(start) {
        return Ok(0);
    }
    let mut visited: FxHashSet<CubeState> = FxHashSet::default();
    visited.insert(*start);
    let mut frontier = vec![*start];
    for depth in 1..=max_depth {
        let mut next = Vec::new();
        for state in &frontier {
            for m in Move::ALL {
                let child = state.apply_move(m);
                if !visited.insert(child) {
                    continue;
                }
                if goal.matches(&child) {
                    return Ok(depth);
                }
                next.push(child);
            }
        }
        frontier = next;
    }
    Err(OracleError::NotFound(max_depth))
}
