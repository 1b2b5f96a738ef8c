use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use super::heuristic::HeuristicProvider;
use crate::cube::{CubeState, Move, MoveSequence};
use crate::goal::PartialGoal;

pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub path: MoveSequence,
    pub nodes_expanded: usize,
    pub cost: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("node budget exhausted after {nodes_expanded} expansions")]
    BudgetExhausted { nodes_expanded: usize },
    #[error("search space exhausted after {nodes_expanded} expansions without reaching the goal")]
    Unreachable { nodes_expanded: usize },
    #[error("weight must be a finite number >= 1, got {0}")]
    InvalidWeight(f64),
}

impl SearchError {
    pub fn nodes_expanded(&self) -> usize {
        match self {
            SearchError::BudgetExhausted { nodes_expanded }
            | SearchError::Unreachable { nodes_expanded } => *nodes_expanded,
            SearchError::InvalidWeight(_) => 0,
        }
    }
}

struct Node {
    state: CubeState,
    g: u32,
    parent: u32,
    via: Option<Move>,
}

#[derive(PartialEq)]
struct OpenEntry {
    f: f64,
    g: u32,
    order: u64,
    node: u32,
}

impl Eq for OpenEntry {}

impl Ord for OpenEntry {
    // BinaryHeap pops the maximum: lowest f, then deepest g, then earliest push.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then(self.g.cmp(&other.g))
            .then(other.order.cmp(&self.order))
    }
}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Weighted A* (`f = g + weight * h`) from `start` to any state matching `goal`.
///
/// With an admissible heuristic and `weight == 1` the returned path is
/// shortest. Nodes are re-opened when a cheaper route is found, so
/// inconsistent heuristics are handled too. Ties on `f` prefer larger `g`,
/// then the move enumeration order, which makes runs deterministic.
pub fn astar_solve(
    start: &CubeState,
    goal: &PartialGoal,
    heuristic: &dyn HeuristicProvider,
    weight: f64,
    node_budget: usize,
) -> Result<SearchResult, SearchError> {
    if !weight.is_finite() || weight < 1.0 {
        return Err(SearchError::InvalidWeight(weight));
    }
    let mut nodes: Vec<Node> = vec![Node {
        state: *start,
        g: 0,
        parent: u32::MAX,
        via: None,
    }];
    let mut best_g: FxHashMap<CubeState, u32> = FxHashMap::default();
    best_g.insert(*start, 0);
    let mut open = BinaryHeap::new();
    let mut order = 0u64;
    open.push(OpenEntry {
        f: weight * heuristic.estimate(start, goal),
        g: 0,
        order,
        node: 0,
    });
    let mut expanded = 0usize;

    while let Some(entry) = open.pop() {
        let node = &nodes[entry.node as usize];
        let (g, state) = (node.g, node.state);
        if best_g.get(&state).is_some_and(|&bg| bg < g) {
            continue;
        }
        if goal.matches(&state) {
            return Ok(SearchResult {
                path: reconstruct(&nodes, entry.node),
                nodes_expanded: expanded,
                cost: g as usize,
            });
        }
        if expanded >= node_budget {
            return Err(SearchError::BudgetExhausted {
                nodes_expanded: expanded,
            });
        }
        expanded += 1;
        let came_by = node.via;
        for m in Move::ALL {
            if came_by.is_some_and(|c| c.inverse() == m) {
                continue;
            }
            let child = state.apply_move(m);
            let child_g = g + 1;
            if best_g.get(&child).is_some_and(|&bg| bg <= child_g) {
                continue;
            }
            let idx = nodes.len() as u32;
            nodes.push(Node {
                state: child,
                g: child_g,
                parent: entry.node,
                via: Some(m),
            });
            best_g.insert(child, child_g);
            order += 1;
            open.push(OpenEntry {
                f: child_g as f64 + weight * heuristic.estimate(&child, goal),
                g: child_g,
                order,
                node: idx,
            });
        }
    }
    Err(SearchError::Unreachable {
        nodes_expanded: expanded,
    })
}

fn reconstruct(nodes: &[Node], mut idx: u32) -> MoveSequence {
    let mut moves = Vec::new();
    while let Some(m) = nodes[idx as usize].via {
        moves.push(m);
        idx = nodes[idx as usize].parent;
    }
    moves.reverse();
    MoveSequence(moves)
}
