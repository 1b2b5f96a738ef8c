//! Learned cost-to-go over goal-relevant patterns.
//!
//! Patterns are sampled by random walks backwards from the goal, then
//! refined by synchronous Bellman backups:
//! `v(p) = 0` at the goal, otherwise `min_m 1 + v(p·m)`. Patterns never
//! sampled fall back to [`MisplacedBound`] both during training and at query
//! time.

use std::fs;
use std::io;
use std::path::Path;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::heuristic::{HeuristicProvider, MisplacedBound};
use crate::cube::{Color, CubeState, Move};
use crate::goal::{PartialGoal, Pattern};

pub const VALUE_TABLE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ValueTableError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed value table: {0}")]
    Format(String),
    #[error("unsupported value table version {0}")]
    Version(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMetadata {
    pub samples: usize,
    pub max_depth: usize,
    pub iterations: usize,
    pub sweeps_run: usize,
    pub seed: u64,
    pub patterns: usize,
    /// max |v(p) - min_m (1 + v(p·m))| after the last sweep
    pub bellman_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValueTable {
    goal: PartialGoal,
    values: FxHashMap<Pattern, f32>,
    metadata: TrainingMetadata,
}

pub fn train_value_table(
    goal: &PartialGoal,
    samples: usize,
    max_depth: usize,
    iterations: usize,
    seed: u64,
) -> ValueTable {
    let samples = samples.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = goal.pattern_of(&CubeState::solved());

    // patterns in first-seen order, with the shortest walk depth seen
    let mut index: FxHashMap<Pattern, u32> = FxHashMap::default();
    let mut patterns: Vec<Pattern> = Vec::new();
    let mut depth_seen: Vec<u32> = Vec::new();
    let mut visit = |p: Pattern, d: u32, patterns: &mut Vec<Pattern>, depth_seen: &mut Vec<u32>| {
        match index.get(&p) {
            Some(&i) => depth_seen[i as usize] = depth_seen[i as usize].min(d),
            None => {
                index.insert(p, patterns.len() as u32);
                patterns.push(p);
                depth_seen.push(d);
            }
        }
    };
    visit(start, 0, &mut patterns, &mut depth_seen);
    for _ in 0..samples {
        let depth = rng.random_range(1..=max_depth.max(1));
        let mut p = start;
        let mut last: Option<Move> = None;
        for d in 1..=depth {
            let m = loop {
                let m = Move::ALL[rng.random_range(0..12)];
                if last.is_none_or(|l| l.face != m.face) {
                    break m;
                }
            };
            last = Some(m);
            p = p.apply_move(m);
            visit(p, d as u32, &mut patterns, &mut depth_seen);
        }
    }
    let index: FxHashMap<Pattern, u32> = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i as u32))
        .collect();

    enum Next {
        Known(u32),
        Fallback(f32),
    }
    let is_goal: Vec<bool> = patterns.iter().map(|p| goal.pattern_matches(p)).collect();
    let neighbors: Vec<[Next; 12]> = patterns
        .iter()
        .map(|p| {
            Move::ALL.map(|m| {
                let n = p.apply_move(m);
                match index.get(&n) {
                    Some(&i) => Next::Known(i),
                    None => Next::Fallback(
                        MisplacedBound::bound(goal.unsatisfied_pattern_slots(&n)) as f32,
                    ),
                }
            })
        })
        .collect();

    let backup = |values: &[f32], i: usize| -> f32 {
        if is_goal[i] {
            return 0.0;
        }
        neighbors[i]
            .iter()
            .map(|n| {
                1.0 + match n {
                    Next::Known(j) => values[*j as usize],
                    Next::Fallback(v) => *v,
                }
            })
            .fold(f32::INFINITY, f32::min)
    };

    let mut values: Vec<f32> = depth_seen
        .iter()
        .zip(&is_goal)
        .map(|(&d, &g)| if g { 0.0 } else { d as f32 })
        .collect();
    let mut sweeps_run = 0;
    for _ in 0..iterations {
        let next: Vec<f32> = (0..values.len()).map(|i| backup(&values, i)).collect();
        sweeps_run += 1;
        let changed = next != values;
        values = next;
        if !changed {
            break;
        }
    }
    let bellman_residual = (0..values.len())
        .map(|i| (values[i] - backup(&values, i)).abs() as f64)
        .fold(0.0, f64::max);

    let metadata = TrainingMetadata {
        samples,
        max_depth,
        iterations,
        sweeps_run,
        seed,
        patterns: patterns.len(),
        bellman_residual,
    };
    ValueTable {
        goal: goal.clone(),
        values: patterns.into_iter().zip(values).collect(),
        metadata,
    }
}

#[derive(Serialize, Deserialize)]
struct StoredTable {
    version: u32,
    goal: String,
    metadata: TrainingMetadata,
    entries: Vec<(String, f32)>,
}

fn pattern_text(p: &Pattern) -> String {
    p.cells()
        .iter()
        .map(|&c| {
            if c == Pattern::MASK {
                '.'
            } else {
                Color::ALL[c as usize].letter()
            }
        })
        .collect()
}

impl ValueTable {
    pub fn goal(&self) -> &PartialGoal {
        &self.goal
    }

    pub fn metadata(&self) -> &TrainingMetadata {
        &self.metadata
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Stored value for the pattern of `state`, if it was sampled.
    pub fn lookup(&self, state: &CubeState) -> Option<f32> {
        self.values.get(&self.goal.pattern_of(state)).copied()
    }

    pub fn to_json(&self) -> Result<String, ValueTableError> {
        let mut entries: Vec<(String, f32)> = self
            .values
            .iter()
            .map(|(p, v)| (pattern_text(p), *v))
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let stored = StoredTable {
            version: VALUE_TABLE_VERSION,
            goal: self.goal.format_pattern(),
            metadata: self.metadata.clone(),
            entries,
        };
        serde_json::to_string(&stored).map_err(|e| ValueTableError::Format(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<ValueTable, ValueTableError> {
        let stored: StoredTable =
            serde_json::from_str(text).map_err(|e| ValueTableError::Format(e.to_string()))?;
        if stored.version != VALUE_TABLE_VERSION {
            return Err(ValueTableError::Version(stored.version));
        }
        let goal = PartialGoal::parse_pattern(&stored.goal)
            .map_err(|e| ValueTableError::Format(e.to_string()))?;
        let mut values = FxHashMap::default();
        for (text, v) in stored.entries {
            let pattern = parse_pattern_cells(&text)
                .ok_or_else(|| ValueTableError::Format(format!("bad pattern {text:?}")))?;
            if !(v >= 0.0) {
                return Err(ValueTableError::Format(format!("negative value {v}")));
            }
            values.insert(pattern, v);
        }
        Ok(ValueTable {
            goal,
            values,
            metadata: stored.metadata,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), ValueTableError> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<ValueTable, ValueTableError> {
        ValueTable::from_json(&fs::read_to_string(path)?)
    }
}

fn parse_pattern_cells(text: &str) -> Option<Pattern> {
    let chars: Vec<char> = text.chars().collect();
    if chars.len() != 54 {
        return None;
    }
    let mut cells = [Pattern::MASK; 54];
    for (i, ch) in chars.into_iter().enumerate() {
        if ch != '.' {
            cells[i] = Color::from_letter(ch)? as u8;
        }
    }
    Some(Pattern::from_cells(cells))
}

impl HeuristicProvider for ValueTable {
    fn estimate(&self, state: &CubeState, goal: &PartialGoal) -> f64 {
        if goal.matches(state) {
            return 0.0;
        }
        if *goal == self.goal {
            if let Some(v) = self.lookup(state) {
                return v as f64;
            }
        }
        MisplacedBound.estimate(state, goal)
    }
}

/// Settings for [`train_value_table`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainingParams {
    pub samples: usize,
    pub max_depth: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for TrainingParams {
    /// Enough walks to cover every placement of four edges (190,080 patterns).
    fn default() -> Self {
        TrainingParams {
            samples: 400_000,
            max_depth: 14,
            iterations: 40,
            seed: 0,
        }
    }
}

/// Trains one table per goal on first use and reuses it afterwards.
#[derive(Debug, Default)]
pub struct LearnedHeuristic {
    params: TrainingParams,
    tables: Mutex<FxHashMap<PartialGoal, Arc<ValueTable>>>,
}

impl LearnedHeuristic {
    pub fn new(params: TrainingParams) -> Self {
        LearnedHeuristic {
            params,
            tables: Mutex::default(),
        }
    }

    pub fn with_table(table: ValueTable) -> Self {
        let h = LearnedHeuristic::default();
        h.insert(table);
        h
    }

    pub fn insert(&self, table: ValueTable) {
        self.tables
            .lock()
            .expect("table cache poisoned")
            .insert(table.goal.clone(), Arc::new(table));
    }

    pub fn table_for(&self, goal: &PartialGoal) -> Arc<ValueTable> {
        let mut tables = self.tables.lock().expect("table cache poisoned");
        tables
            .entry(goal.clone())
            .or_insert_with(|| {
                let p = self.params;
                Arc::new(train_value_table(goal, p.samples, p.max_depth, p.iterations, p.seed))
            })
            .clone()
    }

    pub fn trained_goals(&self) -> usize {
        self.tables.lock().expect("table cache poisoned").len()
    }
}

impl HeuristicProvider for LearnedHeuristic {
    fn estimate(&self, state: &CubeState, goal: &PartialGoal) -> f64 {
        self.table_for(goal).estimate(state, goal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubelet::CubeletId;

    fn single_edge_goal() -> PartialGoal {
        PartialGoal::for_cubelets([CubeletId::edge(0)])
    }

    #[test]
    fn goal_patterns_are_zero_and_neighbors_converge_to_one() {
        let goal = single_edge_goal();
        let table = train_value_table(&goal, 2000, 6, 30, 7);
        let solved = CubeState::solved();
        assert_eq!(table.lookup(&solved), Some(0.0));
        for m in Move::ALL {
            let s = solved.apply_move(m);
            let expected = if goal.matches(&s) { 0.0 } else { 1.0 };
            let v = table.lookup(&s).unwrap();
            assert!((expected - 0.01..=expected).contains(&v), "{m}: {v}");
        }
        // a single edge has only 24 placements; all of them get sampled
        assert_eq!(table.len(), 24);
        assert_eq!(table.metadata().bellman_residual, 0.0);
    }

    #[test]
    fn training_is_deterministic() {
        let goal = PartialGoal::white_cross();
        let a = train_value_table(&goal, 300, 8, 20, 11);
        let b = train_value_table(&goal, 300, 8, 20, 11);
        assert_eq!(a, b);
        assert!(a.values.values().all(|&v| v >= 0.0));
    }

    #[test]
    fn json_round_trip() {
        let table = train_value_table(&single_edge_goal(), 500, 5, 10, 3);
        let back = ValueTable::from_json(&table.to_json().unwrap()).unwrap();
        assert_eq!(back, table);
        let bumped = table.to_json().unwrap().replace("\"version\":1", "\"version\":9");
        assert!(matches!(
            ValueTable::from_json(&bumped),
            Err(ValueTableError::Version(9))
        ));
    }
}
