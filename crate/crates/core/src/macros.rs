//! Macro actions: short move sequences with a learned precondition that
//! place one goal cubelet without disturbing the ones already placed.
//!
//! Macros are learned in a canonical frame (the target is always the
//! smallest cubelet of its symmetry class) and applied through every frame
//! that preserves the goal.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::ops::RangeInclusive;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{scramble_with, CubeState, Move, MoveSequence};
use crate::cubelet::{locate, CubeletId, Location, Slot};
use crate::goal::PartialGoal;
use crate::induction::{
    evaluate_program, induce_program, ExampleSet, InductionError, InductionParams,
    PredicateProgram, Vocabulary,
};
use crate::sampling::random_state_pinning;
use crate::search::{solve_focused, FocusedEffect, HeuristicProvider};
use crate::symmetry::Frame;

pub const LIBRARY_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum MacroError {
    #[error("depth range {0:?} is empty or starts at zero")]
    BadDepthRange(RangeInclusive<usize>),
    #[error("configuration count must be at least 1")]
    NoConfigurations,
    #[error("no candidates to choose from")]
    NoCandidates,
    #[error("only {found} positive examples, need {needed}")]
    InsufficientExamples { found: usize, needed: usize },
    #[error("precondition of {0} does not hold in this state")]
    PreconditionUnsatisfied(String),
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed library: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MacroCandidate {
    pub sequence: MoveSequence,
    pub effect: FocusedEffect,
    /// Configuration the sequence was found on, seen from the canonical frame.
    pub source: CubeState,
    pub complexity: usize,
}

impl MacroCandidate {
    fn class_key(&self) -> (String, Option<Location>) {
        (
            self.sequence.to_string(),
            locate(&self.source, self.effect.target),
        )
    }
}

/// True when `target` starts out of place and `sequence` puts it home while
/// every cubelet of `pool` that started at home is home again at the end.
pub fn achieves(
    sequence: &MoveSequence,
    target: CubeletId,
    pool: &[CubeletId],
    state: &CubeState,
) -> bool {
    if target.is_placed(state) {
        return false;
    }
    let after = state.apply_sequence(sequence);
    target.is_placed(&after)
        && pool
            .iter()
            .all(|c| !c.is_placed(state) || c.is_placed(&after))
}

pub fn generate_configurations(
    n: usize,
    depth_range: RangeInclusive<usize>,
    seed: u64,
) -> Result<Vec<CubeState>, MacroError> {
    if n == 0 {
        return Err(MacroError::NoConfigurations);
    }
    if depth_range.is_empty() || *depth_range.start() == 0 {
        return Err(MacroError::BadDepthRange(depth_range));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let depth = rng.random_range(depth_range.clone());
            scramble_with(depth, &mut rng)
                .expect("depth is positive")
                .0
        })
        .collect())
}

/// The frames under which `goal` looks the same, identity first.
pub fn goal_frames(goal: &PartialGoal) -> Vec<Frame> {
    let relevant: BTreeSet<CubeletId> = goal.relevant_cubelets().into_iter().collect();
    if PartialGoal::for_cubelets(relevant.iter().copied()) != *goal {
        return vec![Frame::IDENTITY];
    }
    Frame::all()
        .filter(|f| relevant.iter().map(|&c| f.map_cubelet(c)).collect::<BTreeSet<_>>() == relevant)
        .collect()
}

/// Frame in which `target` becomes its canonical representative.
fn canonicalize(frames: &[Frame], target: CubeletId) -> (Frame, CubeletId) {
    frames
        .iter()
        .map(|&f| (f, f.map_cubelet(target)))
        .min_by_key(|&(f, c)| (c, f))
        .expect("at least the identity frame")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CandidateReport {
    pub candidates: Vec<MacroCandidate>,
    /// Focused searches that ran out of budget.
    pub failures: usize,
}

fn candidates_for(
    config: &CubeState,
    goal: &PartialGoal,
    frames: &[Frame],
    h: &dyn HeuristicProvider,
    budget: usize,
    report: &mut CandidateReport,
) {
    let pool = goal.relevant_cubelets();
    for &target in &pool {
        if target.is_placed(config) {
            continue;
        }
        let (frame, canonical) = canonicalize(frames, target);
        let view = frame.view(config);
        let protected = pool
            .iter()
            .map(|&c| frame.map_cubelet(c))
            .filter(|&c| c != canonical && c.is_placed(&view));
        let effect = FocusedEffect::new(canonical, protected).expect("target is not placed");
        match solve_focused(&view, &effect, h, budget) {
            Ok(found) => report.candidates.push(MacroCandidate {
                complexity: found.path.len(),
                sequence: found.path,
                effect,
                source: view,
            }),
            Err(_) => report.failures += 1,
        }
    }
}

/// One focused solve per configuration and unplaced goal cubelet; duplicates
/// (same moves, same starting position of the target) are merged.
pub fn discover_candidates(
    configs: &[CubeState],
    goal: &PartialGoal,
    h: &dyn HeuristicProvider,
    budget: usize,
) -> CandidateReport {
    let frames = goal_frames(goal);
    let mut report = CandidateReport::default();
    for config in configs {
        candidates_for(config, goal, &frames, h, budget, &mut report);
    }
    dedup_candidates(&mut report.candidates);
    report
}

fn dedup_candidates(candidates: &mut Vec<MacroCandidate>) {
    let mut seen = FxHashSet::default();
    candidates.retain(|c| seen.insert(c.class_key()));
}

fn selection_order(a: &MacroCandidate, b: &MacroCandidate) -> std::cmp::Ordering {
    a.complexity
        .cmp(&b.complexity)
        .then_with(|| a.sequence.to_string().cmp(&b.sequence.to_string()))
}

/// Lowest complexity; ties go to the lexicographically smallest move string.
pub fn select_lowest_complexity(
    candidates: &[MacroCandidate],
) -> Result<&MacroCandidate, MacroError> {
    candidates
        .iter()
        .min_by(|a, b| selection_order(a, b))
        .ok_or(MacroError::NoCandidates)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExampleParams {
    /// Random states added to the given configurations.
    pub extra_samples: usize,
    /// One-move perturbations of positives.
    pub near_misses: usize,
    pub min_positives: usize,
    /// Chance that each other goal cubelet is held at home in a sample.
    pub keep_placed: f64,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams {
            extra_samples: 1500,
            near_misses: 300,
            min_positives: 5,
            keep_placed: 0.5,
        }
    }
}

/// Random state with `pins` in place and each cubelet of `pool` (other than
/// pinned ones and those whose home is taken) at home with probability `keep`.
fn sample_with_pins<R: Rng>(
    rng: &mut R,
    pins: &[(CubeletId, Location)],
    pool: &[CubeletId],
    keep: f64,
) -> CubeState {
    let mut all = pins.to_vec();
    for &c in pool {
        let home = c.home_slot();
        let free = all.iter().all(|(id, loc)| *id != c && loc.slot != home);
        if free && rng.random_bool(keep) {
            all.push((
                c,
                Location {
                    slot: home,
                    orientation: 0,
                },
            ));
        }
    }
    random_state_pinning(rng, &all).expect("pins are consistent")
}

/// Every location a cubelet of this kind can take except home.
fn away_locations(target: CubeletId) -> Vec<Location> {
    let n = target.colors().len() as u8;
    Slot::all(target.kind)
        .flat_map(|slot| (0..n).map(move |orientation| Location { slot, orientation }))
        .filter(|loc| loc.slot != target.home_slot() || loc.orientation != 0)
        .collect()
}

/// Labels states by applying the candidate. Draws from `configs`, from
/// random states with the target where it sat in the source, from random
/// states with the target anywhere, and from one-move perturbations of the
/// positives found.
pub fn generate_examples(
    candidate: &MacroCandidate,
    configs: &[CubeState],
    pool: &[CubeletId],
    params: &ExampleParams,
    seed: u64,
) -> Result<ExampleSet, MacroError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = candidate.effect.target;
    let mut states: Vec<CubeState> = vec![candidate.source];
    states.extend_from_slice(configs);
    if let Some(source_loc) = locate(&candidate.source, target) {
        let away = away_locations(target);
        for k in 0..params.extra_samples {
            let loc = if k % 2 == 0 {
                source_loc
            } else {
                away[rng.random_range(0..away.len())]
            };
            states.push(sample_with_pins(&mut rng, &[(target, loc)], pool, params.keep_placed));
        }
    }

    let mut seen = FxHashSet::default();
    let mut set = ExampleSet::default();
    let mut label = |s: CubeState, set: &mut ExampleSet| {
        if seen.insert(s) {
            if achieves(&candidate.sequence, target, pool, &s) {
                set.positives.push(s);
            } else {
                set.negatives.push(s);
            }
        }
    };
    for s in states {
        label(s, &mut set);
    }
    let positives = set.positives.clone();
    if !positives.is_empty() {
        for _ in 0..params.near_misses {
            let p = positives[rng.random_range(0..positives.len())];
            label(p.apply_move(Move::ALL[rng.random_range(0..12)]), &mut set);
        }
    }
    if set.positives.len() < params.min_positives {
        return Err(MacroError::InsufficientExamples {
            found: set.positives.len(),
            needed: params.min_positives,
        });
    }
    Ok(set)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationStats {
    /// Held-out states satisfying the precondition that were checked.
    pub samples: usize,
    /// Of those, states where the effect failed or a placed cubelet moved.
    pub violations: usize,
    /// Accuracy of the precondition on fresh labeled states.
    pub held_out_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MacroAction {
    pub name: String,
    pub precondition: PredicateProgram,
    #[serde(rename = "moves")]
    pub sequence: MoveSequence,
    pub effect: FocusedEffect,
    pub complexity: usize,
    pub validation: ValidationStats,
}

impl MacroAction {
    /// Precondition holds and the target is not yet placed.
    pub fn applies(&self, state: &CubeState) -> bool {
        !self.effect.target.is_placed(state) && evaluate_program(&self.precondition, state)
    }
}

/// Up to `count` random states (target out of place, other goal cubelets
/// randomly held home) on which the precondition holds.
pub fn sample_precondition_states(
    action: &MacroAction,
    pool: &[CubeletId],
    count: usize,
    max_tries: usize,
    seed: u64,
) -> Vec<CubeState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = action.effect.target;
    let away = away_locations(target);
    let mut out = Vec::new();
    for _ in 0..max_tries {
        if out.len() == count {
            break;
        }
        let loc = away[rng.random_range(0..away.len())];
        let s = sample_with_pins(&mut rng, &[(target, loc)], pool, 0.5);
        if action.applies(&s) {
            out.push(s);
        }
    }
    out
}

/// Soundness on held-out states; returns the statistics and the violating states.
pub fn validate_macro(
    action: &MacroAction,
    pool: &[CubeletId],
    samples: usize,
    seed: u64,
) -> (ValidationStats, Vec<CubeState>) {
    let held_out = sample_precondition_states(action, pool, samples, samples * 400, seed);
    let violations: Vec<CubeState> = held_out
        .iter()
        .filter(|s| !achieves(&action.sequence, action.effect.target, pool, s))
        .copied()
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let away = away_locations(action.effect.target);
    let trials = samples.max(1) * 4;
    let correct = (0..trials)
        .filter(|_| {
            let loc = away[rng.random_range(0..away.len())];
            let s = sample_with_pins(&mut rng, &[(action.effect.target, loc)], pool, 0.5);
            action.applies(&s) == achieves(&action.sequence, action.effect.target, pool, &s)
        })
        .count();

    let stats = ValidationStats {
        samples: held_out.len(),
        violations: violations.len(),
        held_out_accuracy: correct as f64 / trials as f64,
    };
    (stats, violations)
}

pub fn apply_macro(state: &CubeState, action: &MacroAction) -> Result<CubeState, MacroError> {
    if !evaluate_program(&action.precondition, state) {
        return Err(MacroError::PreconditionUnsatisfied(action.name.clone()));
    }
    Ok(state.apply_sequence(&action.sequence))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationLog {
    pub iteration: usize,
    pub unsolved_before: usize,
    pub candidates: usize,
    pub search_failures: usize,
    /// Name of the macro added, if any.
    pub added: Option<String>,
    pub added_complexity: Option<usize>,
    /// Move strings (with complexity) of cheaper-or-equal candidates whose
    /// induction or validation failed first.
    pub discarded: Vec<(String, usize)>,
    pub unsolved_after: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DiscoveryMetadata {
    pub seed: u64,
    pub config_count: usize,
    pub depth_range: (usize, usize),
    pub solved_configs: usize,
    pub unsolved_configs: Vec<usize>,
    pub iterations: Vec<IterationLog>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MacroLibrary {
    goal: PartialGoal,
    macros: Vec<MacroAction>,
    frames: Vec<Frame>,
    pub metadata: DiscoveryMetadata,
}

#[derive(Serialize, Deserialize)]
struct StoredLibrary {
    version: u32,
    goal: PartialGoal,
    metadata: DiscoveryMetadata,
    macros: Vec<MacroAction>,
}

impl MacroLibrary {
    pub fn new(goal: PartialGoal) -> Self {
        MacroLibrary {
            frames: goal_frames(&goal),
            goal,
            macros: Vec::new(),
            metadata: DiscoveryMetadata::default(),
        }
    }

    pub fn goal(&self) -> &PartialGoal {
        &self.goal
    }

    pub fn macros(&self) -> &[MacroAction] {
        &self.macros
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.macros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.macros.is_empty()
    }

    /// Goal cubelets, which macros keep in place once placed.
    pub fn pool(&self) -> Vec<CubeletId> {
        self.goal.relevant_cubelets()
    }

    /// Inserts keeping ascending complexity; equal complexity keeps arrival order.
    pub fn insert(&mut self, action: MacroAction) {
        let at = self
            .macros
            .iter()
            .position(|m| m.complexity > action.complexity)
            .unwrap_or(self.macros.len());
        self.macros.insert(at, action);
    }

    pub fn get(&self, name: &str) -> Option<&MacroAction> {
        self.macros.iter().find(|m| m.name == name)
    }

    pub fn to_json(&self) -> Result<String, MacroError> {
        serde_json::to_string_pretty(&StoredLibrary {
            version: LIBRARY_VERSION,
            goal: self.goal.clone(),
            metadata: self.metadata.clone(),
            macros: self.macros.clone(),
        })
        .map_err(|e| MacroError::Format(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, MacroError> {
        let stored: StoredLibrary =
            serde_json::from_str(text).map_err(|e| MacroError::Format(e.to_string()))?;
        if stored.version != LIBRARY_VERSION {
            return Err(MacroError::Format(format!(
                "unsupported library version {}",
                stored.version
            )));
        }
        let mut library = MacroLibrary::new(stored.goal);
        library.metadata = stored.metadata;
        library.macros = stored.macros;
        Ok(library)
    }

    pub fn save(&self, path: &Path) -> Result<(), MacroError> {
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, self.to_json()?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, MacroError> {
        MacroLibrary::from_json(&fs::read_to_string(path)?)
    }
}

/// One macro application, translated to the absolute frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppliedMacro {
    pub macro_index: usize,
    pub name: String,
    pub frame: Frame,
    /// The cubelet being placed, in absolute colors.
    pub target: CubeletId,
    pub moves: MoveSequence,
}

/// First macro, in library order and then frame order, whose precondition
/// holds for some unplaced goal cubelet.
pub fn find_applicable(state: &CubeState, library: &MacroLibrary) -> Option<AppliedMacro> {
    let views: Vec<(Frame, CubeState)> = library
        .frames
        .iter()
        .map(|&f| (f, f.view(state)))
        .collect();
    for (macro_index, action) in library.macros.iter().enumerate() {
        for (frame, view) in &views {
            if action.applies(view) {
                let target = library
                    .pool()
                    .into_iter()
                    .find(|&c| frame.map_cubelet(c) == action.effect.target)
                    .unwrap_or(action.effect.target);
                return Some(AppliedMacro {
                    macro_index,
                    name: action.name.clone(),
                    frame: *frame,
                    target,
                    moves: frame.sequence_to_absolute(&action.sequence),
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GreedySolution {
    pub sequence: MoveSequence,
    pub steps: Vec<AppliedMacro>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GreedyError {
    #[error("no macro applies after {} steps", partial.steps.len())]
    NoApplicableMacro { partial: GreedySolution, state: CubeState },
    #[error("step cap reached after {} steps", partial.steps.len())]
    StepCap { partial: GreedySolution, state: CubeState },
}

pub fn greedy_solve_with_library(
    state: &CubeState,
    library: &MacroLibrary,
    step_cap: usize,
) -> Result<GreedySolution, GreedyError> {
    let mut current = *state;
    let mut solution = GreedySolution::default();
    while !library.goal.matches(&current) {
        if solution.steps.len() >= step_cap {
            return Err(GreedyError::StepCap {
                partial: solution,
                state: current,
            });
        }
        let Some(step) = find_applicable(&current, library) else {
            return Err(GreedyError::NoApplicableMacro {
                partial: solution,
                state: current,
            });
        };
        current = current.apply_sequence(&step.moves);
        solution.sequence = solution.sequence.concat(&step.moves);
        solution.steps.push(step);
    }
    Ok(solution)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnParams {
    pub config_count: usize,
    pub depth_range: (usize, usize),
    pub seed: u64,
    pub complexity_cap: usize,
    pub macro_cap: usize,
    pub iteration_cap: usize,
    /// Candidates tried per iteration before giving up on it.
    pub attempts_per_iteration: usize,
    pub node_budget: usize,
    pub induction: InductionParams,
    pub examples: ExampleParams,
    pub validation_samples: usize,
    /// Re-inductions with validation counterexamples added as negatives.
    pub refinement_rounds: usize,
}

impl Default for LearnParams {
    fn default() -> Self {
        LearnParams {
            config_count: 200,
            depth_range: (1, 20),
            seed: 0,
            complexity_cap: 8,
            macro_cap: 48,
            iteration_cap: 200,
            attempts_per_iteration: 25,
            node_budget: 200_000,
            induction: InductionParams::default(),
            examples: ExampleParams::default(),
            validation_samples: 200,
            refinement_rounds: 8,
        }
    }
}

/// Induces and validates a precondition for `candidate`; counterexamples
/// found on held-out states are fed back as negatives.
pub fn learn_precondition(
    candidate: &MacroCandidate,
    configs: &[CubeState],
    pool: &[CubeletId],
    params: &LearnParams,
    name: String,
    seed: u64,
) -> Result<MacroAction, MacroError> {
    let mut examples = generate_examples(candidate, configs, pool, &params.examples, seed)?;
    let vocabulary = Vocabulary::over(pool.iter().copied());
    for round in 0..=params.refinement_rounds {
        let precondition = induce_program(&examples, &vocabulary, params.induction)?;
        let mut action = MacroAction {
            name: name.clone(),
            precondition,
            sequence: candidate.sequence.clone(),
            effect: candidate.effect.clone(),
            complexity: candidate.complexity,
            validation: ValidationStats::default(),
        };
        let (stats, violations) = validate_macro(
            &action,
            pool,
            params.validation_samples,
            seed.wrapping_add(1 + round as u64),
        );
        if violations.is_empty() {
            action.validation = stats;
            return Ok(action);
        }
        examples.negatives.extend(violations);
    }
    Err(MacroError::Induction(InductionError::NoConsistentProgram {
        covered: 0,
        positives: examples.positives.len(),
    }))
}

fn settle(state: &mut CubeState, library: &MacroLibrary, cap: usize) {
    for _ in 0..cap {
        if library.goal.matches(state) {
            return;
        }
        match find_applicable(state, library) {
            Some(step) => *state = state.apply_sequence(&step.moves),
            None => return,
        }
    }
}

/// The discovery loop: find candidates on unsolved configurations, take the
/// cheapest one whose precondition can be learned, apply the library to
/// every configuration until nothing applies, and repeat.
pub fn learn_macro_library(
    goal: &PartialGoal,
    params: &LearnParams,
    h: &dyn HeuristicProvider,
) -> Result<MacroLibrary, MacroError> {
    let (lo, hi) = params.depth_range;
    let configs = generate_configurations(params.config_count, lo..=hi, params.seed)?;
    let mut library = MacroLibrary::new(goal.clone());
    let pool = library.pool();
    let frames = library.frames.clone();
    let settle_cap = 2 * pool.len() + 2;
    let mut work = configs;
    for s in work.iter_mut() {
        settle(s, &library, settle_cap);
    }
    let mut cache: FxHashMap<CubeState, CandidateReport> = FxHashMap::default();
    let mut log = Vec::new();

    for iteration in 0..params.iteration_cap {
        let unsolved: Vec<CubeState> = work.iter().filter(|s| !goal.matches(s)).copied().collect();
        if unsolved.is_empty() || library.len() >= params.macro_cap {
            break;
        }
        let mut candidates = Vec::new();
        let mut failures = 0;
        for s in &unsolved {
            let report = cache.entry(*s).or_insert_with(|| {
                let mut r = CandidateReport::default();
                candidates_for(s, goal, &frames, h, params.node_budget, &mut r);
                r
            });
            candidates.extend(report.candidates.iter().cloned());
            failures += report.failures;
        }
        dedup_candidates(&mut candidates);
        candidates.retain(|c| c.complexity <= params.complexity_cap);
        candidates.sort_by(selection_order);

        let example_configs: Vec<CubeState> = unsolved
            .iter()
            .flat_map(|s| frames.iter().map(move |f| f.view(s)))
            .collect();
        let name = format!("macro-{:02}", library.len() + 1);
        let mut discarded = Vec::new();
        let mut added = None;
        for candidate in candidates.iter().take(params.attempts_per_iteration) {
            let seed = params.seed ^ ((iteration as u64 + 1) << 20) ^ discarded.len() as u64;
            match learn_precondition(candidate, &example_configs, &pool, params, name.clone(), seed) {
                Ok(action) => {
                    added = Some(action);
                    break;
                }
                Err(_) => discarded.push((candidate.sequence.to_string(), candidate.complexity)),
            }
        }
        let Some(action) = added else {
            log.push(IterationLog {
                iteration,
                unsolved_before: unsolved.len(),
                candidates: candidates.len(),
                search_failures: failures,
                added: None,
                added_complexity: None,
                discarded,
                unsolved_after: unsolved.len(),
            });
            break;
        };
        let added_complexity = action.complexity;
        library.insert(action);
        for s in work.iter_mut() {
            settle(s, &library, settle_cap);
        }
        log.push(IterationLog {
            iteration,
            unsolved_before: unsolved.len(),
            candidates: candidates.len(),
            search_failures: failures,
            added: Some(name),
            added_complexity: Some(added_complexity),
            discarded,
            unsolved_after: work.iter().filter(|s| !goal.matches(s)).count(),
        });
    }

    let unsolved_configs: Vec<usize> = work
        .iter()
        .enumerate()
        .filter(|(_, s)| !goal.matches(s))
        .map(|(i, _)| i)
        .collect();
    library.metadata = DiscoveryMetadata {
        seed: params.seed,
        config_count: params.config_count,
        depth_range: params.depth_range,
        solved_configs: params.config_count - unsolved_configs.len(),
        unsolved_configs,
        iterations: log,
    };
    Ok(library)
}
