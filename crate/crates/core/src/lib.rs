pub mod cube;
pub mod cubelet;
mod tables;

pub use cube::{scramble, Color, CubeError, CubeState, Direction, Face, Move, MoveSequence};
pub use cubelet::{check_reachable, cubelet_positions, locate, CubeletId, CubeletKind, Location, Slot};
pub mod goal;
pub mod symmetry;

pub use goal::{PartialGoal, Pattern};
pub use symmetry::Frame;
pub mod search;
pub mod sampling;
pub mod induction;
pub use induction::{evaluate_program, induce_program, Atom, Clause, ExampleSet, InductionParams, Predicate, PredicateProgram, Vocabulary};
pub mod macros;
pub use macros::{
    apply_macro, discover_candidates, generate_configurations, generate_examples,
    greedy_solve_with_library, learn_macro_library, select_lowest_complexity, LearnParams,
    MacroAction, MacroCandidate, MacroError, MacroLibrary,
};
pub mod nlg;
