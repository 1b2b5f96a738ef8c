use crate::cube::CubeState;
use crate::goal::PartialGoal;

/// Estimated number of quarter turns from `state` to any state matching `goal`.
///
/// Implementations must return 0 for states that already match.
pub trait HeuristicProvider: Send + Sync {
    fn estimate(&self, state: &CubeState, goal: &PartialGoal) -> f64;

    /// Whether the estimate never exceeds the true distance.
    fn admissible(&self) -> bool {
        false
    }
}

/// `ceil(k / 8)` where `k` counts goal-constrained edge and corner slots that
/// are wrong. A quarter turn moves exactly four edges and four corners, so
/// it can fix at most eight slots.
#[derive(Debug, Clone, Copy, Default)]
pub struct MisplacedBound;

impl MisplacedBound {
    pub fn bound(unsatisfied: usize) -> f64 {
        unsatisfied.div_ceil(8) as f64
    }
}

impl HeuristicProvider for MisplacedBound {
    fn estimate(&self, state: &CubeState, goal: &PartialGoal) -> f64 {
        MisplacedBound::bound(goal.unsatisfied_slots(state))
    }

    fn admissible(&self) -> bool {
        true
    }
}

/// Always zero: turns A* into uniform-cost search.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroHeuristic;

impl HeuristicProvider for ZeroHeuristic {
    fn estimate(&self, _: &CubeState, _: &PartialGoal) -> f64 {
        0.0
    }

    fn admissible(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Move;

    #[test]
    fn zero_at_goal() {
        let s = CubeState::solved();
        assert_eq!(MisplacedBound.estimate(&s, &PartialGoal::solved()), 0.0);
    }

    #[test]
    fn one_quarter_turn_misplaces_eight_cubelets() {
        let r: Move = "R".parse().unwrap();
        let s = CubeState::solved().apply_move(r);
        // direct enumeration: the R layer holds 4 edges and 4 corners
        assert_eq!(PartialGoal::solved().unsatisfied_slots(&s), 8);
        assert_eq!(MisplacedBound.estimate(&s, &PartialGoal::solved()), 1.0);
    }
}
