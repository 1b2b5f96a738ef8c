use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::astar::{astar_solve, SearchError, SearchResult};
use super::heuristic::HeuristicProvider;
use crate::cube::CubeState;
use crate::cubelet::CubeletId;
use crate::goal::PartialGoal;

/// Place `target` at home without disturbing any cubelet in `protected`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FocusedEffect {
    pub target: CubeletId,
    pub protected: BTreeSet<CubeletId>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FocusedError {
    #[error("target {0} is also listed as protected")]
    TargetProtected(CubeletId),
    #[error("protected cubelet {0} is not in place")]
    ProtectedNotInPlace(CubeletId),
    #[error(transparent)]
    Search(#[from] SearchError),
}

impl FocusedEffect {
    pub fn new(
        target: CubeletId,
        protected: impl IntoIterator<Item = CubeletId>,
    ) -> Result<Self, FocusedError> {
        let protected: BTreeSet<CubeletId> = protected.into_iter().collect();
        if protected.contains(&target) {
            return Err(FocusedError::TargetProtected(target));
        }
        Ok(FocusedEffect { target, protected })
    }

    /// Goal fixing the target, the protected cubelets and all centers.
    pub fn goal(&self) -> PartialGoal {
        PartialGoal::for_cubelets(std::iter::once(self.target).chain(self.protected.iter().copied()))
    }

    /// Target placed and every protected cubelet still placed.
    pub fn achieved(&self, state: &CubeState) -> bool {
        self.target.is_placed(state) && self.protected.iter().all(|p| p.is_placed(state))
    }

    pub fn description(&self) -> String {
        let mut text = format!("{} {} placed", self.target.color_name(), self.target.kind.name());
        if !self.protected.is_empty() {
            let names: Vec<String> = self.protected.iter().map(|p| p.color_name()).collect();
            text.push_str(&format!(", keeping {} in place", names.join(", ")));
        }
        text
    }
}

impl fmt::Display for FocusedEffect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description())
    }
}

#[derive(Serialize, Deserialize)]
struct EffectRepr {
    target: String,
    protected: Vec<String>,
    description: String,
}

impl Serialize for FocusedEffect {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EffectRepr {
            target: self.target.code(),
            protected: self.protected.iter().map(|p| p.code()).collect(),
            description: self.description(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FocusedEffect {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = EffectRepr::deserialize(d)?;
        let parse = |code: &str| {
            CubeletId::from_code(code).ok_or_else(|| D::Error::custom(format!("unknown cubelet {code}")))
        };
        let target = parse(&repr.target)?;
        let protected = repr
            .protected
            .iter()
            .map(|c| parse(c))
            .collect::<Result<Vec<_>, _>>()?;
        FocusedEffect::new(target, protected).map_err(D::Error::custom)
    }
}

/// Shortest (for admissible `h`) sequence achieving `effect` from `state`.
pub fn solve_focused(
    state: &CubeState,
    effect: &FocusedEffect,
    heuristic: &dyn HeuristicProvider,
    node_budget: usize,
) -> Result<SearchResult, FocusedError> {
    if let Some(p) = effect.protected.iter().find(|p| !p.is_placed(state)) {
        return Err(FocusedError::ProtectedNotInPlace(*p));
    }
    Ok(astar_solve(state, &effect.goal(), heuristic, 1.0, node_budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::heuristic::MisplacedBound;

    #[test]
    fn target_must_not_be_protected() {
        let wo = CubeletId::edge(0);
        assert_eq!(
            FocusedEffect::new(wo, [wo]),
            Err(FocusedError::TargetProtected(wo))
        );
    }

    #[test]
    fn placed_target_needs_no_moves() {
        let effect = FocusedEffect::new(CubeletId::edge(0), [CubeletId::edge(1)]).unwrap();
        let r = solve_focused(&CubeState::solved(), &effect, &MisplacedBound, 1000).unwrap();
        assert!(r.path.is_empty());
    }

    #[test]
    fn protected_cubelets_must_start_in_place() {
        let s = CubeState::solved().apply_move("F".parse().unwrap());
        let effect = FocusedEffect::new(CubeletId::edge(0), [CubeletId::edge(1)]).unwrap();
        assert_eq!(
            solve_focused(&s, &effect, &MisplacedBound, 1000),
            Err(FocusedError::ProtectedNotInPlace(CubeletId::edge(1)))
        );
    }
}
