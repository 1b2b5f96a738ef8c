//! Partially specified target configurations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{Color, CubeState, Face, Move};
use crate::cubelet::{cubelet_at, CubeletId, CubeletKind, Slot};
use crate::tables::{CENTER_SLOTS, MOVE_TABLES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoalError {
    #[error("goal pattern must have 54 characters, got {0}")]
    WrongLength(usize),
    #[error("unknown goal character {ch:?} at position {index}")]
    UnknownCharacter { ch: char, index: usize },
    #[error("unknown goal name {0:?}")]
    UnknownName(String),
}

/// One constraint per facelet: a required color or a wildcard.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialGoal {
    slots: [Option<Color>; 54],
}

impl PartialGoal {
    pub fn wildcard() -> Self {
        PartialGoal { slots: [None; 54] }
    }

    pub fn solved() -> Self {
        let solved = CubeState::solved();
        let mut slots = [None; 54];
        for (i, s) in slots.iter_mut().enumerate() {
            *s = Some(solved.facelet(i));
        }
        PartialGoal { slots }
    }

    /// The four white edges home around the white center, plus all centers.
    pub fn white_cross() -> Self {
        let mut goal = PartialGoal::centers_only();
        for id in white_cross_edges() {
            goal.fix_cubelet(id);
        }
        goal
    }

    pub fn centers_only() -> Self {
        let mut goal = PartialGoal::wildcard();
        for &c in CENTER_SLOTS.iter() {
            goal.slots[c as usize] = Some(Face::of_facelet(c as usize).home_color());
        }
        goal
    }

    /// Goal fixing the home facelets of the given cubelets plus all centers.
    pub fn for_cubelets(cubelets: impl IntoIterator<Item = CubeletId>) -> Self {
        let mut goal = PartialGoal::centers_only();
        for id in cubelets {
            goal.fix_cubelet(id);
        }
        goal
    }

    pub fn fix_cubelet(&mut self, id: CubeletId) {
        for &i in id.home_slot().facelets() {
            self.slots[i as usize] = Some(Face::of_facelet(i as usize).home_color());
        }
    }

    pub fn fix(&mut self, index: usize, color: Color) {
        self.slots[index] = Some(color);
    }

    pub fn constraint(&self, index: usize) -> Option<Color> {
        self.slots[index]
    }

    pub fn fixed_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn matches(&self, state: &CubeState) -> bool {
        self.slots
            .iter()
            .zip(state.facelets().iter())
            .all(|(goal, actual)| goal.is_none_or(|g| g == *actual))
    }

    /// Non-center slots with at least one fixed facelet.
    pub fn constrained_slots(&self) -> Vec<Slot> {
        [CubeletKind::Edge, CubeletKind::Corner]
            .into_iter()
            .flat_map(Slot::all)
            .filter(|slot| slot.facelets().iter().any(|&i| self.slots[i as usize].is_some()))
            .collect()
    }

    /// Cubelets whose home slot is constrained by this goal.
    pub fn relevant_cubelets(&self) -> Vec<CubeletId> {
        self.constrained_slots()
            .into_iter()
            .map(|slot| CubeletId {
                kind: slot.kind,
                home: slot.index,
            })
            .collect()
    }

    /// Number of constrained non-center slots whose facelets violate the goal.
    pub fn unsatisfied_slots(&self, state: &CubeState) -> usize {
        self.constrained_slots()
            .into_iter()
            .filter(|slot| {
                slot.facelets().iter().any(|&i| {
                    self.slots[i as usize].is_some_and(|g| g != state.facelet(i as usize))
                })
            })
            .count()
    }

    /// Projection of a state onto the cubelets this goal cares about.
    pub fn pattern_of(&self, state: &CubeState) -> Pattern {
        let mut relevant = [[false; 12]; 3];
        for id in self.relevant_cubelets() {
            relevant[id.kind as usize][id.home as usize] = true;
        }
        let mut cells = [Pattern::MASK; 54];
        for &c in CENTER_SLOTS.iter() {
            cells[c as usize] = state.facelet(c as usize) as u8;
        }
        for kind in [CubeletKind::Edge, CubeletKind::Corner] {
            for slot in Slot::all(kind) {
                if let Some((id, _)) = cubelet_at(state, slot) {
                    if relevant[id.kind as usize][id.home as usize] {
                        for &i in slot.facelets() {
                            cells[i as usize] = state.facelet(i as usize) as u8;
                        }
                    }
                }
            }
        }
        Pattern { cells }
    }

    /// `unsatisfied_slots` evaluated on a pattern; masked cells count as wrong.
    pub fn unsatisfied_pattern_slots(&self, pattern: &Pattern) -> usize {
        self.constrained_slots()
            .into_iter()
            .filter(|slot| {
                slot.facelets().iter().any(|&i| {
                    self.slots[i as usize].is_some_and(|g| g as u8 != pattern.cells[i as usize])
                })
            })
            .count()
    }

    pub fn pattern_matches(&self, pattern: &Pattern) -> bool {
        self.slots
            .iter()
            .zip(pattern.cells.iter())
            .all(|(goal, &cell)| goal.is_none_or(|g| g as u8 == cell))
    }

    /// Named goals accepted on the command line: `solved`, `white-cross`.
    pub fn named(name: &str) -> Result<Self, GoalError> {
        match name {
            "solved" => Ok(PartialGoal::solved()),
            "white-cross" | "white_cross" => Ok(PartialGoal::white_cross()),
            other => Err(GoalError::UnknownName(other.to_string())),
        }
    }

    /// 54-character pattern: color letters or `.`/`*`/`?` for wildcards.
    pub fn parse_pattern(text: &str) -> Result<Self, GoalError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.len() != 54 {
            return Err(GoalError::WrongLength(chars.len()));
        }
        let mut slots = [None; 54];
        for (index, &ch) in chars.iter().enumerate() {
            slots[index] = match ch {
                '.' | '*' | '?' => None,
                c => Some(
                    Color::from_letter(c).ok_or(GoalError::UnknownCharacter { ch: c, index })?,
                ),
            };
        }
        Ok(PartialGoal { slots })
    }

    pub fn format_pattern(&self) -> String {
        self.slots
            .iter()
            .map(|s| s.map_or('.', |c| c.letter()))
            .collect()
    }
}

impl fmt::Debug for PartialGoal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialGoal({})", self.format_pattern())
    }
}

impl FromStr for PartialGoal {
    type Err = GoalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PartialGoal::named(s).or_else(|_| PartialGoal::parse_pattern(s))
    }
}

impl Serialize for PartialGoal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.format_pattern())
    }
}

impl<'de> Deserialize<'de> for PartialGoal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The white edges in UR, UF, UL, UB order (white-orange first).
pub fn white_cross_edges() -> [CubeletId; 4] {
    [
        CubeletId::edge(0),
        CubeletId::edge(1),
        CubeletId::edge(2),
        CubeletId::edge(3),
    ]
}

/// Facelet array restricted to goal-relevant cubelets; everything else masked.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pattern {
    cells: [u8; 54],
}

impl Pattern {
    pub const MASK: u8 = u8::MAX;

    pub fn apply_move(&self, m: Move) -> Pattern {
        let table = &MOVE_TABLES[m.index()];
        let mut cells = self.cells;
        for (dst, &src) in table.iter().enumerate() {
            cells[dst] = self.cells[src as usize];
        }
        Pattern { cells }
    }

    pub fn cells(&self) -> &[u8; 54] {
        &self.cells
    }

    pub(crate) fn from_cells(cells: [u8; 54]) -> Pattern {
        Pattern { cells }
    }

    /// Fills masked cells with a neutral color so facelet-level heuristics
    /// can run on a pattern. Masked cells never match a fixed goal color
    /// check because callers only compare constrained slots of relevant pieces.
    pub fn to_state_lossy(&self) -> CubeState {
        let solved = CubeState::solved();
        let mut f = *solved.facelets();
        for (i, &c) in self.cells.iter().enumerate() {
            if c != Pattern::MASK {
                f[i] = Color::from_index(c);
            }
        }
        CubeState::from_facelets(f)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .cells
            .iter()
            .map(|&c| {
                if c == Pattern::MASK {
                    '.'
                } else {
                    Color::from_index(c).letter()
                }
            })
            .collect();
        write!(f, "Pattern({s})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{scramble, MoveSequence};

    #[test]
    fn solved_satisfies_every_named_goal() {
        let s = CubeState::solved();
        assert!(PartialGoal::solved().matches(&s));
        assert!(PartialGoal::white_cross().matches(&s));
        assert!(PartialGoal::wildcard().matches(&s));
    }

    #[test]
    fn white_cross_fixes_fourteen_facelets() {
        // 4 edges x 2 stickers + 6 centers
        assert_eq!(PartialGoal::white_cross().fixed_count(), 14);
        assert_eq!(PartialGoal::white_cross().relevant_cubelets().len(), 4);
    }

    #[test]
    fn wo_start_breaks_the_cross() {
        let seq: MoveSequence = "F' R' F D".parse().unwrap();
        let s = CubeState::solved().apply_sequence(&seq);
        assert!(!PartialGoal::white_cross().matches(&s));
        assert_eq!(PartialGoal::white_cross().unsatisfied_slots(&s), 1);
    }

    #[test]
    fn pattern_text_round_trip() {
        let g = PartialGoal::white_cross();
        let text = g.format_pattern();
        assert_eq!(PartialGoal::parse_pattern(&text).unwrap(), g);
        assert_eq!(
            PartialGoal::parse_pattern("W"),
            Err(GoalError::WrongLength(1))
        );
        assert!("nonsense".parse::<PartialGoal>().is_err());
    }

    #[test]
    fn patterns_commute_with_moves() {
        let goal = PartialGoal::white_cross();
        for seed in 0..40 {
            let (s, _) = scramble(15, seed).unwrap();
            for m in Move::ALL {
                assert_eq!(
                    goal.pattern_of(&s.apply_move(m)),
                    goal.pattern_of(&s).apply_move(m)
                );
            }
            assert_eq!(goal.matches(&s), goal.pattern_matches(&goal.pattern_of(&s)));
        }
    }
}
