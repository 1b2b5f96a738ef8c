//! Viewing frames: the cube turned about its U-D axis and recolored so the
//! centers read as home again.
//!
//! The white cross is invariant under these four frames, so a macro learned
//! for the white-orange edge applies to every white edge through the
//! matching frame.

use serde::{Deserialize, Serialize};

use crate::cube::{Color, CubeState, Face, Move, MoveSequence};
use crate::cubelet::{CubeletId, CubeletKind};
use crate::tables::Y_ROTATION;

/// Number of quarter turns of the whole cube about U (0..4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Frame(u8);

impl Frame {
    pub const IDENTITY: Frame = Frame(0);

    pub fn all() -> impl Iterator<Item = Frame> {
        (0..4).map(Frame)
    }

    pub fn new(quarter_turns: u8) -> Frame {
        Frame(quarter_turns % 4)
    }

    pub fn quarter_turns(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Frame {
        Frame((4 - self.0) % 4)
    }

    /// Side faces carry their content to this face under one turn.
    fn turn_face(face: Face) -> Face {
        match face {
            Face::Front => Face::Left,
            Face::Left => Face::Back,
            Face::Back => Face::Right,
            Face::Right => Face::Front,
            other => other,
        }
    }

    fn face(self, face: Face) -> Face {
        (0..self.0).fold(face, |f, _| Frame::turn_face(f))
    }

    fn color(self, color: Color) -> Color {
        self.face(Face::with_home_color(color)).home_color()
    }

    /// How the state looks from this frame.
    pub fn view(self, state: &CubeState) -> CubeState {
        let mut current = *state.facelets();
        for _ in 0..self.0 {
            let mut next = current;
            for (dst, &src) in Y_ROTATION.iter().enumerate() {
                next[dst] = Frame(1).color(current[src as usize]);
            }
            current = next;
        }
        CubeState::from_facelets(current)
    }

    /// A move written in this frame, translated to the absolute frame.
    pub fn to_absolute(self, m: Move) -> Move {
        Move::new(self.inverse().face(m.face), m.direction)
    }

    pub fn to_view(self, m: Move) -> Move {
        Move::new(self.face(m.face), m.direction)
    }

    pub fn sequence_to_absolute(self, seq: &MoveSequence) -> MoveSequence {
        MoveSequence(seq.moves().iter().map(|&m| self.to_absolute(m)).collect())
    }

    /// Identity a cubelet takes on when seen from this frame.
    pub fn map_cubelet(self, id: CubeletId) -> CubeletId {
        let mut mapped: Vec<Color> = id.colors().into_iter().map(|c| self.color(c)).collect();
        mapped.sort();
        if id.kind == CubeletKind::Center {
            return CubeletId {
                kind: CubeletKind::Center,
                home: Face::with_home_color(mapped[0]) as u8,
            };
        }
        CubeletId::all()
            .find(|other| {
                let mut colors = other.colors();
                colors.sort();
                other.kind == id.kind && colors == mapped
            })
            .expect("frames map cubelets to cubelets")
    }

    /// The frame in which `target` looks like `canonical`, if any.
    pub fn canonicalizing(target: CubeletId, canonical: CubeletId) -> Option<Frame> {
        Frame::all().find(|f| f.map_cubelet(target) == canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::scramble;
    use crate::goal::PartialGoal;

    #[test]
    fn view_commutes_with_moves() {
        for seed in 0..20 {
            let (s, _) = scramble(20, seed).unwrap();
            for frame in Frame::all() {
                for m in Move::ALL {
                    assert_eq!(
                        frame.view(&s.apply_move(m)),
                        frame.view(&s).apply_move(frame.to_view(m)),
                        "frame {frame:?} move {m}"
                    );
                    assert_eq!(frame.to_absolute(frame.to_view(m)), m);
                }
            }
        }
    }

    #[test]
    fn views_keep_centers_and_the_cross() {
        let cross = PartialGoal::white_cross();
        for frame in Frame::all() {
            assert_eq!(frame.view(&CubeState::solved()), CubeState::solved());
        }
        for seed in 0..50 {
            let (s, _) = scramble(10, seed).unwrap();
            for frame in Frame::all() {
                assert_eq!(cross.matches(&s), cross.matches(&frame.view(&s)));
            }
        }
    }

    #[test]
    fn each_white_edge_has_a_canonicalizing_frame() {
        let wo = CubeletId::edge(0);
        for home in 0..4 {
            let frame = Frame::canonicalizing(CubeletId::edge(home), wo).unwrap();
            let s = CubeState::solved().apply_move(Move::ALL[6]);
            let placed_abs = CubeletId::edge(home).is_placed(&s);
            assert_eq!(placed_abs, wo.is_placed(&frame.view(&s)));
        }
    }
}
