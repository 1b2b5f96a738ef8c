//! The 3x3x3 cube as a permutation of 54 colored facelets.
//!
//! Home orientation: white Up, yellow Down, red Left, orange Right, blue
//! Front, green Back. Every other module assumes this orientation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tables::{CENTER_SLOTS, MOVE_TABLES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("facelet string must have 54 characters, got {0}")]
    WrongLength(usize),
    #[error("unknown facelet character {ch:?} at position {index}")]
    UnknownCharacter { ch: char, index: usize },
    #[error("color {color} appears {count} times, expected 9")]
    ColorCount { color: Color, count: usize },
    #[error("unknown move token {0:?}")]
    UnknownMove(String),
    #[error("scramble depth must be at least 1")]
    ZeroDepth,
    #[error("unreachable configuration: {0}")]
    Unreachable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[repr(u8)]
pub enum Color {
    White = 0,
    Yellow = 1,
    Red = 2,
    Orange = 3,
    Green = 4,
    Blue = 5,
}

impl Color {
    pub const ALL: [Color; 6] = [
        Color::White,
        Color::Yellow,
        Color::Red,
        Color::Orange,
        Color::Green,
        Color::Blue,
    ];

    pub fn letter(self) -> char {
        match self {
            Color::White => 'W',
            Color::Yellow => 'Y',
            Color::Red => 'R',
            Color::Orange => 'O',
            Color::Green => 'G',
            Color::Blue => 'B',
        }
    }

    pub fn from_letter(ch: char) -> Option<Color> {
        Some(match ch {
            'W' => Color::White,
            'Y' => Color::Yellow,
            'R' => Color::Red,
            'O' => Color::Orange,
            'G' => Color::Green,
            'B' => Color::Blue,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::White => "white",
            Color::Yellow => "yellow",
            Color::Red => "red",
            Color::Orange => "orange",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }

    pub(crate) fn from_index(i: u8) -> Color {
        Color::ALL[i as usize]
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum Face {
    Up = 0,
    Down = 1,
    Left = 2,
    Right = 3,
    Front = 4,
    Back = 5,
}

impl Face {
    pub const ALL: [Face; 6] = [
        Face::Up,
        Face::Down,
        Face::Left,
        Face::Right,
        Face::Front,
        Face::Back,
    ];

    pub fn home_color(self) -> Color {
        match self {
            Face::Up => Color::White,
            Face::Down => Color::Yellow,
            Face::Left => Color::Red,
            Face::Right => Color::Orange,
            Face::Front => Color::Blue,
            Face::Back => Color::Green,
        }
    }

    /// The face whose center carries `color` in the home orientation.
    pub fn with_home_color(color: Color) -> Face {
        match color {
            Color::White => Face::Up,
            Color::Yellow => Face::Down,
            Color::Red => Face::Left,
            Color::Orange => Face::Right,
            Color::Blue => Face::Front,
            Color::Green => Face::Back,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Face::Up => 'U',
            Face::Down => 'D',
            Face::Left => 'L',
            Face::Right => 'R',
            Face::Front => 'F',
            Face::Back => 'B',
        }
    }

    pub fn from_letter(ch: char) -> Option<Face> {
        Face::ALL.into_iter().find(|f| f.letter() == ch)
    }

    /// Face that owns facelet `index`.
    pub fn of_facelet(index: usize) -> Face {
        Face::ALL[index / 9]
    }

    pub fn center_index(self) -> usize {
        self as usize * 9 + 4
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    Clockwise,
    CounterClockwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub face: Face,
    pub direction: Direction,
}

impl Move {
    /// All quarter turns in enumeration order: U U' D D' L L' R R' F F' B B'.
    pub const ALL: [Move; 12] = {
        let mut out = [Move {
            face: Face::Up,
            direction: Direction::Clockwise,
        }; 12];
        let mut i = 0;
        while i < 12 {
            out[i] = Move {
                face: Face::ALL[i / 2],
                direction: if i % 2 == 0 {
                    Direction::Clockwise
                } else {
                    Direction::CounterClockwise
                },
            };
            i += 1;
        }
        out
    };

    pub const fn new(face: Face, direction: Direction) -> Self {
        Move { face, direction }
    }

    pub fn index(self) -> usize {
        self.face as usize * 2
            + match self.direction {
                Direction::Clockwise => 0,
                Direction::CounterClockwise => 1,
            }
    }

    pub fn inverse(self) -> Move {
        Move {
            face: self.face,
            direction: match self.direction {
                Direction::Clockwise => Direction::CounterClockwise,
                Direction::CounterClockwise => Direction::Clockwise,
            },
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.face.letter())?;
        if self.direction == Direction::CounterClockwise {
            f.write_str("'")?;
        }
        Ok(())
    }
}

impl FromStr for Move {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let face = chars
            .next()
            .and_then(Face::from_letter)
            .ok_or_else(|| CubeError::UnknownMove(s.to_string()))?;
        let direction = match chars.as_str() {
            "" => Direction::Clockwise,
            "'" | "’" => Direction::CounterClockwise,
            _ => return Err(CubeError::UnknownMove(s.to_string())),
        };
        Ok(Move { face, direction })
    }
}

/// An ordered list of quarter turns, written in Singmaster notation.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveSequence(pub Vec<Move>);

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn inverse(&self) -> MoveSequence {
        MoveSequence(self.0.iter().rev().map(|m| m.inverse()).collect())
    }

    pub fn concat(&self, other: &MoveSequence) -> MoveSequence {
        let mut moves = self.0.clone();
        moves.extend_from_slice(&other.0);
        MoveSequence(moves)
    }
}

impl From<Vec<Move>> for MoveSequence {
    fn from(moves: Vec<Move>) -> Self {
        MoveSequence(moves)
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveSequence {
    type Err = CubeError;

    /// Whitespace-separated tokens; trailing commas are tolerated so
    /// "D', F', R, F" parses too.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(MoveSequence)
    }
}

impl Serialize for MoveSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MoveSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Cube configuration: 54 facelet colors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeState {
    facelets: [Color; 54],
}

impl CubeState {
    pub fn solved() -> Self {
        let mut facelets = [Color::White; 54];
        for (i, f) in facelets.iter_mut().enumerate() {
            *f = Face::of_facelet(i).home_color();
        }
        CubeState { facelets }
    }

    pub fn facelets(&self) -> &[Color; 54] {
        &self.facelets
    }

    pub fn facelet(&self, index: usize) -> Color {
        self.facelets[index]
    }

    /// Builds a state from raw colors without any validation.
    pub fn from_facelets(facelets: [Color; 54]) -> Self {
        CubeState { facelets }
    }

    pub fn apply_move(&self, m: Move) -> CubeState {
        let table = &MOVE_TABLES[m.index()];
        let mut facelets = self.facelets;
        for (dst, &src) in table.iter().enumerate() {
            facelets[dst] = self.facelets[src as usize];
        }
        CubeState { facelets }
    }

    pub fn apply_sequence(&self, seq: &MoveSequence) -> CubeState {
        seq.0.iter().fold(*self, |s, &m| s.apply_move(m))
    }

    pub fn is_solved(&self) -> bool {
        *self == CubeState::solved()
    }

    pub fn parse_facelets(text: &str) -> Result<CubeState, CubeError> {
        let chars: Vec<char> = text.trim().chars().collect();
        if chars.len() != 54 {
            return Err(CubeError::WrongLength(chars.len()));
        }
        let mut facelets = [Color::White; 54];
        let mut counts = [0usize; 6];
        for (index, &ch) in chars.iter().enumerate() {
            let color = Color::from_letter(ch).ok_or(CubeError::UnknownCharacter { ch, index })?;
            counts[color as usize] += 1;
            facelets[index] = color;
        }
        for color in Color::ALL {
            let count = counts[color as usize];
            if count != 9 {
                return Err(CubeError::ColorCount { color, count });
            }
        }
        Ok(CubeState { facelets })
    }

    pub fn format_facelets(&self) -> String {
        self.facelets.iter().map(|c| c.letter()).collect()
    }

    /// Full reachability check: fixed centers, a valid set of cubelets, and
    /// the twist, flip and parity constraints of the cube group.
    pub fn validate(&self) -> Result<(), CubeError> {
        for face in Face::ALL {
            if self.facelets[CENTER_SLOTS[face as usize] as usize] != face.home_color() {
                return Err(CubeError::Unreachable(format!(
                    "{} center is not {}",
                    face.letter(),
                    face.home_color()
                )));
            }
        }
        crate::cubelet::check_reachable(self)
    }

    /// Number of facelets that differ between two states.
    pub fn facelet_distance(&self, other: &CubeState) -> usize {
        self.facelets
            .iter()
            .zip(other.facelets.iter())
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Debug for CubeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubeState({})", self.format_facelets())
    }
}

impl fmt::Display for CubeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_facelets())
    }
}

impl FromStr for CubeState {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CubeState::parse_facelets(s)
    }
}

impl Serialize for CubeState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CubeState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Random move sequence of exactly `depth` quarter turns from solved.
/// Consecutive moves never share a face.
pub fn scramble(depth: usize, seed: u64) -> Result<(CubeState, MoveSequence), CubeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    scramble_with(depth, &mut rng)
}

pub fn scramble_with<R: Rng>(
    depth: usize,
    rng: &mut R,
) -> Result<(CubeState, MoveSequence), CubeError> {
    if depth == 0 {
        return Err(CubeError::ZeroDepth);
    }
    let mut moves: Vec<Move> = Vec::with_capacity(depth);
    while moves.len() < depth {
        let m = Move::ALL[rng.random_range(0..12)];
        if moves.last().is_some_and(|last| last.face == m.face) {
            continue;
        }
        moves.push(m);
    }
    let seq = MoveSequence(moves);
    Ok((CubeState::solved().apply_sequence(&seq), seq))
}
