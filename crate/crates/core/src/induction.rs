//! Preconditions as disjunctions of conjunctive cube predicates, and a
//! complexity-ordered inducer that learns them from labeled states.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{Color, CubeState, Face};
use crate::cubelet::{cubelet_at, locate, CubeletId, CubeletKind, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// Facelet `index` shows `color`.
    StickerAt { index: u8, color: Color },
    /// The edge slot holds `cubelet` with the given orientation.
    EdgeSlot { slot: u8, cubelet: CubeletId, orientation: u8 },
    CornerSlot { slot: u8, cubelet: CubeletId, orientation: u8 },
    Placed(CubeletId),
    /// The `sticker`-colored side of `cubelet` lies on the face whose center is `center`.
    Aligned { cubelet: CubeletId, sticker: Color, center: Color },
}

impl Atom {
    pub fn name(&self) -> &'static str {
        match self {
            Atom::StickerAt { .. } => "sticker_at",
            Atom::EdgeSlot { .. } => "edge_slot",
            Atom::CornerSlot { .. } => "corner_slot",
            Atom::Placed(_) => "placed",
            Atom::Aligned { .. } => "aligned",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Atom::Placed(_) => 1,
            Atom::StickerAt { .. } => 2,
            _ => 3,
        }
    }

    /// Cubelet the atom talks about, if any.
    pub fn cubelet(&self) -> Option<CubeletId> {
        match *self {
            Atom::StickerAt { .. } => None,
            Atom::EdgeSlot { cubelet, .. }
            | Atom::CornerSlot { cubelet, .. }
            | Atom::Aligned { cubelet, .. } => Some(cubelet),
            Atom::Placed(c) => Some(c),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Atom::Placed(_) => 0,
            Atom::Aligned { .. } => 1,
            Atom::EdgeSlot { .. } => 2,
            Atom::CornerSlot { .. } => 3,
            Atom::StickerAt { .. } => 4,
        }
    }

    fn args(&self) -> Vec<String> {
        match *self {
            Atom::StickerAt { index, color } => vec![index.to_string(), color.letter().into()],
            Atom::EdgeSlot {
                slot,
                cubelet,
                orientation,
            } => vec![
                Slot {
                    kind: CubeletKind::Edge,
                    index: slot,
                }
                .name(),
                cubelet.code(),
                orientation.to_string(),
            ],
            Atom::CornerSlot {
                slot,
                cubelet,
                orientation,
            } => vec![
                Slot {
                    kind: CubeletKind::Corner,
                    index: slot,
                }
                .name(),
                cubelet.code(),
                orientation.to_string(),
            ],
            Atom::Placed(c) => vec![c.code()],
            Atom::Aligned {
                cubelet,
                sticker,
                center,
            } => vec![
                cubelet.code(),
                sticker.letter().into(),
                center.letter().into(),
            ],
        }
    }

    pub fn holds(&self, state: &CubeState) -> bool {
        match *self {
            Atom::StickerAt { index, color } => state.facelet(index as usize) == color,
            Atom::EdgeSlot {
                slot,
                cubelet,
                orientation,
            } => {
                cubelet_at(
                    state,
                    Slot {
                        kind: CubeletKind::Edge,
                        index: slot,
                    },
                ) == Some((cubelet, orientation))
            }
            Atom::CornerSlot {
                slot,
                cubelet,
                orientation,
            } => {
                cubelet_at(
                    state,
                    Slot {
                        kind: CubeletKind::Corner,
                        index: slot,
                    },
                ) == Some((cubelet, orientation))
            }
            Atom::Placed(c) => c.is_placed(state),
            Atom::Aligned {
                cubelet,
                sticker,
                center,
            } => aligned_center(state, cubelet, sticker) == Some(center),
        }
    }
}

/// Center color of the face showing the `sticker` side of `cubelet`.
pub fn aligned_center(state: &CubeState, cubelet: CubeletId, sticker: Color) -> Option<Color> {
    let which = cubelet.colors().iter().position(|&c| c == sticker)?;
    let loc = locate(state, cubelet)?;
    Some(state.facelet(loc.face_of_sticker(which).center_index()))
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    /// Grouped by cubelet, then placement before alignment before slot facts.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |a: &Atom| (a.cubelet().is_none(), a.cubelet(), a.rank());
        key(self).cmp(&key(other)).then_with(|| match (self, other) {
            (
                Atom::Aligned {
                    sticker: s1,
                    center: c1,
                    ..
                },
                Atom::Aligned {
                    sticker: s2,
                    center: c2,
                    ..
                },
            ) => (s1, c1).cmp(&(s2, c2)),
            (
                Atom::EdgeSlot {
                    slot: a,
                    orientation: o1,
                    ..
                },
                Atom::EdgeSlot {
                    slot: b,
                    orientation: o2,
                    ..
                },
            )
            | (
                Atom::CornerSlot {
                    slot: a,
                    orientation: o1,
                    ..
                },
                Atom::CornerSlot {
                    slot: b,
                    orientation: o2,
                    ..
                },
            ) => (a, o1).cmp(&(b, o2)),
            (
                Atom::StickerAt { index: a, color: c1 },
                Atom::StickerAt { index: b, color: c2 },
            ) => (a, c1).cmp(&(b, c2)),
            _ => Ordering::Equal,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.args().join(","))
    }
}

/// An atom or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Predicate {
    pub atom: Atom,
    pub negated: bool,
}

impl Predicate {
    pub fn pos(atom: Atom) -> Self {
        Predicate {
            atom,
            negated: false,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Predicate {
            atom,
            negated: true,
        }
    }

    pub fn holds(&self, state: &CubeState) -> bool {
        self.atom.holds(state) != self.negated
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("not ")?;
        }
        write!(f, "{}", self.atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    predicates: Vec<Predicate>,
}

impl Clause {
    pub fn new(predicates: impl IntoIterator<Item = Predicate>) -> Self {
        let mut predicates: Vec<Predicate> = predicates.into_iter().collect();
        predicates.sort();
        predicates.dedup();
        Clause { predicates }
    }

    pub fn predicates(&self) -> &[Predicate] {
        &self.predicates
    }

    pub fn len(&self) -> usize {
        self.predicates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty()
    }

    pub fn holds(&self, state: &CubeState) -> bool {
        self.predicates.iter().all(|p| p.holds(state))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.predicates.is_empty() {
            return f.write_str("true");
        }
        let parts: Vec<String> = self.predicates.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(" AND "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PredicateProgram {
    clauses: Vec<Clause>,
}

impl PredicateProgram {
    pub fn new(clauses: Vec<Clause>) -> Self {
        PredicateProgram { clauses }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Index of the first clause that holds.
    pub fn matching_clause(&self, state: &CubeState) -> Option<usize> {
        self.clauses.iter().position(|c| c.holds(state))
    }

    /// Cubelets mentioned anywhere in the program.
    pub fn cubelets(&self) -> Vec<CubeletId> {
        let mut out: Vec<CubeletId> = self
            .clauses
            .iter()
            .flat_map(|c| c.predicates.iter().filter_map(|p| p.atom.cubelet()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

pub fn evaluate_program(program: &PredicateProgram, state: &CubeState) -> bool {
    program.matching_clause(state).is_some()
}

/// Clauses in order, each split into runs of predicates about one cubelet.
pub fn program_to_predicates(program: &PredicateProgram) -> Vec<Vec<Vec<Predicate>>> {
    program
        .clauses
        .iter()
        .map(|clause| {
            let mut groups: Vec<Vec<Predicate>> = Vec::new();
            for p in &clause.predicates {
                match groups.last_mut() {
                    Some(g) if g[0].atom.cubelet() == p.atom.cubelet() => g.push(*p),
                    _ => groups.push(vec![*p]),
                }
            }
            groups
        })
        .collect()
}

impl fmt::Display for PredicateProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("false");
        }
        let parts: Vec<String> = self.clauses.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" OR "))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse predicate program: {0}")]
pub struct ProgramParseError(String);

fn parse_cubelet(code: &str) -> Result<CubeletId, ProgramParseError> {
    CubeletId::from_code(code).ok_or_else(|| ProgramParseError(format!("unknown cubelet {code:?}")))
}

fn parse_color(text: &str) -> Result<Color, ProgramParseError> {
    let mut chars = text.chars();
    match (chars.next().and_then(Color::from_letter), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(ProgramParseError(format!("unknown color {text:?}"))),
    }
}

fn parse_small(text: &str) -> Result<u8, ProgramParseError> {
    text.parse()
        .map_err(|_| ProgramParseError(format!("bad number {text:?}")))
}

impl FromStr for Atom {
    type Err = ProgramParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, rest) = s
            .split_once('(')
            .ok_or_else(|| ProgramParseError(format!("expected name(args) in {s:?}")))?;
        let args: Vec<&str> = rest
            .strip_suffix(')')
            .ok_or_else(|| ProgramParseError(format!("missing ')' in {s:?}")))?
            .split(',')
            .map(str::trim)
            .collect();
        let want = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(ProgramParseError(format!("{name} takes {n} arguments")))
            }
        };
        let slot = |text: &str, kind: CubeletKind| -> Result<u8, ProgramParseError> {
            match text.parse::<Slot>() {
                Ok(slot) if slot.kind == kind => Ok(slot.index),
                _ => Err(ProgramParseError(format!("bad {} slot {text:?}", kind.name()))),
            }
        };
        match name.trim() {
            "sticker_at" => {
                want(2)?;
                let index = parse_small(args[0])?;
                if index >= 54 {
                    return Err(ProgramParseError(format!("facelet {index} out of range")));
                }
                Ok(Atom::StickerAt {
                    index,
                    color: parse_color(args[1])?,
                })
            }
            "edge_slot" => {
                want(3)?;
                Ok(Atom::EdgeSlot {
                    slot: slot(args[0], CubeletKind::Edge)?,
                    cubelet: parse_cubelet(args[1])?,
                    orientation: parse_small(args[2])?,
                })
            }
            "corner_slot" => {
                want(3)?;
                Ok(Atom::CornerSlot {
                    slot: slot(args[0], CubeletKind::Corner)?,
                    cubelet: parse_cubelet(args[1])?,
                    orientation: parse_small(args[2])?,
                })
            }
            "placed" => {
                want(1)?;
                Ok(Atom::Placed(parse_cubelet(args[0])?))
            }
            "aligned" => {
                want(3)?;
                Ok(Atom::Aligned {
                    cubelet: parse_cubelet(args[0])?,
                    sticker: parse_color(args[1])?,
                    center: parse_color(args[2])?,
                })
            }
            other => Err(ProgramParseError(format!("unknown predicate {other:?}"))),
        }
    }
}

impl FromStr for Predicate {
    type Err = ProgramParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.strip_prefix("not ") {
            Some(rest) => Ok(Predicate::neg(rest.parse()?)),
            None => Ok(Predicate::pos(s.parse()?)),
        }
    }
}

impl FromStr for PredicateProgram {
    type Err = ProgramParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "false" {
            return Ok(PredicateProgram::default());
        }
        let clauses = s
            .split(" OR ")
            .map(|clause| {
                let clause = clause.trim();
                if clause == "true" {
                    return Ok(Clause::default());
                }
                clause
                    .split(" AND ")
                    .map(str::parse)
                    .collect::<Result<Vec<Predicate>, _>>()
                    .map(Clause::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PredicateProgram::new(clauses))
    }
}

impl Serialize for PredicateProgram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PredicateProgram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Which atoms the inducer may use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    /// Cubelets the cubelet-level atoms may mention.
    pub cubelets: Vec<CubeletId>,
    pub placed: bool,
    pub aligned: bool,
    pub slots: bool,
    pub stickers: bool,
}

impl Vocabulary {
    /// Placement and alignment facts about `cubelets`.
    pub fn over(cubelets: impl IntoIterator<Item = CubeletId>) -> Self {
        Vocabulary {
            cubelets: cubelets.into_iter().collect(),
            placed: true,
            aligned: true,
            slots: false,
            stickers: false,
        }
    }

    /// Every atom of the vocabulary in canonical order (both polarities for `placed`).
    pub fn all_predicates(&self) -> Vec<Predicate> {
        let mut out = Vec::new();
        for &c in &self.cubelets {
            if self.placed {
                out.push(Predicate::pos(Atom::Placed(c)));
                out.push(Predicate::neg(Atom::Placed(c)));
            }
            if self.aligned {
                for sticker in c.colors() {
                    for center in Color::ALL {
                        out.push(Predicate::pos(Atom::Aligned {
                            cubelet: c,
                            sticker,
                            center,
                        }));
                    }
                }
            }
            if self.slots && c.kind != CubeletKind::Center {
                for slot in Slot::all(c.kind) {
                    for orientation in 0..c.colors().len() as u8 {
                        out.push(Predicate::pos(match c.kind {
                            CubeletKind::Edge => Atom::EdgeSlot {
                                slot: slot.index,
                                cubelet: c,
                                orientation,
                            },
                            _ => Atom::CornerSlot {
                                slot: slot.index,
                                cubelet: c,
                                orientation,
                            },
                        }));
                    }
                }
            }
        }
        if self.stickers {
            for index in 0..54u8 {
                if Face::ALL.iter().any(|f| f.center_index() == index as usize) {
                    continue;
                }
                for color in Color::ALL {
                    out.push(Predicate::pos(Atom::StickerAt { index, color }));
                }
            }
        }
        out.sort();
        out
    }

    /// Predicates of the vocabulary that hold in `state`, canonical order.
    pub fn true_predicates(&self, state: &CubeState) -> Vec<Predicate> {
        self.all_predicates()
            .into_iter()
            .filter(|p| p.holds(state))
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExampleSet {
    pub positives: Vec<CubeState>,
    pub negatives: Vec<CubeState>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionParams {
    pub max_clause_size: usize,
    pub max_clauses: usize,
}

impl Default for InductionParams {
    fn default() -> Self {
        InductionParams {
            max_clause_size: 4,
            max_clauses: 3,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InductionError {
    #[error("no positive examples")]
    NoPositives,
    #[error("no consistent program within bounds: covered {covered} of {positives} positives")]
    NoConsistentProgram { covered: usize, positives: usize },
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize, f: impl Fn(usize) -> bool) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for i in 0..n {
            if f(i) {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Bits(words)
    }

    fn count_and(sets: &[&Bits], mask: &Bits) -> usize {
        (0..mask.0.len())
            .map(|w| {
                sets.iter()
                    .fold(mask.0[w], |acc, s| acc & s.0[w])
                    .count_ones() as usize
            })
            .sum()
    }

    fn any_and(sets: &[&Bits], mask: &Bits) -> bool {
        (0..mask.0.len()).any(|w| sets.iter().fold(mask.0[w], |acc, s| acc & s.0[w]) != 0)
    }
}

/// Greedy set cover: seed on the first uncovered positive, enumerate clauses
/// over predicates true on it by increasing size, keep the consistent clause
/// covering the most uncovered positives (first in enumeration order on ties).
pub fn induce_program(
    examples: &ExampleSet,
    vocabulary: &Vocabulary,
    params: InductionParams,
) -> Result<PredicateProgram, InductionError> {
    if examples.positives.is_empty() {
        return Err(InductionError::NoPositives);
    }
    let all = vocabulary.all_predicates();
    let (np, nn) = (examples.positives.len(), examples.negatives.len());
    let pos_bits: Vec<Bits> = all
        .iter()
        .map(|p| Bits::new(np, |i| p.holds(&examples.positives[i])))
        .collect();
    let neg_bits: Vec<Bits> = all
        .iter()
        .map(|p| Bits::new(nn, |i| p.holds(&examples.negatives[i])))
        .collect();
    let all_neg = Bits::new(nn, |_| true);

    let mut uncovered = Bits::new(np, |_| true);
    let mut clauses = Vec::new();
    let fail = |uncovered: &Bits| InductionError::NoConsistentProgram {
        covered: np - Bits::count_and(&[], uncovered),
        positives: np,
    };

    while Bits::count_and(&[], &uncovered) > 0 {
        if clauses.len() == params.max_clauses {
            return Err(fail(&uncovered));
        }
        let seed = (0..np)
            .find(|&i| uncovered.0[i / 64] >> (i % 64) & 1 == 1)
            .expect("uncovered positive exists");
        let candidates: Vec<usize> = (0..all.len())
            .filter(|&a| pos_bits[a].0[seed / 64] >> (seed % 64) & 1 == 1)
            .collect();

        let mut best: Option<(usize, Vec<usize>)> = None;
        for size in 0..=params.max_clause_size.min(candidates.len()) {
            for_each_combination(candidates.len(), size, |combo| {
                let sets: Vec<&Bits> = combo.iter().map(|&k| &neg_bits[candidates[k]]).collect();
                if Bits::any_and(&sets, &all_neg) {
                    return;
                }
                let sets: Vec<&Bits> = combo.iter().map(|&k| &pos_bits[candidates[k]]).collect();
                let cover = Bits::count_and(&sets, &uncovered);
                if best.as_ref().is_none_or(|(c, _)| cover > *c) {
                    best = Some((cover, combo.iter().map(|&k| candidates[k]).collect()));
                }
            });
            if best.is_some() {
                break;
            }
        }
        let Some((_, chosen)) = best else {
            return Err(fail(&uncovered));
        };
        for w in 0..uncovered.0.len() {
            let covered = chosen.iter().fold(!0u64, |acc, &a| acc & pos_bits[a].0[w]);
            uncovered.0[w] &= !covered;
        }
        clauses.push(Clause::new(chosen.iter().map(|&a| all[a])));
    }

    let program = PredicateProgram::new(clauses);
    assert!(
        examples.positives.iter().all(|s| evaluate_program(&program, s))
            && !examples.negatives.iter().any(|s| evaluate_program(&program, s)),
        "induced program must separate its training set"
    );
    Ok(program)
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        f(&combo);
        let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
            return;
        };
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::MoveSequence;

    fn wo_lesson_start() -> CubeState {
        CubeState::solved().apply_sequence(&"F' R' F D".parse::<MoveSequence>().unwrap())
    }

    #[test]
    fn empty_program_is_false_and_empty_clause_is_true() {
        let s = CubeState::solved();
        assert!(!evaluate_program(&PredicateProgram::default(), &s));
        assert!(evaluate_program(&PredicateProgram::new(vec![Clause::default()]), &s));
        assert_eq!(PredicateProgram::default().to_string(), "false");
        assert_eq!("true".parse::<PredicateProgram>().unwrap().clauses().len(), 1);
    }

    #[test]
    fn wo_lesson_start_alignment_atoms() {
        let wo = CubeletId::edge(0);
        let s = wo_lesson_start();
        assert_eq!(aligned_center(&s, wo, Color::White), Some(Color::Orange));
        assert_eq!(aligned_center(&s, wo, Color::Orange), Some(Color::Yellow));
        assert!(Predicate::neg(Atom::Placed(wo)).holds(&s));
    }

    #[test]
    fn text_round_trip() {
        let text = "placed(WB) AND aligned(WO,W,O) OR not placed(WO) AND edge_slot(DR,WO,1) OR sticker_at(14,W)";
        let p: PredicateProgram = text.parse().unwrap();
        let again: PredicateProgram = p.to_string().parse().unwrap();
        assert_eq!(p, again);
        assert!("bogus(WO)".parse::<PredicateProgram>().is_err());
        assert!("placed(WO".parse::<PredicateProgram>().is_err());
    }

    #[test]
    fn single_sticker_separates() {
        let solved = CubeState::solved();
        let turned = solved.apply_move("R".parse().unwrap());
        let examples = ExampleSet {
            positives: vec![turned],
            negatives: vec![solved],
        };
        let vocab = Vocabulary {
            cubelets: vec![],
            placed: false,
            aligned: false,
            slots: false,
            stickers: true,
        };
        let program = induce_program(&examples, &vocab, InductionParams::default()).unwrap();
        assert_eq!(program.clauses().len(), 1);
        assert_eq!(program.clauses()[0].len(), 1);
    }

    #[test]
    fn inseparable_examples_fail() {
        let s = CubeState::solved();
        let examples = ExampleSet {
            positives: vec![s],
            negatives: vec![s],
        };
        let err = induce_program(
            &examples,
            &Vocabulary::over([CubeletId::edge(0)]),
            InductionParams::default(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            InductionError::NoConsistentProgram {
                covered: 0,
                positives: 1
            }
        );
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        for_each_combination(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn grouping_follows_cubelets() {
        let p: PredicateProgram = "aligned(WO,W,O) AND placed(WB) AND not placed(WO)"
            .parse()
            .unwrap();
        let groups = program_to_predicates(&p);
        assert_eq!(groups.len(), 1);
        let sizes: Vec<usize> = groups[0].iter().map(|g| g.len()).collect();
        // WO first (edge 0), then WB
        assert_eq!(sizes, vec![2, 1]);
        assert_eq!(groups[0][0][0].to_string(), "not placed(WO)");
    }
}
