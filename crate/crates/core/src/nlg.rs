//! Plain-English rendering of predicates and macros from sentence templates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{CubeState, Direction, Face, Move};
use crate::cubelet::{CubeletId, CubeletKind, Location, Slot};
use crate::induction::{aligned_center, program_to_predicates, Atom, Predicate};
use crate::macros::MacroAction;

const DEFAULT_TEMPLATES: &str = include_str!("../data/templates.tsv");

pub const CHECK_QUESTION: &str = "Do you have any questions?";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Register {
    Standard,
    Simplified,
}

impl Register {
    pub const ALL: [Register; 2] = [Register::Standard, Register::Simplified];
}

impl FromStr for Register {
    type Err = NlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(Register::Standard),
            "simplified" => Ok(Register::Simplified),
            other => Err(NlgError::UnknownRegister(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NlgError {
    #[error("template line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unknown register {0:?}")]
    UnknownRegister(String),
    #[error("no {register:?} template for {key}")]
    MissingTemplate { key: String, register: Register },
}

/// Placeholders each template key may use.
fn allowed_slots(key: &str) -> Option<&'static [&'static str]> {
    let name = key.split('/').next()?;
    let base = name.strip_prefix("not_").unwrap_or(name);
    let slots: &'static [&'static str] = match (base, key.split('/').nth(1)?) {
        ("placed", "1") | ("effect", "1") => &["cubelet", "kind"],
        ("aligned", "3") => &["cubelet", "kind", "sticker", "center"],
        ("edge_slot", "3") | ("corner_slot", "3") => &["cubelet", "kind", "slot", "reference", "face"],
        ("sticker_at", "2") => &["cell", "face", "color"],
        _ => return None,
    };
    if name.starts_with("not_") && base == "effect" {
        return None;
    }
    Some(slots)
}

fn placeholders(template: &str) -> Result<Vec<&str>, String> {
    let mut out = Vec::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| "unclosed '{'".to_string())?;
        out.push(&rest[open + 1..open + close]);
        rest = &rest[open + close + 1..];
    }
    if rest.contains('}') {
        return Err("stray '}'".into());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSet {
    templates: HashMap<(String, Register), String>,
}

impl TemplateSet {
    /// Parses `name/arity<TAB>register<TAB>template` lines; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self, NlgError> {
        let mut templates = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let bad = |message: String| NlgError::Malformed { line, message };
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            let [key, register, template] = fields[..] else {
                return Err(bad(format!("expected 3 tab-separated fields, got {}", fields.len())));
            };
            let allowed = allowed_slots(key).ok_or_else(|| bad(format!("unknown predicate {key:?}")))?;
            let register: Register = register.parse().map_err(|e: NlgError| bad(e.to_string()))?;
            for slot in placeholders(template).map_err(bad)? {
                if !allowed.contains(&slot) {
                    return Err(bad(format!("{key} has no slot {{{slot}}}")));
                }
            }
            if templates
                .insert((key.to_string(), register), template.to_string())
                .is_some()
            {
                return Err(bad(format!("duplicate template for {key}")));
            }
        }
        Ok(TemplateSet { templates })
    }

    pub fn builtin() -> &'static TemplateSet {
        static SET: OnceLock<TemplateSet> = OnceLock::new();
        SET.get_or_init(|| TemplateSet::parse(DEFAULT_TEMPLATES).expect("built-in templates parse"))
    }

    fn get(&self, key: &str, register: Register) -> Result<&str, NlgError> {
        self.templates
            .get(&(key.to_string(), register))
            .map(String::as_str)
            .ok_or_else(|| NlgError::MissingTemplate {
                key: key.to_string(),
                register,
            })
    }

    pub fn keys(&self) -> impl Iterator<Item = &(String, Register)> {
        self.templates.keys()
    }
}

fn fill(template: &str, values: &[(&str, String)]) -> String {
    let mut out = template.to_string();
    for (name, value) in values {
        out = out.replace(&format!("{{{name}}}"), value);
    }
    out
}

pub fn face_word(face: Face) -> &'static str {
    match face {
        Face::Up => "top",
        Face::Down => "bottom",
        Face::Left => "left",
        Face::Right => "right",
        Face::Front => "front",
        Face::Back => "back",
    }
}

const CELL_WORDS: [&str; 9] = [
    "top-left",
    "top",
    "top-right",
    "left",
    "center",
    "right",
    "bottom-left",
    "bottom",
    "bottom-right",
];

fn slot_words(slot: Slot) -> String {
    slot.faces()
        .into_iter()
        .map(face_word)
        .collect::<Vec<_>>()
        .join("-")
}

fn predicate_key(p: &Predicate) -> String {
    let prefix = if p.negated { "not_" } else { "" };
    format!("{prefix}{}/{}", p.atom.name(), p.atom.arity())
}

fn slot_values(kind: CubeletKind, slot: u8, cubelet: CubeletId, orientation: u8) -> Vec<(&'static str, String)> {
    let loc = Location {
        slot: Slot { kind, index: slot },
        orientation,
    };
    vec![
        ("cubelet", cubelet.color_name()),
        ("kind", kind.name().to_string()),
        ("slot", slot_words(loc.slot)),
        ("reference", cubelet.colors()[0].name().to_string()),
        ("face", face_word(loc.face_of_sticker(0)).to_string()),
    ]
}

pub fn render_predicate_with(
    templates: &TemplateSet,
    p: &Predicate,
    register: Register,
) -> Result<String, NlgError> {
    let template = templates.get(&predicate_key(p), register)?;
    let values: Vec<(&str, String)> = match p.atom {
        Atom::Placed(c) => vec![
            ("cubelet", c.color_name()),
            ("kind", c.kind.name().to_string()),
        ],
        Atom::Aligned {
            cubelet,
            sticker,
            center,
        } => vec![
            ("cubelet", cubelet.color_name()),
            ("kind", cubelet.kind.name().to_string()),
            ("sticker", sticker.name().to_string()),
            ("center", center.name().to_string()),
        ],
        Atom::EdgeSlot {
            slot,
            cubelet,
            orientation,
        } => slot_values(CubeletKind::Edge, slot, cubelet, orientation),
        Atom::CornerSlot {
            slot,
            cubelet,
            orientation,
        } => slot_values(CubeletKind::Corner, slot, cubelet, orientation),
        Atom::StickerAt { index, color } => vec![
            ("cell", CELL_WORDS[index as usize % 9].to_string()),
            ("face", face_word(Face::of_facelet(index as usize)).to_string()),
            ("color", color.name().to_string()),
        ],
    };
    Ok(fill(template, &values))
}

/// Sentence text (lowercase start, no final period) for one predicate.
pub fn render_predicate(p: &Predicate, register: Register) -> Result<String, NlgError> {
    render_predicate_with(TemplateSet::builtin(), p, register)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Precondition,
    Action,
    Effect,
    Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub section: Section,
    /// Cubelet the sentence is about, used for grouping.
    pub cubelet: Option<CubeletId>,
    /// 0 placement, 1 alignment, 2 slot, 3 sticker, 4 other.
    pub rank: u8,
    pub text: String,
}

impl Sentence {
    fn about(p: &Predicate, text: String) -> Self {
        let rank = match p.atom {
            Atom::Placed(_) => 0,
            Atom::Aligned { .. } => 1,
            Atom::EdgeSlot { .. } | Atom::CornerSlot { .. } => 2,
            Atom::StickerAt { .. } => 3,
        };
        Sentence {
            section: Section::Precondition,
            cubelet: p.atom.cubelet(),
            rank,
            text,
        }
    }

    fn plain(section: Section, text: impl Into<String>) -> Self {
        Sentence {
            section,
            cubelet: None,
            rank: 4,
            text: text.into(),
        }
    }
}

/// Sections in order; within the precondition, sentences about one cubelet
/// sit together (first appearance decides group order) with placement facts
/// before alignment facts.
pub fn order_sentences(mut sentences: Vec<Sentence>) -> Vec<Sentence> {
    let mut first_seen: Vec<Option<CubeletId>> = Vec::new();
    for s in &sentences {
        if !first_seen.contains(&s.cubelet) {
            first_seen.push(s.cubelet);
        }
    }
    sentences.sort_by_key(|s| {
        let group = first_seen.iter().position(|c| *c == s.cubelet).unwrap_or(0);
        match s.section {
            Section::Precondition => (s.section, group, s.rank),
            _ => (s.section, 0, 0),
        }
    });
    sentences
}

fn capitalize(text: &str) -> String {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn finish(text: &str) -> String {
    let text = capitalize(text.trim());
    if text.ends_with(['.', '?', '!']) {
        text
    } else {
        format!("{text}.")
    }
}

/// Joins consecutive alignment sentences about the same cubelet with "and".
fn merge_alignment_runs(sentences: Vec<Sentence>) -> Vec<Sentence> {
    let mut out: Vec<Sentence> = Vec::new();
    for s in sentences {
        match out.last_mut() {
            Some(prev)
                if prev.section == s.section
                    && prev.rank == 1
                    && s.rank == 1
                    && prev.cubelet == s.cubelet =>
            {
                prev.text = format!("{} and {}", prev.text, s.text);
            }
            _ => out.push(s),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplanationText {
    pub sentences: Vec<Sentence>,
}

impl ExplanationText {
    pub fn section(&self, section: Section) -> impl Iterator<Item = &Sentence> {
        self.sentences.iter().filter(move |s| s.section == section)
    }

    /// Whole explanation with one paragraph per section.
    pub fn text(&self) -> String {
        let mut paragraphs: Vec<String> = Vec::new();
        let mut current: Option<Section> = None;
        for s in &self.sentences {
            if current != Some(s.section) {
                paragraphs.push(String::new());
                current = Some(s.section);
            }
            let p = paragraphs.last_mut().expect("pushed above");
            if !p.is_empty() {
                p.push(' ');
            }
            p.push_str(&s.text);
        }
        paragraphs.join("\n")
    }

    pub fn average_sentence_words(&self) -> f64 {
        if self.sentences.is_empty() {
            return 0.0;
        }
        let words: usize = self
            .sentences
            .iter()
            .map(|s| s.text.split_whitespace().count())
            .sum();
        words as f64 / self.sentences.len() as f64
    }
}

impl fmt::Display for ExplanationText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// One phrase per move, e.g. D' is "rotate the bottom face counterclockwise".
pub fn move_phrase(m: Move, register: Register) -> String {
    let face = face_word(m.face);
    let way = match m.direction {
        Direction::Clockwise => "clockwise",
        Direction::CounterClockwise => "counterclockwise",
    };
    match register {
        Register::Standard => format!("rotate the {face} face {way}"),
        Register::Simplified => format!("turn {face} {way}"),
    }
}

fn precondition_sentences(
    predicates: &[Predicate],
    register: Register,
) -> Result<Vec<Sentence>, NlgError> {
    let sentences = predicates
        .iter()
        .map(|p| Ok(Sentence::about(p, render_predicate(p, register)?)))
        .collect::<Result<Vec<_>, NlgError>>()?;
    Ok(merge_alignment_runs(order_sentences(sentences))
        .into_iter()
        .map(|mut s| {
            s.text = finish(&s.text);
            s
        })
        .collect())
}

pub fn render_macro(action: &MacroAction, register: Register) -> Result<ExplanationText, NlgError> {
    let mut sentences = Vec::new();
    for (k, groups) in program_to_predicates(&action.precondition).iter().enumerate() {
        let predicates: Vec<Predicate> = groups.iter().flatten().copied().collect();
        let mut clause = precondition_sentences(&predicates, register)?;
        if k > 0 {
            if let Some(first) = clause.first_mut() {
                let lower = first.text[..1].to_lowercase() + &first.text[1..];
                first.text = format!("Alternatively, {lower}");
            }
        }
        sentences.extend(clause);
    }
    for &m in action.sequence.moves() {
        sentences.push(Sentence::plain(Section::Action, finish(&move_phrase(m, register))));
    }
    sentences.push(Sentence::plain(
        Section::Effect,
        effect_sentence(action.effect.target, register)?,
    ));
    sentences.push(Sentence::plain(Section::Check, CHECK_QUESTION));
    Ok(ExplanationText { sentences })
}

/// e.g. "White-orange cubelet is aligned."
pub fn effect_sentence(target: CubeletId, register: Register) -> Result<String, NlgError> {
    let text = fill(
        TemplateSet::builtin().get("effect/1", register)?,
        &[
            ("cubelet", target.color_name()),
            ("kind", target.kind.name().to_string()),
        ],
    );
    Ok(finish(&text))
}

/// Where `target` is right now: out of place, and which center each of its
/// stickers lines up with.
pub fn describe_target(
    state: &CubeState,
    target: CubeletId,
    register: Register,
) -> Result<ExplanationText, NlgError> {
    let mut predicates = vec![Predicate {
        atom: Atom::Placed(target),
        negated: !target.is_placed(state),
    }];
    for sticker in target.colors() {
        if let Some(center) = aligned_center(state, target, sticker) {
            predicates.push(Predicate::pos(Atom::Aligned {
                cubelet: target,
                sticker,
                center,
            }));
        }
    }
    Ok(ExplanationText {
        sentences: precondition_sentences(&predicates, register)?,
    })
}

pub fn number_word(n: usize) -> String {
    const WORDS: [&str; 13] = [
        "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
        "eleven", "twelve",
    ];
    WORDS.get(n).map_or_else(|| n.to_string(), |w| w.to_string())
}
