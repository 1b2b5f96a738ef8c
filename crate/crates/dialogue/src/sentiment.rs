use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::utterance::Utterance;

const DEFAULT_LEXICON: &str = include_str!("../data/valence.tsv");

const NEGATORS: &[&str] = &[
    "not", "no", "never", "none", "nobody", "nothing", "neither", "nor", "nowhere", "cannot",
    "without", "hardly",
];

const BOOSTERS: &[&str] = &[
    "very", "really", "extremely", "so", "totally", "absolutely", "incredibly", "super", "too",
    "completely", "utterly", "highly", "deeply", "truly",
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Positive,
    Negative,
    Neutral,
}

impl SentimentLabel {
    pub fn short(self) -> &'static str {
        match self {
            SentimentLabel::Positive => "Pos",
            SentimentLabel::Negative => "Neg",
            SentimentLabel::Neutral => "Neu",
        }
    }
}

impl fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SentimentLabel::Positive => "Positive",
            SentimentLabel::Negative => "Negative",
            SentimentLabel::Neutral => "Neutral",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentResult {
    pub label: SentimentLabel,
    /// In [-1, 1].
    pub intensity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentimentParams {
    /// Tokens after a negator whose valence is flipped.
    pub negation_window: usize,
    /// Relative boost per intensifier directly before a word.
    pub booster: f64,
    /// Normalization constant in s / sqrt(s^2 + alpha).
    pub alpha: f64,
    pub threshold: f64,
}

impl Default for SentimentParams {
    fn default() -> Self {
        SentimentParams {
            negation_window: 3,
            booster: 0.25,
            alpha: 15.0,
            threshold: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentimentLexicon {
    valence: HashMap<String, f64>,
    pub params: SentimentParams,
}

fn is_negator(token: &str) -> bool {
    NEGATORS.contains(&token) || token.ends_with("n't")
}

impl SentimentLexicon {
    /// `token<TAB>valence` lines; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut valence = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = |message: &str| LexiconError::Malformed {
                line: i + 1,
                message: message.to_string(),
            };
            let (token, value) = line.split_once('\t').ok_or_else(|| malformed("expected token<TAB>valence"))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| malformed("valence is not a number"))?;
            if !(-4.0..=4.0).contains(&value) {
                return Err(malformed("valence outside [-4, 4]"));
            }
            valence.insert(token.trim().to_lowercase(), value);
        }
        Ok(SentimentLexicon {
            valence,
            params: SentimentParams::default(),
        })
    }

    pub fn builtin() -> &'static SentimentLexicon {
        static LEXICON: OnceLock<SentimentLexicon> = OnceLock::new();
        LEXICON.get_or_init(|| SentimentLexicon::parse(DEFAULT_LEXICON).expect("bundled lexicon parses"))
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valence.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.valence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valence.is_empty()
    }

    /// Unnormalized valence sum after negation and boosting.
    pub fn raw_score(&self, u: &Utterance) -> f64 {
        let p = &self.params;
        let t = &u.tokens;
        let mut sum = 0.0;
        for (i, token) in t.iter().enumerate() {
            let Some(mut v) = self.valence(token) else {
                continue;
            };
            let boosts = t[..i].iter().rev().take_while(|w| BOOSTERS.contains(&w.as_str())).count();
            v *= (1.0 + p.booster).powi(boosts as i32);
            if t[i.saturating_sub(p.negation_window)..i].iter().any(|w| is_negator(w)) {
                v = -v;
            }
            sum += v;
        }
        sum
    }

    pub fn score(&self, u: &Utterance) -> SentimentResult {
        let s = self.raw_score(u);
        let intensity = if s == 0.0 { 0.0 } else { s / (s * s + self.params.alpha).sqrt() };
        let label = if intensity >= self.params.threshold {
            SentimentLabel::Positive
        } else if intensity <= -self.params.threshold {
            SentimentLabel::Negative
        } else {
            SentimentLabel::Neutral
        };
        SentimentResult { label, intensity }
    }
}

pub fn score_sentiment(u: &Utterance, lexicon: &SentimentLexicon) -> SentimentResult {
    lexicon.score(u)
}
