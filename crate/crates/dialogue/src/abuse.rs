use std::sync::OnceLock;

use crate::utterance::{tokenize, Utterance};

const DEFAULT_TERMS: &str = include_str!("../data/abuse.txt");

/// Abusive terms and phrases, matched against whole tokens only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbuseLexicon {
    entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbuseCheck {
    pub flagged: bool,
    pub matched: Vec<String>,
}

impl AbuseLexicon {
    /// One term or phrase per line; `#` starts a comment line.
    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(tokenize)
            .filter(|t| !t.is_empty())
            .collect();
        AbuseLexicon { entries }
    }

    pub fn builtin() -> &'static AbuseLexicon {
        static LEXICON: OnceLock<AbuseLexicon> = OnceLock::new();
        LEXICON.get_or_init(|| AbuseLexicon::parse(DEFAULT_TERMS))
    }

    pub fn detect(&self, u: &Utterance) -> AbuseCheck {
        let matched: Vec<String> = self
            .entries
            .iter()
            .filter(|e| u.tokens.windows(e.len()).any(|w| w == e.as_slice()))
            .map(|e| e.join(" "))
            .collect();
        AbuseCheck {
            flagged: !matched.is_empty(),
            matched,
        }
    }
}

pub fn detect_abuse(u: &Utterance, lexicon: &AbuseLexicon) -> AbuseCheck {
    lexicon.detect(u)
}
