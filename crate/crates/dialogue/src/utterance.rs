use serde::{Deserialize, Serialize};

/// Raw text plus its tokens: lowercased, split on anything that is not a
/// letter, digit or apostrophe, with curly apostrophes folded to `'` and
/// stray apostrophes trimmed. Contractions like "don't" stay one token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Utterance {
    pub raw: String,
    pub tokens: Vec<String>,
}

impl Utterance {
    pub fn new(raw: impl Into<String>) -> Self {
        let raw = raw.into();
        let tokens = tokenize(&raw);
        Utterance { raw, tokens }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn has(&self, token: &str) -> bool {
        self.tokens.iter().any(|t| t == token)
    }

    pub fn has_any(&self, tokens: &[&str]) -> bool {
        tokens.iter().any(|t| self.has(t))
    }

    /// Whether the space-separated `phrase` occurs as consecutive tokens.
    pub fn has_phrase(&self, phrase: &str) -> bool {
        let words: Vec<&str> = phrase.split_whitespace().collect();
        !words.is_empty()
            && self
                .tokens
                .windows(words.len())
                .any(|w| w.iter().zip(&words).all(|(a, b)| a == b))
    }
}

pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .replace(['\u{2019}', '\u{2018}'], "'")
        .split(|c: char| !(c.is_alphanumeric() || c == '\''))
        .map(|t| t.trim_matches('\''))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctuation_and_case() {
        assert_eq!(
            tokenize("Was my friend, John, able?"),
            ["was", "my", "friend", "john", "able"]
        );
        assert_eq!(tokenize("I don’t KNOW..."), ["i", "don't", "know"]);
        assert_eq!(tokenize("'quoted' white-orange"), ["quoted", "white", "orange"]);
        assert!(tokenize("  ?! ").is_empty());
    }

    #[test]
    fn phrases_match_whole_tokens() {
        let u = Utterance::new("Go to hell");
        assert!(u.has_phrase("go to hell"));
        assert!(u.has_phrase("hell"));
        assert!(!Utterance::new("hello there").has_phrase("hell"));
    }
}
