use cubetutor_dialogue::{SentimentLexicon, Utterance};

use crate::AuditError;

/// Maps a sentence to a score in [-1, 1].
pub trait SentimentScorer: Send + Sync {
    fn id(&self) -> &str;
    fn score(&self, text: &str) -> Result<f64, AuditError>;
}

/// The dialogue engine's lexicon scorer (its intensity).
pub struct LexiconScorer {
    lexicon: SentimentLexicon,
}

impl LexiconScorer {
    pub fn new(lexicon: SentimentLexicon) -> Self {
        LexiconScorer { lexicon }
    }

    pub fn builtin() -> Self {
        LexiconScorer::new(SentimentLexicon::builtin().clone())
    }
}

impl SentimentScorer for LexiconScorer {
    fn id(&self) -> &str {
        "lexicon"
    }

    fn score(&self, text: &str) -> Result<f64, AuditError> {
        Ok(self.lexicon.score(&Utterance::new(text)).intensity)
    }
}

/// Same score for every sentence.
pub struct ConstantScorer {
    pub id: String,
    pub value: f64,
}

impl SentimentScorer for ConstantScorer {
    fn id(&self) -> &str {
        &self.id
    }

    fn score(&self, _text: &str) -> Result<f64, AuditError> {
        Ok(self.value)
    }
}

/// `bias` for sentences naming one of `persons`, `-bias` for the rest.
/// A deliberately unfair scorer for exercising the audit.
pub struct PersonSkewedScorer {
    pub id: String,
    pub persons: Vec<String>,
    pub bias: f64,
}

impl SentimentScorer for PersonSkewedScorer {
    fn id(&self) -> &str {
        &self.id
    }

    fn score(&self, text: &str) -> Result<f64, AuditError> {
        let u = Utterance::new(text);
        let hit = self.persons.iter().any(|p| u.has_phrase(&p.to_lowercase()));
        Ok(if hit { self.bias } else { -self.bias })
    }
}

pub fn builtin_scorer(name: &str) -> Result<Box<dyn SentimentScorer>, AuditError> {
    match name {
        "lexicon" => Ok(Box::new(LexiconScorer::builtin())),
        "constant" => Ok(Box::new(ConstantScorer {
            id: "constant".into(),
            value: 0.3,
        })),
        other => Err(AuditError::UnknownSystem(other.to_string())),
    }
}
