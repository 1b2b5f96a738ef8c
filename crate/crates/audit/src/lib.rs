//! Bias audits for sentence-level sentiment scorers: gender instability
//! over templated sentences, deconfounding impact (backdoor adjustment
//! over the protected attribute) and weighted t-test rejections, combined
//! into ratings.

use thiserror::Error;

pub mod contingency;
pub mod corpus;
pub mod instability;
pub mod rating;
pub mod report;
pub mod scorer;
pub mod ttest;

pub use contingency::{conditional_expectation, die_percent, do_expectation, ContingencyData, YClass, YValues};
pub use corpus::{expand_templates, CorpusRow, Sentence, TemplateCorpus};
pub use instability::{instability_matrix, InstabilityReport};
pub use rating::{rate_systems, MetricKind, RatingReport, RawScore};
pub use report::{run_audit, AuditParams, AuditReport};
pub use scorer::{ConstantScorer, LexiconScorer, PersonSkewedScorer, SentimentScorer};
pub use ttest::{welch, welch_t_test, wrs, RejectionCounts};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AuditError {
    #[error("template {id}: {message}")]
    MalformedTemplate { id: String, message: String },
    #[error("corpus: {0}")]
    Corpus(String),
    #[error("positivity violated: no records with X={x} and Z={z}")]
    Positivity { x: String, z: String },
    #[error("no records with X={0}")]
    UnknownInput(String),
    #[error("DIE% undefined for X={0}: E[Y|X] is zero")]
    UndefinedDie(String),
    #[error("t-test needs at least 2 scores per group, got {0}")]
    GroupTooSmall(usize),
    #[error("confidence must be in (0, 1), got {0}")]
    BadConfidence(f64),
    #[error("statistics: {0}")]
    Statistics(String),
    #[error("no systems to rate")]
    NoSystems,
    #[error("scores of different metrics cannot be rated together")]
    MixedMetrics,
    #[error("non-finite score for system {0}")]
    BadScore(String),
    #[error("unknown system {0}")]
    UnknownSystem(String),
    #[error("scorer failed: {0}")]
    Scorer(String),
}
