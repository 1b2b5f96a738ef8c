//! The tutoring conversation: sentiment and abuse checks, escalating
//! warnings, refusal of questions about other users, performance
//! summaries and step-by-step teaching from a macro library.

pub mod abuse;
pub mod engine;
pub mod intent;
pub mod policy;
pub mod profile;
pub mod sentiment;
pub mod transcript;
pub mod utterance;

pub use abuse::{detect_abuse, AbuseCheck, AbuseLexicon};
pub use engine::{DialogueEngine, DialogueState, MoveStep, PlannedStep, Response, ResponseKind, Topic, Turn};
pub use intent::{classify_intent, Intent, Metric};
pub use policy::{guard_leakage, summarize_performance, update_strikes, warning_message, Guard};
pub use profile::{ProfileError, ProfileLookup, UserProfile};
pub use sentiment::{score_sentiment, SentimentLabel, SentimentLexicon, SentimentParams, SentimentResult};
pub use transcript::{Speaker, TranscriptRecord};
pub use utterance::Utterance;
