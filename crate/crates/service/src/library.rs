use std::path::Path;
use std::sync::Arc;

use cubetutor_core::macros::{learn_precondition, LearnParams, MacroCandidate, MacroLibrary};
use cubetutor_core::search::{FocusedEffect, LearnedHeuristic, TrainingParams};
use cubetutor_core::{learn_macro_library, PartialGoal};
use cubetutor_dialogue::{AbuseLexicon, DialogueEngine, SentimentLexicon};

use crate::config::Config;
use crate::error::ServiceError;
use crate::store::InlineMacro;

pub const TEACHING_GOAL: &str = "white-cross";

/// Learns preconditions for hand-written macros. The inline form keeps
/// fixtures self-contained and independent of any library file.
pub fn library_from_inline(goal: PartialGoal, macros: &[InlineMacro]) -> Result<MacroLibrary, ServiceError> {
    let mut library = MacroLibrary::new(goal);
    let pool = library.pool();
    let params = LearnParams::default();
    for m in macros {
        let effect = FocusedEffect::new(m.target, m.protect.iter().copied())
            .map_err(|e| ServiceError::Fixture(format!("macro {}: {e}", m.name)))?;
        let candidate = MacroCandidate {
            complexity: m.moves.len(),
            sequence: m.moves.clone(),
            effect,
            source: m.source,
        };
        let action = learn_precondition(&candidate, &[], &pool, &params, m.name.clone(), m.seed)?;
        library.insert(action);
    }
    Ok(library)
}

pub fn learn_library(goal: &PartialGoal, params: &LearnParams) -> Result<MacroLibrary, ServiceError> {
    let h = LearnedHeuristic::new(TrainingParams::default());
    Ok(learn_macro_library(goal, params, &h)?)
}

/// Loads the configured library, learning and saving it first if allowed.
pub fn load_or_learn(config: &Config) -> Result<Option<MacroLibrary>, ServiceError> {
    let Some(path) = &config.library else {
        return Ok(None);
    };
    if path.exists() {
        return Ok(Some(MacroLibrary::load(path)?));
    }
    if !config.learn_if_missing {
        return Err(ServiceError::Config(format!("library {} does not exist", path.display())));
    }
    tracing::info!(path = %path.display(), "learning white-cross library");
    let library = learn_library(&PartialGoal::white_cross(), &LearnParams::default())?;
    library.save(path)?;
    Ok(Some(library))
}

fn read(path: &Path) -> Result<String, ServiceError> {
    std::fs::read_to_string(path).map_err(|e| ServiceError::Config(format!("{}: {e}", path.display())))
}

pub fn build_engine(config: &Config, library: Option<MacroLibrary>) -> Result<DialogueEngine, ServiceError> {
    let sentiment = match &config.sentiment_lexicon {
        Some(p) => SentimentLexicon::parse(&read(p)?).map_err(|e| ServiceError::Config(e.to_string()))?,
        None => SentimentLexicon::builtin().clone(),
    };
    let abuse = match &config.abuse_lexicon {
        Some(p) => AbuseLexicon::parse(&read(p)?),
        None => AbuseLexicon::builtin().clone(),
    };
    let mut engine = DialogueEngine::new(sentiment, abuse);
    if let Some(library) = library {
        engine.add_library(TEACHING_GOAL, Arc::new(library));
    }
    Ok(engine)
}
