//! Re-runs a recorded conversation through the engine and diffs the
//! responses against the recorded bot lines.

use std::path::Path;

use cubetutor_core::PartialGoal;
use cubetutor_dialogue::{DialogueEngine, DialogueState, ProfileLookup, Speaker, TranscriptRecord};
use serde::Serialize;

use crate::error::ServiceError;
use crate::library::{library_from_inline, TEACHING_GOAL};
use crate::store::{JsonLog, TranscriptLine};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    /// Index of the user turn, from 1.
    pub turn: usize,
    pub field: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReplayOutcome {
    pub turns: usize,
    pub quarantined: Vec<usize>,
    pub mismatches: Vec<Mismatch>,
}

impl ReplayOutcome {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.quarantined.is_empty()
    }
}

struct PendingTurn {
    user: TranscriptRecord,
    bot: Vec<String>,
}

pub fn read_transcript(path: &Path) -> Result<(Vec<TranscriptLine>, Vec<usize>), ServiceError> {
    if !path.exists() {
        return Err(ServiceError::Fixture(format!("{} does not exist", path.display())));
    }
    let contents = JsonLog::new(path).read::<TranscriptLine>()?;
    Ok((contents.records, contents.quarantined))
}

/// `engine` and `profiles` are used unless the setup line carries its own
/// macros or profiles.
pub fn replay_lines(
    lines: &[TranscriptLine],
    engine: &DialogueEngine,
    profiles: &dyn ProfileLookup,
) -> Result<ReplayOutcome, ServiceError> {
    let Some(TranscriptLine::Setup(setup)) = lines.first() else {
        return Err(ServiceError::Fixture("transcript must start with a setup line".into()));
    };
    let own_engine;
    let engine = if setup.macros.is_empty() {
        engine
    } else {
        let library = library_from_inline(PartialGoal::white_cross(), &setup.macros)?;
        let mut e = DialogueEngine::new(engine.sentiment_lexicon().clone(), engine.abuse_lexicon().clone());
        e.add_library(TEACHING_GOAL, std::sync::Arc::new(library));
        own_engine = e;
        &own_engine
    };
    let profiles: &dyn ProfileLookup = if setup.profiles.is_empty() {
        profiles
    } else {
        &setup.profiles
    };

    let mut state = DialogueState::new(setup.session.clone(), setup.user.clone(), setup.cube);
    let mut outcome = ReplayOutcome::default();
    let mut pending: Option<PendingTurn> = None;
    let flush = |pending: &mut Option<PendingTurn>, state: &mut DialogueState, outcome: &mut ReplayOutcome| {
        let Some(p) = pending.take() else { return };
        outcome.turns += 1;
        let turn = engine.respond(state, &p.user.text, profiles);
        let mut diff = |field: &str, expected: String, actual: String| {
            if expected != actual {
                outcome.mismatches.push(Mismatch {
                    turn: outcome.turns,
                    field: field.to_string(),
                    expected,
                    actual,
                });
            }
        };
        if let Some(label) = p.user.sentiment {
            diff("sentiment", label.to_string(), turn.sentiment.label.to_string());
        }
        if let Some(intent) = &p.user.intent {
            diff("intent", intent.clone(), turn.intent.name().to_string());
        }
        diff("strike_count", p.user.strike_count.to_string(), turn.strike_count.to_string());
        let got: Vec<String> = turn.responses.into_iter().map(|r| r.text).collect();
        diff("response_count", p.bot.len().to_string(), got.len().to_string());
        for (i, (e, a)) in p.bot.iter().zip(&got).enumerate() {
            diff(&format!("response[{i}]"), e.clone(), a.clone());
        }
    };

    for line in &lines[1..] {
        match line {
            TranscriptLine::Setup(_) => {
                return Err(ServiceError::Fixture("second setup line in transcript".into()));
            }
            TranscriptLine::CubeSet { cube, .. } => {
                flush(&mut pending, &mut state, &mut outcome);
                state.set_cube(*cube);
            }
            TranscriptLine::Message(record) => match record.speaker {
                Speaker::User => {
                    flush(&mut pending, &mut state, &mut outcome);
                    pending = Some(PendingTurn {
                        user: record.clone(),
                        bot: Vec::new(),
                    });
                }
                Speaker::Bot => match &mut pending {
                    Some(p) => p.bot.push(record.text.clone()),
                    None => return Err(ServiceError::Fixture("bot line before any user line".into())),
                },
            },
        }
    }
    flush(&mut pending, &mut state, &mut outcome);
    Ok(outcome)
}

pub fn replay_file(
    path: &Path,
    engine: &DialogueEngine,
    profiles: &dyn ProfileLookup,
) -> Result<ReplayOutcome, ServiceError> {
    let (lines, quarantined) = read_transcript(path)?;
    let mut outcome = replay_lines(&lines, engine, profiles)?;
    outcome.quarantined = quarantined;
    Ok(outcome)
}
