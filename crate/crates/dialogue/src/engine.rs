use std::collections::HashMap;
use std::sync::Arc;

use cubetutor_core::macros::{greedy_solve_with_library, MacroLibrary};
use cubetutor_core::nlg::{
    describe_target, effect_sentence, move_phrase, number_word, Register, CHECK_QUESTION,
};
use cubetutor_core::{CubeState, CubeletId, Move, MoveSequence, PartialGoal};
use serde::{Deserialize, Serialize};

use crate::abuse::{AbuseCheck, AbuseLexicon};
use crate::intent::{classify_intent, Intent};
use crate::policy::{
    guard_leakage, summarize_performance, update_strikes, warning_message, Guard, NO_HISTORY,
};
use crate::profile::ProfileLookup;
use crate::sentiment::{SentimentLabel, SentimentLexicon, SentimentResult};
use crate::utterance::Utterance;

pub const ENCOURAGEMENT: &str =
    "Don't give up. You can keep solving, or take a short break and come back to it.";
pub const REPROMPT: &str = "I did not understand that. I can teach you how to solve the white cross, walk you through the moves one step at a time, or give you a summary of your performance.";
pub const GREETING: &str = "Hello! I can teach you how to solve the white cross, walk you through the moves, and summarize your progress.";
pub const SUMMARY_HEADER: &str = "Sure. Here is your summary.";
const STEP_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResponseKind {
    Answer,
    Warning,
    Refusal,
    Encouragement,
    Summary,
    TeachingStep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub text: String,
    pub kind: ResponseKind,
    /// Cube after the moves of a teaching step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cube: Option<CubeState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<MoveSequence>,
    /// One entry per move with the cube after it, for stepping through.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<MoveStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveStep {
    #[serde(rename = "move")]
    pub notation: String,
    pub phrase: String,
    pub cube: CubeState,
}

impl Response {
    fn text(kind: ResponseKind, text: impl Into<String>) -> Self {
        Response {
            text: text.into(),
            kind,
            cube: None,
            moves: None,
            steps: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topic {
    Warning,
    Refusal,
    Teaching,
    Summary,
    Other,
}

/// One macro application still to be taught, in absolute moves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannedStep {
    pub target: CubeletId,
    pub moves: MoveSequence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DialogueState {
    pub session_id: String,
    pub user_id: String,
    /// Never decreases within a session.
    pub strike_count: u32,
    pub cube: CubeState,
    pub goal: Option<String>,
    pub last_topic: Option<Topic>,
    pub plan: Vec<PlannedStep>,
    pub sentiment_history: Vec<SentimentLabel>,
}

impl DialogueState {
    pub fn new(session_id: impl Into<String>, user_id: impl Into<String>, cube: CubeState) -> Self {
        DialogueState {
            session_id: session_id.into(),
            user_id: user_id.into(),
            strike_count: 0,
            cube,
            goal: None,
            last_topic: None,
            plan: Vec::new(),
            sentiment_history: Vec::new(),
        }
    }

    /// Replaces the cube; any lesson in progress no longer applies.
    pub fn set_cube(&mut self, cube: CubeState) {
        self.cube = cube;
        self.plan.clear();
    }
}

/// Everything that happened on one user turn.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Turn {
    pub sentiment: SentimentResult,
    pub abusive: bool,
    pub matched_terms: Vec<String>,
    pub intent: Intent,
    pub tier: u32,
    pub strike_count: u32,
    /// Set on a third-tier warning; the caller files the report.
    pub report: bool,
    pub responses: Vec<Response>,
}

pub struct DialogueEngine {
    sentiment: SentimentLexicon,
    abuse: AbuseLexicon,
    libraries: HashMap<String, Arc<MacroLibrary>>,
    pub register: Register,
}

fn goal_phrase(goal: &str) -> &str {
    match goal {
        "white-cross" => "the white cross",
        "solved" => "the cube",
        other => other,
    }
}

fn rotations(n: usize) -> String {
    if n == 1 {
        "one rotation of the face".to_string()
    } else {
        format!("{} rotations of the faces", number_word(n))
    }
}

fn lower_first(text: &str) -> String {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) => c.to_lowercase().chain(chars).collect(),
        None => String::new(),
    }
}

impl DialogueEngine {
    pub fn new(sentiment: SentimentLexicon, abuse: AbuseLexicon) -> Self {
        DialogueEngine {
            sentiment,
            abuse,
            libraries: HashMap::new(),
            register: Register::Standard,
        }
    }

    pub fn with_builtin_lexicons() -> Self {
        DialogueEngine::new(SentimentLexicon::builtin().clone(), AbuseLexicon::builtin().clone())
    }

    /// Library used to teach `goal` (e.g. `white-cross`).
    pub fn add_library(&mut self, goal: impl Into<String>, library: Arc<MacroLibrary>) {
        self.libraries.insert(goal.into(), library);
    }

    pub fn library(&self, goal: &str) -> Option<&Arc<MacroLibrary>> {
        self.libraries.get(goal)
    }

    pub fn sentiment_lexicon(&self) -> &SentimentLexicon {
        &self.sentiment
    }

    pub fn abuse_lexicon(&self) -> &AbuseLexicon {
        &self.abuse
    }

    pub fn score(&self, text: &str) -> SentimentResult {
        self.sentiment.score(&Utterance::new(text))
    }

    pub fn detect_abuse(&self, text: &str) -> AbuseCheck {
        self.abuse.detect(&Utterance::new(text))
    }

    /// normalize, sentiment, abuse and strikes, intent, leakage guard, content.
    pub fn respond(&self, state: &mut DialogueState, text: &str, profiles: &dyn ProfileLookup) -> Turn {
        let u = Utterance::new(text);
        let sentiment = self.sentiment.score(&u);
        state.sentiment_history.push(sentiment.label);
        let abuse = self.abuse.detect(&u);
        let (strikes, tier) = update_strikes(state.strike_count, abuse.flagged);
        state.strike_count = strikes;
        let intent = classify_intent(&u, &profiles.usernames(), &state.user_id);

        let mut turn = Turn {
            sentiment,
            abusive: abuse.flagged,
            matched_terms: abuse.matched,
            intent: intent.clone(),
            tier,
            strike_count: strikes,
            report: tier == 3,
            responses: Vec::new(),
        };
        if tier > 0 {
            let warning = warning_message(tier).expect("tier is 1..=3");
            turn.responses.push(Response::text(ResponseKind::Warning, warning));
            state.last_topic = Some(Topic::Warning);
            return turn;
        }
        if sentiment.label == SentimentLabel::Negative {
            turn.responses.push(Response::text(ResponseKind::Encouragement, ENCOURAGEMENT));
        }
        if let Guard::Refuse(refusal) = guard_leakage(&intent) {
            turn.responses.push(Response::text(ResponseKind::Refusal, refusal));
            state.last_topic = Some(Topic::Refusal);
            return turn;
        }
        let content = self.content(state, &intent, profiles);
        turn.responses.extend(content);
        turn
    }

    fn content(&self, state: &mut DialogueState, intent: &Intent, profiles: &dyn ProfileLookup) -> Vec<Response> {
        use ResponseKind::*;
        match intent {
            Intent::TeachGoal { goal } => self.teach_goal(state, goal),
            Intent::ContinueTeaching => self.continue_teaching(state),
            Intent::Affirm if !state.plan.is_empty() => self.continue_teaching(state),
            Intent::AskOwnSummary => {
                state.last_topic = Some(Topic::Summary);
                match profiles.profile(&state.user_id) {
                    Some(p) => vec![Response::text(
                        Summary,
                        format!("{SUMMARY_HEADER}\n{}", summarize_performance(&p)),
                    )],
                    None => vec![Response::text(Answer, NO_HISTORY)],
                }
            }
            Intent::Affirm => vec![Response::text(Answer, "Great. What would you like to do next?")],
            Intent::Deny => vec![Response::text(Answer, "Alright. Let me know when you want to continue.")],
            Intent::Smalltalk => vec![Response::text(Answer, GREETING)],
            Intent::EditCube => vec![Response::text(
                Answer,
                "You can recolor the cube on the net. Submit it when you are done and we will continue from there.",
            )],
            Intent::AskOtherUser { .. } | Intent::Unknown => vec![Response::text(Answer, REPROMPT)],
        }
    }

    fn teach_goal(&self, state: &mut DialogueState, goal: &str) -> Vec<Response> {
        state.last_topic = Some(Topic::Teaching);
        let Some(library) = self.libraries.get(goal) else {
            return vec![Response::text(
                ResponseKind::Answer,
                "I can only teach the white cross for now. Ask me to teach you the white cross.",
            )];
        };
        state.goal = Some(goal.to_string());
        state.plan.clear();
        if library.goal().matches(&state.cube) {
            return vec![Response::text(
                ResponseKind::Answer,
                format!("Yes. {} is already solved on your cube.", capitalized(goal_phrase(goal))),
            )];
        }
        let solution = match greedy_solve_with_library(&state.cube, library, STEP_CAP) {
            Ok(s) => s,
            Err(_) => {
                return vec![Response::text(
                    ResponseKind::Answer,
                    "I do not have a lesson for this configuration yet. Try a different scramble.",
                )]
            }
        };
        state.plan = solution
            .steps
            .iter()
            .map(|s| PlannedStep {
                target: s.target,
                moves: s.moves.clone(),
            })
            .collect();
        let target = state.plan[0].target;
        let description = describe_target(&state.cube, target, self.register)
            .expect("bundled templates cover every predicate")
            .sentences
            .iter()
            .map(|s| s.text.clone())
            .collect::<Vec<_>>()
            .join(" ");
        vec![Response::text(
            ResponseKind::Answer,
            format!(
                "Yes. For the current configuration of the Rubik\u{2019}s cube, {}\n{CHECK_QUESTION}",
                lower_first(&description)
            ),
        )]
    }

    fn continue_teaching(&self, state: &mut DialogueState) -> Vec<Response> {
        state.last_topic = Some(Topic::Teaching);
        let Some(goal) = state.goal.clone() else {
            return vec![Response::text(
                ResponseKind::Answer,
                "Ask me to teach you the white cross and we can start.",
            )];
        };
        if state.plan.is_empty() {
            return vec![Response::text(
                ResponseKind::Answer,
                format!("{} is solved. Would you like to learn something else?", capitalized(goal_phrase(&goal))),
            )];
        }
        let step = state.plan.remove(0);
        let goal_check = PartialGoal::named(&goal).ok();
        let solved = |s: &CubeState| goal_check.as_ref().is_some_and(|g| g.matches(s));
        let moves = step.moves.moves();

        // Split where the target first lands home: placing it, then restoring the rest.
        let mut cube = state.cube;
        let mut split = moves.len();
        for (i, &m) in moves.iter().enumerate() {
            cube = cube.apply_move(m);
            if step.target.is_placed(&cube) {
                split = i + 1;
                break;
            }
        }
        let (first, rest) = moves.split_at(split);
        let mut responses = Vec::new();
        let placed = state.cube.apply_sequence(&MoveSequence(first.to_vec()));
        let mut text = format!(
            "Here we perform {}. {}",
            rotations(first.len()),
            effect_sentence(step.target, self.register).expect("bundled templates cover effects")
        );
        if rest.is_empty() && solved(&placed) {
            text.push_str(" Solved!");
        }
        responses.push(Response {
            text,
            kind: ResponseKind::TeachingStep,
            cube: Some(placed),
            moves: Some(MoveSequence(first.to_vec())),
            steps: move_steps(&state.cube, first, self.register),
        });
        let end = placed.apply_sequence(&MoveSequence(rest.to_vec()));
        if !rest.is_empty() {
            let text = if solved(&end) {
                format!("We perform {} to solve {}. Solved!", rotations(rest.len()), goal_phrase(&goal))
            } else {
                format!("We perform {} to put the other pieces back.", rotations(rest.len()))
            };
            responses.push(Response {
                text,
                kind: ResponseKind::TeachingStep,
                cube: Some(end),
                moves: Some(MoveSequence(rest.to_vec())),
                steps: move_steps(&placed, rest, self.register),
            });
        }
        state.cube = end;
        if !state.plan.is_empty() {
            responses.push(Response::text(
                ResponseKind::Answer,
                "Say continue when you are ready for the next step.",
            ));
        }
        responses
    }
}

fn move_steps(start: &CubeState, moves: &[Move], register: Register) -> Vec<MoveStep> {
    let mut cube = *start;
    moves
        .iter()
        .map(|&m| {
            cube = cube.apply_move(m);
            let phrase = move_phrase(m, register);
            MoveStep {
                notation: m.to_string(),
                phrase: capitalized(&phrase) + ".",
                cube,
            }
        })
        .collect()
}

fn capitalized(text: &str) -> String {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}
