use std::fmt;

use serde::{Deserialize, Serialize};

use crate::utterance::Utterance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    MoveSuccess,
    Score,
    GamesWon,
    GamesPlayed,
    SkillLevel,
    Summary,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "intent", rename_all = "snake_case")]
pub enum Intent {
    TeachGoal { goal: String },
    ContinueTeaching,
    AskOtherUser { target: String, metric: Metric },
    AskOwnSummary,
    Affirm,
    Deny,
    Smalltalk,
    EditCube,
    Unknown,
}

impl Intent {
    pub fn name(&self) -> &'static str {
        match self {
            Intent::TeachGoal { .. } => "teach_goal",
            Intent::ContinueTeaching => "continue_teaching",
            Intent::AskOtherUser { .. } => "ask_other_user",
            Intent::AskOwnSummary => "ask_own_summary",
            Intent::Affirm => "affirm",
            Intent::Deny => "deny",
            Intent::Smalltalk => "smalltalk",
            Intent::EditCube => "edit_cube",
            Intent::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Intent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intent::TeachGoal { goal } => write!(f, "teach_goal({goal})"),
            Intent::AskOtherUser { target, metric } => {
                write!(f, "ask_other_user({target}, {})", serde_plain(metric))
            }
            other => f.write_str(other.name()),
        }
    }
}

fn serde_plain(metric: &Metric) -> &'static str {
    match metric {
        Metric::MoveSuccess => "move-success",
        Metric::Score => "score",
        Metric::GamesWon => "games-won",
        Metric::GamesPlayed => "games-played",
        Metric::SkillLevel => "skill-level",
        Metric::Summary => "summary",
        Metric::General => "general",
    }
}

const PERFORMANCE_WORDS: &[&str] = &[
    "perform", "performed", "performance", "able", "successfully", "success", "score", "scores",
    "won", "win", "wins", "games", "game", "played", "skill", "level", "summary", "progress",
    "solved", "solve", "doing", "stats", "rank", "ranking", "record", "time", "gender", "did",
];

const TEACH_WORDS: &[&str] = &["teach", "show", "explain", "learn", "help", "solve", "how"];
const CONTINUE_WORDS: &[&str] = &["continue", "next", "proceed", "more", "go", "keep", "resume"];
const AFFIRM_WORDS: &[&str] = &["yes", "yeah", "yep", "sure", "ok", "okay", "alright", "right", "fine"];
const DENY_WORDS: &[&str] = &["no", "nope", "nah", "not", "don't"];
const SMALLTALK_WORDS: &[&str] = &[
    "hi", "hello", "hey", "thanks", "thank", "bye", "goodbye", "morning", "evening", "cheers",
];
const EDIT_WORDS: &[&str] = &["scramble", "reset", "shuffle", "edit", "recolor", "set"];

fn metric_of(u: &Utterance) -> Metric {
    if u.has_any(&["perform", "performed", "able", "successfully", "success", "move", "moves"]) {
        Metric::MoveSuccess
    } else if u.has_any(&["score", "scores", "rank", "ranking"]) {
        Metric::Score
    } else if u.has_any(&["won", "win", "wins"]) {
        Metric::GamesWon
    } else if u.has_any(&["played", "games", "game"]) {
        Metric::GamesPlayed
    } else if u.has_any(&["skill", "level"]) {
        Metric::SkillLevel
    } else if u.has_any(&["summary", "stats", "progress", "performance"]) {
        Metric::Summary
    } else {
        Metric::General
    }
}

/// Goal keyword in the utterance, as a goal name.
pub fn goal_keyword(u: &Utterance) -> Option<&'static str> {
    if u.has_phrase("white cross") || u.has_phrase("cross") {
        Some("white-cross")
    } else if u.has_phrase("whole cube") || u.has_phrase("entire cube") || u.has_phrase("the cube") {
        Some("solved")
    } else {
        None
    }
}

/// Rule cascade: another user's performance, own summary, teaching a goal,
/// continuing, cube edits, yes/no, greetings. Performance questions about
/// nobody in particular fall through to smalltalk. `known_usernames` are the
/// other users; the requester's own name never triggers a refusal.
pub fn classify_intent(u: &Utterance, known_usernames: &[String], requester: &str) -> Intent {
    let requester = requester.to_lowercase();
    let other = known_usernames
        .iter()
        .map(|n| n.to_lowercase())
        .filter(|n| *n != requester && !n.is_empty())
        .find(|n| u.has_phrase(n));
    if let Some(target) = other {
        if u.has_any(PERFORMANCE_WORDS) {
            return Intent::AskOtherUser {
                target,
                metric: metric_of(u),
            };
        }
    }
    let own = u.has_any(&["my", "me", "i"]) || u.has_phrase(&requester);
    if u.has_any(&["summary", "stats", "statistics"])
        || (own && u.has_any(&["performance", "progress", "score"]))
        || u.has_phrase("how am i doing")
    {
        return Intent::AskOwnSummary;
    }
    if u.has_any(TEACH_WORDS) {
        if let Some(goal) = goal_keyword(u) {
            return Intent::TeachGoal { goal: goal.to_string() };
        }
    }
    if u.has_any(CONTINUE_WORDS) || u.has_phrase("go on") || u.has_phrase("what next") {
        return Intent::ContinueTeaching;
    }
    if u.has_any(EDIT_WORDS) && u.has_any(&["cube", "it", "colors", "colours"]) {
        return Intent::EditCube;
    }
    if u.tokens.first().is_some_and(|t| DENY_WORDS.contains(&t.as_str())) {
        return Intent::Deny;
    }
    if u.has_any(AFFIRM_WORDS) {
        return Intent::Affirm;
    }
    if u.has_any(SMALLTALK_WORDS) || u.has_phrase("how are you") || u.has_any(PERFORMANCE_WORDS) {
        return Intent::Smalltalk;
    }
    Intent::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(text: &str) -> Intent {
        classify_intent(&Utterance::new(text), &["john".into(), "maria".into(), "alex".into()], "alex")
    }

    #[test]
    fn table_turns() {
        assert_eq!(
            classify("Can you teach me how to solve the goddamn White Cross?"),
            Intent::TeachGoal { goal: "white-cross".into() }
        );
        assert_eq!(
            classify("Ok. Can you teach me White Cross?"),
            Intent::TeachGoal { goal: "white-cross".into() }
        );
        assert_eq!(classify("I am sorry. Please continue teaching."), Intent::ContinueTeaching);
        assert_eq!(
            classify("Was my friend, John, able to perform this move successfully?"),
            Intent::AskOtherUser {
                target: "john".into(),
                metric: Metric::MoveSuccess
            }
        );
        assert_eq!(
            classify("Ok. Can I get a summary of my performance till this point?"),
            Intent::AskOwnSummary
        );
    }

    #[test]
    fn other_rules() {
        assert_eq!(classify("How many games has Maria won?").name(), "ask_other_user");
        assert_eq!(classify("How is Alex doing on score?"), Intent::AskOwnSummary);
        assert_eq!(classify("Did your friend win?"), Intent::Smalltalk);
        assert_eq!(classify("yes"), Intent::Affirm);
        assert_eq!(classify("no thanks"), Intent::Deny);
        assert_eq!(classify("hello"), Intent::Smalltalk);
        assert_eq!(classify("scramble the cube"), Intent::EditCube);
        assert_eq!(classify("banana"), Intent::Unknown);
        assert_eq!(classify("next"), Intent::ContinueTeaching);
    }

    #[test]
    fn display_form() {
        assert_eq!(
            classify("Was John able to perform this move?").to_string(),
            "ask_other_user(john, move-success)"
        );
    }
}
