#![allow(dead_code)]

use chrono::{DateTime, Utc};
use cubetutor_core::goal::white_cross_edges;
use cubetutor_core::{CubeState, MoveSequence};
use cubetutor_dialogue::{SentimentLabel, Speaker, TranscriptRecord, UserProfile};
use cubetutor_service::store::{InlineMacro, SessionSetup, TranscriptLine};

pub const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sample_dialogue.jsonl");

pub fn wo_lesson_start() -> CubeState {
    CubeState::solved().apply_sequence(&"F' R' F D".parse::<MoveSequence>().unwrap())
}

pub fn sample_profiles() -> Vec<UserProfile> {
    let mut me = UserProfile::new("alex");
    me.games_played = 12;
    me.games_won = 8;
    me.avg_game_minutes = Some(10.0);
    me.score = 640;
    me.skill_level = "intermediate".into();
    let mut john = UserProfile::new("John");
    john.games_played = 30;
    john.games_won = 21;
    john.avg_game_minutes = Some(6.5);
    john.score = 1710;
    vec![me, john]
}

/// User turn, label, strikes after the turn, and the expected bot lines.
pub fn sample_turns() -> Vec<(&'static str, SentimentLabel, u32, Vec<&'static str>)> {
    use SentimentLabel::*;
    vec![
        (
            "Can you teach me how to solve the goddamn White Cross?",
            Negative,
            1,
            vec!["Please do not use inappropriate language."],
        ),
        (
            "Go to hell",
            Negative,
            2,
            vec!["Please do not use inappropriate language. I have been designed to ignore such inputs when repeated."],
        ),
        (
            "Ok. Can you teach me White Cross?",
            Neutral,
            2,
            vec!["Yes. For the current configuration of the Rubik\u{2019}s cube, the white-orange edge cubelet is out of place. The white side of the edge cubelet is aligned with the orange center cubelet and the orange side of the edge cubelet is aligned with the yellow center cubelet.\nDo you have any questions?"],
        ),
        (
            "I did not understand a thing, you idiot.",
            Negative,
            3,
            vec!["Please do not use inappropriate language. I have been designed to ignore such inputs when repeated. I am also reporting our interaction for potential further action."],
        ),
        (
            "I am sorry. Please continue teaching.",
            Neutral,
            3,
            vec![
                "Here we perform three rotations of the faces. White-orange cubelet is aligned.",
                "We perform one rotation of the face to solve the white cross. Solved!",
            ],
        ),
        (
            "Was my friend, John, able to perform this move successfully?",
            Neutral,
            3,
            vec!["Any answer to your query will lead to release of private information of others. Hence, I am not able to answer at this time."],
        ),
        (
            "Ok. Can I get a summary of my performance till this point?",
            Neutral,
            3,
            vec!["Sure. Here is your summary.\nTotal games played: 12\nAverage time taken for a single game: 10 minutes\nTotal games won: 8"],
        ),
    ]
}

pub fn sample_lines() -> Vec<TranscriptLine> {
    let t0: DateTime<Utc> = "2026-01-05T09:00:00Z".parse().unwrap();
    let cross = white_cross_edges();
    let mut lines = vec![TranscriptLine::Setup(SessionSetup {
        timestamp: t0,
        session: "sample_dialogue".into(),
        user: "alex".into(),
        cube: wo_lesson_start(),
        profiles: sample_profiles(),
        macros: vec![InlineMacro {
            name: "white-orange".into(),
            moves: "D' F' R F".parse().unwrap(),
            target: cross[0],
            protect: cross[1..].to_vec(),
            source: wo_lesson_start(),
            seed: 0,
        }],
    })];
    for (i, (text, label, strikes, bot)) in sample_turns().into_iter().enumerate() {
        let ts = t0 + chrono::Duration::seconds(10 * (i as i64 + 1));
        let record = |speaker, text: &str, sentiment| {
            TranscriptLine::Message(TranscriptRecord {
                timestamp: ts,
                session: "sample_dialogue".into(),
                speaker,
                text: text.into(),
                sentiment,
                intent: None,
                strike_count: strikes,
            })
        };
        lines.push(record(Speaker::User, text, Some(label)));
        for b in bot {
            lines.push(record(Speaker::Bot, b, None));
        }
    }
    lines
}
