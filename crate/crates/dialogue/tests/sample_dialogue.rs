use std::sync::Arc;

use cubetutor_core::goal::white_cross_edges;
use cubetutor_core::macros::learn_precondition;
use cubetutor_core::search::FocusedEffect;
use cubetutor_core::{CubeState, LearnParams, MacroCandidate, MacroLibrary, MoveSequence, PartialGoal};
use cubetutor_dialogue::{
    DialogueEngine, DialogueState, ResponseKind, SentimentLabel, UserProfile,
};

fn wo_lesson_start() -> CubeState {
    CubeState::solved().apply_sequence(&"F' R' F D".parse::<MoveSequence>().unwrap())
}

fn wo_library() -> MacroLibrary {
    let cross = white_cross_edges();
    let sequence: MoveSequence = "D' F' R F".parse().unwrap();
    let candidate = MacroCandidate {
        complexity: sequence.len(),
        sequence,
        effect: FocusedEffect::new(cross[0], cross[1..].iter().copied()).unwrap(),
        source: wo_lesson_start(),
    };
    let action =
        learn_precondition(&candidate, &[], &cross, &LearnParams::default(), "white-orange".into(), 0).unwrap();
    let mut library = MacroLibrary::new(PartialGoal::white_cross());
    library.insert(action);
    library
}

fn profiles() -> Vec<UserProfile> {
    let mut me = UserProfile::new("alex");
    me.games_played = 12;
    me.games_won = 8;
    me.avg_game_minutes = Some(10.0);
    me.gender = "female".into();
    me.score = 640;
    me.skill_level = "intermediate".into();
    let mut john = UserProfile::new("John");
    john.games_played = 30;
    john.games_won = 21;
    john.avg_game_minutes = Some(6.5);
    john.score = 1710;
    vec![me, john]
}

#[test]
fn sample_dialogue_replay() {
    let mut engine = DialogueEngine::with_builtin_lexicons();
    engine.add_library("white-cross", Arc::new(wo_library()));
    let store = profiles();
    let mut state = DialogueState::new("s1", "alex", wo_lesson_start());
    let turns = [
        "Can you teach me how to solve the goddamn White Cross?",
        "Go to hell",
        "Ok. Can you teach me White Cross?",
        "I did not understand a thing, you idiot.",
        "I am sorry. Please continue teaching.",
        "Was my friend, John, able to perform this move successfully?",
        "Ok. Can I get a summary of my performance till this point?",
    ];
    let out: Vec<_> = turns.iter().map(|t| engine.respond(&mut state, t, &store)).collect();

    use SentimentLabel::*;
    let labels: Vec<SentimentLabel> = out.iter().map(|t| t.sentiment.label).collect();
    assert_eq!(labels, [Negative, Negative, Neutral, Negative, Neutral, Neutral, Neutral]);

    let texts: Vec<Vec<&str>> = out
        .iter()
        .map(|t| t.responses.iter().map(|r| r.text.as_str()).collect())
        .collect();
    assert_eq!(texts[0], ["Please do not use inappropriate language."]);
    assert_eq!(
        texts[1],
        ["Please do not use inappropriate language. I have been designed to ignore such inputs when repeated."]
    );
    assert_eq!(
        texts[2],
        ["Yes. For the current configuration of the Rubik\u{2019}s cube, the white-orange edge cubelet is out of place. The white side of the edge cubelet is aligned with the orange center cubelet and the orange side of the edge cubelet is aligned with the yellow center cubelet.\nDo you have any questions?"]
    );
    assert_eq!(
        texts[3],
        ["Please do not use inappropriate language. I have been designed to ignore such inputs when repeated. I am also reporting our interaction for potential further action."]
    );
    assert!(out[3].report);
    assert_eq!(
        texts[4],
        [
            "Here we perform three rotations of the faces. White-orange cubelet is aligned.",
            "We perform one rotation of the face to solve the white cross. Solved!",
        ]
    );
    assert_eq!(
        texts[5],
        ["Any answer to your query will lead to release of private information of others. Hence, I am not able to answer at this time."]
    );
    assert_eq!(
        texts[6],
        ["Sure. Here is your summary.\nTotal games played: 12\nAverage time taken for a single game: 10 minutes\nTotal games won: 8"]
    );

    let step = &out[4].responses;
    assert_eq!(step[0].moves.as_ref().unwrap().to_string(), "D' F' R");
    assert_eq!(step[1].moves.as_ref().unwrap().to_string(), "F");
    assert!(PartialGoal::white_cross().matches(step[1].cube.as_ref().unwrap()));
    assert!(PartialGoal::white_cross().matches(&state.cube));
    let phrases: Vec<&str> = step.iter().flat_map(|r| &r.steps).map(|s| s.phrase.as_str()).collect();
    assert_eq!(
        phrases,
        [
            "Rotate the bottom face counterclockwise.",
            "Rotate the front face counterclockwise.",
            "Rotate the right face clockwise.",
            "Rotate the front face clockwise.",
        ]
    );
    assert_eq!(step[1].steps.last().unwrap().cube, state.cube);
    assert_eq!(state.strike_count, 3);
    assert!(out.iter().flat_map(|t| &t.responses).all(|r| r.kind != ResponseKind::Encouragement));
}

#[test]
fn replay_is_deterministic() {
    let mut engine = DialogueEngine::with_builtin_lexicons();
    engine.add_library("white-cross", Arc::new(wo_library()));
    let store = profiles();
    let run = || {
        let mut state = DialogueState::new("s", "alex", wo_lesson_start());
        ["teach me the white cross", "continue", "summary please", "you idiot"]
            .iter()
            .map(|t| engine.respond(&mut state, t, &store))
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
