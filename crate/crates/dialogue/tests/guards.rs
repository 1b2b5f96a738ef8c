use cubetutor_core::CubeState;
use cubetutor_dialogue::{
    DialogueEngine, DialogueState, Intent, ResponseKind, SentimentLabel, UserProfile,
};
use proptest::prelude::*;

fn sentinel_store() -> Vec<UserProfile> {
    let mut me = UserProfile::new("alex");
    me.games_played = 3;
    me.games_won = 1;
    me.avg_game_minutes = Some(4.0);
    let mut out = vec![me];
    for (i, name) in ["john", "maria", "wei", "fatima"].iter().enumerate() {
        let mut p = UserProfile::new(*name);
        p.gender = format!("SENTINEL-GENDER-{i}");
        p.skill_level = format!("SENTINEL-SKILL-{i}");
        p.score = 9_000_000 + i as i64;
        p.games_played = 7_770_000 + i as u32;
        p.games_won = 6_660_000 + i as u32;
        p.avg_game_minutes = Some(555.25 + i as f64);
        out.push(p);
    }
    out
}

fn sentinels(store: &[UserProfile]) -> Vec<String> {
    store[1..]
        .iter()
        .flat_map(|p| {
            [
                p.gender.clone(),
                p.skill_level.clone(),
                p.score.to_string(),
                p.games_played.to_string(),
                p.games_won.to_string(),
                "555".to_string(),
            ]
        })
        .collect()
}

#[test]
fn other_users_are_refused_identically() {
    let engine = DialogueEngine::with_builtin_lexicons();
    let store = sentinel_store();
    let mut state = DialogueState::new("s", "alex", CubeState::solved());
    let known = engine.respond(&mut state, "How many games has Maria won?", &store);
    assert!(matches!(known.intent, Intent::AskOtherUser { .. }));
    let refusal = known.responses.last().unwrap().clone();
    assert_eq!(refusal.kind, ResponseKind::Refusal);

    // an unknown name is not refused, but nothing reveals whether the name exists
    let unknown = engine.respond(&mut state, "How many games has Zed won?", &store);
    assert!(unknown.responses.iter().all(|r| !r.text.contains("Zed") && !r.text.contains("zed")));
}

#[test]
fn own_summary_has_only_three_fields() {
    let engine = DialogueEngine::with_builtin_lexicons();
    let mut store = sentinel_store();
    store[0].gender = "nonbinary".into();
    store[0].skill_level = "expert".into();
    let mut state = DialogueState::new("s", "alex", CubeState::solved());
    let turn = engine.respond(&mut state, "Can I get a summary of my performance?", &store);
    let text = &turn.responses[0].text;
    assert_eq!(turn.responses[0].kind, ResponseKind::Summary);
    assert_eq!(text.lines().count(), 4);
    assert!(!text.contains("nonbinary") && !text.contains("expert"));

    let mut newcomer = DialogueState::new("t", "nobody", CubeState::solved());
    let turn = engine.respond(&mut newcomer, "summary please", &store);
    assert_eq!(turn.responses[0].kind, ResponseKind::Answer);
}

#[test]
fn negative_but_clean_turns_get_encouragement() {
    let engine = DialogueEngine::with_builtin_lexicons();
    let mut state = DialogueState::new("s", "alex", CubeState::solved());
    let turn = engine.respond(&mut state, "this is hopeless", &sentinel_store());
    assert_eq!(turn.sentiment.label, SentimentLabel::Negative);
    assert!(!turn.abusive);
    assert_eq!(turn.responses[0].kind, ResponseKind::Encouragement);
    assert_eq!(state.strike_count, 0);
}

#[test]
fn person_words_carry_no_valence() {
    let engine = DialogueEngine::with_builtin_lexicons();
    for (a, b) in [
        ("My aunt is feeling miserable", "My uncle is feeling miserable"),
        ("She made me feel happy", "He made me feel happy"),
        ("Maria feels angry", "John feels angry"),
    ] {
        assert_eq!(engine.score(a), engine.score(b));
    }
}

const WORDS: &[&str] = &[
    "can", "you", "teach", "me", "the", "white", "cross", "idiot", "hell", "please", "continue",
    "summary", "my", "performance", "did", "win", "games", "score", "able", "perform", "move",
    "successfully", "not", "very", "good", "bad", "ok", "friend", "how", "is", "doing", "level",
    "skill", "gender", "john", "maria", "wei", "fatima", "alex", "what", "tell", "about",
];

proptest! {
    #[test]
    fn strikes_count_abusive_turns(turns in prop::collection::vec(prop::collection::vec(0..WORDS.len(), 1..10), 1..12)) {
        let engine = DialogueEngine::with_builtin_lexicons();
        let store = sentinel_store();
        let mut state = DialogueState::new("s", "alex", CubeState::solved());
        let mut expected = 0;
        for words in turns {
            let text: Vec<&str> = words.iter().map(|&i| WORDS[i]).collect();
            let before = state.strike_count;
            let turn = engine.respond(&mut state, &text.join(" "), &store);
            if turn.abusive {
                expected += 1;
                prop_assert_eq!(turn.responses.len(), 1);
                prop_assert_eq!(turn.responses[0].kind, ResponseKind::Warning);
                prop_assert_eq!(turn.tier, expected.min(3));
            }
            prop_assert!(state.strike_count >= before);
            prop_assert_eq!(state.strike_count, expected);
        }
    }
}

#[test]
fn leakage_fuzz() {
    use rand::{Rng, SeedableRng};
    let engine = DialogueEngine::with_builtin_lexicons();
    let store = sentinel_store();
    let secrets = sentinels(&store);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let names = ["john", "John", "MARIA", "wei", "Fatima"];
    let frames = [
        "Was my friend, {n}, able to perform this move successfully?",
        "How many games has {n} won?",
        "What is {n}'s score?",
        "Tell me the skill level of {n}",
        "Is {n} male or female? what gender",
        "{n} summary please",
        "Can you show me {n} performance",
        "how is {n} doing",
        "did {n} solve the white cross",
        "{n}",
    ];
    for _ in 0..1000 {
        let n = names[rng.random_range(0..names.len())];
        let text = frames[rng.random_range(0..frames.len())].replace("{n}", n);
        let mut state = DialogueState::new("s", "alex", CubeState::solved());
        let turn = engine.respond(&mut state, &text, &store);
        let body = serde_json::to_string(&turn).unwrap();
        for s in &secrets {
            assert!(!body.contains(s.as_str()), "{text:?} leaked {s}");
        }
    }
}
