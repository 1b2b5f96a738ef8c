mod common;

use std::io::Write;
use std::process::Command;

use common::{sample_lines, FIXTURE};
use cubetutor_core::CubeState;
use cubetutor_dialogue::{DialogueEngine, TranscriptRecord, UserProfile};
use cubetutor_service::replay::{replay_file, replay_lines};
use cubetutor_service::store::{encode_line, JsonLog, TranscriptLine};

fn cubetutor() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubetutor"))
}

#[test]
fn fixture_holds_the_sample_conversation() {
    if std::env::var_os("UPDATE_FIXTURES").is_some() {
        let mut text = String::new();
        for line in sample_lines() {
            text.push_str(&encode_line(&line).unwrap());
            text.push('\n');
        }
        std::fs::write(FIXTURE, text).unwrap();
    }
    let read = JsonLog::new(FIXTURE).read::<TranscriptLine>().unwrap();
    assert!(read.quarantined.is_empty());
    assert_eq!(read.records, sample_lines());
}

#[test]
fn fixture_replays_without_differences() {
    let engine = DialogueEngine::with_builtin_lexicons();
    let outcome = replay_file(FIXTURE.as_ref(), &engine, &Vec::<UserProfile>::new()).unwrap();
    assert_eq!(outcome.turns, 7);
    assert!(outcome.is_clean(), "{:#?}", outcome.mismatches);
}

#[test]
fn edited_response_shows_up_as_a_difference() {
    let mut lines = sample_lines();
    let TranscriptLine::Message(TranscriptRecord { text, .. }) = lines.last_mut().unwrap() else {
        panic!("last line is a message");
    };
    *text = text.replace("12", "13");
    let engine = DialogueEngine::with_builtin_lexicons();
    let outcome = replay_lines(&lines, &engine, &Vec::<UserProfile>::new()).unwrap();
    assert_eq!(outcome.mismatches.len(), 1);
    assert_eq!(outcome.mismatches[0].turn, 7);
    assert_eq!(outcome.mismatches[0].field, "response[0]");
}

#[test]
fn replay_is_byte_identical_across_runs() {
    let engine = DialogueEngine::with_builtin_lexicons();
    let a = replay_file(FIXTURE.as_ref(), &engine, &Vec::<UserProfile>::new()).unwrap();
    let b = replay_file(FIXTURE.as_ref(), &engine, &Vec::<UserProfile>::new()).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn cli_replay_of_fixture_exits_zero() {
    let out = cubetutor().args(["replay", FIXTURE]).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}\n{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("7 turns replayed, 0 differences, 0 corrupt lines"), "{stdout}");
}

#[test]
fn cli_replay_flags_a_corrupt_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    let text = std::fs::read_to_string(FIXTURE).unwrap();
    let corrupted = text.replacen("Go to hell", "Go to Hell", 1);
    std::fs::File::create(&path).unwrap().write_all(corrupted.as_bytes()).unwrap();
    let out = cubetutor().arg("replay").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("checksum mismatch"));
}

#[test]
fn cli_solve_on_solved_cube_prints_empty_path() {
    let solved = CubeState::solved().format_facelets();
    let out = cubetutor().args(["solve", &solved, "--goal", "white-cross"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "\n");
}

#[test]
fn cli_solve_finds_a_short_path() {
    let start = CubeState::solved().apply_sequence(&"R U F'".parse().unwrap());
    let out = cubetutor().args(["solve", &start.format_facelets()]).output().unwrap();
    assert!(out.status.success());
    let path = String::from_utf8_lossy(&out.stdout);
    assert_eq!(path.split_whitespace().count(), 3);
    let moves = path.trim().parse().unwrap();
    assert!(start.apply_sequence(&moves).is_solved());
}

#[test]
fn cli_rejects_bad_input() {
    let short = &CubeState::solved().format_facelets()[..53];
    let out = cubetutor().args(["solve", short]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("54"));

    let out = cubetutor().arg("juggle").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn cli_audit_rates_systems() {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/../audit/data/confounded.csv");
    let out = cubetutor()
        .args(["audit", "--corpus", corpus, "--system", "lexicon", "--system", "constant", "--metric", "wrs"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().any(|l| l.starts_with("constant\t")));
}
