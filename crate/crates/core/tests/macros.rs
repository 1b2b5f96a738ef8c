use cubetutor_core::goal::white_cross_edges;
use cubetutor_core::induction::{Atom, Predicate};
use cubetutor_core::macros::{
    achieves, greedy_solve_with_library, learn_precondition, validate_macro, ExampleParams,
};
use cubetutor_core::nlg::{describe_target, render_macro, Register, Section};
use cubetutor_core::search::{FocusedEffect, MisplacedBound};
use cubetutor_core::{
    apply_macro, discover_candidates, evaluate_program, generate_configurations,
    generate_examples, induce_program, learn_macro_library, Color, CubeState, CubeletId,
    LearnParams, MacroAction, MacroCandidate, MacroError, MacroLibrary, MoveSequence,
    PartialGoal, Vocabulary,
};

fn wo_lesson_start() -> CubeState {
    CubeState::solved().apply_sequence(&"F' R' F D".parse::<MoveSequence>().unwrap())
}

fn wo_candidate() -> MacroCandidate {
    let cross = white_cross_edges();
    let sequence: MoveSequence = "D' F' R F".parse().unwrap();
    MacroCandidate {
        complexity: sequence.len(),
        sequence,
        effect: FocusedEffect::new(cross[0], cross[1..].iter().copied()).unwrap(),
        source: wo_lesson_start(),
    }
}

fn wo_action() -> MacroAction {
    let candidate = wo_candidate();
    let params = LearnParams::default();
    learn_precondition(&candidate, &[], &white_cross_edges(), &params, "white-orange".into(), 0).unwrap()
}

#[test]
fn wo_sequence_places_white_orange() {
    let s = wo_lesson_start();
    let cross = white_cross_edges();
    assert!(!cross[0].is_placed(&s));
    assert!(cross[1..].iter().all(|c| c.is_placed(&s)));
    let end = s.apply_sequence(&wo_candidate().sequence);
    assert!(cross.iter().all(|c| c.is_placed(&end)));
    assert!(achieves(&wo_candidate().sequence, cross[0], &cross, &s));
    assert!(!achieves(&wo_candidate().sequence, cross[0], &cross, &CubeState::solved()));
}

#[test]
fn wo_precondition_separates_examples() {
    let candidate = wo_candidate();
    let pool = white_cross_edges();
    let examples = generate_examples(&candidate, &[], &pool, &ExampleParams::default(), 0).unwrap();
    let program = induce_program(&examples, &Vocabulary::over(pool), Default::default()).unwrap();
    assert!(evaluate_program(&program, &wo_lesson_start()));
    assert!(!evaluate_program(&program, &CubeState::solved()));
    for s in &examples.positives {
        assert!(evaluate_program(&program, s));
    }
    for s in &examples.negatives {
        assert!(!evaluate_program(&program, s));
    }
}

#[test]
fn wo_learned_precondition_is_the_two_alignments() {
    let action = wo_action();
    let wo = CubeletId::edge(0);
    let clauses = action.precondition.clauses();
    assert_eq!(clauses.len(), 1, "{}", action.precondition);
    let atoms: Vec<Predicate> = clauses[0].predicates().to_vec();
    for (sticker, center) in [(Color::White, Color::Orange), (Color::Orange, Color::Yellow)] {
        assert!(
            atoms.contains(&Predicate::pos(Atom::Aligned { cubelet: wo, sticker, center })),
            "{}",
            action.precondition
        );
    }
    assert_eq!(action.validation.violations, 0);
    let (stats, _) = validate_macro(&action, &white_cross_edges(), 150, 99);
    assert!(stats.samples >= 100);
    assert_eq!(stats.violations, 0);
}

#[test]
fn apply_macro_checks_the_precondition() {
    let action = wo_action();
    let end = apply_macro(&wo_lesson_start(), &action).unwrap();
    assert!(PartialGoal::white_cross().matches(&end));
    assert!(matches!(
        apply_macro(&CubeState::solved(), &action),
        Err(MacroError::PreconditionUnsatisfied(_))
    ));
}

#[test]
fn wo_explanations() {
    let action = wo_action();
    let standard = render_macro(&action, Register::Standard).unwrap();
    let simplified = render_macro(&action, Register::Simplified).unwrap();
    let actions: Vec<&str> = standard.section(Section::Action).map(|s| s.text.as_str()).collect();
    assert_eq!(
        actions,
        [
            "Rotate the bottom face counterclockwise.",
            "Rotate the front face counterclockwise.",
            "Rotate the right face clockwise.",
            "Rotate the front face clockwise.",
        ]
    );
    let text = standard.text();
    assert!(text.contains("The white side of the edge cubelet is aligned with the orange center cubelet"));
    assert!(text.contains("White-orange cubelet is aligned."));
    assert!(text.ends_with("Do you have any questions?"));
    assert!(simplified.average_sentence_words() < standard.average_sentence_words());

    let here = describe_target(&wo_lesson_start(), CubeletId::edge(0), Register::Standard).unwrap();
    assert_eq!(
        here.text(),
        "The white-orange edge cubelet is out of place. The white side of the edge cubelet is \
         aligned with the orange center cubelet and the orange side of the edge cubelet is \
         aligned with the yellow center cubelet."
    );
}

#[test]
fn discovery_finds_short_candidates_for_the_lesson_start() {
    let h = MisplacedBound;
    let report = discover_candidates(&[wo_lesson_start()], &PartialGoal::white_cross(), &h, 1_000_000);
    assert!(!report.candidates.is_empty());
    assert!(report.candidates.iter().all(|c| c.complexity == 4));
}

#[test]
fn configurations_are_reproducible() {
    let a = generate_configurations(20, 1..=20, 5).unwrap();
    assert_eq!(a, generate_configurations(20, 1..=20, 5).unwrap());
    assert_ne!(a, generate_configurations(20, 1..=20, 6).unwrap());
    assert!(generate_configurations(0, 1..=20, 5).is_err());
    assert!(generate_configurations(5, 0..=3, 5).is_err());
}

#[test]
fn small_library_is_sound_and_round_trips() {
    let params = LearnParams {
        config_count: 40,
        macro_cap: 12,
        validation_samples: 100,
        ..LearnParams::default()
    };
    let goal = PartialGoal::white_cross();
    let library = learn_macro_library(&goal, &params, &MisplacedBound).unwrap();
    assert!(!library.is_empty());
    let complexities: Vec<usize> = library.macros().iter().map(|m| m.complexity).collect();
    assert!(complexities.windows(2).all(|w| w[0] <= w[1]));
    for m in library.macros() {
        assert_eq!(m.validation.violations, 0, "{}", m.name);
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("library.json");
    library.save(&path).unwrap();
    assert_eq!(MacroLibrary::load(&path).unwrap(), library);

    let configs = generate_configurations(50, 1..=20, 77).unwrap();
    for s in &configs {
        if let Ok(solution) = greedy_solve_with_library(s, &library, 12) {
            assert!(goal.matches(&s.apply_sequence(&solution.sequence)));
            let mut current = *s;
            for step in &solution.steps {
                current = current.apply_sequence(&step.moves);
                assert!(step.target.is_placed(&current));
            }
        }
    }
}
