use cubetutor_core::search::{
    astar_solve, bfs_oracle, solve_focused, FocusedEffect, MisplacedBound, SearchError,
    ValueTable, ZeroHeuristic, train_value_table, HeuristicProvider,
};
use cubetutor_core::{scramble, CubeState, CubeletId, MoveSequence, PartialGoal};
use cubetutor_core::goal::white_cross_edges;

fn wo_lesson_start() -> CubeState {
    CubeState::solved().apply_sequence(&"F' R' F D".parse::<MoveSequence>().unwrap())
}

#[test]
fn astar_matches_bfs_on_short_scrambles() {
    let goal = PartialGoal::solved();
    for seed in 0..100u64 {
        let depth = 1 + (seed % 5) as usize;
        let (s, _) = scramble(depth, seed).unwrap();
        let optimal = bfs_oracle(&s, &goal, 5).unwrap();
        let r = astar_solve(&s, &goal, &MisplacedBound, 1.0, 5_000_000).unwrap();
        assert_eq!(r.cost, optimal, "seed {seed}");
        assert!(goal.matches(&s.apply_sequence(&r.path)));
    }
}

#[test]
fn misplaced_bound_is_admissible() {
    let goals = [PartialGoal::solved(), PartialGoal::white_cross()];
    for seed in 0..60u64 {
        let (s, _) = scramble(1 + (seed % 5) as usize, 1000 + seed).unwrap();
        for goal in &goals {
            let d = bfs_oracle(&s, goal, 5).unwrap();
            assert!(MisplacedBound.estimate(&s, goal) <= d as f64, "seed {seed}");
        }
    }
}

#[test]
fn wo_lesson_start_distance_to_white_orange_is_four() {
    let s = wo_lesson_start();
    let wo = CubeletId::edge(0);
    let effect = FocusedEffect::new(wo, white_cross_edges()[1..].iter().copied()).unwrap();
    assert_eq!(bfs_oracle(&s, &effect.goal(), 5), Ok(4));
    let r = solve_focused(&s, &effect, &MisplacedBound, 1_000_000).unwrap();
    assert_eq!(r.cost, 4);
    assert!(effect.achieved(&s.apply_sequence(&r.path)));
}

#[test]
fn focused_solutions_keep_protected_cubelets() {
    let cross = white_cross_edges();
    let mut checked = 0;
    for seed in 0..400u64 {
        if checked == 100 {
            break;
        }
        let (s, _) = scramble(4, seed).unwrap();
        let Some(&target) = cross.iter().find(|c| !c.is_placed(&s)) else {
            continue;
        };
        let protected: Vec<CubeletId> = cross.iter().copied().filter(|c| c.is_placed(&s)).collect();
        let effect = FocusedEffect::new(target, protected.clone()).unwrap();
        let r = solve_focused(&s, &effect, &MisplacedBound, 2_000_000).unwrap();
        let end = s.apply_sequence(&r.path);
        assert!(target.is_placed(&end), "seed {seed}");
        assert!(protected.iter().all(|c| c.is_placed(&end)), "seed {seed}");
        checked += 1;
    }
    assert_eq!(checked, 100);
}

#[test]
fn budget_exhaustion_is_reported() {
    let (s, _) = scramble(8, 7).unwrap();
    match astar_solve(&s, &PartialGoal::solved(), &ZeroHeuristic, 1.0, 50) {
        Err(SearchError::BudgetExhausted { nodes_expanded }) => assert!(nodes_expanded >= 50),
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
}

#[test]
fn weighted_search_still_reaches_goal() {
    let (s, _) = scramble(6, 11).unwrap();
    let goal = PartialGoal::white_cross();
    let r = astar_solve(&s, &goal, &MisplacedBound, 2.0, 1_000_000).unwrap();
    assert!(goal.matches(&s.apply_sequence(&r.path)));
    assert!(astar_solve(&s, &goal, &MisplacedBound, 0.5, 10).is_err());
}

#[test]
fn value_table_guides_cross_search() {
    let goal = PartialGoal::white_cross();
    let table = train_value_table(&goal, 50_000, 8, 20, 4);
    assert_eq!(table.lookup(&CubeState::solved()), Some(0.0));
    let json = table.to_json().unwrap();
    let back = ValueTable::from_json(&json).unwrap();
    assert_eq!(back.len(), table.len());
    for seed in 0..10u64 {
        let (s, _) = scramble(6, seed).unwrap();
        let r = astar_solve(&s, &goal, &table, 1.0, 500_000).unwrap();
        assert!(goal.matches(&s.apply_sequence(&r.path)));
    }
}
