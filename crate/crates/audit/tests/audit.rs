use std::path::Path;

use cubetutor_audit::corpus::{load_rows, sentences_from_rows};
use cubetutor_audit::{
    die_percent, do_expectation, instability_matrix, run_audit, welch, welch_t_test, wrs,
    expand_templates, AuditParams, ConstantScorer, SentimentScorer, TemplateCorpus, ContingencyData, LexiconScorer, MetricKind, PersonSkewedScorer,
    RejectionCounts, YClass, YValues,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Table = Vec<(String, String, YClass, u64)>;

fn to_data(t: &Table) -> ContingencyData {
    let mut d = ContingencyData::new();
    for (x, z, y, n) in t {
        d.add(x, z, *y, *n);
    }
    d
}

/// Both expectations straight from the joint distribution.
fn brute_force_die(t: &Table, x: &str, yv: &YValues) -> f64 {
    let total: f64 = t.iter().map(|r| r.3 as f64).sum();
    let p = |f: &dyn Fn(&(String, String, YClass, u64)) -> bool| -> f64 {
        t.iter().filter(|r| f(r)).map(|r| r.3 as f64).sum::<f64>() / total
    };
    let zs: std::collections::BTreeSet<&String> = t.iter().map(|r| &r.1).collect();
    let px = p(&|r| r.0 == x);
    let mut cond = 0.0;
    let mut adjusted = 0.0;
    for y in YClass::ALL {
        cond += yv.of(y) * p(&|r| r.0 == x && r.2 == y) / px;
        for z in &zs {
            let pxz = p(&|r| r.0 == x && &&r.1 == z);
            let pz = p(&|r| &&r.1 == z);
            adjusted += yv.of(y) * p(&|r| r.0 == x && &&r.1 == z && r.2 == y) / pxz * pz;
        }
    }
    (adjusted - cond).abs() / cond * 100.0
}

fn random_table(rng: &mut ChaCha8Rng) -> Table {
    let nx = rng.random_range(2..5);
    let nz = rng.random_range(2..4);
    let mut t = Vec::new();
    for x in 0..nx {
        for z in 0..nz {
            for y in YClass::ALL {
                t.push((format!("x{x}"), format!("z{z}"), y, rng.random_range(1..50)));
            }
        }
    }
    t
}

/// n(x, z, y) = a_x * b_z * k(x, z, y) with every k row summing to the same K.
fn independent_table(rng: &mut ChaCha8Rng) -> Table {
    let nx = rng.random_range(2..5);
    let nz = rng.random_range(2..4);
    let a: Vec<u64> = (0..nx).map(|_| rng.random_range(1..6)).collect();
    let b: Vec<u64> = (0..nz).map(|_| rng.random_range(1..6)).collect();
    let k_total = 20;
    let mut t = Vec::new();
    for x in 0..nx {
        for z in 0..nz {
            let k0 = rng.random_range(1..k_total - 1);
            let k1 = rng.random_range(1..k_total - k0);
            let ks = [k0, k1, k_total - k0 - k1];
            for (y, k) in YClass::ALL.into_iter().zip(ks) {
                t.push((format!("x{x}"), format!("z{z}"), y, a[x] * b[z] * k));
            }
        }
    }
    t
}

#[test]
fn die_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let yv = YValues::default();
    for _ in 0..50 {
        let t = random_table(&mut rng);
        let d = to_data(&t);
        for x in d.xs() {
            let ours = die_percent(&d, &x, &yv).unwrap();
            let oracle = brute_force_die(&t, &x, &yv);
            assert!((ours - oracle).abs() <= 1e-9 * oracle.abs().max(1e-12), "{ours} vs {oracle}");
        }
    }
}

#[test]
fn independent_tables_give_exactly_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let yv = YValues::default();
    for _ in 0..50 {
        let d = to_data(&independent_table(&mut rng));
        for x in d.xs() {
            assert_eq!(die_percent(&d, &x, &yv).unwrap(), 0.0);
        }
    }
}

#[test]
fn scaling_counts_keeps_die() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let yv = YValues::default();
    for _ in 0..20 {
        let t = random_table(&mut rng);
        let k = rng.random_range(2..20);
        let scaled: Table = t.iter().map(|(x, z, y, n)| (x.clone(), z.clone(), *y, n * k)).collect();
        let (d, ds) = (to_data(&t), to_data(&scaled));
        for x in d.xs() {
            let a = die_percent(&d, &x, &yv).unwrap();
            let b = die_percent(&ds, &x, &yv).unwrap();
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
            let ea = do_expectation(&d, &x, &yv).unwrap();
            assert!((ea - do_expectation(&ds, &x, &yv).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn welch_matches_reference_values() {
    // p-values from scipy.stats.ttest_ind(equal_var=False)
    let a = [0.12, 0.35, 0.51, 0.22, 0.44, 0.61, 0.18, 0.39, 0.27, 0.48];
    let b = [0.05, 0.31, 0.42, 0.15, 0.36, 0.55, 0.11, 0.29, 0.2, 0.38];
    let r = welch(&a, &b).unwrap();
    assert!((r.t - 1.0734141551266017).abs() < 1e-9);
    assert!((r.df - 17.991677104056098).abs() < 1e-6);
    assert!((r.p_value - 0.29727202099085376).abs() < 1e-9);
    assert!(!welch_t_test(&a, &b, 0.95).unwrap());
    assert!(welch_t_test(&a, &b, 0.60).unwrap());

    let r = welch(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 4.0, 6.0, 8.0, 10.0, 12.0]).unwrap();
    assert!((r.t + 2.3763541031440183).abs() < 1e-9);
    assert!((r.p_value - 0.04928433820673049).abs() < 1e-9);

    let hi: Vec<f64> = (0..100).map(|i| 0.9 + 0.001 * (i as f64).sin()).collect();
    let lo: Vec<f64> = (0..100).map(|i| -0.9 + 0.001 * (i as f64).cos()).collect();
    assert!((welch(&hi, &lo).unwrap().t - 17910.119069548007).abs() < 1e-6);
    assert!(welch_t_test(&hi, &lo, 0.95).unwrap());
    for c in [0.95, 0.70, 0.60] {
        assert!(!welch_t_test(&hi, &hi, c).unwrap());
    }
}

#[test]
fn wrs_is_the_weighted_sum() {
    assert!((wrs(RejectionCounts([2, 1, 1])) - 3.4).abs() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let x: [u32; 3] = std::array::from_fn(|_| rng.random_range(0..50));
        let hand = 1.0 * x[0] as f64 + 0.8 * x[1] as f64 + 0.6 * x[2] as f64;
        assert!((wrs(RejectionCounts(x)) - hand).abs() < 1e-12);
    }
}

fn corpus_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/confounded.csv")
}

fn skewed() -> PersonSkewedScorer {
    PersonSkewedScorer {
        id: "skewed".into(),
        persons: vec!["he".into(), "my uncle".into(), "my brother".into(), "john".into()],
        bias: 0.2,
    }
}

#[test]
fn skewed_scorer_is_unstable_and_rated_worse() {
    let sentences = sentences_from_rows(&load_rows(&corpus_path()).unwrap()).unwrap();
    let constant = ConstantScorer {
        id: "constant".into(),
        value: 0.3,
    };
    let skew = skewed();
    let report = instability_matrix(&skew, &sentences, 0.05);
    assert_eq!(report.deltas.len(), 4);
    for d in &report.deltas {
        assert!((d.delta - 0.4).abs() <= 1e-9, "{d:?}");
        assert!(d.flagged);
    }
    let flat = instability_matrix(&constant, &sentences, 0.05);
    assert!(flat.deltas.iter().all(|d| d.delta == 0.0 && !d.flagged));

    let audit = run_audit(&sentences, &[&constant, &skew], &AuditParams::default()).unwrap();
    for metric in [MetricKind::Die, MetricKind::Wrs] {
        let r = audit.rating(metric);
        assert!(r.rating_of("skewed").unwrap() > r.rating_of("constant").unwrap(), "{metric:?}");
    }
    let mut csv = Vec::new();
    audit.write_csv(&mut csv).unwrap();
    assert!(String::from_utf8(csv).unwrap().starts_with("system,template_id,gender,mean,count"));
}

#[test]
fn lexicon_scorer_ignores_gender_words() {
    let rows = load_rows(&corpus_path()).unwrap();
    let scorer = LexiconScorer::builtin();
    let swap = [("he", "she"), ("my uncle", "my aunt"), ("my brother", "my sister"), ("John", "Maria")];
    for s in sentences_from_rows(&rows).unwrap() {
        let Some((_, other)) = swap.iter().find(|(m, _)| *m == s.person) else {
            continue;
        };
        let swapped = s.text.to_lowercase().replace(&s.person.to_lowercase(), other);
        assert_eq!(scorer.score(&s.text).unwrap(), scorer.score(&swapped).unwrap(), "{swapped}");
    }
    // on the balanced expansion the gender means coincide
    let balanced = expand_templates(&TemplateCorpus::from_rows(&rows).unwrap());
    let report = instability_matrix(&scorer, &balanced, 0.05);
    assert!(report.deltas.iter().all(|d| d.delta == 0.0));
}
