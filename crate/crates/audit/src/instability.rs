use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::Sentence;
use crate::scorer::SentimentScorer;

pub const DEFAULT_DELTA_THRESHOLD: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredSentence {
    pub sentence: Sentence,
    pub system: String,
    /// `None` when the scorer failed or returned something outside [-1, 1].
    pub score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenderMean {
    pub template_id: String,
    pub gender: String,
    pub mean: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemplateDelta {
    pub template_id: String,
    /// Largest gap between gender means (|male - female| for two genders).
    pub delta: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstabilityReport {
    pub system: String,
    pub means: Vec<GenderMean>,
    pub deltas: Vec<TemplateDelta>,
    pub missing: usize,
}

pub fn score_sentences(system: &dyn SentimentScorer, sentences: &[Sentence]) -> Vec<ScoredSentence> {
    sentences
        .iter()
        .map(|s| ScoredSentence {
            sentence: s.clone(),
            system: system.id().to_string(),
            score: system
                .score(&s.text)
                .ok()
                .filter(|v| v.is_finite() && (-1.0..=1.0).contains(v)),
        })
        .collect()
}

pub fn instability_from_scores(system: &str, scored: &[ScoredSentence], threshold: f64) -> InstabilityReport {
    let mut sums: BTreeMap<(&str, &str), (f64, usize)> = BTreeMap::new();
    let mut missing = 0;
    for s in scored {
        match s.score {
            Some(v) => {
                let e = sums
                    .entry((s.sentence.template_id.as_str(), s.sentence.gender.as_str()))
                    .or_default();
                // running mean: exact for constant scores
                e.1 += 1;
                e.0 += (v - e.0) / e.1 as f64;
            }
            None => missing += 1,
        }
    }
    let means: Vec<GenderMean> = sums
        .iter()
        .map(|(&(t, g), &(mean, n))| GenderMean {
            template_id: t.to_string(),
            gender: g.to_string(),
            mean,
            count: n,
        })
        .collect();
    let mut by_template: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for m in &means {
        by_template.entry(m.template_id.as_str()).or_default().push(m.mean);
    }
    let deltas = by_template
        .into_iter()
        .map(|(t, ms)| {
            let hi = ms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = ms.iter().copied().fold(f64::INFINITY, f64::min);
            let delta = if ms.len() < 2 { 0.0 } else { hi - lo };
            TemplateDelta {
                template_id: t.to_string(),
                delta,
                flagged: delta > threshold,
            }
        })
        .collect();
    InstabilityReport {
        system: system.to_string(),
        means,
        deltas,
        missing,
    }
}

/// Mean score per (template, gender) and the per-template gender gap.
pub fn instability_matrix(
    system: &dyn SentimentScorer,
    sentences: &[Sentence],
    threshold: f64,
) -> InstabilityReport {
    instability_from_scores(system.id(), &score_sentences(system, sentences), threshold)
}
