use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::contingency::{die_percent, ContingencyData, YClass, YValues};
use crate::corpus::Sentence;
use crate::instability::{instability_from_scores, score_sentences, InstabilityReport, ScoredSentence};
use crate::rating::{rate_systems, MetricKind, RatingReport, RawScore};
use crate::scorer::SentimentScorer;
use crate::ttest::{welch_t_test, wrs, RejectionCounts, CONFIDENCE_LEVELS};
use crate::AuditError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditParams {
    pub y_values: YValues,
    pub delta_threshold: f64,
    pub tie_tolerance: f64,
}

impl Default for AuditParams {
    fn default() -> Self {
        AuditParams {
            y_values: YValues::default(),
            delta_threshold: crate::instability::DEFAULT_DELTA_THRESHOLD,
            tie_tolerance: crate::rating::DEFAULT_TIE_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DieSummary {
    /// Per emotion word; words where DIE% is undefined are listed separately.
    pub per_word: BTreeMap<String, f64>,
    pub undefined: Vec<String>,
    /// Mean over the defined words.
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WrsSummary {
    pub rejections: RejectionCounts,
    /// Data groups (templates) tested.
    pub groups: usize,
    pub skipped_groups: Vec<String>,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemAudit {
    pub system: String,
    pub instability: InstabilityReport,
    pub die: DieSummary,
    pub wrs: WrsSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub systems: Vec<SystemAudit>,
    pub die_rating: RatingReport,
    pub wrs_rating: RatingReport,
}

impl AuditReport {
    pub fn rating(&self, metric: MetricKind) -> &RatingReport {
        match metric {
            MetricKind::Die => &self.die_rating,
            MetricKind::Wrs => &self.wrs_rating,
        }
    }

    /// Per (system, template, gender) means as CSV.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), AuditError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| AuditError::Corpus(e.to_string());
        w.write_record(["system", "template_id", "gender", "mean", "count"]).map_err(io)?;
        for s in &self.systems {
            for m in &s.instability.means {
                w.write_record([
                    s.system.as_str(),
                    &m.template_id,
                    &m.gender,
                    &m.mean.to_string(),
                    &m.count.to_string(),
                ])
                .map_err(io)?;
            }
        }
        w.flush().map_err(|e| AuditError::Corpus(e.to_string()))
    }
}

pub fn contingency_from_scores(scored: &[ScoredSentence]) -> ContingencyData {
    ContingencyData::from_records(scored.iter().filter_map(|s| {
        s.score.map(|v| {
            (
                s.sentence.emotion_word.as_str(),
                s.sentence.gender.as_str(),
                YClass::from_score(v),
            )
        })
    }))
}

pub fn die_summary(data: &ContingencyData, y_values: &YValues) -> Result<DieSummary, AuditError> {
    let mut per_word = BTreeMap::new();
    let mut undefined = Vec::new();
    for x in data.xs() {
        match die_percent(data, &x, y_values) {
            Ok(v) => {
                per_word.insert(x, v);
            }
            Err(AuditError::UndefinedDie(_)) => undefined.push(x),
            Err(e) => return Err(e),
        }
    }
    let mean = if per_word.is_empty() {
        0.0
    } else {
        per_word.values().sum::<f64>() / per_word.len() as f64
    };
    Ok(DieSummary {
        per_word,
        undefined,
        mean,
    })
}

/// One Welch test per template between the first two genders (sorted), at
/// each confidence level.
pub fn wrs_summary(scored: &[ScoredSentence]) -> WrsSummary {
    let mut groups: BTreeMap<&str, BTreeMap<&str, Vec<f64>>> = BTreeMap::new();
    for s in scored {
        if let Some(v) = s.score {
            groups
                .entry(s.sentence.template_id.as_str())
                .or_default()
                .entry(s.sentence.gender.as_str())
                .or_default()
                .push(v);
        }
    }
    let mut counts = RejectionCounts::default();
    let mut tested = 0;
    let mut skipped = Vec::new();
    for (template, by_gender) in groups {
        let samples: Vec<&Vec<f64>> = by_gender.values().collect();
        if samples.len() < 2 {
            skipped.push(template.to_string());
            continue;
        }
        let mut ok = true;
        let mut rejected = [false; 3];
        for (i, c) in CONFIDENCE_LEVELS.iter().enumerate() {
            match welch_t_test(samples[0], samples[1], *c) {
                Ok(r) => rejected[i] = r,
                Err(_) => ok = false,
            }
        }
        if !ok {
            skipped.push(template.to_string());
            continue;
        }
        tested += 1;
        for i in 0..3 {
            counts.0[i] += rejected[i] as u32;
        }
    }
    WrsSummary {
        score: wrs(counts),
        rejections: counts,
        groups: tested,
        skipped_groups: skipped,
    }
}

/// Scores every sentence with every system and rates them on both metrics.
pub fn run_audit(
    sentences: &[Sentence],
    systems: &[&dyn SentimentScorer],
    params: &AuditParams,
) -> Result<AuditReport, AuditError> {
    let mut audits = Vec::new();
    for system in systems {
        let scored = score_sentences(*system, sentences);
        let data = contingency_from_scores(&scored);
        audits.push(SystemAudit {
            system: system.id().to_string(),
            instability: instability_from_scores(system.id(), &scored, params.delta_threshold),
            die: die_summary(&data, &params.y_values)?,
            wrs: wrs_summary(&scored),
        });
    }
    let raw = |metric: MetricKind| -> Vec<RawScore> {
        audits
            .iter()
            .map(|a| RawScore {
                system: a.system.clone(),
                metric,
                value: match metric {
                    MetricKind::Die => a.die.mean,
                    MetricKind::Wrs => a.wrs.score,
                },
            })
            .collect()
    };
    Ok(AuditReport {
        die_rating: rate_systems(&raw(MetricKind::Die), params.tie_tolerance)?,
        wrs_rating: rate_systems(&raw(MetricKind::Wrs), params.tie_tolerance)?,
        systems: audits,
    })
}
