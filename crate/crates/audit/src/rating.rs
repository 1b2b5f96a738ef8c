use serde::{Deserialize, Serialize};

use crate::AuditError;

pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Die,
    Wrs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawScore {
    pub system: String,
    pub metric: MetricKind,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatedSystem {
    pub system: String,
    pub score: f64,
    /// 1 is the least biased group.
    pub rating: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatingReport {
    pub metric: MetricKind,
    pub systems: Vec<RatedSystem>,
    /// Groups of tied systems, least biased first.
    pub partial_order: Vec<Vec<String>>,
}

impl RatingReport {
    pub fn rating_of(&self, system: &str) -> Option<usize> {
        self.systems.iter().find(|s| s.system == system).map(|s| s.rating)
    }
}

/// Sorts ascending (lower is less biased); neighbors closer than
/// `tolerance` share a group, and a system's rating is its group's rank.
pub fn rate_systems(scores: &[RawScore], tolerance: f64) -> Result<RatingReport, AuditError> {
    let first = scores.first().ok_or(AuditError::NoSystems)?;
    if scores.iter().any(|s| s.metric != first.metric) {
        return Err(AuditError::MixedMetrics);
    }
    if let Some(bad) = scores.iter().find(|s| !s.value.is_finite()) {
        return Err(AuditError::BadScore(bad.system.clone()));
    }
    let mut sorted: Vec<&RawScore> = scores.iter().collect();
    sorted.sort_by(|a, b| a.value.total_cmp(&b.value).then_with(|| a.system.cmp(&b.system)));
    let mut systems = Vec::new();
    let mut partial_order: Vec<Vec<String>> = Vec::new();
    let mut prev: Option<f64> = None;
    for s in sorted {
        if prev.is_none_or(|p| s.value - p >= tolerance) {
            partial_order.push(Vec::new());
        }
        prev = Some(s.value);
        partial_order.last_mut().expect("pushed above").push(s.system.clone());
        systems.push(RatedSystem {
            system: s.system.clone(),
            score: s.value,
            rating: partial_order.len(),
        });
    }
    Ok(RatingReport {
        metric: first.metric,
        systems,
        partial_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(system: &str, value: f64) -> RawScore {
        RawScore {
            system: system.into(),
            metric: MetricKind::Die,
            value,
        }
    }

    #[test]
    fn ties_and_order() {
        let r = rate_systems(&[raw("a", 0.0), raw("b", 12.5), raw("c", 12.5)], DEFAULT_TIE_TOLERANCE).unwrap();
        let ratings: Vec<usize> = r.systems.iter().map(|s| s.rating).collect();
        assert_eq!(ratings, [1, 2, 2]);
        let shuffled = rate_systems(&[raw("c", 12.5), raw("a", 0.0), raw("b", 12.5)], DEFAULT_TIE_TOLERANCE).unwrap();
        assert_eq!(r, shuffled);
        assert_eq!(rate_systems(&[raw("x", 3.0)], 1e-6).unwrap().rating_of("x"), Some(1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(rate_systems(&[], 1e-6), Err(AuditError::NoSystems));
        let mixed = [raw("a", 1.0), RawScore { metric: MetricKind::Wrs, ..raw("b", 1.0) }];
        assert_eq!(rate_systems(&mixed, 1e-6), Err(AuditError::MixedMetrics));
    }
}
