use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::AuditError;

/// Confidence levels and their weights in the weighted rejection score.
pub const CONFIDENCE_LEVELS: [f64; 3] = [0.95, 0.70, 0.60];
pub const WRS_WEIGHTS: [f64; 3] = [1.0, 0.8, 0.6];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WelchResult {
    pub t: f64,
    pub df: f64,
    /// Two-sided.
    pub p_value: f64,
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    // running mean, so constant samples have exactly zero variance
    let mean = xs
        .iter()
        .enumerate()
        .fold(0.0, |m, (i, x)| m + (x - m) / (i + 1) as f64);
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Two-sided unequal-variance t-test.
pub fn welch(a: &[f64], b: &[f64]) -> Result<WelchResult, AuditError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(AuditError::GroupTooSmall(a.len().min(b.len())));
    }
    let (ma, va) = mean_var(a);
    let (mb, vb) = mean_var(b);
    let (sa, sb) = (va / a.len() as f64, vb / b.len() as f64);
    let se2 = sa + sb;
    if se2 == 0.0 {
        let p_value = if ma == mb { 1.0 } else { 0.0 };
        let t = if ma == mb { 0.0 } else { f64::INFINITY.copysign(ma - mb) };
        return Ok(WelchResult { t, df: f64::INFINITY, p_value });
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / (sa * sa / (a.len() as f64 - 1.0) + sb * sb / (b.len() as f64 - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| AuditError::Statistics(e.to_string()))?;
    let p_value = (2.0 * dist.sf(t.abs())).min(1.0);
    Ok(WelchResult { t, df, p_value })
}

/// Whether the null of equal means is rejected at `confidence`.
pub fn welch_t_test(a: &[f64], b: &[f64], confidence: f64) -> Result<bool, AuditError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(AuditError::BadConfidence(confidence));
    }
    Ok(welch(a, b)?.p_value < 1.0 - confidence)
}

/// Rejection counts at 95%, 70% and 60%.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectionCounts(pub [u32; 3]);

/// Σ w_i x_i with weights 1, 0.8, 0.6.
pub fn wrs(counts: RejectionCounts) -> f64 {
    counts
        .0
        .iter()
        .zip(WRS_WEIGHTS)
        .map(|(&x, w)| w * x as f64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrs_values() {
        assert_eq!(wrs(RejectionCounts([0, 0, 0])), 0.0);
        assert!((wrs(RejectionCounts([2, 1, 1])) - 3.4).abs() < 1e-12);
        assert_eq!(wrs(RejectionCounts([1, 0, 0])), 1.0);
    }

    #[test]
    fn degenerate_groups() {
        let a = [0.3, 0.3, 0.3];
        for c in CONFIDENCE_LEVELS {
            assert!(!welch_t_test(&a, &a, c).unwrap());
            assert!(welch_t_test(&[0.2, 0.2], &[-0.2, -0.2], c).unwrap());
        }
        assert_eq!(welch_t_test(&[1.0], &a, 0.95), Err(AuditError::GroupTooSmall(1)));
        assert!(welch_t_test(&a, &a, 1.5).is_err());
    }
}
