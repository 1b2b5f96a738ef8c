use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::AuditError;

/// Discretized sentiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YClass {
    Negative,
    Neutral,
    Positive,
}

impl YClass {
    pub const ALL: [YClass; 3] = [YClass::Negative, YClass::Neutral, YClass::Positive];

    /// Same cut points as the dialogue scorer: +-0.05.
    pub fn from_score(score: f64) -> YClass {
        if score >= 0.05 {
            YClass::Positive
        } else if score <= -0.05 {
            YClass::Negative
        } else {
            YClass::Neutral
        }
    }
}

/// Numeric value of each class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YValues {
    pub negative: f64,
    pub neutral: f64,
    pub positive: f64,
}

impl Default for YValues {
    fn default() -> Self {
        YValues {
            negative: 0.0,
            neutral: 0.5,
            positive: 1.0,
        }
    }
}

impl YValues {
    pub fn of(&self, y: YClass) -> f64 {
        match y {
            YClass::Negative => self.negative,
            YClass::Neutral => self.neutral,
            YClass::Positive => self.positive,
        }
    }
}

/// Joint counts of (emotion word X, protected attribute Z, sentiment class Y).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ContingencyData {
    counts: BTreeMap<(String, String, YClass), u64>,
}

impl ContingencyData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: &str, z: &str, y: YClass, n: u64) {
        if n > 0 {
            *self.counts.entry((x.to_string(), z.to_string(), y)).or_default() += n;
        }
    }

    pub fn from_records<'a>(records: impl IntoIterator<Item = (&'a str, &'a str, YClass)>) -> Self {
        let mut data = ContingencyData::new();
        for (x, z, y) in records {
            data.add(x, z, y, 1);
        }
        data
    }

    pub fn count(&self, x: &str, z: &str, y: YClass) -> u64 {
        self.counts
            .get(&(x.to_string(), z.to_string(), y))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn xs(&self) -> Vec<String> {
        self.counts.keys().map(|k| k.0.clone()).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn zs(&self) -> Vec<String> {
        self.counts.keys().map(|k| k.1.clone()).collect::<BTreeSet<_>>().into_iter().collect()
    }

    fn n_xz(&self, x: &str, z: &str) -> u64 {
        YClass::ALL.iter().map(|&y| self.count(x, z, y)).sum()
    }

    fn n_z(&self, z: &str) -> u64 {
        self.counts.iter().filter(|(k, _)| k.1 == z).map(|(_, n)| n).sum()
    }

    fn n_x(&self, x: &str) -> u64 {
        self.counts.iter().filter(|(k, _)| k.0 == x).map(|(_, n)| n).sum()
    }

    /// Mean Y within the (x, z) cell.
    fn cell_mean(&self, x: &str, z: &str, y_values: &YValues) -> f64 {
        let n = self.n_xz(x, z) as f64;
        YClass::ALL
            .iter()
            .map(|&y| y_values.of(y) * (self.count(x, z, y) as f64 / n))
            .sum()
    }

    /// Per z: (mean Y in the (x, z) cell, P(Z=z), P(Z=z | X=x)).
    fn strata(&self, x: &str, y_values: &YValues) -> Result<Vec<(f64, f64, f64)>, AuditError> {
        let total = self.total();
        let nx = self.n_x(x);
        let mut out = Vec::new();
        for z in self.zs() {
            let nxz = self.n_xz(x, &z);
            if nxz == 0 {
                return Err(AuditError::Positivity { x: x.to_string(), z });
            }
            out.push((
                self.cell_mean(x, &z, y_values),
                self.n_z(&z) as f64 / total as f64,
                nxz as f64 / nx as f64,
            ));
        }
        Ok(out)
    }
}

/// E[Y | X = x].
pub fn conditional_expectation(data: &ContingencyData, x: &str, y_values: &YValues) -> Result<f64, AuditError> {
    let nx = data.n_x(x);
    if nx == 0 {
        return Err(AuditError::UnknownInput(x.to_string()));
    }
    Ok(YClass::ALL
        .iter()
        .map(|&y| {
            let n: u64 = data.zs().iter().map(|z| data.count(x, z, y)).sum();
            y_values.of(y) * (n as f64 / nx as f64)
        })
        .sum())
}

/// E[Y | do(X = x)] by backdoor adjustment over Z.
pub fn do_expectation(data: &ContingencyData, x: &str, y_values: &YValues) -> Result<f64, AuditError> {
    if data.n_x(x) == 0 {
        return Err(AuditError::UnknownInput(x.to_string()));
    }
    Ok(data.strata(x, y_values)?.iter().map(|(m, pz, _)| m * pz).sum())
}

/// |E[Y|do(x)] - E[Y|x]| / E[Y|x] * 100.
pub fn die_percent(data: &ContingencyData, x: &str, y_values: &YValues) -> Result<f64, AuditError> {
    if data.n_x(x) == 0 {
        return Err(AuditError::UnknownInput(x.to_string()));
    }
    let strata = data.strata(x, y_values)?;
    let conditional: f64 = strata.iter().map(|(m, _, pzx)| m * pzx).sum();
    if conditional == 0.0 {
        return Err(AuditError::UndefinedDie(x.to_string()));
    }
    // Differences of the two weightings, so that Z independent of X gives
    // exactly zero: equal ratios of integers divide to equal floats.
    let gap: f64 = strata.iter().map(|(m, pz, pzx)| m * (pz - pzx)).sum();
    Ok(gap.abs() / conditional * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(w1f: u64) -> ContingencyData {
        let mut d = ContingencyData::new();
        d.add("w1", "f", YClass::Positive, 8 * w1f);
        d.add("w1", "f", YClass::Negative, 2 * w1f);
        d.add("w1", "m", YClass::Positive, 2);
        d.add("w1", "m", YClass::Negative, 8);
        for z in ["f", "m"] {
            for y in [YClass::Positive, YClass::Negative] {
                d.add("w2", z, y, 5);
            }
        }
        d
    }

    #[test]
    fn hand_built_backdoor() {
        let yv = YValues::default();
        let d = table(1);
        assert!((do_expectation(&d, "w1", &yv).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(die_percent(&d, "w1", &yv).unwrap(), 0.0);
        // tripling the (w1, f) cells confounds X with Z
        let d3 = table(3);
        let c = conditional_expectation(&d3, "w1", &yv).unwrap();
        assert!((c - (24.0 + 2.0) / 40.0).abs() < 1e-12);
        let p_f = 40.0 / 60.0;
        let expected_do = p_f * 0.8 + (1.0 - p_f) * 0.2;
        assert!((do_expectation(&d3, "w1", &yv).unwrap() - expected_do).abs() < 1e-12);
        let die = die_percent(&d3, "w1", &yv).unwrap();
        assert!((die - (expected_do - c).abs() / c * 100.0).abs() < 1e-9);
    }

    #[test]
    fn errors() {
        let yv = YValues::default();
        let mut d = ContingencyData::new();
        d.add("w1", "f", YClass::Negative, 3);
        d.add("w2", "m", YClass::Positive, 3);
        assert_eq!(
            do_expectation(&d, "w1", &yv),
            Err(AuditError::Positivity { x: "w1".into(), z: "m".into() })
        );
        let mut single = ContingencyData::new();
        single.add("w1", "f", YClass::Negative, 3);
        assert_eq!(die_percent(&single, "w1", &yv), Err(AuditError::UndefinedDie("w1".into())));
        assert_eq!(die_percent(&single, "nope", &yv), Err(AuditError::UnknownInput("nope".into())));
    }
}
