//! Sparse outcome distributions and the counts/probability JSON formats.

use std::collections::BTreeMap;

use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::outcome::{check_width, Outcome};

/// Tolerance on the total of a probability distribution.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// Integer trial counts, held exactly in the `f64` weights.
    Counts,
    Probabilities,
}

/// A sparse map from outcome to positive weight.
///
/// Keys all share one width and zero weights are never stored, so `len()` is
/// the number of distinct observed outcomes. Iteration is in ascending
/// outcome order.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    width: usize,
    entries: BTreeMap<Outcome, f64>,
    kind: WeightKind,
}

impl Distribution {
    /// Parses a raw bitstring -> count map. Zero counts are dropped.
    pub fn from_counts<I, K>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, i64)>,
        K: AsRef<str>,
    {
        let mut width = None;
        let mut entries = BTreeMap::new();
        for (key, count) in raw {
            let key = key.as_ref();
            let outcome: Outcome = key.parse()?;
            match width {
                None => width = Some(outcome.width()),
                Some(w) if w != outcome.width() => {
                    return Err(Error::invalid_key(
                        key,
                        format!("length {} differs from {w}", outcome.width()),
                    ))
                }
                _ => {}
            }
            if count < 0 {
                return Err(Error::invalid_key(key, format!("negative count {count}")));
            }
            if count > 0 {
                *entries.entry(outcome).or_insert(0.0) += count as f64;
            }
        }
        let width = width.ok_or(Error::EmptyDistribution)?;
        Ok(Distribution {
            width,
            entries,
            kind: WeightKind::Counts,
        })
    }

    /// Counts keyed by already-parsed outcomes; repeated keys accumulate.
    pub fn from_outcome_counts<I>(width: usize, counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Outcome, u64)>,
    {
        let mut entries = BTreeMap::new();
        for (outcome, count) in counts {
            check_width(width, outcome.width())?;
            if count > 0 {
                *entries.entry(outcome).or_insert(0.0) += count as f64;
            }
        }
        Ok(Distribution {
            width,
            entries,
            kind: WeightKind::Counts,
        })
    }

    /// A probability distribution. Weights must be finite and non-negative
    /// and sum to 1 within [`NORMALIZATION_TOLERANCE`].
    pub fn from_probabilities<I>(width: usize, probs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Outcome, f64)>,
    {
        let dist = Self::from_weights(width, probs, WeightKind::Probabilities)?;
        let total = dist.total();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Parse(format!(
                "probabilities sum to {total}, expected 1 within {NORMALIZATION_TOLERANCE:e}"
            )));
        }
        Ok(dist)
    }

    fn from_weights<I>(width: usize, weights: I, kind: WeightKind) -> Result<Self>
    where
        I: IntoIterator<Item = (Outcome, f64)>,
    {
        let mut entries = BTreeMap::new();
        for (outcome, w) in weights {
            check_width(width, outcome.width())?;
            if !w.is_finite() || w < 0.0 {
                return Err(Error::invalid_key(
                    &outcome.to_string(),
                    format!("weight {w} is not a finite non-negative number"),
                ));
            }
            if w > 0.0 {
                *entries.entry(outcome).or_insert(0.0) += w;
            }
        }
        Ok(Distribution {
            width,
            entries,
            kind,
        })
    }

    /// Scales the positive `weights` (already checked by the caller) to sum
    /// to one.
    pub(crate) fn normalized_from_weights(width: usize, entries: BTreeMap<Outcome, f64>) -> Self {
        let total: f64 = entries.values().sum();
        let entries = entries.into_iter().map(|(k, w)| (k, w / total)).collect();
        Distribution {
            width,
            entries,
            kind: WeightKind::Probabilities,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    /// Number of distinct outcomes with positive weight.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Weight of `x`, zero when unobserved.
    pub fn get(&self, x: &Outcome) -> f64 {
        self.entries.get(x).copied().unwrap_or(0.0)
    }

    pub fn contains(&self, x: &Outcome) -> bool {
        self.entries.contains_key(x)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&Outcome, f64)> + '_ {
        self.entries.iter().map(|(k, &w)| (k, w))
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &Outcome> + '_ {
        self.entries.keys()
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// Exact integer total for counts distributions.
    pub fn total_count(&self) -> Option<u64> {
        match self.kind {
            WeightKind::Counts => Some(self.entries.values().map(|&w| w as u64).sum()),
            WeightKind::Probabilities => None,
        }
    }

    /// Divides every weight by the total.
    ///
    /// A distribution that is already of kind `Probabilities` is returned
    /// unchanged, so normalizing twice is exactly the identity.
    pub fn normalize(&self) -> Result<Distribution> {
        if self.kind == WeightKind::Probabilities {
            return Ok(self.clone());
        }
        let total = self.total();
        if self.is_empty() || total <= 0.0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(Self::normalized_from_weights(
            self.width,
            self.entries.clone(),
        ))
    }

    /// Applies `f` to every outcome, summing weights of keys that collide.
    pub fn map_outcomes<F>(&self, mut f: F) -> Result<Distribution>
    where
        F: FnMut(&Outcome) -> Outcome,
    {
        let mut width = None;
        let mut entries = BTreeMap::new();
        for (k, &w) in &self.entries {
            let mapped = f(k);
            let w_new = *width.get_or_insert(mapped.width());
            check_width(w_new, mapped.width())?;
            *entries.entry(mapped).or_insert(0.0) += w;
        }
        Ok(Distribution {
            width: width.unwrap_or(self.width),
            entries,
            kind: self.kind,
        })
    }

    /// Parses a counts or probability JSON object.
    ///
    /// If every value is a JSON integer the result is a counts distribution;
    /// otherwise all values are read as probabilities and must sum to one.
    pub fn from_json_str(text: &str) -> Result<Distribution> {
        let value: Value = serde_json::from_str(text)?;
        let Value::Object(map) = value else {
            return Err(Error::Parse(
                "expected a JSON object mapping bitstrings to weights".into(),
            ));
        };
        if map.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let all_integers = map.values().all(|v| v.is_i64() || v.is_u64());
        if all_integers {
            let mut raw = Vec::with_capacity(map.len());
            for (k, v) in &map {
                let count = match v.as_i64() {
                    Some(c) => c,
                    None => {
                        return Err(Error::invalid_key(k, format!("count {v} is out of range")))
                    }
                };
                raw.push((k.as_str(), count));
            }
            return Distribution::from_counts(raw);
        }
        let mut width = None;
        let mut probs = Vec::with_capacity(map.len());
        for (k, v) in &map {
            let outcome: Outcome = k.parse()?;
            let w = *width.get_or_insert(outcome.width());
            if w != outcome.width() {
                return Err(Error::invalid_key(
                    k,
                    format!("length {} differs from {w}", outcome.width()),
                ));
            }
            let p = v
                .as_f64()
                .ok_or_else(|| Error::invalid_key(k, format!("value {v} is not a number")))?;
            probs.push((outcome, p));
        }
        Distribution::from_probabilities(width.unwrap_or(1), probs)
    }

    /// JSON object with keys in ascending outcome order. Counts are written
    /// as integers.
    pub fn to_json_value(&self) -> Value {
        let mut map = Map::new();
        for (k, w) in self.iter() {
            let value = match self.kind {
                WeightKind::Counts => Value::Number(Number::from(w as u64)),
                WeightKind::Probabilities => {
                    Value::Number(Number::from_f64(w).expect("weights are finite"))
                }
            };
            map.insert(k.to_string(), value);
        }
        Value::Object(map)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }
}
