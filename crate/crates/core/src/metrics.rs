//! Figures of merit against known correct outcomes: PST, IST and TVD.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::outcome::{check_width, Outcome};

fn check_correct(dist: &Distribution, correct: &[Outcome]) -> Result<()> {
    if correct.is_empty() {
        return Err(Error::EmptyReferenceSet);
    }
    for c in correct {
        check_width(dist.width(), c.width())?;
    }
    Ok(())
}

/// Probability of a successful trial: total normalized mass on `correct`.
pub fn pst(dist: &Distribution, correct: &[Outcome]) -> Result<f64> {
    check_correct(dist, correct)?;
    let dist = dist.normalize()?;
    let unique: BTreeSet<&Outcome> = correct.iter().collect();
    Ok(unique.into_iter().map(|c| dist.get(c)).sum())
}

/// Inference strength: best correct probability over best incorrect
/// probability. `f64::INFINITY` when no incorrect outcome was observed.
pub fn ist(dist: &Distribution, correct: &[Outcome]) -> Result<f64> {
    check_correct(dist, correct)?;
    let dist = dist.normalize()?;
    let correct: BTreeSet<&Outcome> = correct.iter().collect();
    let mut best_correct = 0.0f64;
    let mut best_incorrect = 0.0f64;
    for (x, p) in dist.iter() {
        if correct.contains(x) {
            best_correct = best_correct.max(p);
        } else {
            best_incorrect = best_incorrect.max(p);
        }
    }
    if best_incorrect == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(best_correct / best_incorrect)
}

/// Total variational distance, half the L1 distance over the union of
/// supports.
pub fn tvd(p: &Distribution, q: &Distribution) -> Result<f64> {
    check_width(p.width(), q.width())?;
    let p = p.normalize()?;
    let q = q.normalize()?;
    let union: BTreeSet<&Outcome> = p.outcomes().chain(q.outcomes()).collect();
    let l1: f64 = union.into_iter().map(|x| (p.get(x) - q.get(x)).abs()).sum();
    Ok((0.5 * l1).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeritReport {
    pub pst: f64,
    pub ist: f64,
    pub tvd: Option<f64>,
}

impl MeritReport {
    pub fn evaluate(
        dist: &Distribution,
        correct: &[Outcome],
        reference: Option<&Distribution>,
    ) -> Result<Self> {
        Ok(MeritReport {
            pst: pst(dist, correct)?,
            ist: ist(dist, correct)?,
            tvd: reference.map(|r| tvd(dist, r)).transpose()?,
        })
    }

    /// Infinite IST is written as `null` next to `"ist_infinite": true`.
    pub fn to_json_value(&self) -> Value {
        let mut v = json!({
            "pst": self.pst,
            "ist": finite_or_null(self.ist),
            "ist_infinite": self.ist.is_infinite(),
        });
        if let Some(t) = self.tvd {
            v["tvd"] = json!(t);
        }
        v
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

/// Before/after comparison in improvement-factor form: PST and IST as
/// after/before, TVD as before/after, so values above one are better.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Improvement {
    pub before: MeritReport,
    pub after: MeritReport,
    pub pst_ratio: f64,
    pub ist_ratio: f64,
    pub tvd_ratio: Option<f64>,
}

impl Improvement {
    pub fn new(before: MeritReport, after: MeritReport) -> Self {
        let tvd_ratio = match (before.tvd, after.tvd) {
            (Some(b), Some(a)) => Some(b / a),
            _ => None,
        };
        Improvement {
            before,
            after,
            pst_ratio: after.pst / before.pst,
            ist_ratio: after.ist / before.ist,
            tvd_ratio,
        }
    }

    /// Undefined ratios (0/0, inf/inf) are written as `null`.
    pub fn to_json_value(&self) -> Value {
        let ratio = |x: f64| {
            if x.is_nan() {
                Value::Null
            } else {
                finite_or_null(x)
            }
        };
        let mut v = json!({
            "before": self.before.to_json_value(),
            "after": self.after.to_json_value(),
            "pst_ratio": ratio(self.pst_ratio),
            "ist_ratio": ratio(self.ist_ratio),
        });
        if let Some(t) = self.tvd_ratio {
            v["tvd_ratio"] = ratio(t);
        }
        v
    }
}
