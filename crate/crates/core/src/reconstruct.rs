//! Hamming reconstruction.
//!
//! Three passes over the support of the (normalized) input:
//!
//! 1. aggregate CHS over all ordered pairs within the distance cutoff;
//! 2. per-distance weights `W[d] = 1 / CHS[d]` (zero where CHS is zero);
//! 3. each outcome's score starts at its own probability and gains
//!    `W[d] * p(y)` from every neighbour `y` within the cutoff that has a
//!    strictly lower probability; the output is `score * p(x)`, renormalized.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::analysis::{distance_cutoff, global_chs_packed, ChsVector};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::outcome::{check_width, hamming_distance, Outcome};
use crate::packed::PackedSupport;

/// Per-distance neighbour weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    width: usize,
    values: Vec<f64>,
}

impl WeightVector {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Reciprocal of each CHS entry; entries with zero strength get weight zero.
pub fn weights_from_chs(chs: &ChsVector) -> WeightVector {
    let values = chs
        .values()
        .iter()
        .map(|&c| if c > 0.0 { 1.0 / c } else { 0.0 })
        .collect();
    WeightVector {
        width: chs.width(),
        values,
    }
}

/// Filtered neighbourhood score of a single outcome of the support.
pub fn neighborhood_score(dist: &Distribution, x: &Outcome, weights: &WeightVector) -> Result<f64> {
    check_width(dist.width(), x.width())?;
    check_width(dist.width(), weights.width())?;
    let dist = dist.normalize()?;
    if !dist.contains(x) {
        return Err(Error::NotInSupport(x.to_string()));
    }
    let px = dist.get(x);
    let cutoff = distance_cutoff(dist.width());
    let mut score = px;
    for (y, py) in dist.iter() {
        let d = hamming_distance(x, y)?;
        if d <= cutoff && px > py {
            score += weights.values[d] * py;
        }
    }
    Ok(score)
}

/// Result of one reconstruction together with its intermediate vectors and
/// operation counters.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport {
    pub output: Distribution,
    pub chs: ChsVector,
    pub weights: WeightVector,
    /// Ordered pairs visited while building the CHS.
    pub pair_evaluations_step1: u64,
    /// Ordered pairs visited while scoring.
    pub pair_evaluations_step3: u64,
    /// Divisions performed by the final renormalization.
    pub normalization_steps: u64,
}

impl ReconstructionReport {
    pub fn to_json_value(&self) -> Value {
        json!({
            "width": self.output.width(),
            "unique_outcomes": self.output.len(),
            "chs": self.chs.values(),
            "weights": self.weights.values(),
            "counters": {
                "pair_evaluations_step1": self.pair_evaluations_step1,
                "pair_evaluations_step3": self.pair_evaluations_step3,
                "normalization_steps": self.normalization_steps,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HammerOptions {
    /// Spread the outer loops over the rayon pool. Output is bitwise
    /// identical to the sequential run.
    pub parallel: bool,
}

/// Runs the reconstruction single-threaded.
pub fn hammer(input: &Distribution) -> Result<ReconstructionReport> {
    hammer_with(input, HammerOptions::default())
}

pub fn hammer_with(input: &Distribution, options: HammerOptions) -> Result<ReconstructionReport> {
    if input.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    let dist = input.normalize()?;
    let width = dist.width();
    let packed = PackedSupport::new(&dist);
    let n = packed.len();

    let chs = global_chs_packed(&packed, width, options.parallel);
    let weights = weights_from_chs(&chs);

    // zero weight past the cutoff; adding an exact 0.0 leaves the score
    // bitwise unchanged
    let mut w = vec![0.0; width + 1];
    w[..weights.len()].copy_from_slice(weights.values());
    let probs = &packed.probs;
    let score_row = |i: usize| {
        let px = probs[i];
        let mut score = px;
        packed.for_each_distance(i, |j, d| {
            let py = probs[j];
            score += if px > py { w[d] * py } else { 0.0 };
        });
        score * px
    };
    let unnormalized: Vec<f64> = if options.parallel {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(score_row).collect()
    } else {
        (0..n).map(score_row).collect()
    };

    let entries: BTreeMap<Outcome, f64> = dist.outcomes().cloned().zip(unnormalized).collect();
    let output = Distribution::normalized_from_weights(width, entries);

    let pairs = (n as u64) * (n as u64);
    Ok(ReconstructionReport {
        output,
        chs,
        weights,
        pair_evaluations_step1: pairs,
        pair_evaluations_step3: pairs,
        normalization_steps: n as u64,
    })
}
