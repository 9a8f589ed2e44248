//! Synthetic noisy outputs: ideal distributions pushed through a seeded
//! noise model of clustered correlated errors over a diffuse per-bit
//! background.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, consumed in
//! a fixed order, so a seed fully determines the result on every platform.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::outcome::{check_width, Outcome};

/// Hidden key of the 10-bit Bernstein-Vazirani fixture.
pub const BV10_KEY: &str = "1010101010";
/// Dominant one-bit-flip error of the fixture.
pub const BV10_TOP_ERROR: &str = "1010100010";
pub const BV10_KEY_PROBABILITY: f64 = 0.08;
pub const BV10_TOP_ERROR_PROBABILITY: f64 = 0.20;

/// Seed used by [`bv10_profile`].
pub const BV10_DEFAULT_SEED: u64 = 2021;

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    /// Independent flip probability of every bit on background trials.
    pub per_bit_flip: f64,
    /// `(mask, probability)`: with this probability a trial is XORed with
    /// the mask instead of receiving background flips.
    pub correlated_errors: Vec<(Outcome, f64)>,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(
        per_bit_flip: f64,
        correlated_errors: Vec<(Outcome, f64)>,
        seed: u64,
    ) -> Result<Self> {
        let model = NoiseModel {
            per_bit_flip,
            correlated_errors,
            seed,
        };
        model.validate()?;
        Ok(model)
    }

    /// Background flips only.
    pub fn uniform(per_bit_flip: f64, seed: u64) -> Result<Self> {
        Self::new(per_bit_flip, Vec::new(), seed)
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.per_bit_flip) {
            return Err(Error::InvalidArgument(format!(
                "per-bit flip probability {} must lie in [0, 1)",
                self.per_bit_flip
            )));
        }
        let mut total = 0.0;
        for (mask, q) in &self.correlated_errors {
            if !(0.0..=1.0).contains(q) {
                return Err(Error::InvalidArgument(format!(
                    "correlated error {mask} has probability {q} outside [0, 1]"
                )));
            }
            total += q;
        }
        if total > 1.0 + 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "correlated error probabilities sum to {total} > 1"
            )));
        }
        if let Some((first, _)) = self.correlated_errors.first() {
            for (mask, _) in &self.correlated_errors {
                check_width(first.width(), mask.width())?;
            }
        }
        Ok(())
    }
}

/// Noise-free output of Bernstein-Vazirani with hidden `key`.
pub fn ideal_bv(key: &Outcome) -> Distribution {
    Distribution::from_probabilities(key.width(), [(key.clone(), 1.0)])
        .expect("a delta distribution is normalized")
}

/// Draws `trials` noisy outcomes.
///
/// Per trial: one uniform draw selects an ideal outcome, one uniform draw
/// selects a correlated mask (or none), and when no mask was selected one
/// draw per bit decides its flip.
pub fn sample_noisy(ideal: &Distribution, model: &NoiseModel, trials: u64) -> Result<Distribution> {
    model.validate()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if ideal.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    let width = ideal.width();
    for (mask, _) in &model.correlated_errors {
        check_width(width, mask.width())?;
    }

    let support: Vec<&Outcome> = ideal.outcomes().collect();
    let mut cumulative = Vec::with_capacity(support.len());
    let mut acc = 0.0;
    for (_, w) in ideal.iter() {
        acc += w;
        cumulative.push(acc);
    }
    let total = acc;

    let mut mask_cumulative = Vec::with_capacity(model.correlated_errors.len());
    let mut acc = 0.0;
    for (_, q) in &model.correlated_errors {
        acc += q;
        mask_cumulative.push(acc);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let mut counts: BTreeMap<Outcome, u64> = BTreeMap::new();
    for _ in 0..trials {
        let u = rng.random::<f64>() * total;
        let idx = cumulative
            .partition_point(|&c| c <= u)
            .min(support.len() - 1);
        let mut outcome = support[idx].clone();

        let v = rng.random::<f64>();
        let mask = mask_cumulative.partition_point(|&c| c <= v);
        if mask < model.correlated_errors.len() {
            outcome = outcome.xor(&model.correlated_errors[mask].0)?;
        } else if model.per_bit_flip > 0.0 {
            for bit in 0..width {
                if rng.random::<f64>() < model.per_bit_flip {
                    outcome = outcome.with_flipped(bit);
                }
            }
        }
        *counts.entry(outcome).or_insert(0) += 1;
    }
    Distribution::from_outcome_counts(width, counts)
}

/// The BV-10 regression fixture with the default seed.
pub fn bv10_profile() -> Distribution {
    bv10_profile_seeded(BV10_DEFAULT_SEED)
}

/// Mass shared by the nine other one-bit-flip neighbours of the key.
const BV10_SINGLE_FLIP_MASS: f64 = 0.68;
/// Number of two- and three-bit-flip neighbours carrying the rest.
const BV10_MULTI_FLIP_COUNT: usize = 6;

/// Key at 0.08, the one-bit error at 0.20, and the remaining 0.72 spread
/// over seeded neighbours of the key: most of it on the other one-bit flips
/// (each below the key's probability), the rest on two- and three-bit flips.
pub fn bv10_profile_seeded(seed: u64) -> Distribution {
    let key: Outcome = BV10_KEY.parse().expect("valid key");
    let top: Outcome = BV10_TOP_ERROR.parse().expect("valid key");
    let width = key.width();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let singles: Vec<(Outcome, f64)> = (0..width)
        .map(|bit| key.with_flipped(bit))
        .filter(|x| *x != top)
        .map(|x| (x, rng.random_range(0.95..1.0)))
        .collect();

    let mut multis: BTreeMap<Outcome, f64> = BTreeMap::new();
    while multis.len() < BV10_MULTI_FLIP_COUNT {
        let distance = if rng.random::<f64>() < 0.6 { 2 } else { 3 };
        let mut neighbour = key.clone();
        let mut picked = 0;
        while picked < distance {
            let bit = rng.random_range(0..width);
            if neighbour.bit(bit) == key.bit(bit) {
                neighbour = neighbour.with_flipped(bit);
                picked += 1;
            }
        }
        let weight = rng.random_range(0.5..1.5) * 0.5f64.powi(distance);
        multis.entry(neighbour).or_insert(weight);
    }

    let multi_mass =
        1.0 - BV10_KEY_PROBABILITY - BV10_TOP_ERROR_PROBABILITY - BV10_SINGLE_FLIP_MASS;
    let single_total: f64 = singles.iter().map(|e| e.1).sum();
    let multi_total: f64 = multis.values().sum();
    let mut entries: Vec<(Outcome, f64)> = singles
        .into_iter()
        .map(|(k, w)| (k, w / single_total * BV10_SINGLE_FLIP_MASS))
        .chain(
            multis
                .into_iter()
                .map(|(k, w)| (k, w / multi_total * multi_mass)),
        )
        .collect();
    entries.push((key, BV10_KEY_PROBABILITY));
    entries.push((top, BV10_TOP_ERROR_PROBABILITY));
    Distribution::from_probabilities(width, entries).expect("fixture is normalized")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{ist, pst};

    fn o(s: &str) -> Outcome {
        s.parse().unwrap()
    }

    #[test]
    fn ideal_bv_examples() {
        for key in ["1111", "0", BV10_KEY] {
            let d = ideal_bv(&o(key));
            assert_eq!(d.len(), 1);
            assert_eq!(d.get(&o(key)), 1.0);
        }
    }

    #[test]
    fn noiseless_sampling_stays_on_support() {
        let model = NoiseModel::uniform(0.0, 7).unwrap();
        let d = sample_noisy(&ideal_bv(&o("0110")), &model, 1000).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.total_count(), Some(1000));
    }

    #[test]
    fn same_seed_same_counts() {
        let model = NoiseModel::new(0.05, vec![(o("0011000000"), 0.1)], 42).unwrap();
        let ideal = ideal_bv(&o(BV10_KEY));
        let a = sample_noisy(&ideal, &model, 5000).unwrap();
        let b = sample_noisy(&ideal, &model, 5000).unwrap();
        assert_eq!(a, b);
        let other = NoiseModel { seed: 43, ..model };
        assert_ne!(a, sample_noisy(&ideal, &other, 5000).unwrap());
    }

    #[test]
    fn per_bit_flip_mean_distance() {
        let (n, p, trials) = (10usize, 0.1, 32_768u64);
        let key = o(BV10_KEY);
        let model = NoiseModel::uniform(p, 9).unwrap();
        let d = sample_noisy(&ideal_bv(&key), &model, trials).unwrap();
        let mean: f64 = d
            .iter()
            .map(|(x, c)| c * crate::hamming_distance(x, &key).unwrap() as f64)
            .sum::<f64>()
            / trials as f64;
        let expected = n as f64 * p;
        let se = (n as f64 * p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (mean - expected).abs() < 3.0 * se,
            "mean {mean} vs {expected}"
        );
    }

    #[test]
    fn model_validation() {
        assert!(NoiseModel::uniform(1.0, 0).is_err());
        assert!(NoiseModel::uniform(-0.1, 0).is_err());
        assert!(NoiseModel::new(0.0, vec![(o("01"), 0.7), (o("10"), 0.7)], 0).is_err());
        assert!(NoiseModel::new(0.0, vec![(o("01"), 0.5), (o("100"), 0.1)], 0).is_err());
        let model = NoiseModel::new(0.0, vec![(o("01"), 0.5)], 0).unwrap();
        assert!(matches!(
            sample_noisy(&ideal_bv(&o("011")), &model, 10),
            Err(Error::WidthMismatch { .. })
        ));
        assert!(sample_noisy(&ideal_bv(&o("01")), &model, 0).is_err());
    }

    #[test]
    fn bv10_headline_values() {
        let d = bv10_profile();
        let key = o(BV10_KEY);
        assert_eq!(pst(&d, &[key.clone()]).unwrap(), 0.08);
        assert!((ist(&d, &[key]).unwrap() - 0.4).abs() <= 4.0 * f64::EPSILON);
        assert!((d.total() - 1.0).abs() < 1e-12);
        assert_eq!(d, bv10_profile());
    }
}
