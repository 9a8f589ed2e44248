//! Test-only helpers: a literal transliteration of the reconstruction
//! pseudocode over text bitstrings, and proptest strategies.

#![allow(dead_code)]

use std::collections::HashMap;

use hammer_core::{Distribution, Outcome};
use proptest::prelude::*;

fn text_distance(a: &str, b: &str) -> usize {
    a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count()
}

/// Three nested loops exactly as written: CHS over all ordered pairs with
/// `d < n/2`, `W[d] = 1/CHS[d]`, filtered scores seeded with `P[x]`, and a
/// final division by the total.
pub fn naive_hammer(input: &[(String, f64)]) -> HashMap<String, f64> {
    let total: f64 = input.iter().map(|e| e.1).sum();
    let p: Vec<(String, f64)> = input.iter().map(|(k, w)| (k.clone(), w / total)).collect();
    let n = p[0].0.len();
    let half = n as f64 / 2.0;
    let bins = n.div_ceil(2);

    let mut chs = vec![0.0; bins];
    for (x, _) in &p {
        for (y, py) in &p {
            let d = text_distance(x, y);
            if (d as f64) < half {
                chs[d] += py;
            }
        }
    }
    let mut w = vec![0.0; bins];
    for d in 0..bins {
        if chs[d] > 0.0 {
            w[d] = 1.0 / chs[d];
        }
    }
    let mut out = HashMap::new();
    for (x, px) in &p {
        let mut score = *px;
        for (y, py) in &p {
            let d = text_distance(x, y);
            if (d as f64) < half && px > py {
                score += w[d] * py;
            }
        }
        out.insert(x.clone(), score * px);
    }
    let z: f64 = out.values().sum();
    out.values_mut().for_each(|v| *v /= z);
    out
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Distinct `width`-bit strings with positive integer weights.
pub fn weighted_support(width: usize, max_len: usize) -> impl Strategy<Value = Vec<(String, u32)>> {
    proptest::collection::btree_map(
        proptest::collection::vec(any::<bool>(), width).prop_map(|b| bits_to_string(&b)),
        1u32..1000,
        1..=max_len,
    )
    .prop_map(|m| m.into_iter().collect())
}

/// Width in `widths`, then a support of up to `max_len` outcomes.
pub fn arb_counts(
    widths: std::ops::RangeInclusive<usize>,
    max_len: usize,
) -> impl Strategy<Value = Vec<(String, u32)>> {
    widths.prop_flat_map(move |w| weighted_support(w, max_len))
}

pub fn counts_dist(raw: &[(String, u32)]) -> Distribution {
    Distribution::from_counts(raw.iter().map(|(k, c)| (k.as_str(), *c as i64))).unwrap()
}

pub fn probs_dist(raw: &[(String, u32)]) -> Distribution {
    counts_dist(raw).normalize().unwrap()
}

pub fn o(s: &str) -> Outcome {
    s.parse().unwrap()
}

pub fn all_outcomes(n: usize) -> Vec<Outcome> {
    (0..1u64 << n)
        .map(|v| Outcome::from_u64(v, n).unwrap())
        .collect()
}

pub fn uniform(n: usize) -> Distribution {
    let p = 1.0 / (1u64 << n) as f64;
    Distribution::from_probabilities(n, all_outcomes(n).into_iter().map(|x| (x, p))).unwrap()
}

pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
