mod common;

use common::*;
use hammer_core::{
    build_spectrum, chs_for_outcome, ehd, global_chs, hamming_distance, min_distance_to_set,
    Distribution, EhdMode, Outcome,
};
use proptest::prelude::*;

fn arb_triple(width: usize) -> impl Strategy<Value = (Outcome, Outcome, Outcome)> {
    let one = proptest::collection::vec(any::<bool>(), width)
        .prop_map(|b| Outcome::from_bits(&b).unwrap());
    (one.clone(), one.clone(), one)
}

proptest! {
    #[test]
    fn hamming_is_a_metric((a, b, c) in (1usize..=130).prop_flat_map(arb_triple)) {
        let ab = hamming_distance(&a, &b).unwrap();
        prop_assert_eq!(ab, hamming_distance(&b, &a).unwrap());
        prop_assert_eq!(ab == 0, a == b);
        prop_assert!(ab <= a.width());
        let ac = hamming_distance(&a, &c).unwrap();
        let bc = hamming_distance(&b, &c).unwrap();
        prop_assert!(ac <= ab + bc);
        let text = a.to_string().chars().zip(b.to_string().chars()).filter(|(x, y)| x != y).count();
        prop_assert_eq!(ab, text);
    }

    #[test]
    fn from_counts_total_is_exact(raw in arb_counts(1..=20, 40)) {
        let d = counts_dist(&raw);
        let expected: u64 = raw.iter().map(|e| e.1 as u64).sum();
        prop_assert_eq!(d.total_count(), Some(expected));
    }

    #[test]
    fn normalize_is_idempotent_and_order_preserving(raw in arb_counts(1..=12, 40)) {
        let counts = counts_dist(&raw);
        let p = counts.normalize().unwrap();
        prop_assert_eq!(&p.normalize().unwrap(), &p);
        prop_assert!(counts.outcomes().eq(p.outcomes()));
        let cs: Vec<f64> = counts.iter().map(|e| e.1).collect();
        let ps: Vec<f64> = p.iter().map(|e| e.1).collect();
        for i in 0..cs.len() {
            for j in 0..cs.len() {
                prop_assert_eq!(cs[i] < cs[j], ps[i] < ps[j]);
            }
        }
    }

    #[test]
    fn spectrum_conserves_mass(raw in arb_counts(1..=12, 40), r in 0usize..4) {
        let d = probs_dist(&raw);
        let outcomes: Vec<Outcome> = d.outcomes().cloned().collect();
        let reference: Vec<Outcome> = outcomes.iter().take(r + 1).map(|x| x.complement()).collect();
        let s = build_spectrum(&d, &reference).unwrap();
        prop_assert!((s.total() - d.total()).abs() <= 1e-12);
        let mut seen = 0;
        for (k, bin) in s.bins().iter().enumerate() {
            for (x, _) in bin {
                prop_assert_eq!(min_distance_to_set(x, &reference).unwrap(), k);
                seen += 1;
            }
        }
        prop_assert_eq!(seen, d.len());
    }

    #[test]
    fn global_chs_is_weighted_sum_of_outcome_chs(raw in arb_counts(1..=12, 40)) {
        // every x in the support contributes its own CHS once
        let d = probs_dist(&raw);
        let global = global_chs(&d).unwrap();
        let mut summed = vec![0.0; global.len()];
        for x in d.outcomes() {
            for (s, v) in summed.iter_mut().zip(chs_for_outcome(&d, x).unwrap().values()) {
                *s += v;
            }
        }
        for (a, b) in global.values().iter().zip(&summed) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        for x in d.outcomes() {
            prop_assert!(chs_for_outcome(&d, x).unwrap().values().iter().sum::<f64>() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn ehd_is_permutation_invariant(
        (raw, perm) in (2usize..=10).prop_flat_map(|w| (weighted_support(w, 30), arb_permutation(w))),
        raw_mode in any::<bool>(),
    ) {
        let mode = if raw_mode { EhdMode::Raw } else { EhdMode::Normalized };
        let d = probs_dist(&raw);
        let reference = vec![d.outcomes().next().unwrap().clone()];
        let pd = d.map_outcomes(|x| x.permuted(&perm)).unwrap();
        let pr: Vec<Outcome> = reference.iter().map(|x| x.permuted(&perm)).collect();
        let a = ehd(&d, &reference, mode).unwrap();
        let b = ehd(&pd, &pr, mode).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
        prop_assert!((0.0..=d.width() as f64).contains(&a));
    }
}

#[test]
fn ehd_uniform_closed_form() {
    for n in [4usize, 6, 8] {
        let d = uniform(n);
        let r = Outcome::zeros(n).unwrap();
        let expected = n as f64 * 2f64.powi(n as i32 - 1) / (2f64.powi(n as i32) - 1.0);
        let got = ehd(&d, &[r], EhdMode::Normalized).unwrap();
        assert!((got - expected).abs() < 1e-9, "n={n}: {got} vs {expected}");
    }
    // and it creeps toward n/2 from above
    let gaps: Vec<f64> = [4usize, 6, 8, 10]
        .iter()
        .map(|&n| {
            ehd(
                &uniform(n),
                &[Outcome::zeros(n).unwrap()],
                EhdMode::Normalized,
            )
            .unwrap()
                - n as f64 / 2.0
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0] && w[1] > 0.0));
}

#[test]
fn spectrum_of_uniform_follows_binomial() {
    let n = 6;
    let s = build_spectrum(&uniform(n), &[Outcome::zeros(n).unwrap()]).unwrap();
    let binom = [1, 6, 15, 20, 15, 6, 1];
    for (bin, count) in s.bins().iter().zip(binom) {
        assert_eq!(bin.len(), count);
    }
}

#[test]
fn counts_input_is_normalized_before_diagnostics() {
    let counts = Distribution::from_counts([("111", 2), ("110", 1), ("000", 1)]).unwrap();
    assert_eq!(ehd(&counts, &[o("111")], EhdMode::Normalized).unwrap(), 2.0);
    assert_eq!(
        chs_for_outcome(&counts, &o("111")).unwrap().values(),
        &[0.5, 0.25]
    );
}
