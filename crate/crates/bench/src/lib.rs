//! Input generators shared by the benchmarks.

use hammer_core::{CutGraph, Distribution, Outcome};

/// `unique` distinct `width`-bit outcomes with weights drawn from a fixed
/// linear congruential sequence.
pub fn synthetic_distribution(width: usize, unique: usize) -> Distribution {
    assert!(width <= 64 && (width == 64 || unique as u64 <= 1u64 << width));
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state >> 11
    };
    let mask = if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    let mut seen = std::collections::BTreeSet::new();
    while seen.len() < unique {
        seen.insert(next() & mask);
    }
    let counts = seen.into_iter().map(|v| {
        let outcome = Outcome::from_u64(v, width).expect("width checked");
        (outcome, 1 + next() % 50)
    });
    Distribution::from_outcome_counts(width, counts).expect("widths agree")
}

/// Unit-weight cycle on `n` vertices with chords `i -> i + 2`.
pub fn chorded_cycle(n: usize) -> CutGraph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).step_by(2).map(|i| (i, (i + 2) % n)));
    edges.sort();
    edges.dedup();
    CutGraph::unweighted(n, &edges).expect("valid graph")
}
