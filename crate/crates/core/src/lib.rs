//! Hamming reconstruction of noisy bitstring distributions.
//!
//! Errors on near-term quantum hardware tend to land close to the correct
//! answer in Hamming space. [`hammer`] uses that structure to rescale each
//! observed outcome by a distance-weighted score of its lower-probability
//! neighbours. The remaining modules supply the diagnostics ([`analysis`]),
//! figures of merit ([`metrics`], [`qaoa`]) and synthetic inputs ([`synth`])
//! around it.

pub mod analysis;
pub mod distribution;
pub mod error;
pub mod metrics;
pub mod outcome;
mod packed;
pub mod qaoa;
pub mod reconstruct;
pub mod synth;

pub use analysis::{
    build_spectrum, chs_for_outcome, distance_cutoff, ehd, global_chs, global_chs_counted,
    profile_len, ChsVector, EhdMode, HammingSpectrum,
};
pub use distribution::{Distribution, WeightKind, NORMALIZATION_TOLERANCE};
pub use error::{Error, ErrorKind, Result};
pub use metrics::{ist, pst, tvd, Improvement, MeritReport};
pub use outcome::{hamming_distance, min_distance_to_set, Outcome};
pub use qaoa::{
    c_min, c_min_with_limit, cost_ratio, cut_cost, expected_cost, quality_curve, CurvePoint,
    CutGraph, QualityCurve, DEFAULT_BRUTE_FORCE_LIMIT,
};
pub use reconstruct::{
    hammer, hammer_with, neighborhood_score, weights_from_chs, HammerOptions, ReconstructionReport,
    WeightVector,
};
pub use synth::{bv10_profile, bv10_profile_seeded, ideal_bv, sample_noisy, NoiseModel};
