//! Hamming-space diagnostics: spectra against a reference set, cumulative
//! Hamming strength (CHS) and expected Hamming distance (EHD).

use serde_json::{json, Value};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::outcome::{check_width, hamming_distance, min_distance_to_set, Outcome};
use crate::packed::PackedSupport;

/// Number of distance bins kept for an `n`-bit program: `ceil(n/2)`.
pub fn profile_len(width: usize) -> usize {
    width.div_ceil(2)
}

/// Largest neighbourhood distance considered, the strict `d < n/2` rule:
/// `ceil(n/2) - 1`.
pub fn distance_cutoff(width: usize) -> usize {
    profile_len(width).saturating_sub(1)
}

/// Probability mass per Hamming distance `0..=distance_cutoff(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChsVector {
    width: usize,
    values: Vec<f64>,
}

impl ChsVector {
    pub fn zeros(width: usize) -> Self {
        ChsVector {
            width,
            values: vec![0.0; profile_len(width)],
        }
    }

    /// Wraps explicit values; the length must be `ceil(width/2)` and all
    /// entries non-negative.
    pub fn from_values(width: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != profile_len(width) {
            return Err(Error::InvalidArgument(format!(
                "CHS for width {width} needs {} entries, got {}",
                profile_len(width),
                values.len()
            )));
        }
        if values.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::InvalidArgument(
                "CHS entries must be non-negative".into(),
            ));
        }
        Ok(ChsVector { width, values })
    }

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

/// Outcomes bucketed by their shortest distance to a reference set.
#[derive(Debug, Clone, PartialEq)]
pub struct HammingSpectrum {
    width: usize,
    reference: Vec<Outcome>,
    bins: Vec<Vec<(Outcome, f64)>>,
}

impl HammingSpectrum {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn reference(&self) -> &[Outcome] {
        &self.reference
    }

    /// Bins `0..=n`; each is sorted by descending probability, ties by
    /// ascending outcome.
    pub fn bins(&self) -> &[Vec<(Outcome, f64)>] {
        &self.bins
    }

    pub fn bin_totals(&self) -> Vec<f64> {
        self.bins
            .iter()
            .map(|b| b.iter().map(|(_, p)| p).sum())
            .collect()
    }

    pub fn total(&self) -> f64 {
        self.bin_totals().iter().sum()
    }

    /// `[{"d": k, "outcomes": [["<bits>", p], ...]}, ...]`
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.bins
                .iter()
                .enumerate()
                .map(|(d, bin)| {
                    let outcomes: Vec<Value> =
                        bin.iter().map(|(x, p)| json!([x.to_string(), p])).collect();
                    json!({"d": d, "outcomes": outcomes})
                })
                .collect(),
        )
    }

    /// CSV with header `d,bitstring,probability`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,bitstring,probability\n");
        for (d, bin) in self.bins.iter().enumerate() {
            for (x, p) in bin {
                out.push_str(&format!("{d},{x},{p}\n"));
            }
        }
        out
    }
}

pub fn build_spectrum(dist: &Distribution, reference: &[Outcome]) -> Result<HammingSpectrum> {
    if reference.is_empty() {
        return Err(Error::EmptyReferenceSet);
    }
    for r in reference {
        check_width(dist.width(), r.width())?;
    }
    let dist = dist.normalize()?;
    let mut bins = vec![Vec::new(); dist.width() + 1];
    for (x, p) in dist.iter() {
        let d = min_distance_to_set(x, reference)?;
        bins[d].push((x.clone(), p));
    }
    for bin in &mut bins {
        bin.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    }
    Ok(HammingSpectrum {
        width: dist.width(),
        reference: reference.to_vec(),
        bins,
    })
}

/// CHS of a single outcome: mass of the support at each distance up to the
/// cutoff, including `x` itself at distance zero.
pub fn chs_for_outcome(dist: &Distribution, x: &Outcome) -> Result<ChsVector> {
    check_width(dist.width(), x.width())?;
    let dist = dist.normalize()?;
    let mut chs = ChsVector::zeros(dist.width());
    let cutoff = distance_cutoff(dist.width());
    for (y, p) in dist.iter() {
        let d = hamming_distance(x, y)?;
        if d <= cutoff {
            chs.values[d] += p;
        }
    }
    Ok(chs)
}

/// Aggregate CHS over every outcome of the support, with the number of
/// ordered pairs evaluated (always `N^2`).
pub fn global_chs_counted(dist: &Distribution) -> Result<(ChsVector, u64)> {
    let dist = dist.normalize()?;
    let packed = PackedSupport::new(&dist);
    let chs = global_chs_packed(&packed, dist.width(), false);
    let n = packed.len() as u64;
    Ok((chs, n * n))
}

pub fn global_chs(dist: &Distribution) -> Result<ChsVector> {
    global_chs_counted(dist).map(|(chs, _)| chs)
}

/// Each row `x` accumulates its own partial vector in ascending `y` order;
/// rows are then added in ascending `x` order. The parallel path uses the
/// same reduction and is bitwise identical.
pub(crate) fn global_chs_packed(packed: &PackedSupport, width: usize, parallel: bool) -> ChsVector {
    let len = profile_len(width);
    let cutoff = distance_cutoff(width);
    // bins past the cutoff are accumulated and then dropped, which keeps
    // the inner loop free of a data-dependent branch
    let row = |i: usize| {
        let mut partial = vec![0.0; width + 1];
        packed.for_each_distance(i, |j, d| partial[d] += packed.probs[j]);
        partial.truncate(cutoff + 1);
        partial
    };
    let rows: Vec<Vec<f64>> = if parallel {
        use rayon::prelude::*;
        (0..packed.len()).into_par_iter().map(row).collect()
    } else {
        (0..packed.len()).map(row).collect()
    };
    let mut values = vec![0.0; len];
    for partial in rows {
        for (v, p) in values.iter_mut().zip(partial) {
            *v += p;
        }
    }
    ChsVector { width, values }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EhdMode {
    /// Weighted average distance of the incorrect mass.
    #[default]
    Normalized,
    /// Weighted sum, not divided by the incorrect mass.
    Raw,
}

/// Expected Hamming distance of incorrect outcomes from the reference set.
///
/// In normalized mode a distribution with no incorrect mass has EHD zero.
pub fn ehd(dist: &Distribution, reference: &[Outcome], mode: EhdMode) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::EmptyReferenceSet);
    }
    for r in reference {
        check_width(dist.width(), r.width())?;
    }
    let dist = dist.normalize()?;
    let mut weighted = 0.0;
    let mut incorrect = 0.0;
    for (x, p) in dist.iter() {
        let d = min_distance_to_set(x, reference)?;
        if d > 0 {
            weighted += p * d as f64;
            incorrect += p;
        }
    }
    Ok(match mode {
        EhdMode::Raw => weighted,
        EhdMode::Normalized if incorrect > 0.0 => weighted / incorrect,
        EhdMode::Normalized => 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Outcome {
        s.parse().unwrap()
    }

    fn probs(pairs: &[(&str, f64)]) -> Distribution {
        let width = pairs[0].0.len();
        Distribution::from_probabilities(width, pairs.iter().map(|(k, p)| (o(k), *p))).unwrap()
    }

    fn four_outcome() -> Distribution {
        probs(&[("111", 0.3), ("011", 0.25), ("101", 0.25), ("000", 0.2)])
    }

    /// Independent pairwise oracle over text bitstrings.
    fn oracle_chs(pairs: &[(&str, f64)], x: &str) -> Vec<f64> {
        let n = x.len();
        let limit = (n as f64) / 2.0;
        let mut out = vec![0.0; n.div_ceil(2)];
        for (y, p) in pairs {
            let d = x.chars().zip(y.chars()).filter(|(a, b)| a != b).count();
            if (d as f64) < limit {
                out[d] += p;
            }
        }
        out
    }

    #[test]
    fn cutoff_rule() {
        assert_eq!(distance_cutoff(10), 4);
        assert_eq!(distance_cutoff(9), 4);
        assert_eq!(distance_cutoff(3), 1);
        assert_eq!(distance_cutoff(2), 0);
        assert_eq!(distance_cutoff(1), 0);
        assert_eq!(profile_len(1), 1);
    }

    #[test]
    fn spectrum_examples() {
        let d = probs(&[("111", 0.6), ("011", 0.3), ("000", 0.1)]);
        let s = build_spectrum(&d, &[o("111")]).unwrap();
        assert_eq!(s.bins()[0], vec![(o("111"), 0.6)]);
        assert_eq!(s.bins()[1], vec![(o("011"), 0.3)]);
        assert!(s.bins()[2].is_empty());
        assert_eq!(s.bins()[3], vec![(o("000"), 0.1)]);

        let delta = probs(&[("0101", 1.0)]);
        let s = build_spectrum(&delta, &[o("0101")]).unwrap();
        assert_eq!(s.bin_totals(), vec![1.0, 0.0, 0.0, 0.0, 0.0]);

        let s = build_spectrum(&probs(&[("010", 1.0)]), &[o("111"), o("000")]).unwrap();
        assert_eq!(s.bin_totals()[1], 1.0);

        assert_eq!(build_spectrum(&d, &[]), Err(Error::EmptyReferenceSet));
    }

    #[test]
    fn spectrum_exports() {
        let d = probs(&[("11", 0.75), ("01", 0.25)]);
        let s = build_spectrum(&d, &[o("11")]).unwrap();
        assert_eq!(
            s.to_json_value(),
            json!([
                {"d": 0, "outcomes": [["11", 0.75]]},
                {"d": 1, "outcomes": [["01", 0.25]]},
                {"d": 2, "outcomes": []},
            ])
        );
        assert_eq!(
            s.to_csv(),
            "d,bitstring,probability\n0,11,0.75\n1,01,0.25\n"
        );
    }

    #[test]
    fn chs_for_outcome_matches_oracle() {
        let pairs = [("111", 0.3), ("011", 0.25), ("101", 0.25), ("000", 0.2)];
        let d = four_outcome();
        let chs = chs_for_outcome(&d, &o("111")).unwrap();
        let expected = oracle_chs(&pairs, "111");
        assert_eq!(expected, vec![0.3, 0.5]);
        assert_eq!(chs.values(), expected.as_slice());

        let delta = probs(&[("1100", 1.0)]);
        assert_eq!(
            chs_for_outcome(&delta, &o("1100")).unwrap().values(),
            &[1.0, 0.0]
        );

        let far = probs(&[("0000", 1.0)]);
        assert_eq!(
            chs_for_outcome(&far, &o("1111")).unwrap().values(),
            &[0.0, 0.0]
        );

        assert!(matches!(
            chs_for_outcome(&d, &o("11")),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn global_chs_examples() {
        let pairs = [("111", 0.3), ("011", 0.25), ("101", 0.25), ("000", 0.2)];
        let mut oracle = vec![0.0; 2];
        for (x, _) in &pairs {
            for (k, v) in oracle_chs(&pairs, x).into_iter().enumerate() {
                oracle[k] += v;
            }
        }
        let (chs, pairs_evaluated) = global_chs_counted(&four_outcome()).unwrap();
        assert_eq!(pairs_evaluated, 16);
        assert!((chs.values()[0] - 1.0).abs() < 1e-15);
        assert!((chs.values()[1] - 1.1).abs() < 1e-15);
        for (a, b) in chs.values().iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-15);
        }

        let delta = probs(&[("10110", 1.0)]);
        assert_eq!(global_chs(&delta).unwrap().values(), &[1.0, 0.0, 0.0]);

        let pair = probs(&[("00", 0.5), ("11", 0.5)]);
        assert_eq!(global_chs(&pair).unwrap().values(), &[1.0]);
    }

    #[test]
    fn ehd_examples() {
        let delta = probs(&[("111", 1.0)]);
        assert_eq!(ehd(&delta, &[o("111")], EhdMode::Normalized).unwrap(), 0.0);
        assert_eq!(ehd(&delta, &[o("111")], EhdMode::Raw).unwrap(), 0.0);

        let uniform = Distribution::from_probabilities(
            4,
            (0..16u64).map(|v| (Outcome::from_u64(v, 4).unwrap(), 1.0 / 16.0)),
        )
        .unwrap();
        let e = ehd(&uniform, &[o("0000")], EhdMode::default()).unwrap();
        assert!((e - 32.0 / 15.0).abs() < 1e-12);

        let d = probs(&[("111", 0.5), ("110", 0.25), ("000", 0.25)]);
        assert_eq!(ehd(&d, &[o("111")], EhdMode::Normalized).unwrap(), 2.0);
        assert_eq!(ehd(&d, &[o("111")], EhdMode::Raw).unwrap(), 1.0);
        assert_eq!(ehd(&d, &[], EhdMode::Raw), Err(Error::EmptyReferenceSet));
    }
}
