//! Fixed-width measurement outcomes and Hamming kernels.
//!
//! Text form: the leftmost character is bit index 0. Internally bits are
//! packed MSB-first into `u64` words, so bit 0 is the top bit of word 0 and
//! the derived ordering on words coincides with lexicographic order of the
//! text form. Padding bits past `width` are always zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(width: usize) -> usize {
    width.div_ceil(WORD_BITS)
}

#[inline]
fn locate(bit: usize) -> (usize, u64) {
    (bit / WORD_BITS, 1u64 << (WORD_BITS - 1 - bit % WORD_BITS))
}

/// A measured bitstring of fixed width `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome {
    width: usize,
    words: Vec<u64>,
}

impl Outcome {
    /// All-zeros outcome of the given width.
    pub fn zeros(width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidArgument(
                "outcome width must be at least 1".into(),
            ));
        }
        Ok(Outcome {
            width,
            words: vec![0; words_for(width)],
        })
    }

    /// Builds an outcome from a slice of bit values, index 0 first.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut out = Outcome::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Builds an outcome of `width <= 64` from the low `width` bits of
    /// `value`, most significant of those bits first. So `from_u64(0b011, 3)`
    /// is `"011"`.
    pub fn from_u64(value: u64, width: usize) -> Result<Self> {
        if width > WORD_BITS {
            return Err(Error::InvalidArgument(format!(
                "from_u64 supports at most {WORD_BITS} bits, got {width}"
            )));
        }
        let mut out = Outcome::zeros(width)?;
        let masked = if width == WORD_BITS {
            value
        } else {
            value & ((1u64 << width) - 1)
        };
        out.words[0] = masked << (WORD_BITS - width);
        Ok(out)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Packed words, MSB-first.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(
            i < self.width,
            "bit {i} out of range for width {}",
            self.width
        );
        let (w, m) = locate(i);
        self.words[w] & m != 0
    }

    fn set(&mut self, i: usize, value: bool) {
        let (w, m) = locate(i);
        if value {
            self.words[w] |= m;
        } else {
            self.words[w] &= !m;
        }
    }

    /// Copy with bit `i` inverted.
    pub fn with_flipped(&self, i: usize) -> Self {
        assert!(
            i < self.width,
            "bit {i} out of range for width {}",
            self.width
        );
        let mut out = self.clone();
        let (w, m) = locate(i);
        out.words[w] ^= m;
        out
    }

    pub fn xor(&self, other: &Outcome) -> Result<Self> {
        check_width(self.width, other.width)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Outcome {
            width: self.width,
            words,
        })
    }

    /// Every bit inverted.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.clear_padding();
        out
    }

    /// Reorders bits: bit `i` of the result is bit `perm[i]` of `self`.
    ///
    /// Panics if `perm` is not a permutation of `0..width`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(
            perm.len(),
            self.width,
            "permutation length must equal width"
        );
        let mut seen = vec![false; self.width];
        let mut out = Outcome {
            width: self.width,
            words: vec![0; self.words.len()],
        };
        for (i, &src) in perm.iter().enumerate() {
            assert!(src < self.width && !seen[src], "not a permutation");
            seen[src] = true;
            if self.bit(src) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn clear_padding(&mut self) {
        let used = self.width % WORD_BITS;
        if used != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= !0u64 << (WORD_BITS - used);
        }
    }
}

pub(crate) fn check_width(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::WidthMismatch { expected, found })
    }
}

/// Number of positions at which `a` and `b` differ.
pub fn hamming_distance(a: &Outcome, b: &Outcome) -> Result<usize> {
    check_width(a.width, b.width)?;
    Ok(packed_distance(&a.words, &b.words))
}

#[inline]
pub(crate) fn packed_distance(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum()
}

/// Shortest Hamming distance from `x` to any member of `refs`.
pub fn min_distance_to_set(x: &Outcome, refs: &[Outcome]) -> Result<usize> {
    if refs.is_empty() {
        return Err(Error::EmptyReferenceSet);
    }
    let mut best = usize::MAX;
    for r in refs {
        best = best.min(hamming_distance(x, r)?);
    }
    Ok(best)
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::invalid_key(s, "empty bitstring"));
        }
        let mut out = Outcome::zeros(s.chars().count())?;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, true),
                other => {
                    return Err(Error::invalid_key(
                        s,
                        format!("non-binary character {other:?} at position {i}"),
                    ))
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = (0..self.width)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect();
        f.write_str(&text)
    }
}

impl fmt::Debug for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Outcome({self})")
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
