use crate::distribution::Distribution;
use crate::outcome::packed_distance;

/// Outcomes of one distribution laid out contiguously for pair loops, in
/// ascending outcome order.
pub(crate) struct PackedSupport {
    stride: usize,
    words: Vec<u64>,
    pub(crate) probs: Vec<f64>,
}

impl PackedSupport {
    pub(crate) fn new(dist: &Distribution) -> Self {
        let stride = dist.width().div_ceil(64);
        let mut words = Vec::with_capacity(stride * dist.len());
        let mut probs = Vec::with_capacity(dist.len());
        for (k, p) in dist.iter() {
            words.extend_from_slice(k.words());
            probs.push(p);
        }
        PackedSupport {
            stride,
            words,
            probs,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.probs.len()
    }

    /// Calls `f(j, distance(i, j))` for every `j` in ascending order.
    #[inline]
    pub(crate) fn for_each_distance<F: FnMut(usize, usize)>(&self, i: usize, mut f: F) {
        if self.stride == 1 {
            let x = self.words[i];
            for (j, &y) in self.words.iter().enumerate() {
                f(j, (x ^ y).count_ones() as usize);
            }
        } else {
            let s = self.stride;
            let x = &self.words[i * s..(i + 1) * s];
            for (j, y) in self.words.chunks_exact(s).enumerate() {
                f(j, packed_distance(x, y));
            }
        }
    }
}
