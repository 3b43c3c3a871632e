//! Visibility of one lattice column `{r} × [s0, s0 + len)` as a bitset, built
//! by striking out multiples of `p^b` for each prime `p | r`.

use super::factor::factor_u64;
use super::point::Exponent;

/// Bit `i` is set iff `(r, s0 + i)` is b-visible. `s = 0` is never visible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityColumn {
    s0: u64,
    len: usize,
    /// One spare zero word at the end so unaligned reads never go out of range.
    words: Vec<u64>,
}

impl VisibilityColumn {
    pub fn new(r: u64, b: Exponent, s0: u64, len: usize) -> Self {
        let mut col = Self {
            s0,
            len,
            words: vec![0; len.div_ceil(64) + 1],
        };
        col.fill(r, b);
        col
    }

    /// Recomputes the column in place for a new `r`.
    pub fn fill(&mut self, r: u64, b: Exponent) {
        let n = self.len;
        for (i, w) in self.words.iter_mut().enumerate() {
            let start = i * 64;
            *w = if start + 64 <= n {
                u64::MAX
            } else if start < n {
                (1u64 << (n - start)) - 1
            } else {
                0
            };
        }
        if self.s0 == 0 && n > 0 {
            self.words[0] &= !1;
        }
        if r == 0 {
            self.words.iter_mut().for_each(|w| *w = 0);
            return;
        }
        let end = self.s0 + n as u64;
        for (p, _) in factor_u64(r) {
            let Some(m) = b.checked_pow(p) else { continue };
            if m > end {
                continue;
            }
            let first = self.s0.div_ceil(m) * m;
            if 64 % m == 0 {
                // The period divides the word size, so every word gets the same mask.
                let offset = (first - self.s0) as u32;
                let mut mask = 0u64;
                let mut bit = offset;
                while bit < 64 {
                    mask |= 1 << bit;
                    bit += m as u32;
                }
                self.words.iter_mut().for_each(|w| *w &= !mask);
            } else {
                let mut s = first;
                while s < end {
                    let i = (s - self.s0) as usize;
                    self.words[i >> 6] &= !(1 << (i & 63));
                    s += m;
                }
            }
        }
    }

    pub fn s0(&self) -> u64 {
        self.s0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Visibility of `(r, s)`; `s` must lie in the column.
    #[inline]
    pub fn get(&self, s: u64) -> bool {
        let i = (s - self.s0) as usize;
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// `count` bits (≤ 64) starting at offset `i`, bit 0 being `s0 + i`.
    #[inline]
    pub fn bits(&self, i: usize, count: u32) -> u64 {
        let (w, o) = (i >> 6, (i & 63) as u32);
        let lo = self.words[w] >> o;
        let hi = if o == 0 { 0 } else { self.words[w + 1] << (64 - o) };
        let mask = if count == 64 { u64::MAX } else { (1u64 << count) - 1 };
        (lo | hi) & mask
    }

    pub fn count_visible(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}
