//! Fixed-length position bitsets.
//!
//! Bits beyond `len` in the last word are always zero, so derived equality and
//! `count` are exact.

use std::ops::Range;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PositionMask {
    len: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for PositionMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PositionMask {
    pub fn empty(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut m = Self {
            len,
            words: vec![u64::MAX; len.div_ceil(WORD)],
        };
        m.clear_tail();
        m
    }

    /// Builds a mask from arbitrary positions. Positions `>= len` are ignored.
    pub fn from_positions<I: IntoIterator<Item = usize>>(len: usize, positions: I) -> Self {
        let mut m = Self::empty(len);
        for p in positions {
            if p < len {
                m.insert(p);
            }
        }
        m
    }

    /// Document length this mask ranges over.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of preserved positions.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn contains(&self, pos: usize) -> bool {
        pos < self.len && self.words[pos / WORD] & (1 << (pos % WORD)) != 0
    }

    #[inline]
    pub fn insert(&mut self, pos: usize) {
        assert!(pos < self.len, "position {pos} out of range {}", self.len);
        self.words[pos / WORD] |= 1 << (pos % WORD);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Keeps only positions covered by `ranges`.
    ///
    /// `ranges` must be sorted, non-overlapping and within `0..len`.
    pub fn retain_ranges(&self, ranges: &[Range<usize>]) -> Self {
        let mut out = Self::empty(self.len);
        for r in ranges {
            debug_assert!(r.end <= self.len);
            out.fill_range(r.clone());
        }
        for (o, w) in out.words.iter_mut().zip(&self.words) {
            *o &= w;
        }
        out
    }

    fn fill_range(&mut self, r: Range<usize>) {
        if r.start >= r.end {
            return;
        }
        let (first, last) = (r.start / WORD, (r.end - 1) / WORD);
        let lo = u64::MAX << (r.start % WORD);
        let hi = u64::MAX >> (WORD - 1 - (r.end - 1) % WORD);
        if first == last {
            self.words[first] |= lo & hi;
        } else {
            self.words[first] |= lo;
            for w in &mut self.words[first + 1..last] {
                *w = u64::MAX;
            }
            self.words[last] |= hi;
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}
