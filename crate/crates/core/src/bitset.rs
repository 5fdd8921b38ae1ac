//! Dense bit matrices backing order relations and adjacency.

/// A `rows x cols` bit matrix stored row-major in 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.bits[r * self.words_per_row + c / 64];
        (w >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.words_per_row + c / 64] |= 1u64 << (c % 64);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// `row(dst) |= row(src)`.
    pub fn or_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let w = self.words_per_row;
        let (a, b) = (src * w, dst * w);
        for k in 0..w {
            let v = self.bits[a + k];
            self.bits[b + k] |= v;
        }
    }

    pub fn count_row(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_row(&self, r: usize) -> BitIter<'_> {
        BitIter::new(self.row(r))
    }

    /// Indices set in both rows.
    pub fn and_rows(&self, r1: usize, r2: usize) -> Vec<u64> {
        self.row(r1)
            .iter()
            .zip(self.row(r2))
            .map(|(a, b)| a & b)
            .collect()
    }

    #[cfg(test)]
    pub fn row_is_subset(&self, r1: usize, r2: usize) -> bool {
        subset(self.row(r1), self.row(r2))
    }
}

/// `a` is a subset of `b`, wordwise.
#[inline]
pub fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Iterates indices of set bits in a word slice, ascending.
pub struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        let current = words.first().copied().unwrap_or(0);
        BitIter {
            words,
            word_idx: 0,
            current,
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * 64 + tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_iterate() {
        let mut m = BitMatrix::new(3, 130);
        m.set(0, 0);
        m.set(0, 64);
        m.set(0, 129);
        m.set(2, 5);
        assert!(m.get(0, 64));
        assert!(!m.get(1, 64));
        assert_eq!(m.iter_row(0).collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(m.count_row(0), 3);
        assert_eq!(m.count_row(1), 0);
    }

    #[test]
    fn subset_and_or() {
        let mut m = BitMatrix::new(2, 70);
        m.set(0, 3);
        m.set(1, 3);
        m.set(1, 69);
        assert!(m.row_is_subset(0, 1));
        assert!(!m.row_is_subset(1, 0));
        m.or_row_into(1, 0);
        assert!(m.get(0, 69));
    }
}
