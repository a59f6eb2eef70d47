//! Fixed-length packed bit rows.
//!
//! Bit `i` lives in `words[i / 64]` at position `i % 64`. Bits at or beyond
//! `len` are always kept clear so that word-level equality and popcounts are
//! exact.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut row = BitRow {
            len,
            words: vec![!0; words_for(len)],
        };
        row.mask_tail();
        row
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        BitRow { len, words }
    }

    /// Builds a row of `len` bits from the low bits of `value` (bit 0 first).
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut row = BitRow::zeros(len);
        if len > 0 {
            row.words[0] = value;
            row.mask_tail();
        }
        row
    }

    /// Low 64 bits as an integer; panics for rows longer than 64.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Builds a row from raw words; bits at or beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut row = BitRow { len, words };
        row.mask_tail();
        row
    }

    /// Highest set bit at index `<= i`.
    pub fn last_one_at_or_below(&self, i: usize) -> Option<usize> {
        if self.len == 0 {
            return None;
        }
        let i = i.min(self.len - 1);
        let (mut w, b) = (i / 64, i % 64);
        let mut word = self.words[w] & (u64::MAX >> (63 - b));
        loop {
            if word != 0 {
                return Some(w * 64 + 63 - word.leading_zeros() as usize);
            }
            if w == 0 {
                return None;
            }
            w -= 1;
            word = self.words[w];
        }
    }

    /// Lowest set bit at index `>= i`.
    pub fn first_one_at_or_above(&self, i: usize) -> Option<usize> {
        if i >= self.len {
            return None;
        }
        let (mut w, b) = (i / 64, i % 64);
        let mut word = self.words[w] & (u64::MAX << b);
        loop {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Like `get`, but indices outside `0..len` read as 0.
    #[inline]
    pub fn get_or_zero(&self, i: i64) -> bool {
        if i < 0 || i as usize >= self.len {
            false
        } else {
            self.get(i as usize)
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Copy of bits `start..start + len`, reading zeros past the end.
    pub fn slice(&self, start: usize, len: usize) -> BitRow {
        let mut out = self.shr(start);
        out.resize(len);
        out
    }

    /// Changes the length, zero-filling new high bits or dropping old ones.
    pub fn resize(&mut self, len: usize) {
        self.words.resize(words_for(len), 0);
        self.len = len;
        self.mask_tail();
    }

    /// Bit `i` moves to `i + k`; bits pushed past `len` are dropped.
    pub fn shl(&self, k: usize) -> BitRow {
        let mut out = BitRow::zeros(self.len);
        let (ws, bs) = (k / 64, k % 64);
        let n = self.words.len();
        for i in (ws..n).rev() {
            let src = i - ws;
            let mut w = self.words[src] << bs;
            if bs != 0 && src > 0 {
                w |= self.words[src - 1] >> (64 - bs);
            }
            out.words[i] = w;
        }
        out.mask_tail();
        out
    }

    /// Bit `i` moves to `i - k`; bits below zero are dropped.
    pub fn shr(&self, k: usize) -> BitRow {
        let mut out = BitRow::zeros(self.len);
        let (ws, bs) = (k / 64, k % 64);
        let n = self.words.len();
        for i in 0..n.saturating_sub(ws) {
            let src = i + ws;
            let mut w = self.words[src] >> bs;
            if bs != 0 && src + 1 < n {
                w |= self.words[src + 1] << (64 - bs);
            }
            out.words[i] = w;
        }
        out
    }

    /// Cyclic rotation: bit `i` moves to `(i + k) mod len`.
    pub fn rotate_up(&self, k: usize) -> BitRow {
        if self.len == 0 {
            return self.clone();
        }
        let k = k % self.len;
        if k == 0 {
            return self.clone();
        }
        let mut out = self.shl(k);
        out.or_assign(&self.shr(self.len - k));
        out
    }

    /// Cyclic rotation: bit `i` moves to `(i - k) mod len`.
    pub fn rotate_down(&self, k: usize) -> BitRow {
        if self.len == 0 {
            return self.clone();
        }
        let k = k % self.len;
        self.rotate_up(self.len - k)
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn not(&self) -> BitRow {
        let mut out = BitRow {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.mask_tail();
        out
    }

    pub fn xor(&self, other: &BitRow) -> BitRow {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitRow) -> BitRow {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    pub fn or(&self, other: &BitRow) -> BitRow {
        let mut out = self.clone();
        out.or_assign(other);
        out
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow(")?;
        for b in self.iter() {
            write!(f, "{}", b as u8)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rotate(bits: &[bool], k: usize) -> Vec<bool> {
        let n = bits.len();
        let mut out = vec![false; n];
        for i in 0..n {
            out[(i + k) % n] = bits[i];
        }
        out
    }

    #[test]
    fn first_and_last() {
        let row = BitRow::from_bools([false, false, true, false, true, false]);
        assert_eq!(row.first_one(), Some(2));
        assert_eq!(row.last_one(), Some(4));
        assert_eq!(BitRow::zeros(100).first_one(), None);
    }

    #[test]
    fn ones_is_masked() {
        let row = BitRow::ones(70);
        assert_eq!(row.count_ones(), 70);
        assert_eq!(row.not().count_ones(), 0);
    }

    proptest! {
        #[test]
        fn shifts_match_naive(bits in proptest::collection::vec(any::<bool>(), 1..200), k in 0usize..250) {
            let row = BitRow::from_bools(bits.iter().copied());
            let up = row.shl(k);
            let down = row.shr(k);
            for i in 0..bits.len() {
                let expect_up = i >= k && bits[i - k];
                let expect_down = i + k < bits.len() && bits[i + k];
                prop_assert_eq!(up.get(i), expect_up);
                prop_assert_eq!(down.get(i), expect_down);
            }
        }

        #[test]
        fn directional_search(bits in proptest::collection::vec(any::<bool>(), 1..200), i in 0usize..220) {
            let row = BitRow::from_bools(bits.iter().copied());
            let below = (0..bits.len()).filter(|&j| j <= i && bits[j]).max();
            let above = (0..bits.len()).filter(|&j| j >= i && bits[j]).min();
            prop_assert_eq!(row.last_one_at_or_below(i), below);
            prop_assert_eq!(row.first_one_at_or_above(i), above);
        }

        #[test]
        fn rotation_matches_naive(bits in proptest::collection::vec(any::<bool>(), 1..200), k in 0usize..400) {
            let row = BitRow::from_bools(bits.iter().copied());
            let rot = row.rotate_up(k);
            let expect = naive_rotate(&bits, k % bits.len());
            prop_assert_eq!(rot.iter().collect::<Vec<_>>(), expect);
            prop_assert_eq!(rot.rotate_down(k), row);
        }
    }
}
