//! Fixed-width bit vectors.
//!
//! A `BitSet` has a fixed logical length; bits past the length are always
//! zero, so equality and hashing only look at significant positions. Widths up
//! to 128 bits stay inline.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: smallvec![0; word_count(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet {
            len,
            words: smallvec![u64::MAX; word_count(len)],
        };
        s.trim();
        s
    }

    /// Builds a set from indices. Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = BitSet::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Low `len` bits of `mask`. `len` must be at most 64.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "from_mask supports at most 64 bits");
        let mut s = BitSet::new(len);
        if len > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// First word of the set; meaningful for widths up to 64.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// True when the set has no significant positions at all.
    pub fn is_zero_width(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for width {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for width {}", self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn and_not(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn not(&self) -> BitSet {
        let mut s = BitSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    pub fn and_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn zip_with(&self, other: &BitSet, f: impl Fn(u64, u64) -> u64) -> BitSet {
        assert_eq!(self.len, other.len, "bit width mismatch");
        BitSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            set: self,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.ones().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.ones().next()
    }
}

pub struct Ones<'a> {
    set: &'a BitSet,
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.current = self.set.words[self.word];
        }
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.ones().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Serialized as the sorted list of member indices; the width travels with
/// the enclosing structure.
impl Serialize for BitSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.ones())
    }
}

/// Index lists deserialize into a set just wide enough to hold them; callers
/// resize with [`BitSet::with_len`].
impl<'de> Deserialize<'de> for BitSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        let len = indices.iter().max().map_or(0, |m| m + 1);
        Ok(BitSet::from_indices(len, indices))
    }
}

impl BitSet {
    /// Re-widens (or narrows) the set. Returns `None` if a set bit would be
    /// dropped.
    pub fn with_len(&self, len: usize) -> Option<BitSet> {
        if self.ones().any(|i| i >= len) {
            return None;
        }
        Some(BitSet::from_indices(len, self.ones()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_is_trimmed() {
        let s = BitSet::full(70);
        assert_eq!(s.count(), 70);
        assert!(s.not().is_empty());
        assert_eq!(BitSet::full(64).count(), 64);
        assert_eq!(BitSet::full(0).count(), 0);
    }

    #[test]
    fn ones_cross_word_boundary() {
        let s = BitSet::from_indices(200, [0, 63, 64, 127, 199]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 127, 199]);
        assert_eq!(format!("{s}"), "{0,63,64,127,199}");
    }

    #[test]
    fn serde_roundtrip_via_indices() {
        let s = BitSet::from_indices(10, [1, 4]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[1,4]");
        let back: BitSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back.with_len(10).unwrap(), s);
        assert!(back.with_len(3).is_none());
    }

    proptest! {
        #[test]
        fn de_morgan_multiword(a in prop::collection::vec(any::<bool>(), 130),
                               b in prop::collection::vec(any::<bool>(), 130)) {
            let x = BitSet::from_indices(130, a.iter().enumerate().filter(|p| *p.1).map(|p| p.0));
            let y = BitSet::from_indices(130, b.iter().enumerate().filter(|p| *p.1).map(|p| p.0));
            prop_assert_eq!(x.and(&y).not(), x.not().or(&y.not()));
            prop_assert_eq!(x.xor(&y), x.and_not(&y).or(&y.and_not(&x)));
            prop_assert_eq!(x.and(&y).is_subset(&x), true);
        }
    }
}
