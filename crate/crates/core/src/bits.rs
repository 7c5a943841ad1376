//! Fixed-width element sets.
//!
//! Every carrier in this crate is a small index set, so subsets, relation rows
//! and closed sets are all stored as 256-bit masks that are `Copy` and cheap to
//! compare.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

/// Largest carrier size any structure in the crate may have.
pub const CAPACITY: usize = 256;

const WORDS: usize = CAPACITY / 64;

/// A subset of `0..CAPACITY`.
///
/// Ordering is by cardinality first and then lexicographic on the sorted
/// element lists, which is the canonical order used for every enumeration
/// the crate produces.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bits([u64; WORDS]);

impl Bits {
    pub const fn empty() -> Self {
        Bits([0; WORDS])
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= CAPACITY, "carrier of size {n} exceeds {CAPACITY}");
        let mut words = [0u64; WORDS];
        for (w, word) in words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        Bits(words)
    }

    pub fn singleton(i: usize) -> Self {
        let mut b = Self::empty();
        b.insert(i);
        b
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < CAPACITY && self.0[i / 64] & (1u64 << (i % 64)) != 0
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < CAPACITY, "element {i} exceeds capacity {CAPACITY}");
        let had = self.contains(i);
        self.0[i / 64] |= 1u64 << (i % 64);
        !had
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        if had {
            self.0[i / 64] &= !(1u64 << (i % 64));
        }
        had
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.0,
            word: 0,
        }
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(&self, n: usize) -> Self {
        Bits::full(n) - *self
    }

    /// Builds a set from the low `n` bits of a counter; used to walk all
    /// subsets of a small carrier.
    pub fn from_mask(mask: u64) -> Self {
        let mut words = [0u64; WORDS];
        words[0] = mask;
        Bits(words)
    }

    /// Maps a subset mask of `universe`'s members (in increasing order) to
    /// the corresponding subset of `universe`.
    pub fn select(universe: &[usize], mask: u64) -> Self {
        let mut out = Bits::empty();
        for (k, &i) in universe.iter().enumerate() {
            if mask >> k & 1 == 1 {
                out.insert(i);
            }
        }
        out
    }
}

impl FromIterator<usize> for Bits {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut b = Bits::empty();
        for i in iter {
            b.insert(i);
        }
        b
    }
}

impl IntoIterator for &Bits {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl BitOr for Bits {
    type Output = Bits;
    fn bitor(mut self, rhs: Bits) -> Bits {
        self |= rhs;
        self
    }
}

impl BitOrAssign for Bits {
    fn bitor_assign(&mut self, rhs: Bits) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a |= b;
        }
    }
}

impl BitAnd for Bits {
    type Output = Bits;
    fn bitand(mut self, rhs: Bits) -> Bits {
        self &= rhs;
        self
    }
}

impl BitAndAssign for Bits {
    fn bitand_assign(&mut self, rhs: Bits) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a &= b;
        }
    }
}

impl Sub for Bits {
    type Output = Bits;
    fn sub(mut self, rhs: Bits) -> Bits {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a &= !b;
        }
        self
    }
}

impl Not for Bits {
    type Output = Bits;
    fn not(self) -> Bits {
        Bits(self.0.map(|w| !w))
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_complement() {
        assert_eq!(Bits::full(0), Bits::empty());
        assert_eq!(Bits::full(70).len(), 70);
        assert_eq!(Bits::full(256).len(), 256);
        let s: Bits = [1, 3, 65].into_iter().collect();
        assert_eq!(s.complement(66).len(), 63);
        assert!(!s.complement(66).contains(65));
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let a: Bits = [5].into_iter().collect();
        let b: Bits = [0, 9].into_iter().collect();
        let c: Bits = [1, 2].into_iter().collect();
        let mut v = vec![c, b, a];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    proptest! {
        #[test]
        fn iter_roundtrips(elems in proptest::collection::btree_set(0usize..256, 0..40)) {
            let b: Bits = elems.iter().copied().collect();
            prop_assert_eq!(b.len(), elems.len());
            prop_assert!(b.iter().eq(elems.iter().copied()));
            prop_assert_eq!(b.first(), elems.iter().next().copied());
        }

        #[test]
        fn subset_agrees_with_ops(x in any::<u64>(), y in any::<u64>()) {
            let (a, b) = (Bits::from_mask(x), Bits::from_mask(y));
            prop_assert_eq!(a.is_subset(&b), (a & b) == a);
            prop_assert_eq!(a.intersects(&b), !(a & b).is_empty());
            prop_assert_eq!((a - b) | (a & b), a);
        }
    }
}
