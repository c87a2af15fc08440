use std::cmp::Ordering;
use std::fmt;

use smallvec::{smallvec, SmallVec};

/// A subset of a frame of discernment, packed as a little-endian bit vector.
///
/// Bit `i` set means the `i`-th label of the frame belongs to the subset.
/// Frames of up to 64 labels fit in a single inline machine word; wider frames
/// spill into further words without changing any call site. Bits at positions
/// `>= width` are kept zero as an invariant, so derived equality and hashing
/// are sound.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetWord {
    width: usize,
    words: SmallVec<[u64; 1]>,
}

#[inline]
fn word_count(width: usize) -> usize {
    width.div_ceil(64).max(1)
}

impl SubsetWord {
    /// The empty set over a frame of `width` labels.
    pub fn empty(width: usize) -> Self {
        SubsetWord {
            width,
            words: smallvec![0; word_count(width)],
        }
    }

    /// The full set (the frame itself).
    pub fn full(width: usize) -> Self {
        let mut out = Self::empty(width);
        for i in 0..width {
            out.insert(i);
        }
        out
    }

    /// The singleton `{idx}`.
    pub fn singleton(width: usize, idx: usize) -> Self {
        let mut out = Self::empty(width);
        out.insert(idx);
        out
    }

    /// Builds a subset from bit indices. Duplicates are harmless.
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut out = Self::empty(width);
        for i in indices {
            out.insert(i);
        }
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn bit(&self, idx: usize) -> bool {
        debug_assert!(idx < self.width);
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, idx: usize) {
        assert!(idx < self.width, "bit {idx} out of range for width {}", self.width);
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    #[inline]
    pub fn remove(&mut self, idx: usize) {
        assert!(idx < self.width, "bit {idx} out of range for width {}", self.width);
        self.words[idx / 64] &= !(1 << (idx % 64));
    }

    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.cardinality() == self.width
    }

    #[inline]
    fn check_width(&self, other: &Self) {
        assert_eq!(
            self.width, other.width,
            "subset words built over different frames"
        );
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_width(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset_of(&self, other: &Self) -> bool {
        other.is_subset_of(self)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check_width(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_width(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        SubsetWord { width: self.width, words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check_width(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        SubsetWord { width: self.width, words }
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Self) -> Self {
        self.check_width(other);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        SubsetWord { width: self.width, words }
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.width);
        for (w, s) in out.words.iter_mut().zip(&self.words) {
            *w &= !s;
        }
        out
    }

    pub fn union_assign(&mut self, other: &Self) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_assign(&mut self, other: &Self) {
        self.check_width(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Iterates the indices of set bits in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    pub fn lowest_index(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn highest_index(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    /// Lowest bit index at which the two sets differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.check_width(other);
        for (wi, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let diff = a ^ b;
            if diff != 0 {
                return Some(wi * 64 + diff.trailing_zeros() as usize);
            }
        }
        None
    }

    /// The set restricted to bit positions strictly below `limit`.
    pub fn masked_below(&self, limit: usize) -> Self {
        let mut out = self.clone();
        for (wi, w) in out.words.iter_mut().enumerate() {
            let lo = wi * 64;
            if lo >= limit {
                *w = 0;
            } else if lo + 64 > limit {
                *w &= (1u64 << (limit - lo)) - 1;
            }
        }
        out
    }

    /// Do the two sets agree on every bit strictly below `limit`?
    pub fn agrees_below(&self, other: &Self, limit: usize) -> bool {
        self.check_width(other);
        for (wi, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let lo = wi * 64;
            if lo >= limit {
                return true;
            }
            let mut diff = a ^ b;
            if lo + 64 > limit {
                diff &= (1u64 << (limit - lo)) - 1;
            }
            if diff != 0 {
                return false;
            }
        }
        true
    }

    /// Is `other ∩ [0, limit) ⊆ self ∩ [0, limit)`?
    pub fn covers_below(&self, other: &Self, limit: usize) -> bool {
        self.check_width(other);
        for (wi, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let lo = wi * 64;
            if lo >= limit {
                return true;
            }
            let mut stray = b & !a;
            if lo + 64 > limit {
                stray &= (1u64 << (limit - lo)) - 1;
            }
            if stray != 0 {
                return false;
            }
        }
        true
    }

    /// Number of set bits at positions `>= from`.
    pub fn cardinality_from(&self, from: usize) -> usize {
        let mut total = 0usize;
        for (wi, &w) in self.words.iter().enumerate() {
            let lo = wi * 64;
            if lo + 64 <= from {
                continue;
            }
            let mut kept = w;
            if lo < from {
                kept &= !((1u64 << (from - lo)) - 1);
            }
            total += kept.count_ones() as usize;
        }
        total
    }

    /// Numeric comparison, treating bit `i` as weight `2^i`.
    pub fn numeric_cmp(&self, other: &Self) -> Ordering {
        self.check_width(other);
        for (a, b) in self.words.iter().zip(&other.words).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Canonical family order: by cardinality, ties broken numerically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cardinality()
            .cmp(&other.cardinality())
            .then_with(|| self.numeric_cmp(other))
    }
}

impl PartialOrd for SubsetWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.numeric_cmp(other))
    }
}

impl fmt::Debug for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
