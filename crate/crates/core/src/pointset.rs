//! Small sets of points backed by a single machine word.
//!
//! Frames, universes and posets in this crate are desk-sized, so every subset
//! of their points fits in a `u64`. Larger carriers (algebra elements) use
//! `fixedbitset` instead.

use std::fmt;

/// Maximum number of points a frame, poset or universe may have.
pub const MAX_POINTS: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> PointSet {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> PointSet {
        PointSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> PointSet {
        PointSet(it.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> PointSet {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: PointSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> PointIter {
        PointIter(self.0)
    }

    /// All subsets of `{0, .., n-1}` in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
        assert!(n < MAX_POINTS, "powerset of {n} points is out of range");
        (0..1u64 << n).map(PointSet)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct PointIter(u64);

impl Iterator for PointIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PointSet::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_in_increasing_order() {
        let s = PointSet::from_indices([5, 0, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn complement_is_relative() {
        let s = PointSet::from_indices([0, 2]);
        assert_eq!(s.complement(3), PointSet::singleton(1));
        assert_eq!(PointSet::full(64).complement(64), PointSet::EMPTY);
    }
}
