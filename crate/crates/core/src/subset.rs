//! Bitmask subsets of a variable set. Variable `i` is bit `i`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest arity for which masks are representable.
pub const MAX_ARITY: usize = 31;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn new(bits: u32) -> Self {
        SubsetMask(bits)
    }

    /// Mask of all `n` variables.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ARITY);
        SubsetMask(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ARITY);
        SubsetMask(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(SubsetMask::EMPTY, |m, i| m | SubsetMask::singleton(i))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn minus(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    /// Indices of the variables in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// Position of this nonempty mask in a coordinate array of length `2^n - 1`.
    pub fn coord_index(self) -> usize {
        debug_assert!(!self.is_empty());
        self.0 as usize - 1
    }

    pub fn from_coord_index(i: usize) -> Self {
        SubsetMask(i as u32 + 1)
    }

    /// Validates that the mask is nonempty and within arity `n`.
    pub fn check(self, n: usize) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptyMask);
        }
        self.check_within(n)
    }

    /// Validates that the mask (possibly empty) uses only variables below `n`.
    pub fn check_within(self, n: usize) -> Result<Self> {
        if n > MAX_ARITY || !self.is_subset_of(SubsetMask::full(n)) {
            return Err(Error::MaskOutOfRange {
                mask: self.0,
                arity: n,
            });
        }
        Ok(self)
    }

    /// All nonempty subsets of `n` variables in increasing bitmask order.
    pub fn all_nonempty(n: usize) -> impl Iterator<Item = SubsetMask> {
        (1..=SubsetMask::full(n).0).map(SubsetMask)
    }

    /// All nonempty subsets of `n` variables in lexicographic order of their
    /// sorted index lists: `A, AB, ABC, AC, B, BC, C` for three variables.
    pub fn lexicographic(n: usize) -> Vec<SubsetMask> {
        let mut out: Vec<SubsetMask> = SubsetMask::all_nonempty(n).collect();
        out.sort_by_cached_key(|m| m.indices().collect::<Vec<_>>());
        out
    }

    /// Renders the mask with the given variable names, comma separated.
    pub fn display_with(self, names: &[String]) -> String {
        self.indices()
            .map(|i| names.get(i).cloned().unwrap_or_else(|| format!("X{i}")))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl std::ops::BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & rhs.0)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetMask({:#b})", self.0)
    }
}

/// Default variable names `A, B, C, ...` for arity `n`.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'A' + i as u8) as char).to_string()
            } else {
                format!("X{i}")
            }
        })
        .collect()
}

/// Disjointness check used by several operations.
pub fn require_disjoint(masks: &[SubsetMask]) -> Result<()> {
    let mut seen = SubsetMask::EMPTY;
    for &m in masks {
        if m.intersects(seen) {
            return Err(Error::OverlappingMasks);
        }
        seen = seen | m;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_for_three() {
        let names = default_names(3);
        let order: Vec<String> = SubsetMask::lexicographic(3)
            .into_iter()
            .map(|m| m.display_with(&names))
            .collect();
        assert_eq!(order, ["A", "A,B", "A,B,C", "A,C", "B", "B,C", "C"]);
    }

    #[test]
    fn coord_index_roundtrip() {
        for m in SubsetMask::all_nonempty(4) {
            assert_eq!(SubsetMask::from_coord_index(m.coord_index()), m);
        }
    }

    #[test]
    fn check_rejects_empty_and_out_of_range() {
        assert_eq!(SubsetMask::EMPTY.check(3), Err(Error::EmptyMask));
        assert!(SubsetMask::new(0b1000).check(3).is_err());
        assert!(SubsetMask::new(0b0111).check(3).is_ok());
    }

    #[test]
    fn disjointness() {
        let a = SubsetMask::singleton(0);
        let b = SubsetMask::singleton(1);
        assert!(require_disjoint(&[a, b, SubsetMask::EMPTY]).is_ok());
        assert_eq!(require_disjoint(&[a, a | b]), Err(Error::OverlappingMasks));
    }
}
