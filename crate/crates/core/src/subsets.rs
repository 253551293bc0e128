//! Index universes, bit-encoded subsets, and subset enumeration.
//!
//! Everything a sum over `2^P` needs: a labelled universe of at most 64
//! elements, `u64`-encoded subsets, and streaming enumeration in increasing
//! numeric bit-order.

use std::fmt;

use crate::error::{Error, Result};
use crate::polynomial::Sign;

/// Hard cap imposed by the 64-bit mask encoding.
pub const MAX_UNIVERSE: usize = 64;

/// Default cap on exhaustive subset enumeration (2^24 ≈ 16.7M subsets).
pub const DEFAULT_ENUM_LIMIT: usize = 24;

/// A finite index set with human-readable element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexUniverse {
    labels: Vec<String>,
}

impl IndexUniverse {
    /// Builds a universe from pairwise-distinct labels (at most 64).
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() > MAX_UNIVERSE {
            return Err(Error::TooManyElements(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(IndexUniverse { labels })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn empty_mask(&self) -> SubsetMask {
        SubsetMask::empty(self.size())
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.size())
    }

    /// Resolves a list of labels into a mask.
    pub fn mask_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        let mut mask = self.empty_mask();
        for label in labels {
            let index = self
                .index_of(label.as_ref())
                .ok_or_else(|| Error::UnknownLabel(label.as_ref().to_string()))?;
            mask = mask.with(index);
        }
        Ok(mask)
    }

    /// Member labels of a mask, sorted.
    pub fn mask_labels(&self, mask: SubsetMask) -> Vec<String> {
        let mut out: Vec<String> = mask.indices().map(|i| self.labels[i].clone()).collect();
        out.sort();
        out
    }

    /// Renders a mask as a sorted label list, e.g. `{123, 345}`.
    pub fn render_mask(&self, mask: SubsetMask) -> String {
        format!("{{{}}}", self.mask_labels(mask).join(", "))
    }

    /// Streams every subset of the universe exactly once, in increasing
    /// numeric bit-order. Refuses universes larger than `limit`.
    pub fn all_subsets(&self, limit: usize) -> Result<AllSubsets> {
        let size = self.size();
        if size > limit {
            return Err(Error::UniverseTooLarge { size, limit });
        }
        Ok(AllSubsets {
            next_bits: 0,
            remaining: 1u128 << size,
            universe_size: size,
        })
    }
}

/// A subset of an index universe, bit-encoded in a `u64`.
///
/// Masks order by their numeric bit value, which is also the enumeration
/// order of [`IndexUniverse::all_subsets`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u64,
    universe_size: usize,
}

impl SubsetMask {
    pub fn empty(universe_size: usize) -> Self {
        assert!(universe_size <= MAX_UNIVERSE);
        SubsetMask { bits: 0, universe_size }
    }

    pub fn full(universe_size: usize) -> Self {
        assert!(universe_size <= MAX_UNIVERSE);
        let bits = if universe_size == MAX_UNIVERSE {
            u64::MAX
        } else {
            (1u64 << universe_size) - 1
        };
        SubsetMask { bits, universe_size }
    }

    /// Builds a mask from raw bits, rejecting bits beyond the universe.
    pub fn from_bits(bits: u64, universe_size: usize) -> Result<Self> {
        if universe_size > MAX_UNIVERSE {
            return Err(Error::TooManyElements(universe_size));
        }
        if bits & !Self::full(universe_size).bits != 0 {
            return Err(Error::MaskOutOfRange { universe_size });
        }
        Ok(SubsetMask { bits, universe_size })
    }

    pub(crate) fn from_bits_unchecked(bits: u64, universe_size: usize) -> Self {
        debug_assert!(bits & !Self::full(universe_size).bits == 0);
        SubsetMask { bits, universe_size }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn universe_size(self) -> usize {
        self.universe_size
    }

    pub fn cardinality(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// The `(-1)^{|I|}` sign of this subset.
    pub fn sign(self) -> Sign {
        Sign::for_set_size(self.cardinality())
    }

    pub fn contains(self, index: usize) -> bool {
        index < self.universe_size && self.bits & (1u64 << index) != 0
    }

    pub fn with(self, index: usize) -> Self {
        assert!(index < self.universe_size);
        SubsetMask { bits: self.bits | (1u64 << index), ..self }
    }

    pub fn without(self, index: usize) -> Self {
        assert!(index < self.universe_size);
        SubsetMask { bits: self.bits & !(1u64 << index), ..self }
    }

    fn check_same_universe(self, other: Self) -> Result<()> {
        if self.universe_size != other.universe_size {
            return Err(Error::UniverseMismatch {
                left: self.universe_size,
                right: other.universe_size,
            });
        }
        Ok(())
    }

    pub fn union(self, other: Self) -> Result<Self> {
        self.check_same_universe(other)?;
        Ok(SubsetMask { bits: self.bits | other.bits, ..self })
    }

    pub fn intersect(self, other: Self) -> Result<Self> {
        self.check_same_universe(other)?;
        Ok(SubsetMask { bits: self.bits & other.bits, ..self })
    }

    /// Set difference `self ∖ other`.
    pub fn difference(self, other: Self) -> Result<Self> {
        self.check_same_universe(other)?;
        Ok(SubsetMask { bits: self.bits & !other.bits, ..self })
    }

    /// True iff every element of `other` is in `self`.
    pub fn is_superset(self, other: Self) -> Result<bool> {
        self.check_same_universe(other)?;
        Ok(self.bits & other.bits == other.bits)
    }

    pub fn is_disjoint(self, other: Self) -> Result<bool> {
        self.check_same_universe(other)?;
        Ok(self.bits & other.bits == 0)
    }

    /// Member indices in ascending order.
    pub fn indices(self) -> Indices {
        Indices { bits: self.bits }
    }

    /// Streams every subset of this mask exactly once (2^|mask| of them),
    /// in increasing numeric bit-order.
    pub fn subsets_of(self) -> Submasks {
        Submasks {
            set: self.bits,
            next: 0,
            universe_size: self.universe_size,
            done: false,
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}/{}", members.join(","), self.universe_size)
    }
}

/// Ascending member indices of a mask.
pub struct Indices {
    bits: u64,
}

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let index = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(index)
    }
}

/// Every subset of the universe, in increasing numeric bit-order.
#[derive(Debug)]
pub struct AllSubsets {
    next_bits: u64,
    remaining: u128,
    universe_size: usize,
}

impl Iterator for AllSubsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let mask = SubsetMask::from_bits_unchecked(self.next_bits, self.universe_size);
        self.next_bits = self.next_bits.wrapping_add(1);
        Some(mask)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// Subsets of a fixed mask via the carry-rippler step `s = (s - m) & m`.
pub struct Submasks {
    set: u64,
    next: u64,
    universe_size: usize,
    done: bool,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        if self.done {
            return None;
        }
        let current = self.next;
        self.next = current.wrapping_sub(self.set) & self.set;
        if self.next == 0 {
            self.done = true;
        }
        Some(SubsetMask::from_bits_unchecked(current, self.universe_size))
    }
}
