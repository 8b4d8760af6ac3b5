//! Subsets of a finite carrier.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::Element;

/// A subset of the carrier `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet { bits }
    }

    /// Builds a set, rejecting elements outside the carrier.
    pub fn from_elements<I>(universe: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = Element>,
    {
        let mut set = ElementSet::empty(universe);
        for e in elements {
            if e >= universe {
                return Err(Error::OutOfRange {
                    element: e,
                    size: universe,
                });
            }
            set.bits.insert(e);
        }
        Ok(set)
    }

    /// The subset whose members are the set bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        let mut set = ElementSet::empty(universe);
        for e in 0..universe {
            if mask >> e & 1 == 1 {
                set.bits.insert(e);
            }
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.bits.contains(e)
    }

    /// Panics if `e` is outside the carrier.
    pub fn insert(&mut self, e: Element) {
        self.bits.insert(e);
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElementSet { bits }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElementSet { bits }
    }

    pub fn complement(&self) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ElementSet { bits }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Image of the set under `map`, as a subset of `0..target_universe`.
    pub fn image(&self, map: &[Element], target_universe: usize) -> ElementSet {
        let mut out = ElementSet::empty(target_universe);
        for e in self.iter() {
            out.bits.insert(map[e]);
        }
        out
    }

    /// Preimage of the set under `map: 0..domain -> self.universe()`.
    pub fn preimage(&self, map: &[Element]) -> ElementSet {
        let mut out = ElementSet::empty(map.len());
        for (x, &y) in map.iter().enumerate() {
            if self.bits.contains(y) {
                out.bits.insert(x);
            }
        }
        out
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_counts() {
        let a = ElementSet::from_elements(5, [1, 3]).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.complement().to_vec(), vec![0, 2, 4]);
        assert!(a.union(&a.complement()).is_full());
        assert!(a.intersection(&a.complement()).is_empty());
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            ElementSet::from_elements(3, [3]),
            Err(Error::OutOfRange { element: 3, size: 3 })
        ));
    }

    #[test]
    fn preimage_under_reduction() {
        let mod4: Vec<usize> = (0..8).map(|x| x % 4).collect();
        let a = ElementSet::from_elements(4, [1]).unwrap();
        assert_eq!(a.preimage(&mod4).to_vec(), vec![1, 5]);
    }

    #[test]
    fn mask_round_trip() {
        let s = ElementSet::from_mask(6, 0b101001);
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
    }
}
