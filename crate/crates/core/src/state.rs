//! Packed network states and node subsets.
//!
//! Node `x_{i+1}` lives in bit `i`, so `x1` is the least significant bit.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest network the packed representation supports.
pub const MAX_NODES: usize = 24;

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// An `n`-bit network state. Also used for per-step control masks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVector {
    bits: u32,
    n: u8,
}

impl StateVector {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n == 0 || n > MAX_NODES {
            return Err(Error::InvalidParameters(alloc::format!(
                "state width {n} outside 1..={MAX_NODES}"
            )));
        }
        if bits & !full_mask(n) != 0 {
            return Err(Error::InvalidParameters(alloc::format!(
                "bits {bits:#x} exceed a {n}-node state"
            )));
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// Builds a state from a slice of 0/1 values, `values[0]` being `x1`.
    pub fn from_values(values: &[u8]) -> Result<Self> {
        let mut bits = 0u32;
        for (i, &v) in values.iter().enumerate() {
            match v {
                0 => {}
                1 => bits |= 1 << i,
                _ => {
                    return Err(Error::InvalidParameters(alloc::format!(
                        "state entry {v} at x{} is not a bit",
                        i + 1
                    )))
                }
            }
        }
        Self::new(values.len(), bits)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::new(n, full_mask(n))
    }

    #[inline]
    pub(crate) fn from_raw(n: usize, bits: u32) -> Self {
        debug_assert!(bits & !full_mask(n) == 0);
        Self { bits, n: n as u8 }
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, node: usize) -> bool {
        self.bits >> node & 1 == 1
    }

    pub fn with(&self, node: usize, value: bool) -> Self {
        let bits = if value {
            self.bits | 1 << node
        } else {
            self.bits & !(1 << node)
        };
        Self { bits, n: self.n }
    }

    pub fn values(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i) as u8).collect()
    }
}

impl core::ops::BitXor for StateVector {
    type Output = StateVector;

    fn bitxor(self, rhs: Self) -> Self {
        debug_assert_eq!(self.n, rhs.n);
        Self {
            bits: self.bits ^ rhs.bits,
            n: self.n,
        }
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// Compact `x1..xn` bit string, `x1` first.
impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// A set of nodes stored as a bitmask over node indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(pub u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn all(n: usize) -> Self {
        NodeSet(full_mask(n))
    }

    /// From 0-based node indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        NodeSet(indices.into_iter().fold(0, |m, i| m | 1 << i))
    }

    /// From 1-based node names (`x1` = 1).
    pub fn from_names<I: IntoIterator<Item = usize>>(names: I) -> Self {
        Self::from_indices(names.into_iter().map(|i| i - 1))
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(&self, node: usize) -> bool {
        self.0 >> node & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, node: usize) {
        self.0 |= 1 << node;
    }

    pub fn union(&self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn is_subset(&self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Node indices in increasing order.
    pub fn iter(&self) -> NodeIter {
        NodeIter(self.0)
    }

    /// Checks that every member is below `n`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        if self.0 & !full_mask(n) != 0 {
            return Err(Error::InvalidParameters(alloc::format!(
                "node set {self} references nodes beyond x{n}"
            )));
        }
        Ok(())
    }
}

pub struct NodeIter(u32);

impl Iterator for NodeIter {
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

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        NodeSet::from_indices(iter)
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `{x1,x3}` with 1-based names.
impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Iterates every submask of `mask`, including 0 and `mask` itself.
pub(crate) fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    core::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn x1_is_least_significant() {
        let s = StateVector::from_values(&[1, 0, 0, 1]).unwrap();
        assert_eq!(s.bits(), 0b1001);
        assert!(s.get(0) && s.get(3) && !s.get(1));
        assert_eq!(alloc::format!("{s}"), "1001");
    }

    #[test]
    fn rejects_bits_above_width() {
        assert!(StateVector::new(3, 0b1000).is_err());
        assert!(StateVector::new(0, 0).is_err());
        assert!(StateVector::new(25, 0).is_err());
        assert!(StateVector::from_values(&[0, 2]).is_err());
    }

    #[test]
    fn submask_enumeration_is_complete() {
        let mut seen: Vec<u32> = submasks(0b1011).collect();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn node_set_display_uses_one_based_names() {
        let u = NodeSet::from_names([3, 4, 5, 7]);
        assert_eq!(alloc::format!("{u}"), "{x3,x4,x5,x7}");
        assert_eq!(u.iter().collect::<Vec<_>>(), vec![2, 3, 4, 6]);
    }
}
