//! Small bitsets over the ray indices of a cone.
//!
//! Rays are indexed internally from 0; every user-facing rendering (errors,
//! chamber tables, witnesses) is 1-based, matching the usual labelling
//! `ρ1, ρ2, …` of the rays in their input order.

use std::fmt;

/// A subset of the rays `{ρ1..ρn}`, stored as a bitmask (so `n ≤ 64`).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RaySet(pub u64);

impl RaySet {
    pub const EMPTY: RaySet = RaySet(0);

    pub fn empty() -> Self {
        RaySet(0)
    }

    /// The full set on `n` rays.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            RaySet(u64::MAX)
        } else {
            RaySet((1u64 << n) - 1)
        }
    }

    /// Builds a set from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut mask = 0u64;
        for i in indices {
            debug_assert!(i < 64);
            mask |= 1 << i;
        }
        RaySet(mask)
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < 64);
        self.0 |= 1 << i;
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &RaySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(&self, other: &RaySet) -> RaySet {
        RaySet(self.0 & other.0)
    }

    pub fn union(&self, other: &RaySet) -> RaySet {
        RaySet(self.0 | other.0)
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &RaySet) -> RaySet {
        RaySet(self.0 & !other.0)
    }

    /// Complement within the full set on `n` rays.
    pub fn complement(&self, n: usize) -> RaySet {
        RaySet(Self::full(n).0 & !self.0)
    }

    /// 0-based member indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut bits = self.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out.push(i);
            bits &= bits - 1;
        }
        out
    }

    /// 1-based member indices, the labelling used in all reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.indices().into_iter().map(|i| i + 1).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(&self) -> impl Iterator<Item = RaySet> {
        let full = self.0;
        let mut cur = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = RaySet(cur);
            if cur == full {
                done = true;
            } else {
                // standard submask walk, increasing order
                cur = cur.wrapping_sub(full) & full;
            }
            Some(out)
        })
    }
}

impl fmt::Debug for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RaySet{}", self)
    }
}

impl fmt::Display for RaySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.one_based().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, "}}")
    }
}
