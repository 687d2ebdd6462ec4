//! Dense exponent vectors with graded-lexicographic ordering.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial; the length always equals the ambient
/// variable count.  Total order: graded lexicographic (degree first,
/// then plain lexicographic comparison of the exponent vector), which
/// gives every term map a canonical, deterministic iteration order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(SmallVec<[u8; 8]>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, nvars))
    }

    pub fn from_slice(exps: &[u8]) -> Self {
        MultiIndex(SmallVec::from_slice(exps))
    }

    /// The exponent vector of the single variable `v`.
    pub fn unit(nvars: usize, v: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.0[v] = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn get(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, e: u8) {
        self.0[v] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u8] {
        &self.0
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.0.len(), other.0.len());
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// `self − other` when every entry stays non-negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<SmallVec<[u8; 8]>>>()
            .map(MultiIndex)
    }

    /// Increment the exponent of variable `v`.
    pub fn inc(&self, v: usize) -> MultiIndex {
        let mut e = self.clone();
        e.0[v] = e.0[v].checked_add(1).expect("exponent overflow");
        e
    }

    /// Decrement the exponent of variable `v` (which must be positive).
    pub fn dec(&self, v: usize) -> MultiIndex {
        let mut e = self.clone();
        debug_assert!(e.0[v] > 0);
        e.0[v] -= 1;
        e
    }

    /// Map exponents through a variable permutation: entry `i` of the
    /// result is the old exponent of `perm⁻¹(i)`; `perm[i]` names the new
    /// position of old variable `i`.
    pub fn permuted(&self, perm: &[usize]) -> MultiIndex {
        let mut out = MultiIndex::zero(self.0.len());
        for (i, &e) in self.0.iter().enumerate() {
            out.0[perm[i]] = e;
        }
        out
    }

    /// Embed into a larger universe: `map[i]` is the new index of old
    /// variable `i`.
    pub fn embedded(&self, nvars: usize, map: &[usize]) -> MultiIndex {
        let mut out = MultiIndex::zero(nvars);
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                out.0[map[i]] = e;
            }
        }
        out
    }

    /// All multi-indices of the given length and total degree ≤ `max`,
    /// in ascending graded-lexicographic order.
    pub fn all_up_to(nvars: usize, max: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = MultiIndex::zero(nvars);
        fn rec(out: &mut Vec<MultiIndex>, cur: &mut MultiIndex, v: usize, left: u32) {
            if v == cur.len() {
                out.push(cur.clone());
                return;
            }
            for e in 0..=left.min(250) {
                cur.set(v, e as u8);
                rec(out, cur, v + 1, left - e);
            }
            cur.set(v, 0);
        }
        rec(&mut out, &mut cur, 0, max);
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}
