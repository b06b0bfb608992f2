//! GF(2) classes as sorted sets of basis indices.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of a constructed ring; classes remember which ring they live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

impl RingId {
    pub(crate) fn fresh() -> Self {
        RingId(NEXT_RING_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// A cohomology class: a GF(2) sum of basis elements.
///
/// Terms are kept sorted and free of duplicates, so two classes are equal
/// exactly when their term lists are equal. The zero class has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassVector {
    ring: RingId,
    terms: Vec<u64>,
}

impl ClassVector {
    pub fn zero(ring: RingId) -> Self {
        ClassVector { ring, terms: Vec::new() }
    }

    pub fn basis(ring: RingId, index: u64) -> Self {
        ClassVector { ring, terms: vec![index] }
    }

    /// Builds a class from an arbitrary list of indices, cancelling repeats in pairs.
    pub fn from_terms(ring: RingId, terms: impl IntoIterator<Item = u64>) -> Self {
        let mut terms: Vec<u64> = terms.into_iter().collect();
        reduce_mod2(&mut terms);
        ClassVector { ring, terms }
    }

    /// Caller guarantees `terms` is strictly increasing.
    pub(crate) fn from_sorted(ring: RingId, terms: Vec<u64>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] < w[1]));
        ClassVector { ring, terms }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, index: u64) -> bool {
        self.terms.binary_search(&index).is_ok()
    }

    /// Sum over GF(2): symmetric difference of the term sets.
    pub fn add(&self, other: &ClassVector) -> Result<ClassVector> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(ClassVector { ring: self.ring, terms: symmetric_difference(&self.terms, &other.terms) })
    }
}

/// Sorts `terms` and keeps each index that occurs an odd number of times.
pub(crate) fn reduce_mod2(terms: &mut Vec<u64>) {
    terms.sort_unstable();
    let mut out = 0;
    let mut i = 0;
    while i < terms.len() {
        let mut j = i + 1;
        while j < terms.len() && terms[j] == terms[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            terms[out] = terms[i];
            out += 1;
        }
        i = j;
    }
    terms.truncate(out);
}

pub(crate) fn symmetric_difference(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
