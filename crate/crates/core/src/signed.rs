//! Vectors of `(Z_q ∪ {0})^n`, stored as `0` for zero and `j in 1..=q` for ω^j.

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedVector {
    q: usize,
    entries: Vec<usize>,
}

impl SignedVector {
    pub fn new(q: usize, entries: Vec<usize>) -> Result<Self> {
        if q < 2 {
            return Err(Error::contract(format!("modulus must be >= 2, got {q}")));
        }
        if let Some(&x) = entries.iter().find(|&&x| x > q) {
            return Err(Error::contract(format!("symbol {x} outside 0..={q}")));
        }
        Ok(SignedVector { q, entries })
    }

    pub(crate) fn from_parts(q: usize, entries: Vec<usize>) -> Self {
        debug_assert!(entries.iter().all(|&x| x <= q));
        SignedVector { q, entries }
    }

    pub fn zero(q: usize, n: usize) -> Self {
        SignedVector { q, entries: vec![0; n] }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `|X|`: number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|&&x| x != 0).count()
    }

    /// `X^j = { i : x_i = ω^j }`.
    pub fn class(&self, j: usize) -> VertexSet {
        let mut s = VertexSet::new(self.entries.len());
        for (i, &x) in self.entries.iter().enumerate() {
            if x == j && x != 0 {
                s.insert(i);
            }
        }
        s
    }

    /// Multiplication of every nonzero entry by ω.
    pub fn rotated(&self) -> SignedVector {
        SignedVector {
            q: self.q,
            entries: self
                .entries
                .iter()
                .map(|&x| if x == 0 { 0 } else { x % self.q + 1 })
                .collect(),
        }
    }

    /// `self ⊑ other`: every nonzero entry of `self` agrees with `other`.
    pub fn is_dominated_by(&self, other: &SignedVector) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(&x, &y)| x == 0 || x == y)
    }
}

/// True iff one of the two vectors dominates the other.
pub fn is_comparable(x: &SignedVector, y: &SignedVector) -> bool {
    x.is_dominated_by(y) || y.is_dominated_by(x)
}
