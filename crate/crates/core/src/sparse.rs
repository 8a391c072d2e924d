//! Finitely supported complex-valued functions on vertices: the elements of
//! the span of the canonical basis that all symbolic computations act on.

use std::collections::BTreeMap;

use crate::scalar::{CWeight, Scalar};
use crate::tree::VertexId;

/// A finitely supported vector; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVector<T: Scalar> {
    entries: BTreeMap<VertexId, CWeight<T>>,
}

impl<T: Scalar> SparseVector<T> {
    pub fn zero() -> Self {
        SparseVector {
            entries: BTreeMap::new(),
        }
    }

    /// The basis vector e_u.
    pub fn basis(u: VertexId) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(u, CWeight::new(T::one(), T::zero()));
        SparseVector { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, u: &VertexId) -> CWeight<T> {
        self.entries
            .get(u)
            .copied()
            .unwrap_or_else(|| CWeight::new(T::zero(), T::zero()))
    }

    /// Sets a coefficient, dropping the entry when it is exactly zero.
    pub fn set(&mut self, u: VertexId, value: CWeight<T>) {
        if value.re == T::zero() && value.im == T::zero() {
            self.entries.remove(&u);
        } else {
            self.entries.insert(u, value);
        }
    }

    pub fn add_to(&mut self, u: VertexId, value: CWeight<T>) {
        let next = self.get(&u) + value;
        self.set(u, next);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &CWeight<T>)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &VertexId> {
        self.entries.keys()
    }

    pub fn scaled(&self, c: CWeight<T>) -> Self {
        let mut out = SparseVector::zero();
        for (u, v) in &self.entries {
            out.set(u.clone(), *v * c);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (u, v) in &other.entries {
            out.add_to(u.clone(), *v);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (u, v) in &other.entries {
            out.add_to(u.clone(), -*v);
        }
        out
    }

    /// Inner product, conjugate-linear in the second argument.
    pub fn inner(&self, other: &Self) -> CWeight<T> {
        let mut acc = CWeight::new(T::zero(), T::zero());
        for (u, v) in &self.entries {
            if let Some(w) = other.entries.get(u) {
                acc += *v * w.conj();
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> T {
        self.entries
            .values()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }
}

impl<T: Scalar> FromIterator<(VertexId, CWeight<T>)> for SparseVector<T> {
    fn from_iter<I: IntoIterator<Item = (VertexId, CWeight<T>)>>(iter: I) -> Self {
        let mut out = SparseVector::zero();
        for (u, v) in iter {
            out.add_to(u, v);
        }
        out
    }
}
