//! Dense matrix materialization of a shift on a finite tree, and the
//! numerical oracles (operator norm, self-commutator) that cross-check the
//! symbolic classifiers.

use nalgebra::DMatrix;

use crate::scalar::{CWeight, Scalar};
use crate::sparse::SparseVector;
use crate::tree::VertexId;

/// A shift materialized as a complex matrix over an ordered vertex basis.
/// Column u holds the coordinates of S e_u, so nonzero rows of column u sit
/// exactly at the children of u.
#[derive(Clone, Debug)]
pub struct DenseOperator<T: Scalar> {
    basis: Vec<VertexId>,
    matrix: DMatrix<CWeight<T>>,
}

impl<T: Scalar> DenseOperator<T> {
    /// Builds from (child, parent, weight) triples; `basis` must be sorted.
    pub(crate) fn from_entries(
        basis: Vec<VertexId>,
        entries: &[(VertexId, VertexId, CWeight<T>)],
    ) -> Self {
        debug_assert!(basis.windows(2).all(|w| w[0] < w[1]));
        let n = basis.len();
        let mut matrix = DMatrix::from_element(n, n, CWeight::new(T::zero(), T::zero()));
        let index = |v: &VertexId| basis.binary_search(v).expect("entry vertex in basis");
        for (child, parent, weight) in entries {
            matrix[(index(child), index(parent))] = *weight;
        }
        DenseOperator { basis, matrix }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[VertexId] {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<CWeight<T>> {
        &self.matrix
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.basis.binary_search(v).ok()
    }

    /// Column u as a sparse vector: the matrix route to S e_u.
    pub fn column(&self, u: &VertexId) -> Option<SparseVector<T>> {
        let j = self.index_of(u)?;
        let mut out = SparseVector::zero();
        for (i, v) in self.basis.iter().enumerate() {
            out.set(v.clone(), self.matrix[(i, j)]);
        }
        Some(out)
    }

    /// Row u of the conjugate transpose as a sparse vector: the matrix route
    /// to S* e_u.
    pub fn adjoint_column(&self, u: &VertexId) -> Option<SparseVector<T>> {
        let j = self.index_of(u)?;
        let mut out = SparseVector::zero();
        for (i, v) in self.basis.iter().enumerate() {
            out.set(v.clone(), self.matrix[(j, i)].conj());
        }
        Some(out)
    }

    /// Largest singular value, by full decomposition.
    pub fn operator_norm(&self) -> T {
        self.matrix
            .clone()
            .singular_values()
            .iter()
            .fold(T::zero(), |a, s| a.max(*s))
    }

    /// The self-commutator S*S - SS* of the truncated matrix.
    pub fn self_commutator(&self) -> DMatrix<CWeight<T>> {
        let adj = self.matrix.adjoint();
        &adj * &self.matrix - &self.matrix * &adj
    }
}
