//! Weighted shift operators on directed trees.
//!
//! A weighted shift attaches one complex weight to every non-root vertex of
//! a directed tree and maps each basis vector to the weighted sum of its
//! children. This crate represents such operators on finite trees and on
//! finitely described infinite trees (finite core + downward stem + upward
//! rays), and provides:
//!
//! * exact sparse application, adjoint, powers and moment sequences
//!   ([`shift`]);
//! * the exact operator norm and injectivity criteria ([`shift`]);
//! * structural classification of formal normality and of weighted-shift
//!   modelability of normal extensions, with explicit witnesses and the
//!   extension model construction ([`classify`]);
//! * truncated Hankel positivity tests for the moment sequences the
//!   classifiers rely on ([`moments`]);
//! * dense-matrix oracles on finite truncations cross-checking every
//!   symbolic verdict numerically ([`dense`]).
//!
//! All core math is generic over the real scalar (`f32` or `f64`) through
//! [`Scalar`]; the crate root exposes `f64` aliases for ordinary use.

pub mod classify;
pub mod dense;
pub mod moments;
pub mod scalar;
pub mod shift;
pub mod sparse;
pub mod tree;

pub use scalar::{CWeight, Scalar};
pub use tree::{FiniteTree, TreeProfile, VertexId, Window};

/// Shared default for relative modulus comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Double-precision complex weight.
pub type Weight = CWeight<f64>;
/// Double-precision weighted shift.
pub type Shift = shift::WeightedShift<f64>;
/// Double-precision weight family.
pub type Weights = shift::WeightFamily<f64>;
/// Double-precision stem/ray weights.
pub type Tail = shift::TailWeights<f64>;
/// Double-precision finitely supported vector.
pub type Vector = sparse::SparseVector<f64>;
/// Double-precision dense materialization.
pub type Dense = dense::DenseOperator<f64>;
/// Double-precision formal-normality verdict.
pub type NormalityVerdict = classify::FormalNormalityVerdict<f64>;
/// Double-precision extension verdict.
pub type ModelVerdict = classify::ExtensionVerdict<f64>;
/// Double-precision moment sequence.
pub type Moments = moments::MomentSequence<f64>;

#[cfg(test)]
mod thread_safety {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        assert_send_sync::<crate::Shift>();
        assert_send_sync::<crate::Vector>();
        assert_send_sync::<crate::Dense>();
        assert_send_sync::<crate::TreeProfile>();
        assert_send_sync::<crate::FiniteTree>();
        assert_send_sync::<crate::NormalityVerdict>();
        assert_send_sync::<crate::ModelVerdict>();
    }
}
