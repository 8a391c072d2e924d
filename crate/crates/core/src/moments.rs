//! Necessary moment conditions for subnormality: finite Hankel positivity
//! (the truncated Stieltjes criterion) and recognition of the point-mass-at-1
//! moment pattern.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::scalar::{rabs, rel_close, Scalar};
use crate::shift::WeightedShift;
use crate::tree::{PathShape, VertexId};

#[derive(Debug, Error)]
pub enum MomentsError {
    #[error("moment sequence has {len} entries, need at least {need}")]
    TooShort { len: usize, need: usize },
    #[error("shift shape does not match the check's hypothesis: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Shift(#[from] crate::shift::ShiftError),
}

/// A sequence of squared power norms, optionally tagged with the vertex it
/// was generated from.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<T: Scalar> {
    pub values: Vec<T>,
    pub source: Option<VertexId>,
}

impl<T: Scalar> MomentSequence<T> {
    pub fn new(values: Vec<T>) -> Self {
        MomentSequence {
            values,
            source: None,
        }
    }

    /// Moments of the shift at `u`: ||S^n e_u||^2 for n = 0..count.
    pub fn from_shift(
        shift: &WeightedShift<T>,
        u: &VertexId,
        count: usize,
    ) -> Result<Self, MomentsError> {
        Ok(MomentSequence {
            values: shift.moment_sequence(u, count)?,
            source: Some(u.clone()),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Outcome of the truncated Stieltjes test: minimal eigenvalues of the two
/// Hankel matrices built from the data, and the verdict at the stated order.
#[derive(Clone, Debug, PartialEq)]
pub struct StieltjesReport<T: Scalar> {
    pub passes: bool,
    /// Order of the plain Hankel matrix (the shifted one may be one smaller).
    pub order: usize,
    pub min_eig_h: T,
    pub min_eig_h_shifted: T,
}

fn hankel<T: Scalar>(values: &[T], offset: usize, order: usize) -> DMatrix<T> {
    DMatrix::from_fn(order, order, |i, j| values[i + j + offset])
}

fn min_eigenvalue<T: Scalar>(m: &DMatrix<T>) -> T {
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(T::max_value().unwrap_or_else(T::one), |a, b| a.min(*b))
}

/// Tests whether the data is consistent with a Stieltjes moment sequence at
/// the maximal Hankel order the data supports: both `(s_{i+j})` and
/// `(s_{i+j+1})` must be positive semidefinite within `tol * (1 + max s_n)`.
///
/// This is a necessary condition only; reports state the tested order.
pub fn stieltjes_check<T: Scalar>(
    s: &MomentSequence<T>,
    tol: T,
) -> Result<StieltjesReport<T>, MomentsError> {
    let len = s.len();
    if len < 2 {
        return Err(MomentsError::TooShort { len, need: 2 });
    }
    let order = (len - 1) / 2 + 1;
    let order_shifted = len / 2;
    let h = hankel(&s.values, 0, order);
    let h_shifted = hankel(&s.values, 1, order_shifted);
    let min_eig_h = min_eigenvalue(&h);
    let min_eig_h_shifted = min_eigenvalue(&h_shifted);
    let scale = T::one()
        + s.values
            .iter()
            .fold(T::zero(), |a, b| a.max(rabs(*b)));
    let floor = -tol * scale;
    Ok(StieltjesReport {
        passes: min_eig_h >= floor && min_eig_h_shifted >= floor,
        order,
        min_eig_h,
        min_eig_h_shifted,
    })
}

/// True iff every moment equals 1 within `tol`: the moment sequence of the
/// unit point mass at 1.
pub fn delta1_check<T: Scalar>(s: &MomentSequence<T>, tol: T) -> bool {
    s.values.iter().all(|v| rabs(*v - T::one()) <= tol)
}

/// For a half-line shift with constant tail modulus past the first weight:
/// the moment sequence at the root is Stieltjes iff the first weight modulus
/// does not exceed the tail modulus. Runs the Hankel test on `count` moments
/// and reports its verdict.
pub fn lambda1_bound_check<T: Scalar>(
    shift: &WeightedShift<T>,
    count: usize,
    tol: T,
) -> Result<bool, MomentsError> {
    let profile = shift.tree().as_profile().ok_or_else(|| {
        MomentsError::ShapeMismatch("shift lives on a finite tree".to_string())
    })?;
    let path = match profile.path_shape() {
        PathShape::ZPlusPath(p) => p,
        other => {
            return Err(MomentsError::ShapeMismatch(format!(
                "expected a half-line, got {other:?}"
            )))
        }
    };
    // constant tail modulus from position 2 onward
    let weights = shift.weights();
    let ray = &weights.rays[path.ray_name()];
    let alpha = ray.tail_modulus;
    for (pos, v) in path.core_chain().iter().enumerate().skip(2) {
        let m = weights.core[v].norm_sqr().sqrt();
        if !rel_close(m, alpha, tol) {
            return Err(MomentsError::ShapeMismatch(format!(
                "modulus at path position {pos} is not the tail modulus"
            )));
        }
    }
    let base = path.core_chain().len() as i64 - 1;
    for (idx, w) in ray.prefix.iter().enumerate() {
        if base + idx as i64 + 1 >= 2 && !rel_close(w.norm_sqr().sqrt(), alpha, tol) {
            return Err(MomentsError::ShapeMismatch(format!(
                "ray prefix modulus {idx} is not the tail modulus"
            )));
        }
    }

    let root = path.vertex(0).expect("path has a root");
    let moments = MomentSequence::from_shift(shift, &root, count)?;
    Ok(stieltjes_check(&moments, tol)?.passes)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    #[test]
    fn constant_ones_pass() {
        let s = MomentSequence::new(vec![1.0f64; 5]);
        let report = stieltjes_check(&s, TOL).unwrap();
        assert!(report.passes);
        assert_eq!(report.order, 3);
        assert!(delta1_check(&s, 1e-12));
    }

    #[test]
    fn theta_half_moments_pass() {
        // measure 0.75 * delta_0 + 0.25 * delta_1
        let s = MomentSequence::new(vec![1.0, 0.25, 0.25, 0.25]);
        let report = stieltjes_check(&s, TOL).unwrap();
        assert!(report.passes, "{report:?}");
        assert!(!delta1_check(&s, 1e-12));
        // hand check of the order-2 minors
        let minor = s.values[0] * s.values[2] - s.values[1] * s.values[1];
        let shifted_minor = s.values[1] * s.values[3] - s.values[2] * s.values[2];
        assert!(minor >= 0.0 && shifted_minor >= 0.0);
    }

    #[test]
    fn theta_three_halves_moments_fail() {
        let s = MomentSequence::new(vec![1.0, 2.25, 2.25, 2.25]);
        let report = stieltjes_check(&s, TOL).unwrap();
        assert!(!report.passes);
        // the 2x2 minor is 2.25 - 5.0625 = -2.8125
        let minor = 1.0 * 2.25 - 2.25f64 * 2.25;
        assert!((minor + 2.8125).abs() < 1e-12);
        assert!(report.min_eig_h < -1e-3);
    }

    #[test]
    fn short_sequences_are_rejected() {
        let s = MomentSequence::<f64>::new(vec![1.0]);
        assert!(matches!(
            stieltjes_check(&s, TOL),
            Err(MomentsError::TooShort { .. })
        ));
        assert!(delta1_check(&s, 1e-12));
        assert!(!delta1_check(&MomentSequence::new(vec![1.0, 0.9, 0.9]), 1e-12));
    }

    #[test]
    fn bound_check_agrees_with_theta() {
        for k in 1..=20 {
            let theta = 0.1 * k as f64;
            let shift = WeightedShift::zplus_shift(theta, 1.0);
            let pass = lambda1_bound_check(&shift, 20, 1e-9).unwrap();
            assert_eq!(pass, theta <= 1.0 + 1e-9, "theta = {theta}");
        }
    }

    #[test]
    fn bound_check_rejects_wrong_shapes() {
        let line = WeightedShift::z_shift(1.0);
        assert!(matches!(
            lambda1_bound_check(&line, 10, 1e-9),
            Err(MomentsError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn scale_covariance_of_hankel_test() {
        let base = [1.0, 0.25, 0.25, 0.25];
        let fail = [1.0, 2.25, 2.25, 2.25];
        for c2 in [0.25, 1.0, 9.0] {
            let scaled =
                MomentSequence::new(base.iter().map(|v| v * c2).collect::<Vec<_>>());
            assert!(stieltjes_check(&scaled, TOL).unwrap().passes);
            let scaled_fail =
                MomentSequence::new(fail.iter().map(|v| v * c2).collect::<Vec<_>>());
            assert!(!stieltjes_check(&scaled_fail, TOL).unwrap().passes);
        }
    }

    /// A failing prefix can never be repaired by appending more moments: the
    /// failing Hankel matrix stays a principal submatrix.
    #[test]
    fn failing_prefix_fails_all_extensions() {
        let prefix = vec![1.0, 2.25, 2.25, 2.25];
        assert!(!stieltjes_check(&MomentSequence::new(prefix.clone()), TOL)
            .unwrap()
            .passes);
        for tail in [
            [2.25, 2.25, 2.25, 2.25],
            [0.0, 0.0, 0.0, 0.0],
            [1.0, 7.0, 0.5, 100.0],
        ] {
            let mut values = prefix.clone();
            values.extend(tail);
            let report = stieltjes_check(&MomentSequence::new(values), TOL).unwrap();
            assert!(!report.passes, "{report:?}");
        }
    }

    /// Moments at the first ray vertex of an admissible half-line shift are
    /// identically 1.
    #[test]
    fn delta1_along_admissible_grid() {
        for k in 1..=10 {
            let theta = 0.1 * k as f64;
            let shift = WeightedShift::zplus_shift(theta, 1.0);
            let at_one =
                MomentSequence::from_shift(&shift, &VertexId::ray("+", 1), 20).unwrap();
            assert!(delta1_check(&at_one, 1e-12), "theta = {theta}");
        }
    }
}
