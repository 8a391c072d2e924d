//! Scalar abstraction: the library is generic over the real scalar backing
//! weights and tolerances (f32 or f64), with complex weights built on top.

use nalgebra::{Complex, RealField};
use num_traits::FromPrimitive;

/// Real scalar type for weights, norms and tolerances: f32 or f64.
pub trait Scalar: RealField + FromPrimitive + Copy {
    /// Converts an f64 constant (tolerances, reference values).
    fn from_f64_const(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant not representable in scalar type")
    }
}

impl<T> Scalar for T where T: RealField + FromPrimitive + Copy {}

/// Complex weight over the scalar `T`.
pub type CWeight<T> = Complex<T>;

/// |x| for a real scalar, avoiding the `Signed`/`ComplexField` method clash.
pub fn rabs<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        -x
    } else {
        x
    }
}

/// Relative closeness of two nonnegative reals: |a - b| <= tol * max(a, b, 1).
pub fn rel_close<T: Scalar>(a: T, b: T, tol: T) -> bool {
    let scale = rabs(a).max(rabs(b)).max(T::one());
    rabs(a - b) <= tol * scale
}

/// True when the scalar is neither NaN nor infinite.
pub fn scalar_is_finite<T: Scalar>(x: T) -> bool {
    x.is_finite()
}

/// True when both parts of a complex weight are finite.
pub fn weight_is_finite<T: Scalar>(w: CWeight<T>) -> bool {
    scalar_is_finite(w.re) && scalar_is_finite(w.im)
}
