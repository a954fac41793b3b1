//! Floating-point scalar abstraction used by the character-level code.
//!
//! Everything that is exact in the theory (group tables, class counts,
//! square-root counts, power sums) lives in integers. Only the character
//! table and the functionals built on it are floating point, and those
//! are generic over [`Scalar`] so the same code runs in `f32` and `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Residual thresholds tied to a scalar's precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Per-class-count orthogonality bound; the table gate is `orthogonality * k`.
    pub orthogonality: T,
    /// Bound on the distance of any claimed integer from the nearest integer.
    pub integrality: T,
    /// Eigenvalues closer than this (relative to the spectral radius) count as clustered.
    pub eigen_separation: T,
}

pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn tolerances() -> Tolerances<Self>;

    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize fits in a float")
    }

    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 fits in the scalar")
    }
}

impl Scalar for f64 {
    fn tolerances() -> Tolerances<f64> {
        Tolerances {
            orthogonality: 1e-8,
            integrality: 1e-6,
            eigen_separation: 1e-8,
        }
    }
}

impl Scalar for f32 {
    fn tolerances() -> Tolerances<f32> {
        Tolerances {
            orthogonality: 1e-3,
            integrality: 1e-2,
            eigen_separation: 1e-4,
        }
    }
}
