use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

/// Floating-point scalar the cone algebra is written over.
pub trait Real: Float + FloatConst + NumAssign + Sum + Default + Debug + Display + Send + Sync + 'static {
    /// Default comparison tolerance at this precision.
    const DEFAULT_EPS: f64;

    /// Converts a literal. Never fails for the implemented types.
    fn lit(v: f64) -> Self;

    fn as_f64(self) -> f64;
}

impl Real for f64 {
    const DEFAULT_EPS: f64 = 1e-9;

    #[inline]
    fn lit(v: f64) -> Self {
        v
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    const DEFAULT_EPS: f64 = 1e-5;

    #[inline]
    fn lit(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}
