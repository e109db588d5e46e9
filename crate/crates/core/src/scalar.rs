use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};
use rustfft::FftNum;

/// Real scalar backing every complex-valued computation: `f32` or `f64`.
///
/// All tolerances quoted in the test suites are stated for `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumCast + FftNum + Debug + Default + Send + Sync + 'static
{
    /// Lossless-enough conversion from a count or index.
    fn of_usize(n: usize) -> Self {
        <Self as NumCast>::from(n).expect("usize is representable as a float")
    }

    fn of_f64(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("f64 is representable as a float")
    }

    fn to_f64_lossy(self) -> f64 {
        NumCast::from(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
