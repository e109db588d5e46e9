//! Fourier-analytic tools for sum-product estimates over dense subsets of
//! prime fields.
//!
//! The numerical core is generic over the real scalar ([`Scalar`]: `f32` or
//! `f64`); the extremal constant `f(alpha)` is evaluated in exact rational
//! arithmetic. The aliases below fix the common choices.

pub mod error;
pub mod group;
pub mod regularity;
pub mod scalar;
pub mod setops;
pub mod spectral;
pub mod sumprod;
pub mod verify;

pub use error::{Error, Result};
pub use group::{mul_subgroup, CharIndex, GroupSpec, MulStructure};
pub use scalar::Scalar;
pub use setops::GSet;
pub use spectral::{GridFunction, Spectrum};

pub type GridFunction64 = GridFunction<f64>;
pub type GridFunction32 = GridFunction<f32>;
pub type Spectrum64 = Spectrum<f64>;
pub type Spectrum32 = Spectrum<f32>;
/// Exact rationals used for densities and thresholds.
pub type Rational = num_rational::Ratio<i64>;
