//! Harmonic and holomorphic functions on the unit disk, represented by
//! truncated two-sided power series
//!
//! ```text
//! h(z) = sum_{n >= 0} a(n) z^n + sum_{n < 0} a(n) conj(z)^{-n}
//! ```
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar.

pub mod boundary;
pub mod circle;
pub mod cli;
pub mod error;
pub mod io;
pub mod means;
pub mod normal;
pub mod random;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::Real;
pub use series::{CirclePoint, DiskPoint, LaurentCoefficients};

pub type Laurent = LaurentCoefficients<f64>;
pub type LaurentF32 = LaurentCoefficients<f32>;
pub type Disk = DiskPoint<f64>;
pub type DiskF32 = DiskPoint<f32>;
pub type Circle = CirclePoint<f64>;
pub type CircleF32 = CirclePoint<f32>;
pub type Samples = boundary::BoundarySamples<f64>;
pub type SamplesF32 = boundary::BoundarySamples<f32>;
pub type Matrix = circle::ComplexMatrix<f64>;
pub type MatrixF32 = circle::ComplexMatrix<f32>;
pub type Polynomial = circle::ComplexPolynomial<f64>;
pub type PolynomialF32 = circle::ComplexPolynomial<f32>;
pub type Gauge = means::ConvexGauge<f64>;
pub type GaugeF32 = means::ConvexGauge<f32>;
pub type Family = normal::FunctionFamily<f64>;
pub type FamilyF32 = normal::FunctionFamily<f32>;
