//! Exact scalars: rationals and cyclotomic field elements.

mod approx;
mod cyclo;

pub use approx::cyclo_approx;
pub use cyclo::{cyclotomic_poly, Cyclo};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
