//! Arbitrary-precision complex scalars and univariate polynomial machinery.

pub mod bivariate;
pub mod linalg;
pub mod newton;
pub mod poly;
pub mod resultant;
pub mod roots;
pub mod scalar;

pub use bivariate::BiPoly;
pub use newton::{coeffs_from_power_sums, leading_coeffs_from_power_sums, power_sums};
pub use poly::UniPoly;
pub use resultant::resultant;
pub use roots::{roots, RootSet};
pub use scalar::{Complex, Float, DEFAULT_PRECISION};
