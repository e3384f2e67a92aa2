//! Reduction of polynomial equations to low-parameter resolvents.
//!
//! A monic degree-`n` polynomial is pushed through a Tschirnhaus
//! transformation `y = t_0 + t_1 x + ... + t_{n-2} x^{n-2} + x^{n-1}` whose
//! coefficients are chosen so that the first five coefficients of the
//! transformed equation vanish, using only auxiliary equations of degree
//! 2, 3, 4, 6 and one final equation of degree 20. After rescaling the
//! constant term to one, the output depends on `n - 6` coefficients.

pub mod conegeom;
pub mod elimination;
pub mod error;
pub mod forms;
pub mod io;
pub mod numerics;
pub mod pipeline;
pub mod rng;
pub mod trace;
pub mod tschirnhaus;

pub use error::{Error, Result};
