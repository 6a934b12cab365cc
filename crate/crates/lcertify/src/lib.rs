//! Certified numerics for L-functions: explicit strip bounds, the constants
//! behind them, completed L-values on a Fourier grid, and Turing-method
//! zero-count certificates.
//!
//! Everything is computed in midpoint-radius enclosures ([`ball::Ball`],
//! [`ball::CBall`]); analytic truncation errors (series tails, aliasing,
//! quadrature remainders) are added to the radii explicitly, so every result
//! is an enclosure of the exact quantity under the stated hypotheses.

pub mod ball;
pub mod error;
pub mod gfunc;
pub mod grid;
pub mod series;
pub mod turing;
pub mod special;
pub(crate) mod xf;
pub mod bounds;
pub mod constants;
pub mod descriptor;
pub mod quad;
pub mod s_integral;

pub use ball::{Ball, CBall};
pub use error::{Error, Result};
