//! The cnoidal function `u_s` and the algebra it generates.
//!
//! `u_s` is a 2π-periodic, even function with a single shape parameter
//! `s > 0`. It can be written as a Fourier series with coefficients
//! `k / sinh(kπ/s)`, as a lattice sum of `sech²` solitary waves, or as an
//! affine image of `cn²`. Products `u_s^(α) · u_s^(β)` are again finite
//! linear combinations of derivatives of `u_s` plus a constant, which turns
//! travelling-wave problems for KdV-type equations into coefficient
//! comparison.
//!
//! Modules:
//! - [`special`]: Bernoulli numbers, complete elliptic integrals, `cn`, the `s ↔ m` map.
//! - [`basis`]: evaluation of `u_s^(n)` in each representation.
//! - [`coefficients`]: the series `e_ℓ`, `F_ℓ`, the product-identity coefficients and their checks.
//! - [`solvers`]: exact periodic travelling waves of KdV and Kawahara.
//! - [`projection`]: least-squares expansion of periodic functions in `{1, u_s, u_s', …}`.
//! - [`cli`]: the command-line front end.

pub mod basis;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod projection;
pub mod solvers;
pub mod special;

pub use basis::{CnoidalParam, RepPolicy};
pub use coefficients::{CoeffTable, SeriesRep, SeriesValue};
pub use error::{Error, Result};
pub use projection::ProjectionResult;
pub use solvers::{Equation, KawaharaSolution, TravellingWave};
