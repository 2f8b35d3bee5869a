//! Coefficients of the product identities
//! `u^{(α)} u^{(β)} = Σ_n b_{α,β}(n) u^{(n)} + c_{α,β}`.
//!
//! The identities are driven by two families of `s`-dependent series:
//! `e_ℓ` (Bernoulli number plus an exponential sum) and
//! `F_ℓ = Σ_k k^{2+ℓ} / sinh²(kπ/s)`. Both converge like `e^{−2πk/s}` in
//! their direct form, so for `s > 1` the Poisson-summed forms in powers of
//! `1/sinh²(kπs)` are used instead.

mod series;
mod sums;
mod table;
mod verify;

pub use series::{SeriesForm, SeriesRep, SeriesValue, SERIES_TOL};
pub use sums::{
    csch2_moment_identity, e_ell, exp_moment_identity, f_sum, ramanujan_identity, PoissonPair,
    LARGE_S_E_ORDERS, LARGE_S_F_ORDERS,
};
pub use table::{b_symbol, coeff_a, coeff_table, BSymbol, leading_coefficient, CoeffTable, MAX_TABLE_ORDER};
pub use verify::{
    convolution_kmax, verify_convolution, verify_convolution_with, verify_identity,
    SingularConvention,
};
