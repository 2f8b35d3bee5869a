use std::f64::consts::PI;

use crate::basis::{eval_grid, fourier_coeff, uniform_grid, CnoidalParam, RepPolicy, MAX_DERIVATIVE};
use crate::error::{Error, Result};

use super::table::{coeff_a, coeff_table};

/// How the brute-force convolution treats `k = 0` and `k = −j`, where a
/// `sinh` in the denominator vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularConvention {
    /// Use the limiting value of `k^{1+α}/sinh(kπ/s)`: `s/π` if the power is 1, else 0.
    Limit,
    /// Drop both points from the sum.
    Skip,
}

/// Half-width of the convolution sum needed for the summand to fall below `1e-18`.
pub fn convolution_kmax(alpha: usize, beta: usize, j: i64, s: f64) -> i64 {
    let lambda = PI / s;
    let power = (2 + alpha + beta) as i32;
    let ja = j.unsigned_abs() as f64;
    let norm = -(-2.0 * lambda).exp_m1();
    let mut k = ja + 1.0;
    loop {
        // |k|^{1+α} |k+j|^{1+β} / |sinh sinh| ≤ (|k|+|j|)^{2+α+β} 4e^{−λ(2|k|−|j|)} / (1−e^{−2λ})²
        let bound = (k + ja).powi(power) * 4.0 * (-lambda * (2.0 * k - ja)).exp() / (norm * norm);
        if bound < 1e-18 && k > ja + power as f64 / lambda {
            return k as i64 + 2;
        }
        k += 1.0;
    }
}

/// `|LHS − RHS|` of the discrete convolution formula
/// `Σ_k U_α(k) U_β(k+j) = Σ_n a_{α,β}(n) j^{1+n}/sinh(jπ/s)` with `U_n(k) = k^{1+n}/sinh(kπ/s)`.
pub fn verify_convolution(alpha: usize, beta: usize, j: i64, s: f64, k_max: i64) -> Result<f64> {
    verify_convolution_with(alpha, beta, j, s, k_max, SingularConvention::Limit)
}

pub fn verify_convolution_with(
    alpha: usize,
    beta: usize,
    j: i64,
    s: f64,
    k_max: i64,
    convention: SingularConvention,
) -> Result<f64> {
    if j == 0 {
        return Err(Error::Domain("the convolution formula requires j ≠ 0".into()));
    }
    if k_max < j.abs() {
        return Err(Error::Domain(format!("k_max = {k_max} must be at least |j| = {}", j.abs())));
    }
    let param = CnoidalParam::new(s)?;
    let lhs: f64 = (-k_max..=k_max)
        .filter(|&k| convention == SingularConvention::Limit || (k != 0 && k != -j))
        .map(|k| fourier_coeff(&param, alpha, k) * fourier_coeff(&param, beta, k + j))
        .sum();
    let mut rhs = 0.0;
    for n in 0..=(2 + alpha + beta) {
        rhs += coeff_a(alpha, beta, n, s)? * fourier_coeff(&param, n, j);
    }
    Ok((lhs - rhs).abs())
}

/// Maximum over a uniform grid of `|u^{(α)} u^{(β)} − Σ_n b(n) u^{(n)} − c|`.
pub fn verify_identity(alpha: usize, beta: usize, s: f64, grid_size: usize) -> Result<f64> {
    if grid_size < 8 {
        return Err(Error::Domain(format!("grid size {grid_size} below 8")));
    }
    if 2 + alpha + beta > MAX_DERIVATIVE {
        return Err(Error::Capability(format!(
            "identity needs u^({}) beyond the evaluation cap {MAX_DERIVATIVE}",
            2 + alpha + beta
        )));
    }
    let table = coeff_table(alpha, beta, s)?;
    let param = CnoidalParam::new(s)?.with_policy(RepPolicy::Auto);
    let xs = uniform_grid(grid_size);
    let derivs = (0..=(2 + alpha + beta))
        .map(|n| eval_grid(&param, &xs, n))
        .collect::<Result<Vec<_>>>()?;
    let residual = (0..grid_size)
        .map(|i| {
            let lhs = derivs[alpha][i] * derivs[beta][i];
            let rhs: f64 = table
                .b
                .iter()
                .zip(&derivs)
                .map(|(bn, un)| bn * un[i])
                .sum::<f64>()
                + table.c;
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max);
    Ok(residual)
}
