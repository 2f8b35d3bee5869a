//! Least-squares expansion of periodic functions in `{1, u_s, u_s', …, u_s^(N)}`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::basis::{fourier_grid, uniform_grid, CnoidalParam};
use crate::coefficients::{f_sum, SeriesRep};
use crate::error::{Error, Result};

/// Coefficients of a projection, constant term first.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    pub s: f64,
    /// Highest derivative order in the basis.
    pub n: usize,
    /// `N + 2` coefficients for `[1, u, u', …, u^(N)]`.
    pub coeffs: Vec<f64>,
    /// Root-mean-square misfit on the sample grid.
    pub l2_residual: f64,
    /// Eigenvalue ratio of the unit-diagonal Gram matrix.
    pub gram_condition: f64,
    /// Set when `sinh(π/2s) < 1`, where completeness is not guaranteed.
    pub threshold_warning: bool,
}

/// `sinh(π/(2s)) ≥ 1`.
pub fn basis_threshold(s: f64) -> bool {
    (PI / (2.0 * s)).sinh() >= 1.0
}

/// `f_j^n(k) = sinh(λj)/sinh(λk) · Π_{i=−n, i∉{0,j}}^{n} (k−i)/(j−i)` with `λ = π/s`.
pub fn lagrange_approximant(s: f64, j: i64, n: i64, k: i64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s must be positive and finite, got {s}")));
    }
    if j == 0 || n < j.abs() {
        return Err(Error::Domain(format!("need j ≠ 0 and n ≥ |j|, got j = {j}, n = {n}")));
    }
    if k == 0 {
        return Err(Error::Domain("k = 0 is carried by the constant basis function".into()));
    }
    let lambda = PI / s;
    let (ja, ka) = (j.unsigned_abs() as f64, k.unsigned_abs() as f64);
    // sinh(λj)/sinh(λk) = ±e^{λ(|j|−|k|)} (1 − e^{−2λ|j|}) / (1 − e^{−2λ|k|})
    let mut value = (lambda * (ja - ka)).exp() * (-2.0 * lambda * ja).exp_m1() / (-2.0 * lambda * ka).exp_m1();
    if (j < 0) != (k < 0) {
        value = -value;
    }
    for i in -n..=n {
        if i != 0 && i != j {
            value *= (k - i) as f64 / (j - i) as f64;
        }
    }
    Ok(value)
}

/// `Σ_{|k|>n} |f_j^n(k)|²`.
pub fn lagrange_tail(s: f64, j: i64, n: i64) -> Result<f64> {
    let mut sum = 0.0;
    let mut k = n + 1;
    loop {
        let t = lagrange_approximant(s, j, n, k)?.powi(2) + lagrange_approximant(s, j, n, -k)?.powi(2);
        sum += t;
        if (t <= 1e-20 * sum && k > 2 * n + (4.0 * s) as i64) || !t.is_finite() || k > 1_000_000 {
            break;
        }
        k += 1;
    }
    Ok(sum)
}

/// `(1/2π) ∫ b_i b_j` for the basis `[1, u, u', …, u^(N)]`, from Parseval.
pub fn gram_matrix(s: f64, n: usize) -> Result<DMatrix<f64>> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s must be positive and finite, got {s}")));
    }
    let size = n + 2;
    let mut f_values = Vec::with_capacity(2 * n + 1);
    for ell in 0..=2 * n {
        f_values.push(f_sum(s, ell, SeriesRep::SmallS)?.value);
    }
    let mut g = DMatrix::zeros(size, size);
    g[(0, 0)] = 1.0;
    g[(0, 1)] = s / PI;
    g[(1, 0)] = s / PI;
    for a in 0..=n {
        for b in 0..=n {
            if (a + b) % 2 == 1 {
                continue;
            }
            // Σ c_k² (−ik)^a (ik)^b = (−1)^{(a−b)/2} F_{a+b}
            let half = (a as i64 - b as i64) / 2;
            let sign = if half.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            g[(a + 1, b + 1)] = sign * f_values[a + b];
        }
    }
    Ok(g)
}

fn condition(g: &DMatrix<f64>) -> f64 {
    let d: Vec<f64> = (0..g.nrows()).map(|i| g[(i, i)].sqrt()).collect();
    let scaled = DMatrix::from_fn(g.nrows(), g.ncols(), |i, j| g[(i, j)] / (d[i] * d[j]));
    let eig = SymmetricEigen::new(scaled).eigenvalues;
    let max = eig.max();
    let min = eig.min();
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Least-squares fit of uniform samples on `[0, 2π)` by `[1, u, u', …, u^(N)]`.
///
/// Columns are scaled to unit norm and the sampled system is solved by SVD.
pub fn project(samples: &[f64], s: f64, n: usize) -> Result<ProjectionResult> {
    let m = samples.len();
    if m < 64 || !m.is_power_of_two() {
        return Err(Error::Domain(format!("need a power-of-two sample count ≥ 64, got {m}")));
    }
    if let Some(bad) = samples.iter().find(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("sample {bad} is not finite")));
    }
    let param = CnoidalParam::new(s)?;
    let gram = gram_matrix(s, n)?;
    let gram_condition = condition(&gram);
    let threshold_warning = !basis_threshold(s);
    let size = n + 2;
    if samples.iter().all(|&v| v == 0.0) {
        return Ok(ProjectionResult {
            s,
            n,
            coeffs: vec![0.0; size],
            l2_residual: 0.0,
            gram_condition,
            threshold_warning,
        });
    }
    let xs = uniform_grid(m);
    let norms: Vec<f64> = (0..size).map(|i| gram[(i, i)].sqrt()).collect();
    let mut design = DMatrix::zeros(m, size);
    for r in 0..m {
        design[(r, 0)] = 1.0;
    }
    for order in 0..=n {
        let col = fourier_grid(&param, &xs, order);
        for (r, v) in col.into_iter().enumerate() {
            design[(r, order + 1)] = v / norms[order + 1];
        }
    }
    let rhs = DVector::from_column_slice(samples);
    let svd = design.clone().svd(true, true);
    let cutoff = svd.singular_values.max() * f64::EPSILON * m.max(size) as f64;
    let scaled = svd.solve(&rhs, cutoff).map_err(|e| Error::Verification(e.to_string()))?;
    let fitted = &design * &scaled;
    let l2_residual = ((rhs - fitted).norm_squared() / m as f64).sqrt();
    let coeffs = scaled.iter().zip(&norms).map(|(c, nrm)| c / nrm).collect();
    Ok(ProjectionResult {
        s,
        n,
        coeffs,
        l2_residual,
        gram_condition,
        threshold_warning,
    })
}
