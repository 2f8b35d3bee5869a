use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::bernoulli_f64;

use super::series::{coth, csch2, sum_series, SeriesForm, SeriesRep, SeriesValue, SERIES_TOL};

/// Orders `ℓ` of `e_ℓ` with a large-`s` closed form.
pub const LARGE_S_E_ORDERS: [usize; 4] = [2, 4, 6, 8];
/// Orders `ℓ` of `F_ℓ` with a large-`s` closed form.
pub const LARGE_S_F_ORDERS: [usize; 3] = [0, 2, 4];

/// `(∂/∂k)^{2n} csch²(ak) = a^{2n} Σ_i P[n][i] csch^{2(i+1)}(ak)`.
const CSCH2_DERIVATIVES: [&[f64]; 4] = [
    &[1.0],
    &[4.0, 6.0],
    &[16.0, 120.0, 120.0],
    &[64.0, 2016.0, 6720.0, 5040.0],
];

fn check_shape(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("shape parameter s = {s} must be positive")))
    }
}

fn resolve(rep: SeriesRep, s: f64, has_large_form: bool) -> Result<SeriesForm> {
    match rep {
        SeriesRep::SmallS => Ok(SeriesForm::SmallS),
        SeriesRep::LargeS if has_large_form => Ok(SeriesForm::LargeS),
        SeriesRep::LargeS => Err(Error::Capability(
            "no large-s closed form for this order".into(),
        )),
        SeriesRep::Auto if s > 1.0 && has_large_form => Ok(SeriesForm::LargeS),
        SeriesRep::Auto => Ok(SeriesForm::SmallS),
    }
}

/// `Σ_{k≥1} Σ_i P[n][i] csch^{2(i+1)}(kπs)`
fn csch2_derivative_sum(s: f64, n: usize, tol: f64) -> (f64, usize, f64) {
    let poly = CSCH2_DERIVATIVES[n];
    let out = sum_series(
        |k| {
            let w = csch2(k as f64 * PI * s);
            poly.iter().rev().fold(0.0, |acc, &c| acc * w + c) * w
        },
        tol,
    );
    (out.sum, out.terms, out.tail_bound)
}

/// `e_ℓ(s) = (1 + (−1)^ℓ) (B_ℓ/ℓ + 2 Σ_{k≥1} k^{ℓ−1} / (1 − e^{2πk/s}))`.
///
/// Odd orders are exactly zero. `LargeS` uses the Poisson-summed form
/// `e_{2n+2} = δ_{n0} s/π + (−1)^{n+1} s^{2n+2} (B_{2n+2}/(n+1) − 4^{−n} Σ_k ∂^{2n} csch²)`,
/// available for `ℓ ∈ {2, 4, 6, 8}`.
pub fn e_ell(s: f64, ell: usize, rep: SeriesRep) -> Result<SeriesValue> {
    check_shape(s)?;
    if ell < 2 {
        return Err(Error::Domain(format!("e_ℓ needs ℓ ≥ 2, got {ell}")));
    }
    let form = resolve(rep, s, ell % 2 == 1 || LARGE_S_E_ORDERS.contains(&ell))?;
    if ell % 2 == 1 {
        return Ok(SeriesValue::exact(0.0, form));
    }
    let bernoulli = bernoulli_f64(ell)?;
    match form {
        SeriesForm::SmallS => {
            let exponent = (ell - 1) as i32;
            let out = sum_series(
                |k| {
                    let x = 2.0 * PI * k as f64 / s;
                    // 1/(1 − e^x) = −e^{−x}/(1 − e^{−x})
                    -(k as f64).powi(exponent) * (-x).exp() / -(-x).exp_m1()
                },
                SERIES_TOL / 4.0,
            );
            Ok(SeriesValue {
                value: 2.0 * bernoulli / ell as f64 + 4.0 * out.sum,
                rep: form,
                terms_used: out.terms,
                tail_bound: 4.0 * out.tail_bound,
            })
        }
        SeriesForm::LargeS => {
            let n = ell / 2 - 1;
            let scale = s.powi(ell as i32);
            let inner_scale = scale / 4f64.powi(n as i32);
            let (sum, terms, tail) = csch2_derivative_sum(s, n, SERIES_TOL / inner_scale.max(1.0));
            let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
            let delta = if n == 0 { s / PI } else { 0.0 };
            let body = scale * bernoulli / (n + 1) as f64 - inner_scale * sum;
            Ok(SeriesValue {
                value: delta + sign * body,
                rep: form,
                terms_used: terms,
                tail_bound: inner_scale * tail,
            })
        }
    }
}

/// `F_ℓ(s) = Σ_{k∈ℤ} k^{2+ℓ} / sinh²(kπ/s)`, with `(s/π)²` at `k = 0` for `ℓ = 0`.
///
/// `LargeS` is available for `ℓ ∈ {0, 2, 4}`.
pub fn f_sum(s: f64, ell: usize, rep: SeriesRep) -> Result<SeriesValue> {
    check_shape(s)?;
    let form = resolve(rep, s, ell % 2 == 1 || LARGE_S_F_ORDERS.contains(&ell))?;
    if ell % 2 == 1 {
        return Ok(SeriesValue::exact(0.0, form));
    }
    match form {
        SeriesForm::SmallS => {
            let exponent = (2 + ell) as i32;
            let out = sum_series(
                |k| (k as f64).powi(exponent) * csch2(PI * k as f64 / s),
                SERIES_TOL / 2.0,
            );
            let zero_mode = if ell == 0 { (s / PI).powi(2) } else { 0.0 };
            Ok(SeriesValue {
                value: zero_mode + 2.0 * out.sum,
                rep: form,
                terms_used: out.terms,
                tail_bound: 2.0 * out.tail_bound,
            })
        }
        SeriesForm::LargeS => {
            let e = e_ell(s, ell + 2, SeriesRep::LargeS)?;
            let a = PI * s;
            let scale = s.powi(3 + ell as i32) / PI;
            let kernel: fn(f64) -> f64 = match ell {
                0 => |x| 2.0 * x * coth(x) * csch2(x),
                2 => |x| {
                    let (t, w) = (coth(x), csch2(x));
                    -x * (4.0 * t * w * w + 2.0 * t * t * t * w)
                },
                _ => |x| {
                    let (t, w) = (coth(x), csch2(x));
                    let t2 = t * t;
                    x * (17.0 * t * w * w * w + 26.0 * t2 * t * w * w + 2.0 * t2 * t2 * t * w)
                },
            };
            let out = sum_series(|k| kernel(a * k as f64), SERIES_TOL / scale.max(1.0));
            let constant = if ell == 0 { 2.0 * s * s / (PI * PI) } else { 0.0 };
            let value = -((ell + 2) as f64) * s / PI * e.value + constant + scale * out.sum;
            Ok(SeriesValue {
                value,
                rep: form,
                terms_used: out.terms + e.terms_used,
                tail_bound: scale * out.tail_bound + (ell + 2) as f64 * s / PI * e.tail_bound,
            })
        }
    }
}

/// The two sides of a summation identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonPair {
    /// Slowly converging direct sum.
    pub direct: f64,
    /// Poisson-transformed evaluation.
    pub transformed: f64,
}

impl PoissonPair {
    pub fn discrepancy(&self) -> f64 {
        (self.direct - self.transformed).abs()
    }
}

/// `Σ_{k≥1} k^{2n+1} / (1 − e^{2πk/s})` directly and after Poisson summation
/// on the half line, for `n ≤ 3`.
pub fn exp_moment_identity(s: f64, n: usize) -> Result<PoissonPair> {
    check_shape(s)?;
    if n >= CSCH2_DERIVATIVES.len() {
        return Err(Error::Capability(format!("exp moment identity for n = {n}")));
    }
    let exponent = (2 * n + 1) as i32;
    let direct = sum_series(
        |k| {
            let x = 2.0 * PI * k as f64 / s;
            -(k as f64).powi(exponent) * (-x).exp() / -(-x).exp_m1()
        },
        SERIES_TOL,
    )
    .sum;
    let bernoulli = bernoulli_f64(2 * n + 2)?;
    let power = s.powi(2 * n as i32 + 2);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let inner_scale = power / (4.0 * 4f64.powi(n as i32));
    let (sum, _, _) = csch2_derivative_sum(s, n, SERIES_TOL / inner_scale.max(1.0));
    let delta = if n == 0 { s / (4.0 * PI) } else { 0.0 };
    let transformed = delta
        + bernoulli / (4.0 * (n + 1) as f64) * (-sign * power - 1.0)
        + sign * inner_scale * sum;
    Ok(PoissonPair {
        direct,
        transformed,
    })
}

/// `Σ_{k≥1} k^{2n+2} / sinh²(kπ/s)` directly and after Poisson summation, for `n ≤ 2`.
///
/// The transformed side includes the half-value `f(0⁺)/2 = s²/(2π²)` of the
/// summand at the origin, which only contributes for `n = 0`.
pub fn csch2_moment_identity(s: f64, n: usize) -> Result<PoissonPair> {
    check_shape(s)?;
    if n > 2 {
        return Err(Error::Capability(format!("csch² moment identity for n = {n}")));
    }
    let exponent = (2 * n + 2) as i32;
    let direct = sum_series(
        |k| (k as f64).powi(exponent) * csch2(PI * k as f64 / s),
        SERIES_TOL,
    )
    .sum;
    // (∂/∂a)^{2n} [(a coth a − 1) csch² a]
    let kernel: fn(f64) -> f64 = match n {
        0 => |a| (a * coth(a) - 1.0) * csch2(a),
        1 => |a| {
            let (t, w) = (coth(a), csch2(a));
            a * t * (4.0 * w + 12.0 * w * w) - 8.0 * w - 12.0 * w * w
        },
        _ => |a| {
            let (t, w) = (coth(a), csch2(a));
            let (w2, w3) = (w * w, w * w * w);
            a * t * (16.0 * w + 240.0 * w2 + 360.0 * w3) - 48.0 * w - 360.0 * w2 - 360.0 * w3
        },
    };
    let power = s.powi(2 * n as i32);
    let prefactor = s.powi(3) / PI;
    let inner_scale = prefactor * power / 4f64.powi(n as i32);
    let sum = sum_series(|k| kernel(PI * s * k as f64), SERIES_TOL / inner_scale.max(1.0)).sum;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let half_origin = if n == 0 { s * s / (2.0 * PI * PI) } else { 0.0 };
    let transformed = sign
        * (prefactor * power * bernoulli_f64(2 * n + 2)? + inner_scale * sum)
        - half_origin;
    Ok(PoissonPair {
        direct,
        transformed,
    })
}

/// Both sides of `Σ_{k≥1} k^{4m}/sinh²(kπ) = −B_{4m}/(2π) − (4m/π) Σ_{k≥1} k^{4m−1}/(1 − e^{2πk})`,
/// each series truncated at `terms` terms.
pub fn ramanujan_identity(m: usize, terms: usize) -> Result<PoissonPair> {
    if m == 0 {
        return Err(Error::Domain("Ramanujan identity needs m ≥ 1".into()));
    }
    let power = 4 * m;
    let direct: f64 = (1..=terms)
        .rev()
        .map(|k| (k as f64).powi(power as i32) * csch2(PI * k as f64))
        .sum();
    let exp_sum: f64 = (1..=terms)
        .rev()
        .map(|k| {
            let x = 2.0 * PI * k as f64;
            -(k as f64).powi(power as i32 - 1) * (-x).exp() / -(-x).exp_m1()
        })
        .sum();
    let transformed = -bernoulli_f64(power)? / (2.0 * PI) - power as f64 / PI * exp_sum;
    Ok(PoissonPair {
        direct,
        transformed,
    })
}
