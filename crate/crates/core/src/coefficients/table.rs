use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::special::BERNOULLI_MAX_INDEX;

use super::series::SeriesRep;
use super::sums::{e_ell, f_sum};

/// Largest `α` or `β` accepted by [`coeff_table`].
pub const MAX_TABLE_ORDER: usize = 8;

/// Coefficients of `u^{(α)} u^{(β)} = Σ_n b(n) u^{(n)} + c` at one `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    pub alpha: usize,
    pub beta: usize,
    pub s: f64,
    /// Convolution coefficients `a_{α,β}(n)`, `n = 0..=2+α+β`.
    pub a: Vec<f64>,
    /// Product-identity coefficients `b_{α,β}(n)`, `n = 0..=2+α+β`.
    pub b: Vec<f64>,
    pub c: f64,
    /// `b(2+α+β) = −2(1+α)!(1+β)!/(3+α+β)!` as an exact fraction.
    pub leading: BigRational,
    /// The `e_ℓ` values that entered `b`.
    pub e_values: BTreeMap<usize, f64>,
    /// `F_{α+β}`, which entered `c`.
    pub f_value: f64,
}

/// `(1+α)!(1+β)!/(3+α+β)!` as `(1+β)! / ((2+α)(3+α)⋯(3+α+β))`.
fn factorial_ratio(alpha: usize, beta: usize) -> BigRational {
    let mut num = BigInt::one();
    for i in 2..=(1 + beta) {
        num *= BigInt::from(i);
    }
    let mut den = BigInt::one();
    for i in (2 + alpha)..=(3 + alpha + beta) {
        den *= BigInt::from(i);
    }
    BigRational::new(num, den)
}

/// Exact `a_{α,β}(2+α+β) = 2(−1)^α (1+α)!(1+β)!/(3+α+β)!`.
pub fn leading_coefficient(alpha: usize, beta: usize) -> BigRational {
    let value = factorial_ratio(alpha, beta) * BigInt::from(2);
    if alpha.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64).round()
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

fn check_orders(alpha: usize, beta: usize) -> Result<()> {
    if 2 + alpha + beta > BERNOULLI_MAX_INDEX {
        return Err(Error::Capability(format!(
            "orders α = {alpha}, β = {beta} need e_ℓ beyond ℓ = {BERNOULLI_MAX_INDEX}"
        )));
    }
    Ok(())
}

fn a_with(
    alpha: usize,
    beta: usize,
    n: usize,
    s: f64,
    e_of: &mut impl FnMut(usize) -> Result<f64>,
) -> Result<f64> {
    let top = 2 + alpha + beta;
    if n > top {
        return Err(Error::Domain(format!("n = {n} outside 0..={top}")));
    }
    if n == top {
        return Ok(crate::special::rational_to_f64(&leading_coefficient(alpha, beta)));
    }
    if n == top - 1 {
        return Ok(0.0);
    }
    let sign = if (alpha + beta).is_multiple_of(2) { -1.0 } else { 1.0 };
    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let weight = binomial(1 + alpha, 1 + n) + parity * binomial(1 + beta, 1 + n);
    let ell = top - n;
    let e = if ell % 2 == 1 || weight == 0.0 { 0.0 } else { e_of(ell)? };
    let alpha_sign = if alpha.is_multiple_of(2) { 1.0 } else { -1.0 };
    let deltas = alpha_sign * delta(alpha, n) * delta(beta, 0) + delta(beta, n) * delta(alpha, 0);
    Ok(sign * weight * e + s / PI * deltas)
}

/// `b_{α,β}(n)` written as `leading` (top order only) or `e·e_ℓ + p·s/π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSymbol {
    pub leading: Option<BigRational>,
    pub ell: usize,
    pub e_multiplier: i64,
    pub pi_multiplier: i64,
}

/// Symbolic form of `b_{α,β}(n)`, independent of `s`.
pub fn b_symbol(alpha: usize, beta: usize, n: usize) -> Result<BSymbol> {
    check_orders(alpha, beta)?;
    let top = 2 + alpha + beta;
    if n > top {
        return Err(Error::Domain(format!("n = {n} outside 0..={top}")));
    }
    let exponent = alpha as i64 - beta as i64 + n as i64;
    let b_sign = if exponent % 2 != 0 {
        0
    } else if (exponent / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    let mut out = BSymbol { leading: None, ell: top - n, e_multiplier: 0, pi_multiplier: 0 };
    if n == top {
        out.leading = Some(leading_coefficient(alpha, beta) * BigInt::from(b_sign));
        return Ok(out);
    }
    if n == top - 1 || b_sign == 0 {
        return Ok(out);
    }
    let sign = if (alpha + beta).is_multiple_of(2) { -1 } else { 1 };
    let parity = if n.is_multiple_of(2) { 1 } else { -1 };
    let weight = binomial(1 + alpha, 1 + n) as i64 + parity * binomial(1 + beta, 1 + n) as i64;
    if out.ell.is_multiple_of(2) {
        out.e_multiplier = b_sign * sign * weight;
    }
    let alpha_sign = if alpha.is_multiple_of(2) { 1 } else { -1 };
    let deltas = alpha_sign * (alpha == n && beta == 0) as i64 + (beta == n && alpha == 0) as i64;
    out.pi_multiplier = b_sign * deltas;
    Ok(out)
}

/// Convolution coefficient `a_{α,β}(n)` for `0 ≤ n ≤ 2+α+β`.
pub fn coeff_a(alpha: usize, beta: usize, n: usize, s: f64) -> Result<f64> {
    check_orders(alpha, beta)?;
    let mut e_of = |ell| e_ell(s, ell, SeriesRep::Auto).map(|v| v.value);
    a_with(alpha, beta, n, s, &mut e_of)
}

/// All coefficients of the `(α, β)` product identity.
pub fn coeff_table(alpha: usize, beta: usize, s: f64) -> Result<CoeffTable> {
    if alpha > MAX_TABLE_ORDER || beta > MAX_TABLE_ORDER {
        return Err(Error::Capability(format!(
            "coefficient tables are capped at α, β ≤ {MAX_TABLE_ORDER}"
        )));
    }
    check_orders(alpha, beta)?;
    let mut e_values = BTreeMap::new();
    let mut e_of = |ell: usize| -> Result<f64> {
        if let Some(&v) = e_values.get(&ell) {
            return Ok(v);
        }
        let v = e_ell(s, ell, SeriesRep::Auto)?.value;
        e_values.insert(ell, v);
        Ok(v)
    };
    let top = 2 + alpha + beta;
    let a = (0..=top)
        .map(|n| a_with(alpha, beta, n, s, &mut e_of))
        .collect::<Result<Vec<_>>>()?;
    let b: Vec<f64> = a
        .iter()
        .enumerate()
        .map(|(n, &an)| {
            let exponent = alpha as i64 - beta as i64 + n as i64;
            if exponent % 2 != 0 {
                0.0
            } else if (exponent / 2).rem_euclid(2) == 0 {
                an
            } else {
                -an
            }
        })
        .collect();
    let (c, f_value) = if (alpha + beta) % 2 == 1 {
        (0.0, 0.0)
    } else {
        let f = f_sum(s, alpha + beta, SeriesRep::Auto)?.value;
        let half = (alpha as i64 - beta as i64) / 2;
        let sign = if half.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        (sign * f - s / PI * b[0], f)
    };
    Ok(CoeffTable {
        alpha,
        beta,
        s,
        a,
        b,
        c,
        leading: -factorial_ratio(alpha, beta) * BigInt::from(2),
        e_values,
        f_value,
    })
}
