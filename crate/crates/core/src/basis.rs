//! Evaluation of `u_s` and its derivatives.
//!
//! Three equivalent forms are available:
//!
//! - Fourier: `u_s(x) = Σ_k k/sinh(kπ/s) e^{−ikx}`, with the `k = 0` term
//!   read as `s/π`. This form is exact for every derivative order.
//! - Soliton train: `u_s(x) = (s²/2) Σ_n sech²(s(x − 2πn)/2)`, which converges
//!   fastest for large `s`. Orders 0, 1 and 2 have closed forms.
//! - Elliptic: `u_s(x) = s/π + 2K²(1−m)/π² − 2KE/π² + (2mK²/π²) cn²(Kx/π; m)`
//!   with `s = K(m)/K(1−m)`. Order 0 only.
//!
//! Derivatives use the sign convention `e^{−ikx}` with factor `(−ik)^n`;
//! because `u_s` is even this is the same real function as the `e^{+ikx}`
//! form, and odd orders are odd functions.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::special::{
    jacobi_cn, modulus_from_s, modulus_from_s_with, EllipticModulus, IntegrandConvention,
    ELLIPTIC_CONVENTION,
};

/// Highest derivative order `eval_u` accepts.
pub const MAX_DERIVATIVE: usize = 16;

/// Relative target for the truncated Fourier and soliton sums.
const EVAL_TOL: f64 = 1e-17;

/// Which representation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepPolicy {
    /// Fourier for `s ≤ 1`, soliton train for `s > 1`.
    Auto,
    Fourier,
    SolitonTrain,
    Elliptic,
}

/// The representation actually used for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Fourier,
    SolitonTrain,
    Elliptic,
}

/// The shape parameter `s` and what is derived from it.
#[derive(Debug)]
pub struct CnoidalParam {
    s: f64,
    lambda: f64,
    policy: RepPolicy,
    modulus: OnceLock<Result<EllipticModulus>>,
}

impl Clone for CnoidalParam {
    fn clone(&self) -> Self {
        let modulus = OnceLock::new();
        if let Some(m) = self.modulus.get() {
            let _ = modulus.set(m.clone());
        }
        Self {
            s: self.s,
            lambda: self.lambda,
            policy: self.policy,
            modulus,
        }
    }
}

impl CnoidalParam {
    pub fn new(s: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Domain(format!("shape parameter s = {s} must be positive")));
        }
        Ok(Self {
            s,
            lambda: PI / s,
            policy: RepPolicy::Auto,
            modulus: OnceLock::new(),
        })
    }

    pub fn with_policy(mut self, policy: RepPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `λ = π/s`, the decay rate of the Fourier coefficients.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn policy(&self) -> RepPolicy {
        self.policy
    }

    /// Elliptic parameter with `K(m)/K(1−m) = s`, computed on first use.
    pub fn modulus(&self) -> Result<&EllipticModulus> {
        self.modulus
            .get_or_init(|| modulus_from_s(self.s))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Representation that `eval_u` will use for derivative order `n`.
    pub fn resolve(&self, n: usize) -> Representation {
        match self.policy {
            RepPolicy::Fourier => Representation::Fourier,
            RepPolicy::SolitonTrain if n <= 2 => Representation::SolitonTrain,
            RepPolicy::Elliptic if n == 0 => Representation::Elliptic,
            RepPolicy::Auto if self.s > 1.0 && n <= 2 => Representation::SolitonTrain,
            _ => Representation::Fourier,
        }
    }
}

/// Fourier coefficient `U_n(k) = k^{1+n} / sinh(kπ/s)` of `u_s^{(n)}`, up to
/// the phase `(−i)^n`. At `k = 0` this is `s/π` for `n = 0` and zero otherwise.
pub fn fourier_coeff(param: &CnoidalParam, n: usize, k: i64) -> f64 {
    coeff(param.lambda, param.s, n, k)
}

fn coeff(lambda: f64, s: f64, n: usize, k: i64) -> f64 {
    if k == 0 {
        return if n == 0 { s / PI } else { 0.0 };
    }
    let kf = k as f64;
    let x = lambda * kf.abs();
    // 1/sinh(x) = 2e^{-x} / (1 - e^{-2x})
    let inv_sinh = 2.0 * (-x).exp() / -(-2.0 * x).exp_m1();
    let value = kf.abs().powi(1 + n as i32) * inv_sinh;
    // k^{1+n}/sinh(λk) has parity (-1)^n in k
    if k < 0 && n % 2 == 1 {
        -value
    } else {
        value
    }
}

/// Tail bound `|k|^{1+n} · 2e^{−|k|λ} / (1 − e^{−2λ})` on `|U_n(k)|`.
pub fn coeff_bound(param: &CnoidalParam, n: usize, k: i64) -> f64 {
    bound_term(param.lambda, n, k.unsigned_abs() as f64)
}

fn bound_term(lambda: f64, n: usize, k: f64) -> f64 {
    k.powi(1 + n as i32) * 2.0 * (-k * lambda).exp() / -(-2.0 * lambda).exp_m1()
}

/// Smallest `K` such that `Σ_{|k|>K}` of the coefficient bound is below `tol`.
pub fn truncation_k(param: &CnoidalParam, n: usize, tol: f64) -> Result<usize> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain(format!("truncation tolerance {tol} outside (0, 1)")));
    }
    Ok(truncation_abs(param.lambda, n, tol))
}

fn truncation_abs(lambda: f64, n: usize, tol: f64) -> usize {
    let peak = ((1 + n) as f64 / lambda).ceil().max(1.0) as usize;
    let mut terms = vec![0.0_f64];
    let mut k = 1usize;
    // terms k^{1+n} e^{-kλ} have a decreasing ratio past the peak, so the
    // remainder after the last stored term is at most t·r/(1−r)
    let remainder = loop {
        let t = bound_term(lambda, n, k as f64);
        terms.push(t);
        if k > peak {
            let r = bound_term(lambda, n, (k + 1) as f64) / t;
            if r < 1.0 && t < 1e-3 * tol {
                break if t == 0.0 { 0.0 } else { t * r / (1.0 - r) };
            }
        }
        k += 1;
    };
    let mut tail = 2.0 * remainder;
    let mut cutoff = terms.len() - 1;
    while cutoff >= 1 {
        let with_term = tail + 2.0 * terms[cutoff];
        if with_term >= tol {
            break;
        }
        tail = with_term;
        cutoff -= 1;
    }
    cutoff.max(1)
}

/// `Σ_k |U_n(k)|`, the natural magnitude of `u_s^{(n)}`.
pub fn fourier_scale(param: &CnoidalParam, n: usize) -> f64 {
    let peak = ((1 + n) as f64 / param.lambda).ceil() as i64;
    let mut sum = fourier_coeff(param, n, 0).abs();
    let mut k = 1i64;
    loop {
        let t = 2.0 * fourier_coeff(param, n, k).abs();
        sum += t;
        if k > peak && t <= 1e-18 * sum {
            break;
        }
        k += 1;
    }
    sum
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_DERIVATIVE {
        return Err(Error::Capability(format!(
            "derivative order {n} exceeds cap {MAX_DERIVATIVE}"
        )));
    }
    Ok(())
}

/// Maps `x` into `[−π, π]`.
fn reduce(x: f64) -> f64 {
    x - TAU * (x / TAU).round()
}

/// `u_s^{(n)}(x)` using the parameter's representation policy.
pub fn eval_u(param: &CnoidalParam, x: f64, n: usize) -> Result<f64> {
    Ok(eval_grid(param, &[x], n)?[0])
}

/// `u_s^{(n)}` on many points, sharing one truncation.
pub fn eval_grid(param: &CnoidalParam, xs: &[f64], n: usize) -> Result<Vec<f64>> {
    check_order(n)?;
    if let Some(bad) = xs.iter().find(|x| !x.is_finite()) {
        return Err(Error::Domain(format!("evaluation point {bad} is not finite")));
    }
    match param.resolve(n) {
        Representation::Fourier => {
            let cutoff = fourier_cutoff(param, n);
            Ok(xs.iter().map(|&x| fourier_sum(param, x, n, cutoff)).collect())
        }
        Representation::SolitonTrain => {
            let images = soliton_images(param.s);
            Ok(xs.iter().map(|&x| soliton_sum(param.s, x, n, images)).collect())
        }
        Representation::Elliptic => {
            let modulus = *param.modulus()?;
            xs.iter()
                .map(|&x| elliptic_value(param.s, x, &modulus))
                .collect()
        }
    }
}

/// Fourier evaluation of `u_s^{(n)}` without the derivative cap.
pub(crate) fn fourier_grid(param: &CnoidalParam, xs: &[f64], n: usize) -> Vec<f64> {
    let cutoff = fourier_cutoff(param, n);
    xs.iter().map(|&x| fourier_sum(param, x, n, cutoff)).collect()
}

/// `u_s(x)` from `cn²`, with `K`, `E` and `m` taken under `convention`.
pub fn eval_elliptic_with(
    param: &CnoidalParam,
    x: f64,
    convention: IntegrandConvention,
) -> Result<f64> {
    if convention == ELLIPTIC_CONVENTION {
        return elliptic_value(param.s, x, param.modulus()?);
    }
    let modulus = modulus_from_s_with(param.s, convention)?;
    elliptic_value(param.s, x, &modulus)
}

fn fourier_cutoff(param: &CnoidalParam, n: usize) -> usize {
    let tol = EVAL_TOL * fourier_scale(param, n).max(1.0);
    truncation_abs(param.lambda, n, tol)
}

fn fourier_sum(param: &CnoidalParam, x: f64, n: usize, cutoff: usize) -> f64 {
    let y = reduce(x);
    // d^n/dx^n cos(kx) = k^n cos(kx + nπ/2)
    let phase = |kx: f64| match n % 4 {
        0 => kx.cos(),
        1 => -kx.sin(),
        2 => -kx.cos(),
        _ => kx.sin(),
    };
    let mut sum = 0.0;
    for k in (1..=cutoff).rev() {
        sum += fourier_coeff(param, n, k as i64) * phase(k as f64 * y);
    }
    2.0 * sum + fourier_coeff(param, n, 0)
}

/// Number of images on each side: all `n` with `|x − 2πn| ≤ (2/s)·ln(4/tol)`.
fn soliton_images(s: f64) -> usize {
    let reach = 2.0 / s * (4.0 / EVAL_TOL).ln();
    ((reach + PI) / TAU).ceil() as usize
}

/// `(d/dy)^n [(s²/2) sech²(sy/2)]` for `n ≤ 2`.
fn soliton_term(s: f64, y: f64, n: usize) -> f64 {
    let z = 0.5 * s * y.abs();
    let e = (-2.0 * z).exp();
    let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    let tanh = (1.0 - e) / (1.0 + e) * y.signum();
    match n {
        0 => 0.5 * s * s * sech2,
        1 => -0.5 * s.powi(3) * sech2 * tanh,
        _ => 0.25 * s.powi(4) * sech2 * (2.0 - 3.0 * sech2),
    }
}

fn soliton_sum(s: f64, x: f64, n: usize, images: usize) -> f64 {
    let y = reduce(x);
    let mut sum = 0.0;
    for j in (1..=images).rev() {
        let shift = TAU * j as f64;
        sum += soliton_term(s, y - shift, n) + soliton_term(s, y + shift, n);
    }
    sum + soliton_term(s, y, n)
}

fn elliptic_value(s: f64, x: f64, modulus: &EllipticModulus) -> Result<f64> {
    let EllipticModulus {
        m,
        complement,
        k,
        e,
        ..
    } = *modulus;
    let cn = jacobi_cn(k * reduce(x) / PI, m)?;
    let pi2 = PI * PI;
    Ok(s / PI + 2.0 * k * k * complement / pi2 - 2.0 * k * e / pi2
        + 2.0 * m * k * k / pi2 * cn * cn)
}

/// `size` equally spaced points on `[0, 2π)`.
pub fn uniform_grid(size: usize) -> Vec<f64> {
    (0..size).map(|i| TAU * i as f64 / size as f64).collect()
}
