//! Reference computations that share no code with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Trapezoid rule for a `period`-periodic integrand over one period.
pub fn periodic_trapezoid(f: impl Fn(f64) -> f64, period: f64, n: usize) -> f64 {
    let h = period / n as f64;
    (0..n).map(|i| f(i as f64 * h)).sum::<f64>() * h
}

/// `K(m) = ∫₀^{π/2} dθ / √(1 − m sin²θ)`, by the periodic trapezoid rule over `[0, π]`.
pub fn quad_k(m: f64) -> f64 {
    0.5 * periodic_trapezoid(|t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), PI, 4000)
}

pub fn quad_e(m: f64) -> f64 {
    0.5 * periodic_trapezoid(|t| (1.0 - m * t.sin().powi(2)).sqrt(), PI, 4000)
}

/// `∫₀^{π/2} dθ / √(1 − m sin θ)` by composite Gauss–Legendre on 400 panels.
pub fn quad_k_literal(m: f64) -> f64 {
    gauss_legendre(|t| 1.0 / (1.0 - m * t.sin()).sqrt(), 0.0, PI / 2.0, 400)
}

pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    // five-point rule
    let nodes = [
        0.0,
        0.538_469_310_105_683_1,
        -0.538_469_310_105_683_1,
        0.906_179_845_938_664,
        -0.906_179_845_938_664,
    ];
    let weights = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(weights) {
            sum += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * sum
}

/// `cn(z; m)` by classical RK4 on `sn' = cn dn, cn' = −sn dn, dn' = −m sn cn`.
pub fn rk4_cn(z: f64, m: f64) -> f64 {
    let steps = ((z.abs() / 2e-4).ceil() as usize).max(1);
    let h = z / steps as f64;
    let rhs = |y: [f64; 3]| [y[1] * y[2], -y[0] * y[2], -m * y[0] * y[1]];
    let mut y = [0.0, 1.0, 1.0];
    for _ in 0..steps {
        let k1 = rhs(y);
        let k2 = rhs([0, 1, 2].map(|i| y[i] + 0.5 * h * k1[i]));
        let k3 = rhs([0, 1, 2].map(|i| y[i] + 0.5 * h * k2[i]));
        let k4 = rhs([0, 1, 2].map(|i| y[i] + h * k3[i]));
        y = [0, 1, 2].map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    }
    y[1]
}

/// `u_s^{(n)}(x)` from the cosine series, 400 terms.
pub fn fourier_u(s: f64, x: f64, n: u32) -> f64 {
    let mut sum = if n == 0 { s / PI } else { 0.0 };
    for k in 1..=400 {
        let kf = k as f64;
        let c = kf.powi(1 + n as i32) / (kf * PI / s).sinh();
        if !c.is_finite() || c == 0.0 {
            break;
        }
        sum += 2.0 * c * (kf * x + n as f64 * PI / 2.0).cos();
    }
    sum
}

/// `(s²/2) Σ_{|j|≤60} sech²(s(x − 2πj)/2)`.
pub fn soliton_u(s: f64, x: f64) -> f64 {
    (-60..=60)
        .map(|j| {
            let y = 0.5 * s * (x - 2.0 * PI * j as f64);
            1.0 / y.cosh().powi(2)
        })
        .sum::<f64>()
        * 0.5
        * s
        * s
}

pub const BERNOULLI_EVEN: [(usize, f64); 4] = [
    (2, 1.0 / 6.0),
    (4, -1.0 / 30.0),
    (6, 1.0 / 42.0),
    (8, -1.0 / 30.0),
];

pub fn bernoulli_even(ell: usize) -> f64 {
    BERNOULLI_EVEN.iter().find(|(l, _)| *l == ell).expect("tabulated").1
}

/// `e_ℓ = 2B_ℓ/ℓ + 4 Σ k^{ℓ−1}/(1 − e^{2πk/s})`, summed plainly.
pub fn brute_e(s: f64, ell: usize) -> f64 {
    let mut sum = 0.0;
    for k in (1..=3000).rev() {
        let kf = k as f64;
        sum += kf.powi(ell as i32 - 1) / (1.0 - (2.0 * PI * kf / s).exp());
    }
    2.0 * bernoulli_even(ell) / ell as f64 + 4.0 * sum
}

/// `F_ℓ = Σ_{k∈ℤ} k^{2+ℓ}/sinh²(kπ/s)`, with `(s/π)²` at the origin for `ℓ = 0`.
pub fn brute_f(s: f64, ell: usize) -> f64 {
    let mut sum = 0.0;
    for k in (1..=3000).rev() {
        let kf = k as f64;
        let t = kf.powi(2 + ell as i32) / (kf * PI / s).sinh().powi(2);
        if t.is_finite() {
            sum += t;
        }
    }
    let origin = if ell == 0 { (s / PI).powi(2) } else { 0.0 };
    origin + 2.0 * sum
}

/// One entry of the published coefficient table.
#[derive(Debug, Clone, Copy)]
pub enum Entry {
    Zero,
    /// `p/q`
    Rational(i64, i64),
    /// `k·e_ℓ`
    E(i64, usize),
    /// `k(s/π − e₂)`
    PiMinusE2(i64),
}

/// `b_{α,β}(0..=2+α+β)` for the nine lowest identities.
pub fn table_one() -> Vec<((usize, usize), Vec<Entry>)> {
    use Entry::*;
    vec![
        ((0, 0), vec![PiMinusE2(2), Zero, Rational(-1, 3)]),
        ((1, 0), vec![Zero, PiMinusE2(1), Zero, Rational(-1, 6)]),
        ((1, 1), vec![E(-4, 4), Zero, Zero, Zero, Rational(-1, 15)]),
        ((2, 0), vec![E(4, 4), Zero, PiMinusE2(1), Zero, Rational(-1, 10)]),
        ((2, 1), vec![Zero, E(-2, 4), Zero, Zero, Zero, Rational(-1, 30)]),
        ((3, 0), vec![Zero, E(6, 4), Zero, PiMinusE2(1), Zero, Rational(-1, 15)]),
        ((2, 2), vec![E(-6, 6), Zero, E(2, 4), Zero, Zero, Zero, Rational(-1, 70)]),
        ((3, 1), vec![E(6, 6), Zero, E(-4, 4), Zero, Zero, Zero, Rational(-2, 105)]),
        ((4, 0), vec![E(-6, 6), Zero, E(10, 4), Zero, PiMinusE2(1), Zero, Rational(-1, 21)]),
    ]
}

pub fn entry_value(entry: Entry, s: f64) -> f64 {
    match entry {
        Entry::Zero => 0.0,
        Entry::Rational(p, q) => p as f64 / q as f64,
        Entry::E(k, ell) => k as f64 * brute_e(s, ell),
        Entry::PiMinusE2(k) => k as f64 * (s / PI - brute_e(s, 2)),
    }
}

/// Size of the parts an entry is built from, for a relative test near cancellation
/// (`e₆(1)` is zero).
pub fn entry_scale(entry: Entry, s: f64) -> f64 {
    match entry {
        Entry::Zero => 0.0,
        Entry::Rational(p, q) => (p as f64 / q as f64).abs(),
        Entry::E(k, ell) => (k as f64).abs() * e_scale(ell),
        Entry::PiMinusE2(k) => (k as f64).abs() * (s / PI).max(e_scale(2)),
    }
}

/// `2|B_ℓ|/ℓ`, the magnitude of the constant part of `e_ℓ`.
pub fn e_scale(ell: usize) -> f64 {
    2.0 * bernoulli_even(ell).abs() / ell as f64
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
