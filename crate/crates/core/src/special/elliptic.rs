//! Complete elliptic integrals and the map between the shape parameter `s`
//! and the parameter `m` of the Jacobi functions.
//!
//! Everything takes the parameter convention `m = k²`. Where precision near
//! `m → 1` matters the complement `1 − m` is carried separately instead of
//! being recomputed by subtraction.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Which integrand defines `K` and `E`.
///
/// `SinSquared` is `∫₀^{π/2} dθ / √(1 − m sin²θ)`, the classical definition.
/// `LiteralSin` keeps the first power `√(1 − m sin θ)`; it exists so the
/// representation checks in [`crate::basis`] can show that only the
/// classical form reproduces the Fourier series of `u_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegrandConvention {
    SinSquared,
    LiteralSin,
}

/// Convention used by every evaluation that does not name one explicitly.
pub const ELLIPTIC_CONVENTION: IntegrandConvention = IntegrandConvention::SinSquared;

/// Smallest parameter `modulus_from_s` will return before clamping.
const M_FLOOR: f64 = 1e-300;

/// A parameter `m ∈ (0,1)` with its complete integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    pub m: f64,
    /// `1 − m`, stored exactly rather than recomputed.
    pub complement: f64,
    /// `K(m)`
    pub k: f64,
    /// `K(1 − m)`
    pub k_complement: f64,
    /// `E(m)`
    pub e: f64,
    pub convention: IntegrandConvention,
    /// Set when `s` is so extreme (`s < 1e-3` or `s > 1e3`) that `m` or its
    /// complement is clamped or loses most of its relative precision, or when
    /// `m` (or `1 − m`) rounds to 1. The exact complement is kept in that case.
    pub precision_warning: bool,
}

impl EllipticModulus {
    /// Builds the integrals for `m` under the default convention.
    pub fn new(m: f64) -> Result<Self> {
        check_open_unit(m)?;
        Self::from_parts(m, 1.0 - m, ELLIPTIC_CONVENTION)
    }

    fn from_parts(m: f64, complement: f64, convention: IntegrandConvention) -> Result<Self> {
        let (k, k_complement, e) = match convention {
            IntegrandConvention::SinSquared => (
                k_from_complement(complement),
                k_from_complement(m),
                e_from_parts(m, complement),
            ),
            IntegrandConvention::LiteralSin => (
                literal_k(m),
                literal_k(complement),
                literal_e(m),
            ),
        };
        Ok(Self {
            m,
            complement,
            k,
            k_complement,
            e,
            convention,
            precision_warning: false,
        })
    }

    /// `K(m)·E(1−m) + K(1−m)·E(m) − K(m)·K(1−m)`, equal to `π/2` under the
    /// classical convention.
    pub fn legendre_relation(&self) -> f64 {
        let e_complement = match self.convention {
            IntegrandConvention::SinSquared => e_from_parts(self.complement, self.m),
            IntegrandConvention::LiteralSin => literal_e(self.complement),
        };
        self.k * e_complement + self.k_complement * self.e - self.k * self.k_complement
    }

    /// `K(m) / K(1 − m)`, which is the shape parameter `s`.
    pub fn shape(&self) -> f64 {
        self.k / self.k_complement
    }
}

fn check_open_unit(m: f64) -> Result<()> {
    if m.is_finite() && m > 0.0 && m < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("elliptic parameter m = {m} outside (0, 1)")))
    }
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// `K` as a function of the complementary parameter: `π / (2·AGM(1, √(1−m)))`.
fn k_from_complement(complement: f64) -> f64 {
    FRAC_PI_2 / agm(1.0, complement.sqrt())
}

/// `E(m) = K(m)·(1 − Σ 2^{n−1} c_n²)` with `c₀² = m`.
fn e_from_parts(m: f64, complement: f64) -> f64 {
    let mut a = 1.0_f64;
    let mut b = complement.sqrt();
    let mut sum = 0.5 * m;
    let mut weight = 0.5;
    for _ in 0..64 {
        let c = 0.5 * (a - b);
        weight *= 2.0;
        sum += weight * c * c;
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
        if weight * c * c <= 1e-18 * sum {
            break;
        }
    }
    FRAC_PI_2 / a * (1.0 - sum)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        [fa, fm, fb]: [f64; 3],
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, [fa, flm, fm], left, 0.5 * tol, depth - 1)
            + step(f, m, b, [fm, frm, fb], right, 0.5 * tol, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, [fa, fm, fb], whole, tol, 48)
}

fn literal_k(m: f64) -> f64 {
    adaptive_simpson(&|t: f64| 1.0 / (1.0 - m * t.sin()).sqrt(), 0.0, FRAC_PI_2, 1e-14)
}

fn literal_e(m: f64) -> f64 {
    adaptive_simpson(&|t: f64| (1.0 - m * t.sin()).sqrt(), 0.0, FRAC_PI_2, 1e-14)
}

/// Complete elliptic integral of the first kind, by the AGM.
pub fn elliptic_k(m: f64) -> Result<f64> {
    elliptic_k_with(m, ELLIPTIC_CONVENTION)
}

/// Complete elliptic integral of the second kind, by the AGM.
pub fn elliptic_e(m: f64) -> Result<f64> {
    elliptic_e_with(m, ELLIPTIC_CONVENTION)
}

pub fn elliptic_k_with(m: f64, convention: IntegrandConvention) -> Result<f64> {
    check_open_unit(m)?;
    Ok(match convention {
        IntegrandConvention::SinSquared => k_from_complement(1.0 - m),
        IntegrandConvention::LiteralSin => literal_k(m),
    })
}

pub fn elliptic_e_with(m: f64, convention: IntegrandConvention) -> Result<f64> {
    check_open_unit(m)?;
    Ok(match convention {
        IntegrandConvention::SinSquared => e_from_parts(m, 1.0 - m),
        IntegrandConvention::LiteralSin => literal_e(m),
    })
}

/// Solves `K(m)/K(1−m) = s` for `m`.
pub fn modulus_from_s(s: f64) -> Result<EllipticModulus> {
    modulus_from_s_with(s, ELLIPTIC_CONVENTION)
}

pub fn modulus_from_s_with(s: f64, convention: IntegrandConvention) -> Result<EllipticModulus> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Domain(format!("shape parameter s = {s} must be positive")));
    }
    let warn = !(1e-3..=1e3).contains(&s);
    let mut out = match convention {
        IntegrandConvention::SinSquared => {
            if s == 1.0 {
                EllipticModulus::from_parts(0.5, 0.5, convention)?
            } else if s < 1.0 {
                let m = classical_small_m(s);
                EllipticModulus::from_parts(m, 1.0 - m, convention)?
            } else {
                // K(m)/K(1-m) = s  <=>  K(1-m)/K(m) = 1/s
                let complement = classical_small_m(1.0 / s);
                EllipticModulus::from_parts(1.0 - complement, complement, convention)?
            }
        }
        IntegrandConvention::LiteralSin => {
            let ratio = |m: f64| literal_k(m) / literal_k(1.0 - m);
            let (mut lo, mut hi) = (1e-15, 1.0 - 1e-15);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if ratio(mid) < s {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-16 * hi {
                    break;
                }
            }
            let m = 0.5 * (lo + hi);
            EllipticModulus::from_parts(m, 1.0 - m, convention)?
        }
    };
    // m (or 1 − m) stops being representable apart from 1 long before s reaches 1e3
    out.precision_warning = warn
        || out.m <= M_FLOOR
        || out.complement <= M_FLOOR
        || out.m >= 1.0
        || out.complement >= 1.0;
    Ok(out)
}

/// Root `m ∈ (0, 1/2]` of `AGM(1,√m) / AGM(1,√(1−m)) = s` for `s ≤ 1`,
/// bisected in `ln m` so tiny parameters keep full relative precision.
fn classical_small_m(s: f64) -> f64 {
    let ratio = |m: f64| agm(1.0, m.sqrt()) / agm(1.0, (1.0 - m).sqrt());
    let (mut lo, mut hi) = (M_FLOOR.ln(), 0.5_f64.ln());
    if ratio(M_FLOOR) >= s {
        return M_FLOOR;
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if ratio(mid.exp()) < s {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-17 * lo.abs().max(1.0) {
            break;
        }
    }
    (0.5 * (lo + hi)).exp()
}
