use crate::error::{Error, Result};

use super::elliptic::EllipticModulus;

/// Jacobi elliptic function `cn(z; m)` for `0 ≤ m < 1`.
///
/// The argument is reduced into `[0, K]` using the period `4K`, evenness and
/// `cn(2K − z) = −cn(z)`, then evaluated by the descending Landen (AGM) scheme.
pub fn jacobi_cn(z: f64, m: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("cn argument z = {z} is not finite")));
    }
    if m == 0.0 {
        return Ok(z.cos());
    }
    let modulus = EllipticModulus::new(m)?;
    Ok(cn_reduced(z, &modulus))
}

pub(crate) fn cn_reduced(z: f64, modulus: &EllipticModulus) -> f64 {
    let quarter = modulus.k;
    let period = 4.0 * quarter;
    let mut u = (z - period * (z / period).round()).abs();
    let mut sign = 1.0;
    if u > quarter {
        u = 2.0 * quarter - u;
        sign = -1.0;
    }
    sign * cn_landen(u, modulus.m, modulus.complement)
}

fn cn_landen(u: f64, m: f64, complement: f64) -> f64 {
    const MAX_STEPS: usize = 40;
    let mut a = [0.0_f64; MAX_STEPS + 1];
    let mut c = [0.0_f64; MAX_STEPS + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = complement.sqrt();
    let mut n = 0;
    while n < MAX_STEPS && c[n].abs() > 1e-17 * a[n] {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }
    let mut phi = (2.0_f64).powi(n as i32) * a[n] * u;
    for i in (1..=n).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    phi.cos()
}
