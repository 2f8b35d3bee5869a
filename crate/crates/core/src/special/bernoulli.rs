use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest index served by [`bernoulli`].
pub const BERNOULLI_MAX_INDEX: usize = 64;

/// Sign convention at index one. `Second` has `B₁ = +1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BernoulliKind {
    First,
    Second,
}

fn table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_l = -sum_{k<l} C(l,k) B_k / (l-k+1)
        let mut b: Vec<BigRational> = Vec::with_capacity(BERNOULLI_MAX_INDEX + 1);
        b.push(BigRational::one());
        for l in 1..=BERNOULLI_MAX_INDEX {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                let term = BigRational::new(binom.clone(), BigInt::from(l - k + 1)) * bk;
                acc += term;
                binom = binom * BigInt::from(l - k) / BigInt::from(k + 1);
            }
            b.push(-acc);
        }
        b
    })
}

/// Exact Bernoulli number `B_ℓ` for `ℓ ≤ 64`.
pub fn bernoulli(index: usize, kind: BernoulliKind) -> Result<BigRational> {
    if index > BERNOULLI_MAX_INDEX {
        return Err(Error::Capability(format!(
            "Bernoulli index {index} exceeds cap {BERNOULLI_MAX_INDEX}"
        )));
    }
    let value = table()[index].clone();
    Ok(match (kind, index) {
        (BernoulliKind::Second, 1) => -value,
        _ => value,
    })
}

/// `B_ℓ` (first kind) rounded to `f64`.
pub fn bernoulli_f64(index: usize) -> Result<f64> {
    let b = bernoulli(index, BernoulliKind::First)?;
    Ok(rational_to_f64(&b))
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    // BigRational::to_f64 rounds correctly for the sizes seen here
    r.to_f64().unwrap_or(f64::NAN)
}
