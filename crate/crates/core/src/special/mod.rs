//! Special functions underlying `u_s`.

mod bernoulli;
mod elliptic;
mod jacobi;

pub use bernoulli::{bernoulli, bernoulli_f64, BernoulliKind, BERNOULLI_MAX_INDEX};
pub use elliptic::{
    elliptic_e, elliptic_e_with, elliptic_k, elliptic_k_with, modulus_from_s,
    modulus_from_s_with, EllipticModulus, IntegrandConvention, ELLIPTIC_CONVENTION,
};
pub use jacobi::jacobi_cn;
pub(crate) use bernoulli::rational_to_f64;
