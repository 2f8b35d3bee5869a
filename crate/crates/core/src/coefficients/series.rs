/// Default absolute tolerance for series truncation.
pub const SERIES_TOL: f64 = 1e-17;

/// Requested representation of an `s`-dependent series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesRep {
    /// `SmallS` for `s ≤ 1`, `LargeS` above when a closed form exists.
    Auto,
    SmallS,
    LargeS,
}

/// Representation actually summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesForm {
    SmallS,
    LargeS,
}

/// A converged series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub rep: SeriesForm,
    pub terms_used: usize,
    /// Bound on the neglected tail, already scaled to `value`.
    pub tail_bound: f64,
}

impl SeriesValue {
    pub(crate) fn exact(value: f64, rep: SeriesForm) -> Self {
        Self {
            value,
            rep,
            terms_used: 0,
            tail_bound: 0.0,
        }
    }
}

pub(crate) struct Summed {
    pub sum: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

const MAX_TERMS: u64 = 10_000_000;

/// Sums `term(1) + term(2) + …`.
///
/// Stops once three consecutive terms are each below `tol·|sum|` and below
/// `tol`, and the geometric tail estimate from the last ratio is below `tol`.
/// All series passed here have terms `k^p e^{−ck}` (times bounded factors)
/// whose ratio decreases monotonically past the peak, which makes that
/// estimate an upper bound.
pub(crate) fn sum_series(term: impl Fn(u64) -> f64, tol: f64) -> Summed {
    let mut sum = 0.0;
    let mut small_run = 0;
    let mut prev = f64::NAN;
    let mut k = 1u64;
    loop {
        let t = term(k);
        sum += t;
        let mag = t.abs();
        if mag <= tol * sum.abs() && mag <= tol {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 3 {
            let tail = if mag == 0.0 {
                0.0
            } else {
                let r = mag / prev;
                if r < 1.0 {
                    mag * r / (1.0 - r)
                } else {
                    f64::INFINITY
                }
            };
            if tail <= tol || k >= MAX_TERMS {
                return Summed {
                    sum,
                    terms: k as usize,
                    tail_bound: tail,
                };
            }
        }
        if k >= MAX_TERMS {
            return Summed {
                sum,
                terms: k as usize,
                tail_bound: f64::INFINITY,
            };
        }
        prev = mag;
        k += 1;
    }
}

/// `1/sinh²(x)` for `x > 0` without overflow.
pub(crate) fn csch2(x: f64) -> f64 {
    let d = (-2.0 * x).exp_m1();
    4.0 * (-2.0 * x).exp() / (d * d)
}

/// `coth(x)` for `x > 0`.
pub(crate) fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}
