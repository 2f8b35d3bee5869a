//! Periodic travelling waves of KdV and Kawahara built from `u_s`.
//!
//! KdV `v_t + v v_z + α v_zzz = 0` and Kawahara
//! `v_t + v v_z + α v_zzz − β v_5z = 0` with `v(z, t) = f(z − ct)` integrate
//! once to `f² = 2βf'''' − 2αf'' + 2cf + d`. The ansatz `f = f₁u_s + f₂u_s''`
//! closes under the product identities.

use std::f64::consts::{PI, TAU};

use crate::basis::{eval_grid, uniform_grid, CnoidalParam};
use crate::coefficients::{e_ell, f_sum, SeriesRep};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equation {
    KdV,
    Kawahara,
}

/// `f(x) = a + λ²(f₁ u_s(λx) + λ² f₂ u_s''(λx))`, moving with speed `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct TravellingWave {
    pub s: f64,
    pub f1: f64,
    pub f2: f64,
    pub shift_a: f64,
    pub scale_lambda: f64,
    pub c: f64,
    pub d: f64,
    pub equation: Equation,
    pub alpha: f64,
    pub beta: f64,
}

impl TravellingWave {
    /// Spatial period `2π/|λ|`.
    pub fn period(&self) -> f64 {
        TAU / self.scale_lambda.abs()
    }

    /// `f^{(n)}` at each point of `xs`.
    pub fn profile(&self, xs: &[f64], n: usize) -> Result<Vec<f64>> {
        let lambda = self.scale_lambda;
        let param = CnoidalParam::new(self.s)?;
        let scaled: Vec<f64> = xs.iter().map(|x| lambda * x).collect();
        let mut out = vec![if n == 0 { self.shift_a } else { 0.0 }; xs.len()];
        if self.f1 != 0.0 {
            let w = self.f1 * lambda.powi(2 + n as i32);
            for (o, u) in out.iter_mut().zip(eval_grid(&param, &scaled, n)?) {
                *o += w * u;
            }
        }
        if self.f2 != 0.0 {
            let w = self.f2 * lambda.powi(4 + n as i32);
            for (o, u) in out.iter_mut().zip(eval_grid(&param, &scaled, n + 2)?) {
                *o += w * u;
            }
        }
        Ok(out)
    }

    fn grid(&self, size: usize) -> Vec<f64> {
        let scale = 1.0 / self.scale_lambda.abs();
        uniform_grid(size).into_iter().map(|x| x * scale).collect()
    }
}

fn e_auto(s: f64, ell: usize) -> Result<f64> {
    Ok(e_ell(s, ell, SeriesRep::Auto)?.value)
}

fn f_auto(s: f64, ell: usize) -> Result<f64> {
    Ok(f_sum(s, ell, SeriesRep::Auto)?.value)
}

/// The cnoidal KdV wave with shape parameter `s`.
pub fn solve_kdv(alpha: f64, s: f64) -> Result<TravellingWave> {
    if alpha == 0.0 {
        return Err(Error::Degenerate("α = 0 leaves the linear transport equation".into()));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("s must be positive and finite, got {s}")));
    }
    let e2 = e_auto(s, 2)?;
    let f0 = f_auto(s, 0)?;
    let mean = s / PI;
    Ok(TravellingWave {
        s,
        f1: 6.0 * alpha,
        f2: 0.0,
        shift_a: 0.0,
        scale_lambda: 1.0,
        c: -6.0 * alpha * (e2 - mean),
        d: 36.0 * alpha * alpha * (f0 + 2.0 * mean * (e2 - mean)),
        equation: Equation::KdV,
        alpha,
        beta: 0.0,
    })
}

/// Galilean shift by `a` and scaling by `λ` of a KdV wave.
///
/// The result is `v(z, t) = a + λ² f(λz − (λ³c + λa)t)`, so the returned
/// speed is `λ²c + a` and the period shrinks to `2π/|λ|`.
pub fn apply_freedoms(w: &TravellingWave, a: f64, lambda: f64) -> Result<TravellingWave> {
    if w.equation == Equation::Kawahara {
        return Err(Error::Unsupported(
            "Kawahara waves are rescaled by substituting α → λ⁻²α, β → λ⁻⁴β".into(),
        ));
    }
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain(format!("scaling λ must be nonzero and finite, got {lambda}")));
    }
    // compose with any freedoms already applied
    let l = w.scale_lambda * lambda;
    let a_total = w.shift_a * lambda * lambda + a;
    let base_c = (w.c - w.shift_a) / (w.scale_lambda * w.scale_lambda);
    let ws2 = w.scale_lambda * w.scale_lambda;
    let base_d = (w.d + w.shift_a * w.shift_a + 2.0 * w.shift_a * ws2 * base_c) / (ws2 * ws2);
    let l2 = l * l;
    Ok(TravellingWave {
        shift_a: a_total,
        scale_lambda: l,
        c: l2 * base_c + a_total,
        d: l2 * l2 * base_d - 2.0 * a_total * l2 * base_c - a_total * a_total,
        ..w.clone()
    })
}

/// `g(s, α, β) = 31α³ + 212940 αβ² e₄(s) + 2768220 β³ e₆(s)`.
pub fn kawahara_g(alpha: f64, beta: f64, s: f64) -> Result<f64> {
    let mut g = 31.0 * alpha.powi(3);
    if beta != 0.0 {
        g += 212940.0 * alpha * beta * beta * e_auto(s, 4)? + 2768220.0 * beta.powi(3) * e_auto(s, 6)?;
    }
    Ok(g)
}

/// `β ≠ 0` and `α/β > −13`.
pub fn in_gamma_region(alpha: f64, beta: f64) -> bool {
    beta != 0.0 && alpha / beta > -13.0
}

/// Output of [`solve_kawahara`].
#[derive(Debug, Clone, PartialEq)]
pub struct KawaharaSolution {
    pub wave: TravellingWave,
    /// Every root of `g(·, α, β)` bracketed by the scan, ascending.
    pub roots: Vec<f64>,
    /// `|g(s₀)|`.
    pub g_residual: f64,
}

const SCAN_LO: f64 = 0.01;
const SCAN_HI: f64 = 20.0;
const SCAN_POINTS: usize = 400;
const ROOT_TOL: f64 = 1e-13;

fn refine_root(g: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut glo: f64) -> Result<f64> {
    while hi - lo > ROOT_TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    // one secant polish inside the final bracket
    let ghi = g(hi)?;
    let mut root = 0.5 * (lo + hi);
    if ghi != glo {
        let cand = lo - glo * (hi - lo) / (ghi - glo);
        if cand >= lo && cand <= hi {
            root = cand;
        }
    }
    let best = [lo, root, hi]
        .into_iter()
        .map(|x| g(x).map(|v| (x, v.abs())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(x, _)| x)
        .unwrap_or(root);
    Ok(best)
}

fn scan_roots(alpha: f64, beta: f64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    let g = |s: f64| kawahara_g(alpha, beta, s);
    let ratio = (hi / lo).ln();
    let nodes: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| lo * (ratio * i as f64 / (SCAN_POINTS - 1) as f64).exp())
        .collect();
    let values = nodes.iter().map(|&s| g(s)).collect::<Result<Vec<_>>>()?;
    let mut roots = Vec::new();
    for i in 0..SCAN_POINTS - 1 {
        let (a, b) = (values[i], values[i + 1]);
        if a == 0.0 {
            roots.push(nodes[i]);
        } else if a * b < 0.0 {
            roots.push(refine_root(&g, nodes[i], nodes[i + 1], a)?);
        }
    }
    if values[SCAN_POINTS - 1] == 0.0 {
        roots.push(nodes[SCAN_POINTS - 1]);
    }
    Ok(roots)
}

/// Kawahara wave `f = f₁u_s + f₂u_s''` at the smallest root `s₀` of `g`.
///
/// `bracket` replaces the default scan range `[0.01, 20]`.
pub fn solve_kawahara(alpha: f64, beta: f64, bracket: Option<(f64, f64)>) -> Result<KawaharaSolution> {
    if !in_gamma_region(alpha, beta) {
        return Err(Error::NoSolution(format!(
            "(α, β) = ({alpha}, {beta}) is outside Γ: need β ≠ 0 and α/β > −13"
        )));
    }
    let (lo, hi) = bracket.unwrap_or((SCAN_LO, SCAN_HI));
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Domain(format!("invalid scan range [{lo}, {hi}]")));
    }
    let roots = scan_roots(alpha, beta, lo, hi)?;
    let Some(&s0) = roots.first() else {
        return Err(Error::Bracket(format!(
            "g(s, {alpha}, {beta}) has no sign change on [{lo}, {hi}] ({SCAN_POINTS}-point log scan); g(lo) = {:e}, g(hi) = {:e}",
            kawahara_g(alpha, beta, lo)?,
            kawahara_g(alpha, beta, hi)?
        )));
    };
    let e2 = e_auto(s0, 2)?;
    let e4 = e_auto(s0, 4)?;
    let e6 = e_auto(s0, 6)?;
    let f1 = 140.0 * alpha / 13.0;
    let f2 = -140.0 * beta;
    let mean = s0 / PI;
    let c = 31.0 * alpha * alpha / (507.0 * beta) - 140.0 / 13.0 * alpha * (e2 - mean) - 140.0 * beta * e4;
    let d = 2.0 * f1 * f1 * mean * (e2 - mean) - 8.0 * f1 * f2 * mean * e4
        + 6.0 * f2 * f2 * mean * e6
        + f1 * f1 * f_auto(s0, 0)?
        - 2.0 * f1 * f2 * f_auto(s0, 2)?
        + f2 * f2 * f_auto(s0, 4)?;
    let wave = TravellingWave {
        s: s0,
        f1,
        f2,
        shift_a: 0.0,
        scale_lambda: 1.0,
        c,
        d,
        equation: Equation::Kawahara,
        alpha,
        beta,
    };
    let (residual, norm) = integrated_residual_and_norm(&wave, 64)?;
    if residual > 1e-8 * norm.max(1.0) {
        return Err(Error::Verification(format!(
            "integrated residual {residual:e} at s₀ = {s0} exceeds 1e-8·max(1, ‖f‖²)"
        )));
    }
    Ok(KawaharaSolution {
        wave,
        g_residual: kawahara_g(alpha, beta, s0)?.abs(),
        roots,
    })
}

fn integrated_residual_and_norm(w: &TravellingWave, grid_size: usize) -> Result<(f64, f64)> {
    let xs = w.grid(grid_size);
    let f = w.profile(&xs, 0)?;
    let f2 = w.profile(&xs, 2)?;
    let f4 = if w.beta != 0.0 { w.profile(&xs, 4)? } else { vec![0.0; xs.len()] };
    let mut residual: f64 = 0.0;
    let mut norm: f64 = 0.0;
    for i in 0..xs.len() {
        let lhs = f[i] * f[i];
        let rhs = 2.0 * w.beta * f4[i] - 2.0 * w.alpha * f2[i] + 2.0 * w.c * f[i] + w.d;
        residual = residual.max((lhs - rhs).abs());
        norm = norm.max(lhs);
    }
    Ok((residual, norm))
}

/// Max over a uniform grid of `|f² − 2βf'''' + 2αf'' − 2cf − d|`.
pub fn integrated_residual(w: &TravellingWave, grid_size: usize) -> Result<f64> {
    check_grid(grid_size)?;
    Ok(integrated_residual_and_norm(w, grid_size)?.0)
}

/// Max over a uniform grid of `|−cf' + ff' + αf''' − βf⁽⁵⁾|`.
pub fn pde_residual(w: &TravellingWave, grid_size: usize) -> Result<f64> {
    check_grid(grid_size)?;
    let xs = w.grid(grid_size);
    let f = w.profile(&xs, 0)?;
    let f1 = w.profile(&xs, 1)?;
    let f3 = w.profile(&xs, 3)?;
    let f5 = if w.beta != 0.0 { w.profile(&xs, 5)? } else { vec![0.0; xs.len()] };
    Ok((0..xs.len())
        .map(|i| (-w.c * f1[i] + f[i] * f1[i] + w.alpha * f3[i] - w.beta * f5[i]).abs())
        .fold(0.0, f64::max))
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < 32 {
        return Err(Error::Domain(format!("grid size {grid_size} below 32")));
    }
    Ok(())
}
