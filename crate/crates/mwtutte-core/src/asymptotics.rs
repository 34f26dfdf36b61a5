//! Exponential growth constants for large bipartite families and the
//! threshold root where the product of growth constants crosses 1.
//!
//! Each closed-form constant is re-derived numerically from its displayed
//! objective by golden-section maximization; a disagreement beyond 1e-8 is
//! reported as an internal error, so the closed forms carry a built-in
//! cross-check.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::h_abc;
use crate::permtutte::{hnnn_conditional_mc, perm_tutte_exact};
use crate::rational::{rat_i, render_exact, to_f64};

/// Tolerance for closed-form vs numeric-maximization agreement.
const CROSS_CHECK_TOL: f64 = 1e-8;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns `(argmax, max)`; runs at most 200 shrink steps, which already
/// drives the bracket far below any positive `tol`.
pub fn maximize_unimodal<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    if lo >= hi {
        return Err(Error::InvalidArgument(format!(
            "search interval [{lo}, {hi}] is empty"
        )));
    }
    if tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = lo;
    let mut b = hi;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    let arg = 0.5 * (a + b);
    Ok((arg, f(arg)))
}

/// A growth constant together with where and how it was attained.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthResult {
    pub value: f64,
    /// The optimal `s` (or `t`) in `[0, 1]`.
    pub maximizer: f64,
    /// Which closed-form piece applied.
    pub branch: String,
    /// |closed form − golden-section maximum| of the displayed objective.
    pub residual: f64,
}

fn cross_checked(
    value: f64,
    maximizer: f64,
    branch: &str,
    objective: impl Fn(f64) -> f64,
) -> Result<GrowthResult> {
    let (_, numeric) = maximize_unimodal(&objective, 0.0, 1.0, 1e-13)?;
    let residual = (value - numeric).abs();
    if residual > CROSS_CHECK_TOL {
        return Err(Error::Internal(format!(
            "closed-form growth value {value} disagrees with numeric maximum \
             {numeric} (branch {branch})"
        )));
    }
    Ok(GrowthResult {
        value,
        maximizer,
        branch: branch.to_string(),
        residual,
    })
}

/// Growth constant of T̃ for complete bipartite parts of relative sizes
/// `alpha` and `beta = 1 − alpha`: the maximum of s^β (s + x(1−s))^α over
/// s ∈ [0, 1].
///
/// The stationary point s = βx/(x−1) is interior exactly when
/// β < (x−1)/x, giving α^α β^β x/(x−1)^β; otherwise the maximum sits at
/// s = 1 with value 1.
pub fn growth_k_ab(alpha: f64, x: f64) -> Result<GrowthResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain("alpha must lie strictly in (0, 1)".into()));
    }
    if !(x > 1.0) {
        return Err(Error::Domain("growth constants need x > 1".into()));
    }
    let beta = 1.0 - alpha;
    let objective = move |s: f64| s.powf(beta) * (s + x * (1.0 - s)).powf(alpha);
    if beta < (x - 1.0) / x {
        let value = alpha.powf(alpha) * beta.powf(beta) * x / (x - 1.0).powf(beta);
        let maximizer = beta * x / (x - 1.0);
        cross_checked(value, maximizer, "interior-stationary", objective)
    } else {
        cross_checked(1.0, 1.0, "boundary-s=1", objective)
    }
}

/// Which factor of the product the growth constant describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthSide {
    /// The T̃(x, 0) factor.
    XZero,
    /// The T̃(0, x) factor.
    ZeroX,
}

/// Growth constant of one factor of T̃(x,0)·T̃(0,x) for the leaf-decorated
/// complete bipartite family with equal part weights.
///
/// * `XZero`: max over s of (s + x(1−s))(xs + (1−x)s²/2) —
///   x³/(3√3 (x−1)) for x ≥ √3, else (x+1)/2 at s = 1.
/// * `ZeroX`: max over t of t(t²/2 + (1/2 − t²/2)x) —
///   x^{3/2}/(3√3 √(x−1)) for x ≥ 3/2, else 1/2 at t = 1.
pub fn growth_hnnn(x: f64, side: GrowthSide) -> Result<GrowthResult> {
    if !(x > 1.0) {
        return Err(Error::Domain("growth constants need x > 1".into()));
    }
    let sqrt3 = 3f64.sqrt();
    match side {
        GrowthSide::XZero => {
            let objective =
                move |s: f64| (s + x * (1.0 - s)) * (x * s + (1.0 - x) * s * s / 2.0);
            if x >= sqrt3 {
                let value = x.powi(3) / (3.0 * sqrt3 * (x - 1.0));
                let maximizer = (1.0 - 1.0 / sqrt3) * x / (x - 1.0);
                cross_checked(value, maximizer, "interior-stationary", objective)
            } else {
                cross_checked((x + 1.0) / 2.0, 1.0, "boundary-s=1", objective)
            }
        }
        GrowthSide::ZeroX => {
            let objective =
                move |t: f64| t * (t * t / 2.0 + (0.5 - t * t / 2.0) * x);
            if x >= 1.5 {
                let value = x.powf(1.5) / (3.0 * sqrt3 * (x - 1.0).sqrt());
                let maximizer = (x / (3.0 * (x - 1.0))).sqrt();
                cross_checked(value, maximizer, "interior-stationary", objective)
            } else {
                cross_checked(0.5, 1.0, "boundary-t=1", objective)
            }
        }
    }
}

/// The largest root of x³ − 9x + 9 — the threshold where the product of the
/// two growth constants crosses 1. Newton iteration from 2.3; the result
/// satisfies |p(x)| ≤ 1e-12.
pub fn x0_root() -> f64 {
    let p = |x: f64| x * x * x - 9.0 * x + 9.0;
    let dp = |x: f64| 3.0 * x * x - 9.0;
    let mut x = 2.3;
    for _ in 0..100 {
        let value = p(x);
        if value.abs() <= 1e-14 {
            break;
        }
        x -= value / dp(x);
    }
    x
}

/// Probe of the product T̃(x,0)·T̃(0,x) on the leaf-decorated complete
/// bipartite graph with all three part parameters equal to `n`.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub x: String,
    /// True when the product was computed exactly (3n ≤ 11).
    pub exact: bool,
    /// Exact rational product, present on the exact path.
    pub product_exact: Option<String>,
    pub factor_x0: f64,
    pub factor_x0_stderr: f64,
    pub factor_0x: f64,
    pub factor_0x_stderr: f64,
    pub product: f64,
    /// (1/n) · ln(product) — the finite-n growth exponent.
    pub log_product_over_n: f64,
    /// ln of the product of the two limiting growth constants.
    pub growth_limit_log: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Estimates (or exactly computes, for 3n ≤ 11) the product
/// T̃(x,0)·T̃(0,x) on the equal-parameter leaf-decorated family and compares
/// its per-n growth exponent with the limiting constant.
pub fn counterexample_probe(
    n: usize,
    x: &BigRational,
    samples: u64,
    seed: u64,
) -> Result<ProbeReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let xf = to_f64(x);
    if !(xf > 1.0) {
        return Err(Error::Domain("the probe needs x > 1".into()));
    }
    let limit = growth_hnnn(xf, GrowthSide::XZero)?.value * growth_hnnn(xf, GrowthSide::ZeroX)?.value;
    let growth_limit_log = limit.ln();

    if 3 * n <= 11 {
        let h = h_abc(n, n, n)?;
        let poly = perm_tutte_exact(&h)?;
        let zero = rat_i(0);
        let f1 = poly.eval(x, &zero);
        let f2 = poly.eval(&zero, x);
        let product = &f1 * &f2;
        let product_f = to_f64(&product);
        return Ok(ProbeReport {
            n,
            x: render_exact(x),
            exact: true,
            product_exact: Some(render_exact(&product)),
            factor_x0: to_f64(&f1),
            factor_x0_stderr: 0.0,
            factor_0x: to_f64(&f2),
            factor_0x_stderr: 0.0,
            product: product_f,
            log_product_over_n: product_f.ln() / n as f64,
            growth_limit_log,
            samples: 0,
            seed,
        });
    }

    let est1 = hnnn_conditional_mc(n, xf, 0.0, samples, seed, 0)?;
    let est2 = hnnn_conditional_mc(n, 0.0, xf, samples, seed, 1)?;
    let product = est1.mean * est2.mean;
    Ok(ProbeReport {
        n,
        x: render_exact(x),
        exact: false,
        product_exact: None,
        factor_x0: est1.mean,
        factor_x0_stderr: est1.stderr,
        factor_0x: est2.mean,
        factor_0x_stderr: est2.stderr,
        product,
        log_product_over_n: product.ln() / n as f64,
        growth_limit_log,
        samples,
        seed,
    })
}
