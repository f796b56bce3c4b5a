//! Adaptive integration of the Painleve-II equation along the real axis.
//!
//! The solutions are meromorphic with simple poles of residue +-1, so the
//! integrator switches to the reciprocal variable w = 1/u near poles, steps
//! straight through the zero of w, and catalogs each crossing. Steps are
//! Taylor polynomials, which double as exact dense output.

mod taylor;
mod trace;
mod uv;

pub use trace::{integrate, integrate_with_grid, PoleRecord, SolutionTrace, EXCISION_RADIUS};
pub use uv::{integrate_uv, UvTrace};

use crate::asymptotics::PlusInfinitySeries;
use crate::error::{Error, Result};
use crate::numerics::{cr, C64};
use crate::params::{Regime, Sign, TritronqueeSpec};

/// Seed order used by `seed_from_series` / `trace_tritronquee`.
pub const SEED_ORDER: usize = 6;

/// (u, u') at x0 from the order-6 truncated series and its formal derivative.
pub fn seed_from_series(alpha: C64, sign: Sign, x0: f64) -> Result<(C64, C64)> {
    if x0 < 20.0 {
        return Err(Error::SeedQuality(x0));
    }
    let s = PlusInfinitySeries::new(alpha, sign, SEED_ORDER);
    Ok((s.eval(cr(x0))?, s.eval_derivative(cr(x0))?))
}

/// Trace of the increasing tritronquee solution u_TT^{sign}(x; alpha) on
/// [xmin, xmax]: seeds at x0 = max(xmax, 30) from the series and integrates
/// down to xmin.
pub fn trace_tritronquee(
    alpha: C64,
    sign: Sign,
    xmin: f64,
    xmax: f64,
    tol: f64,
) -> Result<SolutionTrace> {
    trace_tritronquee_with(alpha, sign, xmin, xmax, tol, 0.1, 0.0)
}

/// As `trace_tritronquee` with explicit grid spacing and an optional seed
/// shift (x0 = max(xmax, 30) + seed_shift), used by the self-consistency
/// checks.
pub fn trace_tritronquee_with(
    alpha: C64,
    sign: Sign,
    xmin: f64,
    xmax: f64,
    tol: f64,
    grid_step: f64,
    seed_shift: f64,
) -> Result<SolutionTrace> {
    let spec = TritronqueeSpec::new(alpha, sign)?;
    if spec.regime == Regime::HalfIntegerAlpha {
        return Err(Error::HalfIntegerAlpha(format!("{alpha}")));
    }
    if xmax < 30.0 {
        return Err(Error::Configuration(format!(
            "xmax = {xmax} must be >= 30 for a trusted seed"
        )));
    }
    let x0 = xmax.max(30.0) + seed_shift;
    let (u0, du0) = seed_from_series(alpha, sign, x0)?;
    let mut tr = integrate_with_grid(alpha, (x0, u0, du0), xmin, tol, grid_step, sign)?;
    // report the requested window even though the dense data extends to x0
    tr.x_hi = tr.x_hi.min(xmax);
    let keep: Vec<usize> = (0..tr.x_grid.len())
        .filter(|&i| tr.x_grid[i] <= xmax + 1e-12)
        .collect();
    tr.x_grid = keep.iter().map(|&i| tr.x_grid[i]).collect();
    tr.u_values = keep.iter().map(|&i| tr.u_values[i]).collect();
    tr.du_values = keep.iter().map(|&i| tr.du_values[i]).collect();
    Ok(tr)
}
