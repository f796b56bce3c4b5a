//! Dense solution traces of the Painleve-II equation along the real axis,
//! with meromorphic pole passage in the reciprocal variable w = 1/u.

use super::taylor::{choose_h, poly_eval, poly_shift, u_series, w_series};
use crate::error::{Error, Result};
use crate::numerics::{cr, C64};
use crate::params::Sign;

/// Grid exclusion radius around each pole.
pub const EXCISION_RADIUS: f64 = 1e-3;

const SERIES_ORDER: usize = 26;
const SWITCH_TO_W: f64 = 10.0; // |u| above which the reciprocal variable is used
const SWITCH_TO_U: f64 = 5.0; // 1/|w| below which we switch back
const H_MAX: f64 = 0.4;
const H_MAX_NEAR_POLE: f64 = 0.1;
const POLE_NEIGHBORHOOD: f64 = 5.0;

/// A simple real pole of the solution: location, unit residue, and the
/// Laurent coefficients of the regular part beyond the pole term,
///   u(x) - sigma/(x - x0) = sum_k local_coeffs[k] (x - x0)^k.
/// The Painleve-II structure forces local_coeffs[0] = 0 and
/// local_coeffs[1] = -sigma x0 / 6.
#[derive(Debug, Clone)]
pub struct PoleRecord {
    pub location: f64,
    pub residue: i8,
    pub local_coeffs: Vec<C64>,
}

impl PoleRecord {
    /// Regular part of u at offset s from the pole.
    pub fn regular_part(&self, s: f64) -> C64 {
        let mut v = C64::ZERO;
        for ck in self.local_coeffs.iter().rev() {
            v = v * s + ck;
        }
        v
    }

    /// Exact integral of the regular part over the symmetric window
    /// [-delta, delta] (the pole term itself integrates to zero there).
    pub fn window_integral(&self, delta: f64) -> C64 {
        let mut v = C64::ZERO;
        for (k, ck) in self.local_coeffs.iter().enumerate() {
            if k % 2 == 0 {
                v += ck * 2.0 * delta.powi(k as i32 + 1) / (k as f64 + 1.0);
            }
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Var {
    U,
    W,
}

#[derive(Debug, Clone)]
struct DenseStep {
    x0: f64,
    h: f64, // signed
    var: Var,
    coeffs: Vec<C64>,
}

impl DenseStep {
    fn covers(&self, x: f64) -> bool {
        let (lo, hi) = self.span();
        let slack = 1e-9 * (1.0 + x.abs());
        x >= lo - slack && x <= hi + slack
    }
    fn span(&self) -> (f64, f64) {
        if self.h >= 0.0 {
            (self.x0, self.x0 + self.h)
        } else {
            (self.x0 + self.h, self.x0)
        }
    }
    fn eval(&self, x: f64) -> (C64, C64) {
        let (v, dv) = poly_eval(&self.coeffs, x - self.x0);
        match self.var {
            Var::U => (v, dv),
            Var::W => (v.inv(), -dv / (v * v)),
        }
    }
}

enum Dense {
    Steps(Vec<DenseStep>),
    Analytic(Box<dyn Fn(f64) -> (C64, C64) + Send + Sync>),
}

/// Dense trace of u(x), u'(x) over an interval, with a pole catalog.
pub struct SolutionTrace {
    pub alpha: C64,
    pub sign: Sign,
    pub x_grid: Vec<f64>,
    pub u_values: Vec<C64>,
    pub du_values: Vec<C64>,
    pub poles: Vec<PoleRecord>,
    pub tolerance: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    dense: Dense,
}

impl SolutionTrace {
    /// Dense evaluation of (u, u') anywhere in the traced interval.
    pub fn eval(&self, x: f64) -> Option<(C64, C64)> {
        if x < self.x_lo - 1e-12 || x > self.x_hi + 1e-12 {
            return None;
        }
        match &self.dense {
            Dense::Analytic(f) => Some(f(x)),
            Dense::Steps(steps) => {
                // steps are ordered by traversal; binary search on span
                let mut lo = 0usize;
                let mut hi = steps.len();
                let ascending = steps
                    .last()
                    .map(|s| s.x0 >= steps[0].x0)
                    .unwrap_or(true);
                while lo < hi {
                    let mid = (lo + hi) / 2;
                    let (a, b) = steps[mid].span();
                    if steps[mid].covers(x) {
                        return Some(steps[mid].eval(x));
                    }
                    let go_right = if ascending { x > b } else { x < a };
                    if go_right {
                        lo = mid + 1;
                    } else {
                        hi = mid;
                    }
                }
                // fall back to linear scan near boundaries
                steps.iter().find(|s| s.covers(x)).map(|s| s.eval(x))
            }
        }
    }

    pub fn u(&self, x: f64) -> Option<C64> {
        self.eval(x).map(|p| p.0)
    }

    /// Distance from x to the nearest cataloged pole (infinity if none).
    pub fn pole_distance(&self, x: f64) -> f64 {
        self.poles
            .iter()
            .map(|p| (p.location - x).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Test/synthetic constructor: a trace backed by a closure, with an
    /// explicit pole catalog. Used by quadrature tests and oracles.
    pub fn synthetic<F>(f: F, x_lo: f64, x_hi: f64, poles: Vec<PoleRecord>) -> SolutionTrace
    where
        F: Fn(f64) -> (C64, C64) + Send + Sync + 'static,
    {
        let n = 1201;
        let mut x_grid = Vec::with_capacity(n);
        let mut u_values = Vec::with_capacity(n);
        let mut du_values = Vec::with_capacity(n);
        for i in 0..n {
            let x = x_lo + (x_hi - x_lo) * i as f64 / (n - 1) as f64;
            if poles.iter().any(|p| (x - p.location).abs() < EXCISION_RADIUS) {
                continue;
            }
            let (u, du) = f(x);
            x_grid.push(x);
            u_values.push(u);
            du_values.push(du);
        }
        SolutionTrace {
            alpha: C64::ZERO,
            sign: Sign::Minus,
            x_grid,
            u_values,
            du_values,
            poles,
            tolerance: 1e-12,
            x_lo,
            x_hi,
            dense: Dense::Analytic(Box::new(f)),
        }
    }
}

struct Stepper {
    alpha: C64,
    tol: f64,
    dir: f64,
    x: f64,
    var: Var,
    // current state in the active variable
    v0: C64,
    v1: C64,
    steps: Vec<DenseStep>,
    poles: Vec<PoleRecord>,
}

impl Stepper {
    fn u_state(&self) -> (C64, C64) {
        match self.var {
            Var::U => (self.v0, self.v1),
            Var::W => (self.v0.inv(), -self.v1 / (self.v0 * self.v0)),
        }
    }

    fn h_cap(&self) -> f64 {
        let near_pole = self
            .poles
            .iter()
            .any(|p| (p.location - self.x).abs() < POLE_NEIGHBORHOOD);
        if near_pole {
            H_MAX_NEAR_POLE
        } else {
            H_MAX
        }
    }

    /// One accepted step; pushes dense output, may record a pole.
    fn step(&mut self, target: f64) -> Result<()> {
        let remaining = (target - self.x).abs();
        // variable switch by hysteresis
        let (u0, _u1) = self.u_state();
        match self.var {
            Var::U if u0.norm() > SWITCH_TO_W => {
                let w0 = u0.inv();
                let w1 = -self.v1 / (self.v0 * self.v0);
                self.var = Var::W;
                self.v0 = w0;
                self.v1 = w1;
            }
            Var::W if u0.norm() < SWITCH_TO_U => {
                let (nu0, nu1) = self.u_state();
                self.var = Var::U;
                self.v0 = nu0;
                self.v1 = nu1;
            }
            _ => {}
        }

        let coeffs = match self.var {
            Var::U => u_series(self.alpha, self.x, self.v0, self.v1, SERIES_ORDER),
            Var::W => w_series(self.alpha, self.x, self.v0, self.v1, SERIES_ORDER),
        };
        let scale = self.v0.norm().max(self.v1.norm()).max(1.0);
        let mut h = choose_h(&coeffs, self.tol, scale, self.h_cap()).min(remaining);
        if h < 1e-12 {
            return Err(Error::IntegrationFailure {
                x: self.x,
                msg: "step size underflow".into(),
            });
        }

        if self.var == Var::W {
            h = self.handle_possible_pole(&coeffs, h)?;
        }

        let hs = self.dir * h;
        let (v0, v1) = poly_eval(&coeffs, hs);
        self.steps.push(DenseStep {
            x0: self.x,
            h: hs,
            var: self.var,
            coeffs,
        });
        self.x += hs;
        self.v0 = v0;
        self.v1 = v1;
        Ok(())
    }

    /// Detect a zero of w inside the pending step; record the pole and adjust
    /// the step so its endpoint does not land on the zero.
    fn handle_possible_pole(&mut self, coeffs: &[C64], h: f64) -> Result<f64> {
        // sample |w| on the step
        let mut s_best = 0.0;
        let mut m_best = f64::INFINITY;
        for i in 0..=24 {
            let s = self.dir * h * i as f64 / 24.0;
            let (w, _) = poly_eval(coeffs, s);
            if w.norm() < m_best {
                m_best = w.norm();
                s_best = s;
            }
        }
        if m_best > 0.5 * self.v0.norm() + 1e-6 {
            return Ok(h);
        }
        // refine the minimum of |w|^2 by Newton on its derivative
        let mut s = s_best;
        for _ in 0..60 {
            let (w, dw) = poly_eval(coeffs, s);
            let wpp = second_derivative(coeffs, s);
            let g1 = 2.0 * (w.conj() * dw).re;
            let g2 = 2.0 * (dw.norm_sqr() + (w.conj() * wpp).re);
            if g2.abs() < 1e-300 {
                break;
            }
            let step = g1 / g2;
            s -= step;
            if step.abs() < 1e-15 * (1.0 + s.abs()) {
                break;
            }
        }
        let (w_min, _dw_min) = poly_eval(coeffs, s);
        let interior = s * self.dir > 1e-12 && s * self.dir < 1.1 * h;
        if !interior || w_min.norm() > 1e-7 {
            // near miss (complex pole off the axis) or the dip lies outside
            // the step: keep the endpoint away from the dip
            if interior && w_min.norm() < 0.03 {
                let shortened = (s.abs() - 0.05).max(0.3 * h.min(s.abs()));
                return Ok(shortened.min(h));
            }
            return Ok(h);
        }

        // genuine on-axis pole
        let local = poly_shift(coeffs, s);
        let sigma_hat = local[1];
        let sigma = if sigma_hat.re >= 0.0 { 1.0 } else { -1.0 };
        let dev = (sigma_hat - cr(sigma)).norm();
        if dev > 1e-4 {
            return Err(Error::InconsistentPole {
                x: self.x + s,
                dev,
            });
        }
        let x_pole = self.x + s;
        let a1 = -cr(sigma) * x_pole / 6.0;
        let a2 = (self.alpha - cr(sigma)) / 4.0;
        let a3 = a1 * a1 * sigma - local.get(5).copied().unwrap_or(C64::ZERO);
        let a4 = 2.0 * sigma * a1 * a2 - local.get(6).copied().unwrap_or(C64::ZERO);
        self.poles.push(PoleRecord {
            location: x_pole,
            residue: sigma as i8,
            local_coeffs: vec![C64::ZERO, a1, a2, a3, a4],
        });

        // land beyond the zero with |w| comfortably away from 0
        let want = s.abs() + 0.05;
        Ok(want.min(1.15 * h).max(h.min(want)))
    }
}

fn second_derivative(coeffs: &[C64], s: f64) -> C64 {
    let mut v = C64::ZERO;
    for k in (2..coeffs.len()).rev() {
        v = v * s + coeffs[k] * ((k * (k - 1)) as f64);
    }
    v
}

/// Adaptive trace from the seed (x0, u, du) to `target` (either direction),
/// dense output on a uniform grid of the given spacing.
pub fn integrate_with_grid(
    alpha: C64,
    seed: (f64, C64, C64),
    target: f64,
    tol: f64,
    grid_step: f64,
    sign: Sign,
) -> Result<SolutionTrace> {
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::Configuration(format!(
            "tol = {tol:e} outside [1e-12, 1e-6]"
        )));
    }
    let (x0, u0, du0) = seed;
    let dir = if target >= x0 { 1.0 } else { -1.0 };
    let mut st = Stepper {
        alpha,
        tol,
        dir,
        x: x0,
        var: Var::U,
        v0: u0,
        v1: du0,
        steps: Vec::new(),
        poles: Vec::new(),
    };
    let mut guard = 0usize;
    while (target - st.x) * dir > 1e-12 {
        st.step(target)?;
        guard += 1;
        if guard > 4_000_000 {
            return Err(Error::IntegrationFailure {
                x: st.x,
                msg: "step budget exhausted".into(),
            });
        }
    }

    let x_lo = x0.min(target);
    let x_hi = x0.max(target);
    let mut poles = st.poles;
    poles.sort_by(|a, b| a.location.partial_cmp(&b.location).unwrap());

    let mut trace = SolutionTrace {
        alpha,
        sign,
        x_grid: Vec::new(),
        u_values: Vec::new(),
        du_values: Vec::new(),
        poles,
        tolerance: tol,
        x_lo,
        x_hi,
        dense: Dense::Steps(st.steps),
    };
    // uniform output grid, excised around poles
    let n = ((x_hi - x_lo) / grid_step).round() as usize;
    for i in 0..=n {
        let x = x_lo + grid_step * i as f64;
        if x > x_hi + 1e-12 {
            break;
        }
        if trace.pole_distance(x) < EXCISION_RADIUS {
            continue;
        }
        if let Some((u, du)) = trace.eval(x) {
            trace.x_grid.push(x);
            trace.u_values.push(u);
            trace.du_values.push(du);
        }
    }
    Ok(trace)
}

/// Adaptive trace with the default output grid spacing 0.1.
pub fn integrate(alpha: C64, seed: (f64, C64, C64), target: f64, tol: f64) -> Result<SolutionTrace> {
    integrate_with_grid(alpha, seed, target, tol, 0.1, Sign::Minus)
}
