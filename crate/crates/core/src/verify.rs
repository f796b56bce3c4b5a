//! Acceptance suite: every formula-level claim the library reproduces at
//! desk scale, with its tolerance pinned in code. Each criterion reports the
//! measured values so failures are diagnosable from the emitted JSON.

use crate::asymptotics::{u_minus_asym, v_asym_plus, PlusInfinitySeries};
use crate::integrals::total_integral_on_trace;
use crate::numerics::{c, cr, C64, Complex2x2, I};
use crate::ode::trace_tritronquee;
use crate::params::{q_tau, Sign, TritronqueeSpec};
use crate::pcparametrix::{
    eval_p, normalization_remainder, pc_coefficients, pc_jump_residuals,
};
use crate::rhsolver::{com_check, extract_uvq, solve_w, uv_derivatives};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

const LN2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CheckResult {
    fn le(name: impl Into<String>, measured: f64, threshold: f64) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: measured <= threshold && measured.is_finite(),
            measured,
            threshold,
            note: String::new(),
        }
    }
    fn gt(name: impl Into<String>, measured: f64, threshold: f64) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: measured > threshold && measured.is_finite(),
            measured,
            threshold,
            note: String::new(),
        }
    }
    fn failed(name: impl Into<String>, note: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: false,
            measured: f64::NAN,
            threshold: f64::NAN,
            note: note.into(),
        }
    }
    fn with_note(mut self, note: impl Into<String>) -> CheckResult {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub seconds: f64,
    pub checks: Vec<CheckResult>,
}

fn run_criterion<F>(id: usize, name: &str, f: F) -> CriterionResult
where
    F: FnOnce() -> Vec<CheckResult>,
{
    let t0 = std::time::Instant::now();
    let checks = f();
    CriterionResult {
        id,
        name: name.to_string(),
        passed: checks.iter().all(|ch| ch.passed),
        seconds: t0.elapsed().as_secs_f64(),
        checks,
    }
}

/// Suite names accepted by `run`.
pub const SUITES: [&str; 10] = [
    "params",
    "invariants",
    "series",
    "fig2",
    "branches",
    "global",
    "integral",
    "rh",
    "vpotential",
    "pc",
];

/// Run the acceptance criteria; `suite` filters to one of `SUITES`.
pub fn run(suite: Option<&str>) -> Vec<CriterionResult> {
    let all = suite.is_none();
    let want = |name: &str| all || suite == Some(name);
    let mut out = Vec::new();
    if want("params") {
        out.push(run_criterion(1, "params", criterion_params));
    }
    if want("invariants") {
        out.push(run_criterion(2, "invariants", criterion_invariants));
    }
    if want("series") {
        out.push(run_criterion(3, "series", criterion_series));
    }
    if want("fig2") {
        out.push(run_criterion(4, "fig2", criterion_fig2));
    }
    if want("branches") {
        out.push(run_criterion(5, "branches", criterion_branches));
    }
    if want("global") {
        out.push(run_criterion(6, "global", criterion_global));
    }
    if want("integral") {
        out.push(run_criterion(7, "integral", criterion_integral));
    }
    if want("rh") {
        out.push(run_criterion(8, "rh", criterion_rh));
    }
    if want("vpotential") {
        out.push(run_criterion(9, "vpotential", criterion_vpotential));
    }
    if want("pc") {
        out.push(run_criterion(10, "pc", criterion_pc));
    }
    out
}

// 1. parameter maps at the two pinned alphas
fn criterion_params() -> Vec<CheckResult> {
    let mut checks = Vec::new();
    match q_tau(C64::ZERO) {
        Ok((_, q, tau)) => {
            checks.push(CheckResult::le(
                "q(0) = -ln2/(2 pi)",
                (q - cr(-LN2 / (2.0 * PI))).norm(),
                1e-12,
            ));
            checks.push(CheckResult::le(
                "tau(0) = i sqrt(2)",
                (tau - I * 2.0f64.sqrt()).norm(),
                1e-12,
            ));
        }
        Err(e) => checks.push(CheckResult::failed("q_tau(0)", e.to_string())),
    }
    match q_tau(c(0.5, LN2 / (2.0 * PI))) {
        Ok((_, q, tau)) => {
            checks.push(CheckResult::le(
                "q(1/2 + i ln2/(2 pi)) = ln2/(2 pi)",
                (q - cr(LN2 / (2.0 * PI))).norm(),
                1e-12,
            ));
            checks.push(CheckResult::le("tau = 1", (tau - C64::ONE).norm(), 1e-12));
        }
        Err(e) => checks.push(CheckResult::failed("q_tau(rogue)", e.to_string())),
    }
    checks
}

// 2. algebraic invariants on 100 random alphas
fn criterion_invariants() -> Vec<CheckResult> {
    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut rng = move || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 33) as f64 / (1u64 << 31) as f64
    };
    let mut worst_tau = 0.0f64;
    let mut worst_gap = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let alpha = c(6.0 * rng() - 3.0, 3.0 * rng() - 1.5);
        let d = (alpha.re - 0.5 - (alpha.re - 0.5).round()).abs().hypot(alpha.im);
        if d < 1e-3 {
            continue;
        }
        n += 1;
        let (_, q, tau) = q_tau(alpha).expect("alpha off Z+1/2");
        worst_tau = worst_tau.max((tau * tau + C64::ONE + (-2.0 * PI * I * alpha).exp()).norm());
        let p = -I * (alpha - cr(0.5));
        let gap = ((2.0 * PI * (p - q)).exp() - tau * tau).norm() / (tau * tau).norm().max(1.0);
        worst_gap = worst_gap.max(gap);
    }
    vec![
        CheckResult::le("tau^2 + 1 + e^{-2 pi i alpha} = 0", worst_tau, 1e-10),
        CheckResult::le("e^{2 pi (p - q)} = tau^2", worst_gap, 1e-10),
    ]
}

// 3. trace against the order-4 series on [40, 60]
fn criterion_series() -> Vec<CheckResult> {
    [C64::ZERO, cr(0.3), c(0.5, 0.11)]
        .par_iter()
        .map(|&alpha| {
            let name = format!("alpha = {alpha}: trace vs order-4 series on [40, 60]");
            let tr = match trace_tritronquee(alpha, Sign::Minus, 40.0, 60.0, 1e-10) {
                Ok(tr) => tr,
                Err(e) => return CheckResult::failed(name, e.to_string()),
            };
            let series = PlusInfinitySeries::new(alpha, Sign::Minus, 4);
            let mut worst = 0.0f64;
            for (&x, &u) in tr.x_grid.iter().zip(tr.u_values.iter()) {
                let s = series.eval(cr(x)).unwrap();
                worst = worst.max((u - s).norm());
            }
            CheckResult::le(name, worst, 1e-6)
        })
        .collect()
}

// 4. Eq-(1.12)-style oscillatory connection formula at alpha = 0
fn criterion_fig2() -> Vec<CheckResult> {
    let t0 = std::time::Instant::now();
    let tr = match trace_tritronquee(C64::ZERO, Sign::Minus, -60.0, 60.0, 1e-10) {
        Ok(tr) => tr,
        Err(e) => return vec![CheckResult::failed("alpha = 0 trace", e.to_string())],
    };
    let spec = TritronqueeSpec::new(C64::ZERO, Sign::Minus).unwrap();
    let mut worst = 0.0f64;
    let mut x = -60.0;
    while x <= -40.0 {
        let u = tr.u(x).unwrap();
        let f = u_minus_asym(x, &spec).unwrap();
        worst = worst.max((u - f).norm());
        x += 0.1;
    }
    let elapsed = t0.elapsed().as_secs_f64();
    vec![
        CheckResult::le("max |trace - oscillatory formula| on [-60, -40]", worst, 0.05),
        CheckResult::le("runtime seconds", elapsed, 10.0),
    ]
}

// 5. decaying branches at alpha = +/- 0.15
fn criterion_branches() -> Vec<CheckResult> {
    [cr(0.15), cr(-0.15)]
        .par_iter()
        .flat_map(|&alpha| {
            let spec = TritronqueeSpec::new(alpha, Sign::Minus).unwrap();
            let tr = match trace_tritronquee(alpha, Sign::Minus, -210.0, 60.0, 1e-10) {
                Ok(tr) => tr,
                Err(e) => {
                    return vec![CheckResult::failed(
                        format!("alpha = {alpha} trace"),
                        e.to_string(),
                    )]
                }
            };
            let rel = |x: f64| {
                let u = tr.u(x).unwrap();
                let f = u_minus_asym(x, &spec).unwrap();
                (u / f - C64::ONE).norm()
            };
            let (r30, r40, r50) = (rel(-30.0), rel(-40.0), rel(-50.0));
            // the slow error exponent of the single-branch connection formula at
            // this alpha: M(q) = max(-3/4 + (3/2)|Re iq|, -3 |Re iq|)
            let re_iq = (-spec.q.im).abs();
            let m_exp = (-0.75 + 1.5 * re_iq).max(-3.0 * re_iq);
            let budget_ratio = |x: f64| rel(x) / (-x).powf(m_exp);
            let worst_c = budget_ratio(-30.0)
                .max(budget_ratio(-50.0))
                .max(budget_ratio(-100.0))
                .max(budget_ratio(-200.0));
            vec![
                CheckResult::le(
                    format!(
                        "alpha = {alpha}, regime {}: relative deviation at x = -50",
                        spec.regime
                    ),
                    r50,
                    0.2,
                ),
                CheckResult {
                    name: format!("alpha = {alpha}: deviation decreasing over -30, -40, -50"),
                    passed: r30 > r40 && r40 > r50,
                    measured: r30,
                    threshold: r50,
                    note: format!("{r30:.3e} > {r40:.3e} > {r50:.3e}"),
                },
                CheckResult::le(
                    format!(
                        "alpha = {alpha}: deviation within 1.0 * (-x)^M, M = {m_exp:.4}"
                    ),
                    worst_c,
                    1.0,
                )
                .with_note("error-exponent-normalized bound over x in [-200, -30]"),
                CheckResult {
                    name: format!(
                        "alpha = {alpha}: deviation decreasing over -30, -100, -200"
                    ),
                    passed: rel(-30.0) > rel(-100.0) && rel(-100.0) > rel(-200.0),
                    measured: rel(-100.0),
                    threshold: rel(-200.0),
                    note: format!(
                        "{:.3e} > {:.3e} > {:.3e}",
                        rel(-30.0),
                        rel(-100.0),
                        rel(-200.0)
                    ),
                },
            ]
        })
        .collect()
}

// 6. globally pole-free and zero-free solutions on the axis
fn criterion_global() -> Vec<CheckResult> {
    [c(0.5, 0.2), c(-0.5, 0.2)]
        .par_iter()
        .flat_map(|&alpha| {
            let tr = match trace_tritronquee(alpha, Sign::Minus, -40.0, 40.0, 1e-10) {
                Ok(tr) => tr,
                Err(e) => {
                    return vec![CheckResult::failed(
                        format!("alpha = {alpha} trace"),
                        e.to_string(),
                    )]
                }
            };
            let min_u = tr
                .u_values
                .iter()
                .map(|u| u.norm())
                .fold(f64::INFINITY, f64::min);
            vec![
                CheckResult::le(
                    format!("alpha = {alpha}: real poles on [-40, 40]"),
                    tr.poles.len() as f64,
                    0.0,
                ),
                CheckResult::gt(format!("alpha = {alpha}: min |u| margin"), min_u, 0.0),
            ]
        })
        .collect()
}

// 7. the total-integral identity
fn criterion_integral() -> Vec<CheckResult> {
    [C64::ZERO, cr(0.1), c(0.5, LN2 / (2.0 * PI))]
        .par_iter()
        .flat_map(|&alpha| {
            let tr = match trace_tritronquee(alpha, Sign::Minus, -90.0, 60.0, 1e-10) {
                Ok(tr) => tr,
                Err(e) => {
                    return vec![CheckResult::failed(
                        format!("alpha = {alpha} trace"),
                        e.to_string(),
                    )]
                }
            };
            let base = match total_integral_on_trace(&tr, None) {
                Ok(r) => r,
                Err(e) => {
                    return vec![CheckResult::failed(
                        format!("alpha = {alpha} total integral"),
                        e.to_string(),
                    )]
                }
            };
            let shifted =
                match total_integral_on_trace(&tr, Some((base.a - 5.0, base.b + 5.0))) {
                    Ok(r) => r,
                    Err(e) => {
                        return vec![CheckResult::failed(
                            format!("alpha = {alpha} shifted window"),
                            e.to_string(),
                        )]
                    }
                };
            let ratio = |r: &crate::integrals::TotalIntegralReport| {
                c(r.lhs.0, r.lhs.1) / c(r.rhs.0, r.rhs.1)
            };
            vec![
                CheckResult::le(
                    format!(
                        "alpha = {alpha}: |LHS/RHS - 1| (A = {}, B = {}, N+ = {}, N- = {})",
                        base.a, base.b, base.n_plus, base.n_minus
                    ),
                    base.rel_err,
                    1e-3,
                ),
                CheckResult::le(
                    format!("alpha = {alpha}: (A,B)-invariance of the ratio"),
                    (ratio(&base) - ratio(&shifted)).norm(),
                    1e-6,
                ),
            ]
        })
        .collect()
}

// 8. the Riemann-Hilbert oracle
fn criterion_rh() -> Vec<CheckResult> {
    let p = LN2 / (2.0 * PI);
    let tau = C64::ONE;
    let mut checks: Vec<CheckResult> = Vec::new();

    // W == I at p = 0
    match solve_w(0.0, C64::ZERO, 5.0, 12) {
        Ok(sol) => {
            let dev = sol
                .w1
                .norm_max()
                .max(sol.w2.norm_max())
                .max((sol.eval_wt(c(0.4, 0.3)) - Complex2x2::IDENTITY).norm_max());
            checks.push(CheckResult::le("p = 0: ||W - I||", dev, 1e-12));
        }
        Err(e) => checks.push(CheckResult::failed("p = 0 solve", e.to_string())),
    }

    // constant of motion at y in {-10, 0, 10}
    let com: Vec<CheckResult> = [-10.0f64, 0.0, 10.0]
        .par_iter()
        .map(|&y| match com_check(p, tau, y, 1e-3, 20) {
            Ok(dev) => CheckResult::le(format!("|U'V - UV' - ip/3| at y = {y}"), dev, 1e-5),
            Err(e) => CheckResult::failed(format!("com at y = {y}"), e.to_string()),
        })
        .collect();
    checks.extend(com);

    // V(25) against the right asymptotics
    match solve_w(p, tau, 25.0, 24) {
        Ok(sol) => match extract_uvq(&sol) {
            Ok((_, v, _)) => {
                let lead = v_asym_plus(25.0, cr(p)).unwrap();
                checks.push(CheckResult::le(
                    "V(25) relative deviation from -(y/6)^{ip+1/2}",
                    (v / lead - C64::ONE).norm(),
                    0.12,
                ));
            }
            Err(e) => checks.push(CheckResult::failed("V(25) extraction", e.to_string())),
        },
        Err(e) => checks.push(
            CheckResult::failed("V(25) solve", e.to_string()).with_note(
                "undeformed jumps grow like e^{0.385 y^{3/2}} for y > 0; y = 25 exceeds \
                 double-precision range without the out-of-scope contour deformation",
            ),
        ),
    }

    // cross-oracle against the ODE trace at y in {3, 6, 10}
    let alpha = c(0.5, p);
    match trace_tritronquee(alpha, Sign::Minus, -12.0, 60.0, 1e-10) {
        Ok(tr) => {
            let scale = (2.0f64 / 3.0).powf(1.0 / 3.0);
            let errs: Vec<(f64, f64, f64)> = [3.0f64, 6.0, 10.0]
                .par_iter()
                .map(|&y| {
                    let x = -scale * y;
                    let u = tr.u(x).unwrap();
                    let err_at = |panels: usize| {
                        let sol = solve_w(p, tau, y, panels)?;
                        let (_, _, q) = extract_uvq(&sol)?;
                        let u_rh = -cr(1.5f64.powf(1.0 / 3.0)) * q;
                        Ok::<f64, crate::Error>((u_rh - u).norm())
                    };
                    let coarse = err_at(14).unwrap_or(f64::NAN);
                    let fine = err_at(22).unwrap_or(f64::NAN);
                    (y, coarse, fine)
                })
                .collect();
            for (y, coarse, fine) in errs {
                checks.push(CheckResult::le(
                    format!("|Q-derived u - trace u| at y = {y}"),
                    fine,
                    1e-3,
                ));
                checks.push(CheckResult {
                    name: format!("refinement improves (or is converged) at y = {y}"),
                    passed: fine <= coarse * 1.5 || fine <= 1e-6,
                    measured: fine,
                    threshold: coarse,
                    note: format!("panels 14: {coarse:.3e}, panels 22: {fine:.3e}"),
                });
            }
        }
        Err(e) => checks.push(CheckResult::failed("cross-oracle trace", e.to_string())),
    }
    checks
}

// 9. the V-potential formulas and the zero-free / critical-point-free sweep
fn criterion_vpotential() -> Vec<CheckResult> {
    let p = LN2 / (2.0 * PI);
    let tau = C64::ONE;
    let mut checks = Vec::new();

    let v6 = v_asym_plus(6.0, cr(p)).unwrap();
    checks.push(CheckResult::le(
        "V-asymptotic at y = 6 equals -1 exactly",
        (v6 + C64::ONE).norm(),
        0.0,
    ));

    let ys: Vec<f64> = (0..31).map(|k| -15.0 + k as f64).collect();
    let sweep: Vec<(f64, f64, f64, f64)> = ys
        .par_iter()
        .map(|&y| match solve_w(p, tau, y, 16) {
            Ok(sol) => {
                let v = sol.w1.m21;
                let (_, dv) = uv_derivatives(&sol);
                let spike = sol.cond_estimate / sol.max_jump.powi(2).max(1.0);
                (y, v.norm(), dv.norm(), spike)
            }
            Err(_) => (y, f64::NAN, f64::NAN, f64::NAN),
        })
        .collect();
    let min_v = sweep.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    let min_dv = sweep.iter().map(|t| t.2).fold(f64::INFINITY, f64::min);
    let max_spike = sweep.iter().map(|t| t.3).fold(0.0f64, f64::max);
    checks.push(
        CheckResult::gt("min |V| over y in [-15, 15]", min_v, 0.0)
            .with_note("31 samples, unit spacing"),
    );
    checks.push(CheckResult::gt(
        "min |V'| over y in [-15, 15]",
        min_dv,
        0.0,
    ));
    checks.push(
        CheckResult::le(
            "no condition-number spikes over the sweep (normalized)",
            max_spike,
            1e10,
        )
        .with_note("condition estimate relative to the intrinsic jump dynamic range"),
    );
    checks
}

// 10. the parabolic cylinder parametrix
fn criterion_pc() -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let p_rogue = cr(LN2 / (2.0 * PI));
    let pc = pc_coefficients(p_rogue, C64::ONE).unwrap();

    checks.push(CheckResult::le(
        "rs + 2p = 0 (rogue parameters)",
        (pc.r * pc.s + 2.0 * p_rogue).norm(),
        1e-12,
    ));

    let res = pc_jump_residuals(&pc, &[0.5, 1.5]);
    for (k, r) in res.iter().enumerate() {
        checks.push(CheckResult::le(
            format!("jump residual on ray {k} at |lambda| in {{0.5, 1.5}}"),
            *r,
            1e-8,
        ));
    }

    // normalization constant: the measured first-order term matches (r, s)
    // with an O(lambda^{-2}) remainder
    let lam = c(10.0 * (PI / 8.0).cos(), 10.0 * (PI / 8.0).sin());
    let rem = normalization_remainder(lam, &pc).norm_max();
    checks.push(CheckResult::le(
        "normalization remainder at |lambda| = 10 (C <= 10 in C/|lambda|^2)",
        rem * lam.norm_sqr(),
        10.0,
    ));

    // s = -r* for p = 0.3
    let p3 = cr(0.3);
    let tau3 = cr(((2.0 * PI * 0.3).exp() - 1.0).sqrt());
    let pc3 = pc_coefficients(p3, tau3).unwrap();
    checks.push(CheckResult::le(
        "s + r* = 0 at p = 0.3",
        (pc3.s + pc3.r.conj()).norm() / pc3.r.norm(),
        1e-10,
    ));

    // sector independence of the extracted first moment
    let extrapolate = |ang: f64| {
        let first = |r: f64| {
            let lam = c(r * ang.cos(), r * ang.sin());
            let pm = eval_p(lam, &pc3)
                * Complex2x2::diag_sigma3(
                    crate::numerics::principal_pow(lam, I * pc3.p).unwrap(),
                );
            (pm - Complex2x2::IDENTITY).scale(lam)
        };
        let mut rows: Vec<Complex2x2> =
            [16.0, 32.0, 64.0, 128.0].iter().map(|&r| first(r)).collect();
        for level in 1..rows.len() {
            let f = 2.0f64.powi(level as i32);
            for i in (level..rows.len()).rev() {
                rows[i] = (rows[i].scale(cr(f)) - rows[i - 1]).scale(cr(1.0 / (f - 1.0)));
            }
        }
        rows[3]
    };
    let reference = extrapolate(0.0);
    let mut worst = 0.0f64;
    for ang in [0.5 * PI, PI - 1e-9, -0.5 * PI, -(PI - 1e-9) + 2e-9] {
        worst = worst.max((extrapolate(ang) - reference).norm_max());
    }
    checks.push(CheckResult::le(
        "sector independence of the extracted first moment",
        worst,
        1e-8,
    ));
    checks
}
