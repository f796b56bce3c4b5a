//! Taylor integration of the coupled potentials system
//!   U'' = (1/3) y U + 2 U^2 V,   V'' = (1/3) y V + 2 U V^2,
//! used to cross-check the Riemann-Hilbert extraction. The combination
//! U'V - UV' is a constant of motion equal to ip/3.

use crate::error::{Error, Result};
use crate::numerics::{C64, I};

const ORDER: usize = 22;

/// Dense trace of (U, V) and their derivatives on a y-grid.
pub struct UvTrace {
    pub p: C64,
    pub y_grid: Vec<f64>,
    pub u: Vec<C64>,
    pub du: Vec<C64>,
    pub v: Vec<C64>,
    pub dv: Vec<C64>,
    /// max |U'V - UV' - ip/3| observed at step endpoints
    pub max_com_deviation: f64,
}

struct State {
    u0: C64,
    u1: C64,
    v0: C64,
    v1: C64,
}

fn conv(a: &[C64], b: &[C64], k: usize) -> C64 {
    let mut s = C64::ZERO;
    for i in 0..=k {
        s += a[i] * b[k - i];
    }
    s
}

/// Taylor coefficients of (U, V) around y0.
fn uv_series(y0: f64, st: &State, n: usize) -> (Vec<C64>, Vec<C64>) {
    let mut u = vec![C64::ZERO; n + 1];
    let mut v = vec![C64::ZERO; n + 1];
    u[0] = st.u0;
    u[1] = st.u1;
    v[0] = st.v0;
    v[1] = st.v1;
    let mut uu = vec![C64::ZERO; n + 1];
    let mut vv = vec![C64::ZERO; n + 1];
    uu[0] = u[0] * u[0];
    vv[0] = v[0] * v[0];
    uu[1] = 2.0 * u[0] * u[1];
    vv[1] = 2.0 * v[0] * v[1];
    for k in 0..n - 1 {
        // (1/3)(y0 + s) U: coefficient y0 u_k / 3 + u_{k-1} / 3
        let mut ru = u[k] * (y0 / 3.0) + conv(&uu, &v, k) * 2.0;
        let mut rv = v[k] * (y0 / 3.0) + conv(&vv, &u, k) * 2.0;
        if k >= 1 {
            ru += u[k - 1] / 3.0;
            rv += v[k - 1] / 3.0;
        }
        let den = ((k + 1) * (k + 2)) as f64;
        u[k + 2] = ru / den;
        v[k + 2] = rv / den;
        let m = k + 2;
        let mut su = C64::ZERO;
        let mut sv = C64::ZERO;
        for i in 0..=m {
            su += u[i] * u[m - i];
            sv += v[i] * v[m - i];
        }
        uu[m] = su;
        vv[m] = sv;
    }
    (u, v)
}

/// Integrate the coupled system from an externally supplied seed
/// (y0, U, U', V, V') across `y_range` = (y_from, y_to); dense output on a
/// grid of spacing `grid_step`.
pub fn integrate_uv(
    p: C64,
    seed: (f64, C64, C64, C64, C64),
    y_range: (f64, f64),
    tol: f64,
    grid_step: f64,
) -> Result<UvTrace> {
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::Configuration(format!(
            "tol = {tol:e} outside [1e-12, 1e-6]"
        )));
    }
    let (y0, u0, u1, v0, v1) = seed;
    let (from, to) = y_range;
    if (y0 - from).abs() > 1e-9 {
        return Err(Error::Configuration(
            "seed ordinate must match the start of y_range".into(),
        ));
    }
    let dir = if to >= from { 1.0 } else { -1.0 };
    let com_target = I * p / 3.0;

    let mut st = State { u0, u1, v0, v1 };
    let mut y = y0;
    let mut segs: Vec<(f64, f64, Vec<C64>, Vec<C64>)> = Vec::new();
    let mut max_dev: f64 = (st.u1 * st.v0 - st.u0 * st.v1 - com_target).norm();
    while (to - y) * dir > 1e-12 {
        let (us, vs) = uv_series(y, &st, ORDER);
        let scale = st
            .u0
            .norm()
            .max(st.v0.norm())
            .max(st.u1.norm())
            .max(st.v1.norm())
            .max(1.0);
        let mut h = f64::INFINITY;
        for arr in [&us, &vs] {
            for k in [ORDER - 1, ORDER] {
                let m = arr[k].norm();
                if m > 0.0 {
                    h = h.min(0.8 * (tol * scale / m).powf(1.0 / k as f64));
                }
            }
        }
        let h = h.min(0.4).min((to - y).abs()).max(1e-13);
        let hs = dir * h;
        let eval = |cs: &[C64], s: f64| super::taylor::poly_eval(cs, s);
        let (nu0, nu1) = eval(&us, hs);
        let (nv0, nv1) = eval(&vs, hs);
        segs.push((y, hs, us, vs));
        y += hs;
        st = State {
            u0: nu0,
            u1: nu1,
            v0: nv0,
            v1: nv1,
        };
        let dev = (st.u1 * st.v0 - st.u0 * st.v1 - com_target).norm();
        max_dev = max_dev.max(dev);
        if segs.len() > 2_000_000 {
            return Err(Error::IntegrationFailure {
                x: y,
                msg: "step budget exhausted".into(),
            });
        }
    }

    let lo = from.min(to);
    let hi = from.max(to);
    let mut out = UvTrace {
        p,
        y_grid: Vec::new(),
        u: Vec::new(),
        du: Vec::new(),
        v: Vec::new(),
        dv: Vec::new(),
        max_com_deviation: max_dev,
    };
    let n = ((hi - lo) / grid_step).round() as usize;
    for i in 0..=n {
        let yq = lo + grid_step * i as f64;
        let seg = segs.iter().find(|(s0, sh, _, _)| {
            let (a, b) = if *sh >= 0.0 { (*s0, s0 + sh) } else { (s0 + sh, *s0) };
            yq >= a - 1e-12 && yq <= b + 1e-12
        });
        if let Some((s0, _, us, vs)) = seg {
            let (uu, duu) = super::taylor::poly_eval(us, yq - s0);
            let (vv, dvv) = super::taylor::poly_eval(vs, yq - s0);
            out.y_grid.push(yq);
            out.u.push(uu);
            out.du.push(duu);
            out.v.push(vv);
            out.dv.push(dvv);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c, cr};

    #[test]
    fn zero_seed_stays_zero() {
        let tr = integrate_uv(
            C64::ZERO,
            (0.0, C64::ZERO, C64::ZERO, C64::ZERO, C64::ZERO),
            (0.0, 5.0),
            1e-10,
            0.5,
        )
        .unwrap();
        assert!(tr.u.iter().all(|z| z.norm() == 0.0));
        assert!(tr.max_com_deviation == 0.0);
    }

    #[test]
    fn constant_of_motion_is_conserved() {
        // Any seed with U'V - UV' = ip/3 keeps it along the trace.
        let p = cr(0.11);
        let u0 = c(0.3, 0.1);
        let v0 = c(-0.2, 0.4);
        let u1 = c(0.05, -0.3);
        // solve for v1 from the constant: v1 = (u1 v0 - ip/3)/u0
        let v1 = (u1 * v0 - crate::numerics::I * p / 3.0) / u0;
        let tol = 1e-10;
        let tr = integrate_uv(p, (0.0, u0, u1, v0, v1), (0.0, 6.0), tol, 0.25).unwrap();
        assert!(
            tr.max_com_deviation <= 100.0 * tol,
            "deviation {:.3e}",
            tr.max_com_deviation
        );
    }

    #[test]
    fn q_satisfies_inhomogeneous_pii() {
        // Q = V'/V from the trace satisfies
        // Q'' + (2/3) y Q - 2 Q^3 - (2/3) i p - 1/3 = 0.
        let p = cr(0.11);
        let u0 = c(0.4, -0.1);
        let v0 = c(0.5, 0.2);
        let u1 = c(-0.1, 0.2);
        let v1 = (u1 * v0 - crate::numerics::I * p / 3.0) / u0;
        let h = 0.0125;
        let tr = integrate_uv(p, (0.0, u0, u1, v0, v1), (0.0, 2.0), 1e-11, h).unwrap();
        let q: Vec<C64> = tr.v.iter().zip(tr.dv.iter()).map(|(v, dv)| dv / v).collect();
        // 4th-order central second difference at a mid index
        let i = 80;
        let qpp = (-q[i + 2] + 16.0 * q[i + 1] - 30.0 * q[i] + 16.0 * q[i - 1] - q[i - 2])
            / (12.0 * h * h);
        let y = tr.y_grid[i];
        let res = qpp + cr(2.0 * y / 3.0) * q[i] - 2.0 * q[i] * q[i] * q[i]
            - crate::numerics::I * p * (2.0 / 3.0)
            - cr(1.0 / 3.0);
        assert!(res.norm() < 1e-6, "residual {:.3e}", res.norm());
    }
}
