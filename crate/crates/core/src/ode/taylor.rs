//! Taylor-series stepping kernels for the Painleve-II equation and its
//! reciprocal form. The solution is meromorphic, so each accepted step stores
//! a genuine Taylor polynomial: dense output is polynomial evaluation at the
//! integrator's own accuracy.

use crate::numerics::C64;

/// Taylor coefficients of u around x0 for u'' = x u + 2 u^3 - alpha, given
/// (u(x0), u'(x0)) = (u0, u1). Returns n+1 coefficients.
///
/// With x = x0 + s the recurrence reads
///   (k+1)(k+2) u_{k+2} = x0 u_k + u_{k-1} + 2 (u^3)_k - alpha delta_{k0}.
pub fn u_series(alpha: C64, x0: f64, u0: C64, u1: C64, n: usize) -> Vec<C64> {
    let mut u = vec![C64::ZERO; n + 1];
    let mut sq = vec![C64::ZERO; n + 1]; // (u^2)_k
    let mut cb = vec![C64::ZERO; n + 1]; // (u^3)_k
    u[0] = u0;
    if n >= 1 {
        u[1] = u1;
    }
    sq[0] = u0 * u0;
    cb[0] = sq[0] * u0;
    for k in 0..n.saturating_sub(1) {
        // convolution entries at index k are complete once u_0..u_k are known
        let mut rhs = u[k] * x0 + cb[k] * 2.0;
        if k >= 1 {
            rhs += u[k - 1];
        }
        if k == 0 {
            rhs -= alpha;
        }
        u[k + 2] = rhs / (((k + 1) * (k + 2)) as f64);
        // extend the powers to index k+1 (needs u_0..u_{k+1}, all known)
        let m = k + 1;
        let mut s = C64::ZERO;
        for i in 0..=m {
            s += u[i] * u[m - i];
        }
        sq[m] = s;
        let mut t = C64::ZERO;
        for i in 0..=m {
            t += sq[i] * u[m - i];
        }
        cb[m] = t;
    }
    u
}

/// Taylor coefficients of w = 1/u around x0 for
///   w w'' = 2 (w'^2 - 1) - x w^2 + alpha w^3,
/// given (w(x0), w'(x0)). Requires w(x0) != 0; accuracy degrades as |w0| -> 0,
/// so the caller keeps expansion points away from the zeros of w.
pub fn w_series(alpha: C64, x0: f64, w0: C64, w1: C64, n: usize) -> Vec<C64> {
    let mut w = vec![C64::ZERO; n + 1];
    let mut sq = vec![C64::ZERO; n + 1]; // (w^2)_k
    let mut cb = vec![C64::ZERO; n + 1]; // (w^3)_k
    w[0] = w0;
    if n >= 1 {
        w[1] = w1;
    }
    sq[0] = w0 * w0;
    cb[0] = sq[0] * w0;
    if n >= 1 {
        sq[1] = 2.0 * w0 * w1;
        cb[1] = sq[0] * w1 + sq[1] * w0;
    }
    for k in 0..n.saturating_sub(1) {
        // (w'^2)_k = sum_i (i+1) w_{i+1} (k-i+1) w_{k-i+1}
        let mut dsq = C64::ZERO;
        for i in 0..=k {
            dsq += w[i + 1] * ((i + 1) as f64) * w[k - i + 1] * ((k - i + 1) as f64);
        }
        // R_k of 2 (w'^2 - 1) - (x0 + s) w^2 + alpha w^3
        let mut rhs = dsq * 2.0 - sq[k] * x0 + cb[k] * alpha;
        if k == 0 {
            rhs -= 2.0;
        }
        if k >= 1 {
            rhs -= sq[k - 1];
        }
        // (W W'')_k = sum_{j=0..k} w_j (k-j+1)(k-j+2) w_{k-j+2}; peel off j=0.
        let mut tail = C64::ZERO;
        for j in 1..=k {
            tail += w[j] * (((k - j + 1) * (k - j + 2)) as f64) * w[k - j + 2];
        }
        w[k + 2] = (rhs - tail) / (w0 * (((k + 1) * (k + 2)) as f64));
        // extend powers to index k+2 (needs w_0..w_{k+2})
        let m = k + 2;
        let mut s = C64::ZERO;
        for i in 0..=m {
            s += w[i] * w[m - i];
        }
        sq[m] = s;
        let mut t = C64::ZERO;
        for i in 0..=m {
            t += sq[i] * w[m - i];
        }
        cb[m] = t;
    }
    w
}

/// Horner evaluation of the polynomial and its derivative at offset s.
pub fn poly_eval(coeffs: &[C64], s: f64) -> (C64, C64) {
    let mut v = C64::ZERO;
    let mut dv = C64::ZERO;
    for k in (0..coeffs.len()).rev() {
        v = v * s + coeffs[k];
        if k >= 1 {
            dv = dv * s + coeffs[k] * (k as f64);
        }
    }
    (v, dv)
}

/// Recenter the polynomial at offset s0: q(e) = p(s0 + e).
pub fn poly_shift(coeffs: &[C64], s0: f64) -> Vec<C64> {
    let n = coeffs.len();
    let mut out = coeffs.to_vec();
    // Repeated synthetic division (Horner shift).
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let (head, tail) = out.split_at_mut(k + 1);
            head[k] += s0 * tail[0];
        }
    }
    out
}

/// Step-size choice from the tail of the coefficient sequence: largest h with
/// |c_k| h^k <= eps * scale for the last two orders, with a safety factor.
/// eps is taken well below the requested tolerance so that the accumulated
/// error over a long trace stays within a few multiples of it.
pub fn choose_h(coeffs: &[C64], tol: f64, scale: f64, h_max: f64) -> f64 {
    let n = coeffs.len() - 1;
    let eps = tol * 1e-2;
    let mut h = h_max;
    for k in [n - 1, n] {
        let m = coeffs[k].norm();
        if m > 0.0 {
            let r = (eps * scale / m).powf(1.0 / k as f64);
            h = h.min(0.8 * r);
        }
    }
    h.max(1e-13)
}
