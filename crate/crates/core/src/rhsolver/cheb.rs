//! Chebyshev panel machinery for the contour collocation: nodes, the
//! values-to-coefficients transform, and closed-form Cauchy transforms of the
//! Chebyshev basis, including principal-value boundary values on the panel
//! itself.

use crate::numerics::{c, cr, C64};
use std::f64::consts::PI;

/// First-kind Chebyshev points (interior), ascending in (-1, 1).
pub fn cheb_nodes(m: usize) -> Vec<f64> {
    (0..m)
        .map(|j| -(PI * (2.0 * j as f64 + 1.0) / (2.0 * m as f64)).cos())
        .collect()
}

/// Values-at-nodes to Chebyshev-coefficients matrix: coeffs = D * values.
pub fn vals_to_coefs_matrix(m: usize) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; m]; m];
    for (k, row) in d.iter_mut().enumerate() {
        let scale = if k == 0 { 1.0 / m as f64 } else { 2.0 / m as f64 };
        for (j, entry) in row.iter_mut().enumerate() {
            // node j is -cos(theta_j), i.e. cos(pi - theta_j)
            let theta = PI - PI * (2.0 * j as f64 + 1.0) / (2.0 * m as f64);
            *entry = scale * (k as f64 * theta).cos();
        }
    }
    d
}

/// Chebyshev series evaluation by Clenshaw at t in [-1, 1].
#[cfg(test)]
pub fn cheb_eval(coefs: &[C64], t: f64) -> C64 {
    let mut b1 = C64::ZERO;
    let mut b2 = C64::ZERO;
    for &ck in coefs.iter().rev() {
        let b0 = ck + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1 - t * b2
}

/// integral of T_k over [-1, 1].
pub fn cheb_integral(k: usize) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        2.0 / (1.0 - (k * k) as f64)
    }
}

/// Moments M_k(z) = int_{-1}^{1} T_k(t)/(t - z) dt for z off the segment,
/// by the three-term recurrence M_{k+1} = 2 (A_k + z M_k) - M_{k-1}; stable
/// while z stays within the Bernstein ellipse of radius ~2.
pub fn cauchy_moments(z: C64, m: usize) -> Vec<C64> {
    let m0 = ((z - C64::ONE) / (z + C64::ONE)).ln();
    moments_from_m0(z, m0, m)
}

/// Minus-side boundary moments for x on (-1, 1): the contour parametrization
/// maps the physical minus side to Im(z) < 0, so the branch is
/// M_0 = ln((1-x)/(1+x)) - i pi.
pub fn cauchy_moments_minus(x: f64, m: usize) -> Vec<C64> {
    let m0 = cr(((1.0 - x) / (1.0 + x)).ln()) - c(0.0, PI);
    moments_from_m0(cr(x), m0, m)
}

fn moments_from_m0(z: C64, m0: C64, m: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(m);
    out.push(m0);
    if m == 1 {
        return out;
    }
    out.push(cr(2.0) + z * m0);
    for k in 1..m - 1 {
        let a_k = cheb_integral(k);
        let next = (cr(a_k) + z * out[k]) * 2.0 - out[k - 1];
        out.push(next);
    }
    out
}

/// Growth factor of the recurrence at z: |z + sqrt(z^2 - 1)| (>= 1).
pub fn ellipse_radius(z: C64) -> f64 {
    let s = (z * z - C64::ONE).sqrt();
    (z + s).norm().max((z - s).norm())
}

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton on the Legendre
/// polynomial (used for well-separated Cauchy evaluations).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..60 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_round_trip() {
        let m = 10;
        let nodes = cheb_nodes(m);
        let d = vals_to_coefs_matrix(m);
        // a polynomial of degree < m is reproduced exactly
        let f = |t: f64| c(t * t * t - 0.5 * t, 2.0 * t.powi(7) + 1.0);
        let vals: Vec<C64> = nodes.iter().map(|&t| f(t)).collect();
        let coefs: Vec<C64> = (0..m)
            .map(|k| (0..m).map(|j| vals[j] * d[k][j]).sum())
            .collect();
        for &t in &[0.2, -0.77, 0.99] {
            let v = cheb_eval(&coefs, t);
            assert!((v - f(t)).norm() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn moments_match_quadrature() {
        let m = 12;
        let z = c(0.3, 0.45);
        let moments = cauchy_moments(z, m);
        let (xs, ws) = gauss_legendre(200);
        for k in [0usize, 1, 5, 11] {
            let mut q = C64::ZERO;
            for (&x, &w) in xs.iter().zip(ws.iter()) {
                let tk = (k as f64 * x.acos()).cos();
                q += w * tk / (cr(x) - z);
            }
            assert!(
                (q - moments[k]).norm() < 1e-9,
                "k={k}: {q} vs {}",
                moments[k]
            );
        }
    }

    #[test]
    fn plemelj_jump_between_sides() {
        // upper-minus-lower boundary values of the Cauchy transform of T_k
        // equal T_k itself (scaled by the 2 pi i of the kernel).
        let m = 8;
        let x = 0.37;
        let lower = cauchy_moments_minus(x, m);
        let m0_up = cr(((1.0 - x) / (1.0 + x)).ln()) + c(0.0, PI);
        let upper = moments_from_m0(cr(x), m0_up, m);
        for k in 0..m {
            let jump = upper[k] - lower[k];
            let tk = cr((k as f64 * x.acos()).cos()) * c(0.0, 2.0 * PI);
            assert!((jump - tk).norm() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (xs, ws) = gauss_legendre(8);
        // exact for degree <= 15: try x^14
        let v: f64 = xs.iter().zip(ws.iter()).map(|(&x, &w)| w * x.powi(14)).sum();
        assert!((v - 2.0 / 15.0).abs() < 1e-13);
    }
}
