//! Parabolic cylinder parametrix P(lambda; p, tau): the explicit solution of
//! the five-ray model Riemann-Hilbert problem in the lambda plane, assembled
//! sector by sector from parabolic cylinder functions U(., t) with
//! t = sqrt(2) e^{-i pi/4} lambda.
//!
//! The jump contour carries, with rays oriented toward increasing real part,
//!   arg = pi/4  : lower-triangular  tau e^{ i lambda^2}
//!   arg = 3pi/4 : upper-triangular  tau e^{-2 pi p} e^{-i lambda^2}
//!   arg = pi    : diagonal e^{2 pi p sigma3}
//!   arg =-3pi/4 : lower-triangular  tau e^{-2 pi p} e^{ i lambda^2}
//!   arg =-pi/4  : upper-triangular  tau e^{-i lambda^2}
//! and P(lambda) lambda^{i p sigma3} -> I at infinity, with the refined
//! expansion I + (2 i lambda)^{-1} [[0, r], [-s, 0]] + O(lambda^{-2}).

use crate::error::{Error, Result};
use crate::numerics::{c, cr, gamma, pcf_u, principal_pow, C64, Complex2x2, I};
use std::f64::consts::PI;

/// Connection data of the parametrix: a = 1/2 - i p, the normalization
/// constants (r, s) with r s = -2p, and the sector coefficients (B-type
/// stored as the products r B).
#[derive(Debug, Clone, Copy)]
pub struct PCCoefficients {
    pub p: C64,
    pub tau: C64,
    pub a: C64,
    pub r: C64,
    pub s: C64,
    pub a2_0: C64,
    pub a2_m1: C64,
    pub rb1_0: C64,
    pub rb1_1: C64,
}

fn is_i_integer(p: C64) -> bool {
    p.re.abs() <= 1e-12 && (p.im - p.im.round()).abs() <= 1e-12
}

/// Coefficients from (p, tau) with tau^2 = e^{2 pi p} - 1.
pub fn pc_coefficients(p: C64, tau: C64) -> Result<PCCoefficients> {
    if is_i_integer(p) && p.norm() > 1e-12 {
        return Err(Error::DegenerateParameter(format!("{p}")));
    }
    let tau_sq = tau * tau;
    let expect = (2.0 * PI * p).exp() - C64::ONE;
    if (tau_sq - expect).norm() > 1e-12 * expect.norm().max(1.0) {
        return Err(Error::Configuration(format!(
            "tau^2 = {tau_sq} does not match e^(2 pi p) - 1 = {expect}"
        )));
    }
    let a = cr(0.5) - I * p;
    if p.norm() <= 1e-12 {
        // trivial problem: P == I
        return Ok(PCCoefficients {
            p,
            tau,
            a,
            r: C64::ZERO,
            s: C64::ZERO,
            a2_0: C64::ZERO,
            a2_m1: C64::ZERO,
            rb1_0: C64::ZERO,
            rb1_1: C64::ZERO,
        });
    }
    let ln2 = 2.0f64.ln();
    let g = gamma(I * p)?;
    let r = 2.0 * c(0.0, PI / 4.0).exp() * PI.sqrt() * (PI * p / 2.0).exp() * (I * p * ln2).exp()
        / (tau * g);
    let s = -2.0 * p / r;
    let rb1_0 = (-PI * p / 4.0).exp() * (I * p * ln2 / 2.0).exp();
    let rb1_1 = (3.0 * PI * p / 4.0).exp() * (I * p * ln2 / 2.0).exp();
    let a2_0 = c(0.0, -0.75 * PI).exp() / 2.0f64.sqrt() * (-PI * p / 4.0).exp()
        * (-I * p * ln2 / 2.0).exp();
    let a2_m1 = c(0.0, 0.25 * PI).exp() / 2.0f64.sqrt() * (3.0 * PI * p / 4.0).exp()
        * (-I * p * ln2 / 2.0).exp();
    Ok(PCCoefficients {
        p,
        tau,
        a,
        r,
        s,
        a2_0,
        a2_m1,
        rb1_0,
        rb1_1,
    })
}

/// Sector index of arg(lambda): 0, 1, -1, 2, -2 with the rays at odd
/// multiples of pi/4 assigned to the counterclockwise sector.
fn sector_of(lambda: C64) -> i8 {
    let a = lambda.arg();
    if a > 0.25 * PI && a <= 0.75 * PI {
        1
    } else if a > 0.75 * PI {
        2
    } else if a <= -0.75 * PI {
        -2
    } else if a <= -0.25 * PI {
        -1
    } else {
        0
    }
}

/// Q(lambda) restricted to the given sector.
fn q_in_sector(coeffs: &PCCoefficients, lambda: C64, sector: i8) -> Complex2x2 {
    let a = coeffs.a;
    let r = coeffs.r;
    let t = 2.0f64.sqrt() * c(0.0, -0.25 * PI).exp() * lambda;
    let it = I * t;
    let sq2 = 2.0f64.sqrt();
    let am = a - C64::ONE;
    let na = -a;
    let oma = C64::ONE - a;
    let minus_ip = a - cr(0.5); // (a - 1/2) = -i p
    let b1_0 = coeffs.rb1_0 / r;
    let b1_1 = coeffs.rb1_1 / r;
    let e2 = (-2.0 * PI * coeffs.p).exp();
    let (m11, m12, m21, m22) = match sector {
        0 => (
            coeffs.rb1_0 * pcf_u(na, it),
            r * coeffs.a2_0 * pcf_u(a, t),
            sq2 * c(0.0, 0.25 * PI).exp() * minus_ip * b1_0 * pcf_u(oma, it),
            sq2 * c(0.0, 0.75 * PI).exp() * coeffs.a2_0 * pcf_u(am, t),
        ),
        1 => (
            coeffs.rb1_1 * pcf_u(na, -it),
            r * coeffs.a2_0 * pcf_u(a, t),
            sq2 * c(0.0, -0.75 * PI).exp() * minus_ip * b1_1 * pcf_u(oma, -it),
            sq2 * c(0.0, 0.75 * PI).exp() * coeffs.a2_0 * pcf_u(am, t),
        ),
        -1 => (
            coeffs.rb1_0 * pcf_u(na, it),
            r * coeffs.a2_m1 * pcf_u(a, -t),
            sq2 * c(0.0, 0.25 * PI).exp() * minus_ip * b1_0 * pcf_u(oma, it),
            sq2 * c(0.0, -0.25 * PI).exp() * coeffs.a2_m1 * pcf_u(am, -t),
        ),
        2 => (
            coeffs.rb1_1 * pcf_u(na, -it),
            e2 * r * coeffs.a2_m1 * pcf_u(a, -t),
            sq2 * c(0.0, -0.75 * PI).exp() * minus_ip * b1_1 * pcf_u(oma, -it),
            e2 * sq2 * c(0.0, -0.25 * PI).exp() * coeffs.a2_m1 * pcf_u(am, -t),
        ),
        -2 => (
            e2 * coeffs.rb1_1 * pcf_u(na, -it),
            r * coeffs.a2_m1 * pcf_u(a, -t),
            e2 * sq2 * c(0.0, -0.75 * PI).exp() * minus_ip * b1_1 * pcf_u(oma, -it),
            sq2 * c(0.0, -0.25 * PI).exp() * coeffs.a2_m1 * pcf_u(am, -t),
        ),
        _ => unreachable!(),
    };
    Complex2x2::new(m11, m12, m21, m22)
}

/// P(lambda) = Q(lambda) e^{i lambda^2 sigma3 / 2}, choosing the sector from
/// arg(lambda).
pub fn eval_p(lambda: C64, coeffs: &PCCoefficients) -> Complex2x2 {
    eval_p_in_sector(lambda, coeffs, sector_of(lambda))
}

/// P evaluated with an explicit sector (for boundary values on the rays).
pub fn eval_p_in_sector(lambda: C64, coeffs: &PCCoefficients, sector: i8) -> Complex2x2 {
    if coeffs.p.norm() <= 1e-12 {
        return Complex2x2::IDENTITY;
    }
    let q = q_in_sector(coeffs, lambda, sector);
    let e = (I * lambda * lambda / 2.0).exp();
    q * Complex2x2::diag_sigma3(e)
}

/// The five jump matrices of the lambda-plane problem at a point on each ray.
pub fn pc_jump_matrix(coeffs: &PCCoefficients, ray: usize, lambda: C64) -> Complex2x2 {
    let tau = coeffs.tau;
    let p = coeffs.p;
    let e2 = (-2.0 * PI * p).exp();
    let osc_p = (I * lambda * lambda).exp();
    let osc_m = (-I * lambda * lambda).exp();
    match ray {
        0 => Complex2x2::lower(tau * osc_p),           // arg = pi/4
        1 => Complex2x2::upper(tau * e2 * osc_m),      // arg = 3pi/4
        2 => Complex2x2::diag_sigma3((2.0 * PI * p).exp()), // negative axis
        3 => Complex2x2::lower(tau * e2 * osc_p),      // arg = -3pi/4
        4 => Complex2x2::upper(tau * osc_m),           // arg = -pi/4
        _ => unreachable!(),
    }
}

/// Max jump residual ||P+ - P- V|| per ray over the given radii.
pub fn pc_jump_residuals(coeffs: &PCCoefficients, radii: &[f64]) -> [f64; 5] {
    // (ray angle, plus sector, minus sector)
    let rays: [(f64, i8, i8); 5] = [
        (0.25 * PI, 1, 0),
        (0.75 * PI, 1, 2),
        (PI, 2, -2),
        (-0.75 * PI, -2, -1),
        (-0.25 * PI, 0, -1),
    ];
    let mut out = [0.0f64; 5];
    for (k, (ang, sp, sm)) in rays.iter().enumerate() {
        for &rad in radii {
            let lambda = c(rad * ang.cos(), rad * ang.sin());
            let plus = eval_p_in_sector(lambda, coeffs, *sp);
            let minus = eval_p_in_sector(lambda, coeffs, *sm);
            let v = pc_jump_matrix(coeffs, k, lambda);
            out[k] = out[k].max((plus - minus * v).norm_max());
        }
    }
    out
}

/// Residual of the scalar connection identity enforced on the ray
/// arg(lambda) = pi/4 (the parametrix transcription of the standard
/// parabolic-cylinder connection formula):
///   e^{i pi (a + 1/2)/2} U(-a, -it) + e^{-i pi (a + 1/2)/2} U(-a, it)
///     = tau r (e^{-i pi/4}/sqrt(2)) e^{-pi p/2} e^{-i p ln 2} U(a, t).
pub fn pc_connection_residual(coeffs: &PCCoefficients, t: f64) -> f64 {
    let a = coeffs.a;
    let p = coeffs.p;
    let tc = cr(t);
    let it = I * tc;
    let cplus = (I * PI * (a + cr(0.5)) / 2.0).exp();
    let cminus = (-I * PI * (a + cr(0.5)) / 2.0).exp();
    let lhs = cplus * pcf_u(-a, -it) + cminus * pcf_u(-a, it);
    let rhs = coeffs.tau * coeffs.r * c(0.0, -0.25 * PI).exp() / 2.0f64.sqrt()
        * (-PI * p / 2.0).exp()
        * (-I * p * 2.0f64.ln()).exp()
        * pcf_u(a, tc);
    (lhs - rhs).norm()
}

/// P(lambda) lambda^{i p sigma3} - I - (2 i lambda)^{-1} [[0, r], [-s, 0]]:
/// the measured remainder of the normalization expansion.
pub fn normalization_remainder(lambda: C64, coeffs: &PCCoefficients) -> Complex2x2 {
    let p = eval_p(lambda, coeffs);
    let lp = principal_pow(lambda, I * coeffs.p).expect("lambda != 0");
    let first = Complex2x2::new(
        C64::ZERO,
        coeffs.r / (2.0 * I * lambda),
        -coeffs.s / (2.0 * I * lambda),
        C64::ZERO,
    );
    p * Complex2x2::diag_sigma3(lp) - Complex2x2::IDENTITY - first
}
