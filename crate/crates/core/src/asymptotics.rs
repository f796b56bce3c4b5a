//! Closed-form asymptotic and connection formulas: the x -> +infinity series
//! of the tritronquee solutions, the three x -> -infinity branches on the
//! critical ray including the phase theta(x), and the V(y), Q(y) asymptotics
//! of the Riemann-Hilbert potentials.

use crate::error::{Error, Result};
use crate::numerics::{c, cr, gamma, lngamma, principal_pow, C64, I};
use crate::params::{Regime, Sign, TritronqueeSpec};
use std::f64::consts::PI;

/// Formal series u ~ sum_k coeff[k] * x^{(1-3k)/2} as x -> infinity in
/// |arg x| < 2 pi / 3.
#[derive(Debug, Clone)]
pub struct PlusInfinitySeries {
    pub alpha: C64,
    pub sign: Sign,
    pub coefficients: Vec<C64>,
}

impl PlusInfinitySeries {
    pub fn new(alpha: C64, sign: Sign, order: usize) -> PlusInfinitySeries {
        PlusInfinitySeries {
            alpha,
            sign,
            coefficients: series_coefficients(alpha, sign, order),
        }
    }

    /// Exponent of term k.
    pub fn exponent(k: usize) -> f64 {
        (1.0 - 3.0 * k as f64) / 2.0
    }

    pub fn eval(&self, x: C64) -> Result<C64> {
        let mut s = C64::ZERO;
        for (k, &ck) in self.coefficients.iter().enumerate() {
            s += ck * principal_pow(x, cr(Self::exponent(k)))?;
        }
        Ok(s)
    }

    /// Term-by-term derivative.
    pub fn eval_derivative(&self, x: C64) -> Result<C64> {
        let mut s = C64::ZERO;
        for (k, &ck) in self.coefficients.iter().enumerate() {
            let e = Self::exponent(k);
            s += ck * e * principal_pow(x, cr(e - 1.0))?;
        }
        Ok(s)
    }

    /// Second derivative, for residual checks.
    pub fn eval_second_derivative(&self, x: C64) -> Result<C64> {
        let mut s = C64::ZERO;
        for (k, &ck) in self.coefficients.iter().enumerate() {
            let e = Self::exponent(k);
            s += ck * e * (e - 1.0) * principal_pow(x, cr(e - 2.0))?;
        }
        Ok(s)
    }
}

/// Coefficients of the formal substitution of u = sum c_k x^{(1-3k)/2} into
/// u'' = x u + 2 u^3 - alpha. The leading balance forces c_0^2 = -1/2 and the
/// rest follow recursively:
///   c_m = S_m - c_{m-2} (9(m-2)^2 - 1)/8,
/// where S_m is the cube convolution at order m excluding c_m itself.
pub fn series_coefficients(alpha: C64, sign: Sign, order: usize) -> Vec<C64> {
    let mut cs: Vec<C64> = Vec::with_capacity(order);
    if order == 0 {
        return cs;
    }
    let c0 = match sign {
        Sign::Plus => I / 2.0f64.sqrt(),
        Sign::Minus => -I / 2.0f64.sqrt(),
    };
    cs.push(c0);
    if order == 1 {
        return cs;
    }
    cs.push(-alpha / 2.0);
    for m in 2..order {
        let mut s = C64::ZERO;
        for i in 0..=m {
            if i >= m {
                continue;
            }
            for j in 0..=(m - i) {
                let k = m - i - j;
                if j >= m || k >= m {
                    continue;
                }
                s += cs[i] * cs[j] * cs[k];
            }
        }
        let lin = cs[m - 2] * ((9.0 * ((m - 2) as f64).powi(2) - 1.0) / 8.0);
        cs.push(s - lin);
    }
    cs
}

/// Truncated series value of u(x; alpha) as x -> infinity, principal powers.
pub fn u_plus_series(x: C64, alpha: C64, sign: Sign, order: usize) -> Result<C64> {
    if x.arg().abs() >= 2.0 * PI / 3.0 {
        return Err(Error::Domain {
            op: "u_plus_series",
            msg: format!("x = {} outside the sector |arg x| < 2pi/3", x),
        });
    }
    if x.norm() < 1.0 {
        return Err(Error::Domain {
            op: "u_plus_series",
            msg: format!("|x| = {} < 1", x.norm()),
        });
    }
    PlusInfinitySeries::new(alpha, sign, order).eval(x)
}

/// Branch descriptor for the x -> -infinity formulas.
#[derive(Debug, Clone, Copy)]
pub struct MinusInfinityFormula {
    pub q: C64,
    pub tau: C64,
    pub branch: Regime,
}

/// (-x)^s for x < 0 via the real logarithm.
fn neg_x_pow(x: f64, s: C64) -> C64 {
    (s * (-x).ln()).exp()
}

/// Leading term of the branch with prefactor q Gamma(iq) e^{-pi q/2}/(2 tau
/// sqrt(pi)); valid as the asymptotics of u_TT^- for -1/2 < Re(iq) < 0.
pub fn decaying_minus_value(x: f64, q: C64, tau: C64) -> Result<C64> {
    let g = gamma(I * q)?;
    let pref = q * g * (-PI * q / 2.0).exp() / (tau * 2.0 * PI.sqrt());
    let phase = c(0.0, 0.75 * PI).exp() * (-I * q * 8.0f64.ln()).exp();
    let osc = (I * cr(2.0 / 3.0 * (-x).powf(1.5))).exp();
    Ok(pref * phase * osc * neg_x_pow(x, cr(-0.25) - I * q * 1.5))
}

/// Leading term of the reciprocal branch, valid for 0 < Re(iq) < 1/2.
pub fn decaying_plus_value(x: f64, q: C64, tau: C64) -> Result<C64> {
    let g = gamma(I * q)?;
    let pref = tau * PI.sqrt() * (PI * q / 2.0).exp() / g;
    let phase = c(0.0, -0.75 * PI).exp() * (I * q * 8.0f64.ln()).exp();
    let osc = (-I * cr(2.0 / 3.0 * (-x).powf(1.5))).exp();
    Ok(pref * phase * osc * neg_x_pow(x, cr(-0.25) + I * q * 1.5))
}

/// Oscillatory phase theta(x) for real q != 0:
/// theta = -(2/3)(-x)^{3/2} + (3/2) q ln(-x) - pi/4 + 3 q ln 2 - arg Gamma(iq).
pub fn theta(x: f64, q: f64) -> Result<f64> {
    if q == 0.0 {
        return Err(Error::DegenerateParameter("q = 0 in theta".into()));
    }
    let arg_gamma = lngamma(c(0.0, q))?.im;
    Ok(-(2.0 / 3.0) * (-x).powf(1.5) + 1.5 * q * (-x).ln() - 0.25 * PI + 3.0 * q * 2.0f64.ln()
        - arg_gamma)
}

/// Envelope coefficient tau sqrt(2 q (e^{2 pi q} - 1)) of the oscillatory
/// branch (real for real q, times tau).
pub fn oscillatory_prefactor(q: f64, tau: C64) -> C64 {
    tau * (2.0 * q * ((2.0 * PI * q).exp() - 1.0)).sqrt()
}

/// Leading asymptotics of u_TT^- on the critical ray, selecting the branch
/// from the regime stored in `spec`.
pub fn u_minus_asym(x: f64, spec: &TritronqueeSpec) -> Result<C64> {
    if x > -5.0 {
        return Err(Error::Domain {
            op: "u_minus_asym",
            msg: format!("x = {x} must be <= -5"),
        });
    }
    match spec.regime {
        Regime::OscillatoryReal => {
            let q = spec.q.re;
            let th = theta(x, q)?;
            Ok(oscillatory_prefactor(q, spec.tau) * (-x).powf(-0.25) * th.sin())
        }
        Regime::DecayingMinus => decaying_minus_value(x, spec.q, spec.tau),
        Regime::DecayingPlus => decaying_plus_value(x, spec.q, spec.tau),
        r => Err(Error::UnsupportedRegime {
            regime: r.to_string(),
            what: "u_minus_asym".into(),
        }),
    }
}

/// Leading term of V(y) as y -> -infinity:
/// tau p Gamma(ip)/(2 sqrt(pi)) e^{-3 pi i/4} e^{-pi p/2} 2^{-ip}
///   e^{-2 i (-y/3)^{3/2}} (-3y)^{-ip/2 - 1/4}.
pub fn v_asym_minus(y: f64, p: C64, tau: C64) -> Result<C64> {
    if y > -5.0 {
        return Err(Error::Domain {
            op: "v_asym_minus",
            msg: format!("y = {y} must be <= -5"),
        });
    }
    let g = gamma(I * p)?;
    let pref = tau * p * g / (2.0 * PI.sqrt());
    let phase = c(0.0, -0.75 * PI).exp() * (-PI * p / 2.0).exp() * (-I * p * 2.0f64.ln()).exp();
    let osc = (-I * cr(2.0 * (-y / 3.0).powf(1.5))).exp();
    let pw = (( -I * p / 2.0 - cr(0.25)) * (-3.0 * y).ln()).exp();
    Ok(pref * phase * osc * pw)
}

/// Leading term of V(y) as y -> +infinity: -(y/6)^{ip + 1/2}.
pub fn v_asym_plus(y: f64, p: C64) -> Result<C64> {
    if y < 5.0 {
        return Err(Error::Domain {
            op: "v_asym_plus",
            msg: format!("y = {y} must be >= 5"),
        });
    }
    Ok(-((I * p + cr(0.5)) * (y / 6.0).ln()).exp())
}

/// Two-term asymptotics of Q(y) in the sector |arg(-y)| < 2 pi / 3:
/// i (-y/3)^{1/2} - (1/4 + i p/2)/y.
pub fn q_asym_sector(y: C64, p: C64) -> Result<C64> {
    let neg_y = -y;
    if neg_y == C64::ZERO || neg_y.arg().abs() >= 2.0 * PI / 3.0 {
        return Err(Error::Domain {
            op: "q_asym_sector",
            msg: format!("-y = {} outside the sector |arg(-y)| < 2pi/3", neg_y),
        });
    }
    let lead = I * principal_pow(neg_y / 3.0, cr(0.5))?;
    Ok(lead - (cr(0.25) + I * p / 2.0) / y)
}
