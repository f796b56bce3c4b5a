//! Parameter maps for the increasing tritronquee solutions: q0(alpha),
//! q(alpha), tau(alpha), the regime classification of the alpha plane, and
//! the p <-> ell <-> (q, mu) change of parameters used by the origin
//! parametrix.

use crate::error::{Error, Result};
use crate::numerics::{cr, C64, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const CLASSIFY_TOL: f64 = 1e-12;

/// Which of the two solutions u(x) ~ +/- i (x/2)^{1/2} is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Large-negative-x behavior class, determined by Re(i q(alpha)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Re(iq) = 0: oscillatory trigonometric asymptotics on the axis.
    OscillatoryReal,
    /// Re(iq) in (-1/2, 0): the branch with prefactor q Gamma(iq)/... decays.
    DecayingMinus,
    /// Re(iq) in (0, 1/2): the reciprocal-prefactor branch decays.
    DecayingPlus,
    /// |Re(iq)| = 1/2: poles can persist to infinity; classification only.
    ExcludedLine,
    /// alpha in Z + 1/2: the representation is indeterminate.
    HalfIntegerAlpha,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::OscillatoryReal => "oscillatory-real",
            Regime::DecayingMinus => "decaying-minus",
            Regime::DecayingPlus => "decaying-plus",
            Regime::ExcludedLine => "excluded-line",
            Regime::HalfIntegerAlpha => "half-integer-alpha",
        };
        f.write_str(s)
    }
}

/// Parameter bundle for one tritronquee solution.
#[derive(Debug, Clone, Copy)]
pub struct TritronqueeSpec {
    pub alpha: C64,
    pub sign: Sign,
    pub q0: C64,
    pub q: C64,
    pub tau: C64,
    pub regime: Regime,
}

impl TritronqueeSpec {
    pub fn new(alpha: C64, sign: Sign) -> Result<TritronqueeSpec> {
        let (q0, q, tau) = q_tau(alpha)?;
        Ok(TritronqueeSpec {
            alpha,
            sign,
            q0,
            q,
            tau,
            regime: classify_regime(alpha),
        })
    }
}

/// The p <-> ell map: ell is the branch of (1/2) log(e^{2 pi p} - 1) selected
/// by -1 < Re(2ip + 2 ell / (i pi)) <= 1; q' = p - ell/pi and mu = e^{-ell}.
#[derive(Debug, Clone, Copy)]
pub struct EllMap {
    pub p: C64,
    pub ell: C64,
    pub q_prime: C64,
    pub mu: C64,
}

/// Nearest integer with exact half-integers rounded toward minus infinity,
/// so that [n + 1/2] = n.
pub fn nearest_int_half_down(x: f64) -> i64 {
    let f = x.floor();
    let r = x - f;
    if r <= 0.5 {
        f as i64
    } else {
        f as i64 + 1
    }
}

pub fn is_half_integer_alpha(alpha: C64) -> bool {
    alpha.im.abs() <= CLASSIFY_TOL && (alpha.re - 0.5 - (alpha.re - 0.5).round()).abs() <= CLASSIFY_TOL
}

/// q0, q, tau from alpha (principal logarithm throughout).
pub fn q_tau(alpha: C64) -> Result<(C64, C64, C64)> {
    if is_half_integer_alpha(alpha) {
        return Err(Error::HalfIntegerAlpha(format!("{}", alpha)));
    }
    let e2 = (-2.0 * PI * I * alpha).exp();
    let lg = (C64::ONE + e2).ln();
    let q0 = -I * alpha - lg / (2.0 * PI);
    let n = nearest_int_half_down(q0.im);
    let q = q0 - I * cr(n as f64);
    let parity = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let tau = I * parity * (lg / 2.0).exp();
    Ok((q0, q, tau))
}

/// Regime from Re(i q(alpha)) with the default tolerance.
pub fn classify_regime(alpha: C64) -> Regime {
    classify_regime_tol(alpha, CLASSIFY_TOL)
}

/// Regime classification with a caller-supplied tolerance on Re(iq).
pub fn classify_regime_tol(alpha: C64, tol: f64) -> Regime {
    if is_half_integer_alpha(alpha) {
        return Regime::HalfIntegerAlpha;
    }
    let (_, q, _) = q_tau(alpha).expect("non-half-integer alpha");
    let re_iq = -q.im;
    if (re_iq.abs() - 0.5).abs() <= tol {
        Regime::ExcludedLine
    } else if re_iq.abs() <= tol {
        Regime::OscillatoryReal
    } else if re_iq < 0.0 {
        Regime::DecayingMinus
    } else {
        Regime::DecayingPlus
    }
}

/// Constructive ell selection: principal half-log shifted by i pi k for the
/// unique integer k landing Re(2ip + 2 ell/(i pi)) in (-1, 1].
pub fn ell_map(p: C64) -> Result<EllMap> {
    if p.re.abs() <= 1e-12 && (p.im - p.im.round()).abs() <= 1e-12 {
        return Err(Error::DegenerateParameter(format!("{}", p)));
    }
    let e2l = (2.0 * PI * p).exp() - C64::ONE;
    if e2l.norm() < 1e-14 {
        return Err(Error::DegenerateParameter(format!("{}", p)));
    }
    let ell0 = e2l.ln() / 2.0;
    // Re(2ip + 2 ell / (i pi)) = -2 Im(p) + (2/pi) Im(ell)
    let v0 = -2.0 * p.im + 2.0 / PI * ell0.im;
    let k = ((1.0 - v0) / 2.0).floor();
    let ell = ell0 + I * cr(PI * k);
    let q_prime = p - ell / PI;
    let mu = (-ell).exp();
    Ok(EllMap { p, ell, q_prime, mu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;
    use proptest::prelude::*;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn rounding_convention() {
        assert_eq!(nearest_int_half_down(0.5), 0);
        assert_eq!(nearest_int_half_down(1.49), 1);
        assert_eq!(nearest_int_half_down(-0.5), -1);
        assert_eq!(nearest_int_half_down(2.5), 2);
        assert_eq!(nearest_int_half_down(-1.5), -2);
        assert_eq!(nearest_int_half_down(0.51), 1);
    }

    #[test]
    fn alpha_zero_values() {
        let (q0, q, tau) = q_tau(C64::ZERO).unwrap();
        assert!((q0 - cr(-LN2 / (2.0 * PI))).norm() < 1e-14);
        assert!((q - cr(-LN2 / (2.0 * PI))).norm() < 1e-13);
        assert!((tau - c(0.0, 2.0f64.sqrt())).norm() < 1e-13);
    }

    #[test]
    fn rogue_wave_values() {
        let alpha = c(0.5, LN2 / (2.0 * PI));
        let (q0, q, tau) = q_tau(alpha).unwrap();
        // 1 + e^{-2 pi i alpha} = -1 exactly, so the principal log sits on the
        // branch cut; q0 is only determined mod i here, while q and tau are
        // branch-stable.
        assert!((q0.re - LN2 / (2.0 * PI)).abs() < 1e-13);
        assert!((q0.im - q0.im.round()).abs() < 1e-13);
        assert!((q - cr(LN2 / (2.0 * PI))).norm() < 1e-13);
        assert!((tau - C64::ONE).norm() < 1e-13);
    }

    #[test]
    fn strip_example() {
        // alpha = 0.1 lies in the strip Re(alpha) in (0, 1/2), so
        // Re(iq) in (0, 1/2).
        let (_, q, _) = q_tau(cr(0.1)).unwrap();
        let re_iq = -q.im;
        assert!(re_iq > 0.0 && re_iq < 0.5, "Re(iq) = {re_iq}");
    }

    #[test]
    fn half_integer_is_an_error() {
        assert!(matches!(q_tau(cr(0.5)), Err(Error::HalfIntegerAlpha(_))));
        assert!(matches!(q_tau(cr(-2.5)), Err(Error::HalfIntegerAlpha(_))));
        assert_eq!(classify_regime(cr(1.5)), Regime::HalfIntegerAlpha);
    }

    #[test]
    fn regime_examples() {
        assert_eq!(classify_regime(c(0.5, -0.3)), Regime::ExcludedLine);
        assert_eq!(classify_regime(c(2.0, 0.7)), Regime::OscillatoryReal);
        assert_eq!(classify_regime(c(0.5, 0.2)), Regime::OscillatoryReal);
        assert_eq!(classify_regime(cr(0.1)), Regime::DecayingPlus);
        assert_eq!(classify_regime(cr(-0.1)), Regime::DecayingMinus);
        assert_eq!(classify_regime(C64::ZERO), Regime::OscillatoryReal);
    }

    #[test]
    fn ell_map_rogue_wave_case() {
        let p = cr(LN2 / (2.0 * PI));
        let m = ell_map(p).unwrap();
        assert!(m.ell.norm() < 1e-14);
        assert!((m.q_prime - p).norm() < 1e-14);
        assert!((m.mu - C64::ONE).norm() < 1e-14);
    }

    #[test]
    fn ell_map_real_p() {
        let p = cr(0.2);
        let m = ell_map(p).unwrap();
        let expect = 0.5 * ((0.4 * PI).exp() - 1.0).ln();
        assert!((m.ell - cr(expect)).norm() < 1e-13);
        let v = -2.0 * p.im + 2.0 / PI * m.ell.im;
        assert!(v > -1.0 && v <= 1.0);
    }

    #[test]
    fn ell_map_mu_square_identity() {
        for p in [c(0.2, 0.1), c(-0.4, 0.73), cr(1.1), c(0.05, -2.3)] {
            let m = ell_map(p).unwrap();
            let lhs = m.mu * m.mu;
            let rhs = (2.0 * PI * m.q_prime).exp() - C64::ONE;
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0), "p={p}");
            let e2l = (m.ell * 2.0).exp();
            let e2p = (2.0 * PI * p).exp() - C64::ONE;
            assert!((e2l - e2p).norm() < 1e-12 * e2p.norm().max(1.0));
        }
        assert!(ell_map(c(0.0, 1.0)).is_err());
        assert!(ell_map(C64::ZERO).is_err());
    }

    #[test]
    fn q_against_ell_map_on_oscillatory_line() {
        // For alpha = 1/2 + ip the two parameterizations agree:
        // q(alpha) = p - ell/pi.
        for pv in [0.2, LN2 / (2.0 * PI), 1.3] {
            let p = cr(pv);
            let alpha = c(0.5, pv);
            let (_, q, tau) = q_tau(alpha).unwrap();
            let m = ell_map(p).unwrap();
            assert!((q - m.q_prime).norm() < 1e-12, "p={pv}");
            // tau(alpha)^2 = e^{2 ell}
            assert!((tau * tau - (m.ell * 2.0).exp()).norm() < 1e-12);
        }
    }

    fn arb_alpha() -> impl Strategy<Value = C64> {
        (-3.0f64..3.0, -1.5f64..1.5).prop_map(|(a, b)| c(a, b))
    }

    proptest! {
        #[test]
        fn tau_squared_identity(alpha in arb_alpha()) {
            prop_assume!(!is_half_integer_alpha(alpha));
            // Avoid the immediate vicinity of Z + 1/2 where 1 + e^{-2 pi i a}
            // underflows.
            let d = (alpha.re - 0.5 - (alpha.re - 0.5).round()).abs().hypot(alpha.im);
            prop_assume!(d > 1e-3);
            let (_, _, tau) = q_tau(alpha).unwrap();
            let r = tau * tau + C64::ONE + (-2.0 * PI * I * alpha).exp();
            prop_assert!(r.norm() <= 1e-12 * (1.0 + (tau*tau).norm()));
        }

        #[test]
        fn q_minus_q0_is_imaginary_integer(alpha in arb_alpha()) {
            prop_assume!(!is_half_integer_alpha(alpha));
            let d = (alpha.re - 0.5 - (alpha.re - 0.5).round()).abs().hypot(alpha.im);
            prop_assume!(d > 1e-3);
            let (q0, q, _) = q_tau(alpha).unwrap();
            // q - q0 = -i n for an integer n
            let diff = (q - q0) / I;
            prop_assert!(diff.im.abs() < 1e-12);
            prop_assert!((diff.re - diff.re.round()).abs() < 1e-12);
        }

        #[test]
        fn regime_is_one_periodic(alpha in arb_alpha()) {
            let d = (alpha.re - 0.5 - (alpha.re - 0.5).round()).abs().hypot(alpha.im);
            prop_assume!(d > 1e-3);
            prop_assert_eq!(classify_regime(alpha), classify_regime(alpha + C64::ONE));
        }

        #[test]
        fn exp_gap_matches_tau_squared(pv in -1.2f64..1.2, pw in -0.45f64..0.45) {
            // alpha = 1/2 + i p with p = pv + i pw; acceptance identity
            // e^{2 pi (p - q(alpha))} = tau(alpha)^2.
            let p = c(pv, pw);
            prop_assume!(p.norm() > 1e-3);
            prop_assume!((p.im - p.im.round()).abs().max(p.re.abs()) > 1e-3 || p.re.abs() > 1e-3);
            let alpha = c(0.5, 0.0) + I * p;
            prop_assume!(!is_half_integer_alpha(alpha));
            let (_, q, tau) = q_tau(alpha).unwrap();
            let lhs = (2.0 * PI * (p - q)).exp();
            let rhs = tau * tau;
            prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
        }
    }
}
