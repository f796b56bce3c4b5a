use super::{c, C64};
use crate::error::{Error, Result};
use std::f64::consts::PI;

// Lanczos approximation, g = 7, n = 9. Coefficients as published in the
// GNU Scientific Library sample set (also reproduced on the Wikipedia
// "Lanczos approximation" page).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch log-gamma. `exp(lngamma(z))` recovers Gamma(z); the
/// imaginary part is reliable modulo 2*pi (it is only ever used inside
/// trigonometric or exponential functions here).
pub fn lngamma(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re <= 0.5 {
        let r = z.re.round();
        if r <= 0.0 && (z.re - r).abs() < 1e-13 {
            return Err(Error::GammaPole(format!("{}", r)));
        }
    }
    Ok(lngamma_unchecked(z))
}

fn lngamma_unchecked(z: C64) -> C64 {
    if z.re < 0.5 {
        // Reflection: lnGamma(z) = ln pi - LogSin(pi z) - lnGamma(1 - z).
        return c(PI.ln(), 0.0) - log_sin_pi(z) - lngamma_unchecked(C64::ONE - z);
    }
    let zm1 = z - C64::ONE;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (i, &ci) in LANCZOS.iter().enumerate().skip(1) {
        acc += ci / (zm1 + c(i as f64, 0.0));
    }
    let t = zm1 + c(LANCZOS_G + 0.5, 0.0);
    0.5 * (2.0 * PI).ln() + (zm1 + c(0.5, 0.0)) * t.ln() - t + acc.ln()
}

/// Gamma(z) = exp(lngamma(z)).
pub fn gamma(z: C64) -> Result<C64> {
    Ok(lngamma(z)?.exp())
}

/// Log(sin(pi z)) computed without overflow for large |Im z|:
/// sin(pi z) = -e^{-i pi z} (1 - e^{2 pi i z}) / (2i) for Im z >= 0, and the
/// conjugate-symmetric form below the axis.
fn log_sin_pi(z: C64) -> C64 {
    if z.im >= 0.0 {
        let w = (2.0 * PI * super::I * z).exp();
        -super::I * PI * z + (C64::ONE - w).ln() - c(2.0f64.ln(), 0.0) + c(0.0, PI / 2.0)
    } else {
        let v = log_sin_pi(z.conj());
        v.conj()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cr;
    use proptest::prelude::*;

    #[test]
    fn factorial_case() {
        let v = lngamma(cr(5.0)).unwrap();
        assert!((v - cr(24.0f64.ln())).norm() < 1e-13);
    }

    #[test]
    fn half_integer_case() {
        let v = lngamma(cr(0.5)).unwrap();
        assert!((v - cr(PI.sqrt().ln())).norm() < 1e-13);
    }

    #[test]
    fn known_complex_value() {
        // Gamma(1 + i) = 0.4980156681183560427... - 0.1549498283018106851... i
        let g = gamma(c(1.0, 1.0)).unwrap();
        let reference = c(0.498_015_668_118_356_04, -0.154_949_828_301_810_685);
        assert!((g - reference).norm() < 1e-13);
    }

    #[test]
    fn modulus_identity_on_imaginary_axis() {
        // |Gamma(ip)|^2 = pi / (p sinh(pi p)), evaluated independently.
        for p in [0.5, 0.11, 1.7, 3.0] {
            let g = gamma(c(0.0, p)).unwrap();
            let lhs = g.norm_sqr();
            let rhs = PI / (p * (PI * p).sinh());
            assert!(
                (lhs / rhs - 1.0).abs() < 1e-12,
                "p={p}: lhs={lhs}, rhs={rhs}"
            );
        }
    }

    #[test]
    fn pole_is_reported() {
        assert!(lngamma(cr(0.0)).is_err());
        assert!(lngamma(cr(-3.0)).is_err());
        assert!(lngamma(c(-3.0, 1e-3)).is_ok());
    }

    #[test]
    fn accuracy_across_disk() {
        // Recurrence-based consistency at |z| up to 50: the relative error of
        // exp(lngamma) must stay near 1e-12.
        let z0 = c(0.3, 49.0);
        let g0 = gamma(z0).unwrap();
        let g1 = gamma(z0 + C64::ONE).unwrap();
        assert!((g1 / g0 - z0).norm() / z0.norm() < 1e-12);
    }

    proptest! {
        // Recurrence Gamma(z+1) = z Gamma(z) on a random grid away from poles.
        #[test]
        fn gamma_recurrence(re in -20.0f64..20.0, im in -20.0f64..20.0) {
            let z = c(re, im);
            let dist_to_pole = if z.im.abs() > 0.1 {
                1.0
            } else {
                (z.re - z.re.round()).abs().hypot(z.im)
            };
            prop_assume!(z.re > 0.0 || dist_to_pole >= 0.1);
            let lhs = gamma(z + C64::ONE).unwrap();
            let rhs = z * gamma(z).unwrap();
            let scale = lhs.norm().max(rhs.norm());
            prop_assert!((lhs - rhs).norm() <= 1e-11 * scale);
        }
    }
}
