use super::C64;
use crate::error::{Error, Result};

/// A power with the branch pinned: evaluated as exp(exponent * Log(base))
/// with Im(Log) in (-pi, pi].
#[derive(Debug, Clone, Copy)]
pub struct PrincipalPower {
    pub base: C64,
    pub exponent: C64,
}

impl PrincipalPower {
    pub fn new(base: C64, exponent: C64) -> Self {
        PrincipalPower { base, exponent }
    }

    pub fn eval(&self) -> Result<C64> {
        principal_pow(self.base, self.exponent)
    }
}

/// Principal-branch power base^exponent = exp(exponent * Log(base)).
///
/// `num_complex::ln` already takes arg in (-pi, pi]; this wrapper adds the
/// domain checks the callers rely on.
pub fn principal_pow(base: C64, exponent: C64) -> Result<C64> {
    if base == C64::ZERO {
        if exponent.re > 0.0 {
            return Ok(C64::ZERO);
        }
        return Err(Error::Domain {
            op: "principal_pow",
            msg: format!("0^({}) is undefined for Re(exponent) <= 0", exponent),
        });
    }
    Ok((exponent * base.ln()).exp())
}

/// (x)^s for real positive x, arbitrary complex s; avoids the general Log.
pub fn real_pow(x: f64, s: C64) -> C64 {
    debug_assert!(x > 0.0);
    (s * x.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;
    use proptest::prelude::*;

    #[test]
    fn one_to_anything_is_one() {
        for s in [c(0.3, -2.0), c(-4.0, 0.1), c(0.0, 5.0)] {
            assert_eq!(principal_pow(C64::ONE, s).unwrap(), C64::ONE);
        }
    }

    #[test]
    fn minus_one_to_i() {
        // Log(-1) = i*pi on the principal branch, so (-1)^i = e^{-pi}.
        let v = principal_pow(c(-1.0, 0.0), c(0.0, 1.0)).unwrap();
        let expect = (-std::f64::consts::PI).exp();
        assert!((v - c(expect, 0.0)).norm() < 1e-15);
        assert!((v.re - 0.043_213_918_263_772_25).abs() < 1e-15);
    }

    #[test]
    fn sqrt_of_2i() {
        // Log(2i) = ln 2 + i*pi/2, so (2i)^{1/2} = 1 + i.
        let v = principal_pow(c(0.0, 2.0), c(0.5, 0.0)).unwrap();
        assert!((v - c(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_base_domain_error() {
        assert!(principal_pow(C64::ZERO, c(-1.0, 0.0)).is_err());
        assert_eq!(principal_pow(C64::ZERO, c(2.0, 3.0)).unwrap(), C64::ZERO);
    }

    proptest! {
        // Integer exponents agree with repeated multiplication.
        #[test]
        fn integer_powers_match_repeated_multiplication(
            re in -2.0f64..2.0, im in -2.0f64..2.0, m in 1i32..8) {
            let z = c(re, im);
            prop_assume!(z.norm() > 1e-3);
            let by_pow = principal_pow(z, c(m as f64, 0.0)).unwrap();
            let mut by_mul = C64::ONE;
            for _ in 0..m { by_mul *= z; }
            let scale = by_mul.norm().max(1e-300);
            prop_assert!((by_pow - by_mul).norm() / scale <= 1e-14 * (m as f64) * 4.0);
        }
    }
}
