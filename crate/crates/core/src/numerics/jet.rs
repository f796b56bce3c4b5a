//! Truncated Taylor scalars ("jets") in a real variable with complex
//! coefficients. Used to carry out repeated integration by parts of
//! oscillatory tail integrals analytically: each division by the phase
//! derivative and each differentiation is mechanical on jets.

use super::{cr, C64};

pub const JET_LEN: usize = 8;

/// f(x0 + e) = sum_k coeff[k] e^k up to order JET_LEN-1.
#[derive(Debug, Clone, Copy)]
pub struct Jet {
    pub coeff: [C64; JET_LEN],
}

impl Jet {
    pub fn constant(v: C64) -> Jet {
        let mut coeff = [C64::ZERO; JET_LEN];
        coeff[0] = v;
        Jet { coeff }
    }

    /// The identity function x around x0.
    pub fn var(x0: f64) -> Jet {
        let mut coeff = [C64::ZERO; JET_LEN];
        coeff[0] = cr(x0);
        coeff[1] = C64::ONE;
        Jet { coeff }
    }

    pub fn value(&self) -> C64 {
        self.coeff[0]
    }

    /// d/dx as a jet one order shorter (top coefficient zero-filled).
    pub fn derivative(&self) -> Jet {
        let mut coeff = [C64::ZERO; JET_LEN];
        for k in 1..JET_LEN {
            coeff[k - 1] = self.coeff[k] * (k as f64);
        }
        Jet { coeff }
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let mut coeff = [C64::ZERO; JET_LEN];
        for k in 0..JET_LEN {
            coeff[k] = self.coeff[k] + o.coeff[k];
        }
        Jet { coeff }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let mut coeff = [C64::ZERO; JET_LEN];
        for i in 0..JET_LEN {
            for j in 0..JET_LEN - i {
                coeff[i + j] += self.coeff[i] * o.coeff[j];
            }
        }
        Jet { coeff }
    }

    pub fn scale(&self, s: C64) -> Jet {
        let mut coeff = self.coeff;
        for c in &mut coeff {
            *c *= s;
        }
        Jet { coeff }
    }

    pub fn div(&self, o: &Jet) -> Jet {
        let inv = o.recip();
        self.mul(&inv)
    }

    pub fn recip(&self) -> Jet {
        let a0 = self.coeff[0];
        let mut coeff = [C64::ZERO; JET_LEN];
        coeff[0] = a0.inv();
        for k in 1..JET_LEN {
            let mut s = C64::ZERO;
            for j in 1..=k {
                s += self.coeff[j] * coeff[k - j];
            }
            coeff[k] = -s / a0;
        }
        Jet { coeff }
    }

    /// (xi)^a where xi = xi0 + e (xi0 > 0) and a is a complex constant:
    /// coefficients a(a-1)...(a-k+1) xi0^{a-k} / k!.
    pub fn pow_of_positive(xi0: f64, a: C64) -> Jet {
        debug_assert!(xi0 > 0.0);
        let mut coeff = [C64::ZERO; JET_LEN];
        let base = (a * xi0.ln()).exp();
        let mut fall = C64::ONE;
        let mut xi_pow = 1.0;
        let mut fact = 1.0;
        for (k, ck) in coeff.iter_mut().enumerate() {
            *ck = base * fall / (xi_pow * fact);
            fall *= a - cr(k as f64);
            xi_pow *= xi0;
            fact *= (k + 1) as f64;
        }
        Jet { coeff }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recip_and_mul_are_inverse() {
        let x = Jet::var(2.0);
        let q = x.mul(&x).add(&Jet::constant(cr(1.0))); // x^2 + 1
        let r = q.recip().mul(&q);
        assert!((r.coeff[0] - C64::ONE).norm() < 1e-14);
        for k in 1..JET_LEN {
            assert!(r.coeff[k].norm() < 1e-13);
        }
    }

    #[test]
    fn power_jet_derivative_consistency() {
        // d/de (xi^a) = a xi^{a-1}
        let a = C64::new(0.3, -0.7);
        let p = Jet::pow_of_positive(3.0, a);
        let dp = p.derivative();
        let expect = Jet::pow_of_positive(3.0, a - C64::ONE).scale(a);
        for k in 0..JET_LEN - 1 {
            assert!((dp.coeff[k] - expect.coeff[k]).norm() < 1e-12 * expect.coeff[k].norm().max(1.0));
        }
    }
}
