use super::C64;
use std::ops::{Add, Mul, Sub};

/// Two-by-two complex matrix. Used for Riemann-Hilbert solution values, jump
/// matrices, and the parabolic cylinder parametrix. Unit-determinant contracts
/// are asserted where they apply, never assumed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex2x2 {
    pub m11: C64,
    pub m12: C64,
    pub m21: C64,
    pub m22: C64,
}

impl Complex2x2 {
    pub const IDENTITY: Complex2x2 = Complex2x2 {
        m11: C64::new(1.0, 0.0),
        m12: C64::new(0.0, 0.0),
        m21: C64::new(0.0, 0.0),
        m22: C64::new(1.0, 0.0),
    };

    pub const ZERO: Complex2x2 = Complex2x2 {
        m11: C64::new(0.0, 0.0),
        m12: C64::new(0.0, 0.0),
        m21: C64::new(0.0, 0.0),
        m22: C64::new(0.0, 0.0),
    };

    pub fn new(m11: C64, m12: C64, m21: C64, m22: C64) -> Self {
        Complex2x2 { m11, m12, m21, m22 }
    }

    /// Diagonal matrix diag(d, 1/d)  (the sigma3-exponential shape).
    pub fn diag_sigma3(d: C64) -> Self {
        Complex2x2::new(d, C64::ZERO, C64::ZERO, d.inv())
    }

    /// Lower-triangular unipotent [[1, 0], [c, 1]].
    pub fn lower(c: C64) -> Self {
        Complex2x2::new(C64::ONE, C64::ZERO, c, C64::ONE)
    }

    /// Upper-triangular unipotent [[1, c], [0, 1]].
    pub fn upper(c: C64) -> Self {
        Complex2x2::new(C64::ONE, c, C64::ZERO, C64::ONE)
    }

    pub fn det(&self) -> C64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn inverse(&self) -> Complex2x2 {
        let d = self.det();
        Complex2x2::new(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)
    }

    /// Max-abs entry norm.
    pub fn norm_max(&self) -> f64 {
        self.m11
            .norm()
            .max(self.m12.norm())
            .max(self.m21.norm())
            .max(self.m22.norm())
    }

    pub fn scale(&self, s: C64) -> Complex2x2 {
        Complex2x2::new(self.m11 * s, self.m12 * s, self.m21 * s, self.m22 * s)
    }

    /// Conjugation sigma3 * M * sigma3 (flips the sign of both off-diagonal
    /// entries).
    pub fn sigma3_conj(&self) -> Complex2x2 {
        Complex2x2::new(self.m11, -self.m12, -self.m21, self.m22)
    }
}

impl Mul for Complex2x2 {
    type Output = Complex2x2;
    fn mul(self, o: Complex2x2) -> Complex2x2 {
        Complex2x2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}

impl Add for Complex2x2 {
    type Output = Complex2x2;
    fn add(self, o: Complex2x2) -> Complex2x2 {
        Complex2x2::new(
            self.m11 + o.m11,
            self.m12 + o.m12,
            self.m21 + o.m21,
            self.m22 + o.m22,
        )
    }
}

impl Sub for Complex2x2 {
    type Output = Complex2x2;
    fn sub(self, o: Complex2x2) -> Complex2x2 {
        Complex2x2::new(
            self.m11 - o.m11,
            self.m12 - o.m12,
            self.m21 - o.m21,
            self.m22 - o.m22,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_c() -> impl Strategy<Value = C64> {
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| C64::new(a, b))
    }

    fn arb_mat() -> impl Strategy<Value = Complex2x2> {
        (arb_c(), arb_c(), arb_c(), arb_c()).prop_map(|(a, b, c, d)| Complex2x2::new(a, b, c, d))
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in arb_mat(), b in arb_mat()) {
            let lhs = (a * b).det();
            let rhs = a.det() * b.det();
            let scale = 1.0f64.max(lhs.norm()).max(rhs.norm());
            prop_assert!((lhs - rhs).norm() <= 1e-13 * scale);
        }

        #[test]
        fn inverse_of_unimodular(c in arb_c()) {
            let m = Complex2x2::lower(c) * Complex2x2::upper(c * c);
            let p = m * m.inverse();
            prop_assert!((p - Complex2x2::IDENTITY).norm_max() < 1e-13);
        }
    }
}
