//! Minimal double-double arithmetic (roughly 31 significant digits) used to
//! absorb cancellation when summing the parabolic-cylinder Maclaurin series.
//! Algorithms are the classical error-free transforms (Dekker/Knuth two-sum,
//! FMA two-product).

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from(q1)));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul(Dd::from(q2)));
        let q3 = r2.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        let (hi, lo2) = quick_two_sum(hi, lo + q3);
        Dd { hi, lo: lo2 }
    }

    #[inline]
    pub fn scale(self, x: f64) -> Dd {
        self.mul(Dd::from(x))
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DdC {
    pub re: Dd,
    pub im: Dd,
}

impl DdC {
    pub const ZERO: DdC = DdC {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_c(z: num_complex::Complex64) -> DdC {
        DdC {
            re: Dd::from(z.re),
            im: Dd::from(z.im),
        }
    }

    #[inline]
    pub fn add(self, o: DdC) -> DdC {
        DdC {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    #[inline]
    pub fn mul(self, o: DdC) -> DdC {
        DdC {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    pub fn div(self, o: DdC) -> DdC {
        let den = o.re.mul(o.re).add(o.im.mul(o.im));
        let num = self.mul(DdC {
            re: o.re,
            im: Dd {
                hi: -o.im.hi,
                lo: -o.im.lo,
            },
        });
        DdC {
            re: num.re.div(den),
            im: num.im.div(den),
        }
    }

    #[inline]
    pub fn scale(self, x: f64) -> DdC {
        DdC {
            re: self.re.scale(x),
            im: self.im.scale(x),
        }
    }

    /// Divide by an exactly representable real (error-free denominator).
    #[inline]
    pub fn div_real(self, x: f64) -> DdC {
        let d = Dd::from(x);
        DdC {
            re: self.re.div(d),
            im: self.im.div(d),
        }
    }

    #[inline]
    pub fn to_c(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn norm1(self) -> f64 {
        self.re.abs() + self.im.abs()
    }
}

// ---- double-double elementary functions -----------------------------------
// Enough transcendental support to evaluate the parabolic-cylinder connection
// constants U(a,0), U'(a,0) to ~30 digits: the even/odd Maclaurin
// decomposition cancels about e^{|t|^2/2} near |t| = 8, so double precision
// in the constants alone would cap the final accuracy near 1e-2.

pub(crate) const LN2_DD: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319046813846299e-17,
};
pub(crate) const PI_DD: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};
pub(crate) const FRAC_PI_2_DD: Dd = Dd {
    hi: std::f64::consts::FRAC_PI_2,
    lo: 6.123233995736766e-17,
};

/// e^x for dd x (|x| up to ~700).
pub(crate) fn exp_dd(x: Dd) -> Dd {
    let n = (x.hi / std::f64::consts::LN_2).round();
    let r = x.sub(LN2_DD.scale(n));
    // Taylor on |r| <= ~0.35
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 1..30 {
        term = term.mul(r).div(Dd::from(k as f64));
        sum = sum.add(term);
        if term.abs() < 1e-35 * sum.abs().max(1e-300) {
            break;
        }
    }
    let scale = 2.0f64.powi(n as i32);
    sum.scale(scale)
}

/// ln x for dd x > 0: f64 seed plus one dd Newton correction.
pub(crate) fn ln_dd(x: Dd) -> Dd {
    let y0 = x.to_f64().ln();
    let e0 = exp_dd(Dd::from(y0));
    let r = x.div(e0);
    let d = r.sub(Dd::ONE);
    // ln(1 + d) with |d| ~ 1e-16
    Dd::from(y0).add(d).sub(d.mul(d).scale(0.5))
}

/// (sin x, cos x) for dd x.
pub(crate) fn sin_cos_dd(x: Dd) -> (Dd, Dd) {
    let k = (x.hi / std::f64::consts::FRAC_PI_2).round();
    let r = x.sub(FRAC_PI_2_DD.scale(k));
    // Taylor for sin and cos on |r| <= ~0.79
    let r2 = r.mul(r);
    let mut s = r;
    let mut term = r;
    for j in 1..20 {
        let den = (2 * j) as f64 * (2 * j + 1) as f64;
        term = term.mul(r2).div(Dd::from(-den));
        s = s.add(term);
        if term.abs() < 1e-35 {
            break;
        }
    }
    let mut c = Dd::ONE;
    let mut ct = Dd::ONE;
    for j in 1..20 {
        let den = (2 * j - 1) as f64 * (2 * j) as f64;
        ct = ct.mul(r2).div(Dd::from(-den));
        c = c.add(ct);
        if ct.abs() < 1e-35 {
            break;
        }
    }
    match (k as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, Dd { hi: -s.hi, lo: -s.lo }),
        2 => (Dd { hi: -s.hi, lo: -s.lo }, Dd { hi: -c.hi, lo: -c.lo }),
        _ => (Dd { hi: -c.hi, lo: -c.lo }, s),
    }
}

impl DdC {
    pub(crate) fn sub(self, o: DdC) -> DdC {
        DdC {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    pub(crate) fn norm_sqr_dd(self) -> Dd {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }
}

/// Principal complex logarithm in dd.
pub(crate) fn ln_c_dd(z: DdC) -> DdC {
    let re = ln_dd(z.norm_sqr_dd()).scale(0.5);
    // argument: f64 seed, one rotation-based correction
    let t0 = z.im.to_f64().atan2(z.re.to_f64());
    let (s, c) = sin_cos_dd(Dd::from(t0));
    // w = z * e^{-i t0}; correction = Im(w)/Re(w), second order negligible
    let w = z.mul(DdC {
        re: c,
        im: Dd { hi: -s.hi, lo: -s.lo },
    });
    let corr = w.im.div(w.re);
    DdC {
        re,
        im: Dd::from(t0).add(corr),
    }
}

/// Complex exponential in dd.
pub(crate) fn exp_c_dd(z: DdC) -> DdC {
    let m = exp_dd(z.re);
    let (s, c) = sin_cos_dd(z.im);
    DdC {
        re: m.mul(c),
        im: m.mul(s),
    }
}

/// Complex sin(pi z) in dd (used by the log-gamma reflection).
fn sin_pi_c_dd(z: DdC) -> DdC {
    let x = z.re.mul(PI_DD);
    let y = z.im.mul(PI_DD);
    let (sx, cx) = sin_cos_dd(x);
    let ey = exp_dd(y);
    let emy = Dd::ONE.div(ey);
    let sinh = ey.sub(emy).scale(0.5);
    let cosh = ey.add(emy).scale(0.5);
    DdC {
        re: sx.mul(cosh),
        im: cx.mul(sinh),
    }
}

/// B_{2k} / (2k (2k-1)) as exact integer fractions; the dd quotients are
/// formed at run time so no precomputed lo-parts are needed.
const BERNOULLI_OVER: [(f64, f64); 10] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360360.0),
    (1.0, 156.0),
    (-3617.0, 122400.0),
    (43867.0, 244188.0),
    (-174611.0, 125400.0),
];

/// Principal-branch log-gamma in dd (accuracy ~1e-28 absolute). The lo parts
/// of the Bernoulli fractions enter at relative 1e-16 of terms that are
/// themselves < 1e-2, so the f64-rounded fractions are sufficient here.
pub(crate) fn lngamma_dd(z: DdC) -> DdC {
    if z.re.to_f64() < 0.5 {
        // reflection: ln pi - ln sin(pi z) - lngamma(1 - z)
        let one = DdC {
            re: Dd::ONE,
            im: Dd::ZERO,
        };
        let lnpi = DdC {
            re: ln_dd(PI_DD),
            im: Dd::ZERO,
        };
        return lnpi
            .sub(ln_c_dd(sin_pi_c_dd(z)))
            .sub(lngamma_dd(one.sub(z)));
    }
    // shift until |z| >= 40
    let mut zs = z;
    let mut acc = DdC::ZERO;
    while zs.norm_sqr_dd().to_f64() < 1600.0 {
        acc = acc.add(ln_c_dd(zs));
        zs = zs.add(DdC {
            re: Dd::ONE,
            im: Dd::ZERO,
        });
    }
    // Stirling: (z - 1/2) ln z - z + ln(2 pi)/2 + sum B_{2k}/((2k)(2k-1) z^{2k-1})
    let lnz = ln_c_dd(zs);
    let half = DdC {
        re: Dd::from(0.5),
        im: Dd::ZERO,
    };
    let mut out = zs.sub(half).mul(lnz).sub(zs);
    let two_pi = PI_DD.scale(2.0);
    out = out.add(DdC {
        re: ln_dd(two_pi).scale(0.5),
        im: Dd::ZERO,
    });
    let zinv = DdC {
        re: Dd::ONE,
        im: Dd::ZERO,
    }
    .div(zs);
    let zinv2 = zinv.mul(zinv);
    let mut pw = zinv;
    for (num, den) in BERNOULLI_OVER {
        let frac = Dd::from(num).div(Dd::from(den));
        out = out.add(DdC {
            re: pw.re.mul(frac),
            im: pw.im.mul(frac),
        });
        pw = pw.mul(zinv2);
    }
    out.sub(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_sums_cancel_exactly() {
        // 1 + 1e-20 - 1 survives in dd, dies in f64.
        let s = Dd::from(1.0).add(Dd::from(1e-20)).sub(Dd::from(1.0));
        assert_eq!(s.to_f64(), 1e-20);
    }

    #[test]
    fn dd_div_roundtrip() {
        let a = Dd::from(std::f64::consts::PI);
        let b = Dd::from(std::f64::consts::E);
        let q = a.div(b).mul(b);
        assert!((q.to_f64() - std::f64::consts::PI).abs() < 1e-30);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for v in [0.3, 2.0, -5.5, 17.25] {
            let x = Dd::from(v);
            let r = ln_dd(exp_dd(x));
            assert!(r.sub(x).abs() < 1e-29, "v={v}: {}", r.sub(x).abs());
        }
    }

    #[test]
    fn sin_cos_pythagoras() {
        for v in [0.0, 0.7, -2.3, 10.0, 100.5] {
            let (s, c) = sin_cos_dd(Dd::from(v));
            let one = s.mul(s).add(c.mul(c));
            assert!(one.sub(Dd::ONE).abs() < 1e-30, "v={v}");
            assert!((s.to_f64() - v.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn lngamma_dd_matches_known_values() {
        // Gamma(5) = 24
        let z = DdC {
            re: Dd::from(5.0),
            im: Dd::ZERO,
        };
        let v = lngamma_dd(z);
        assert!((v.re.to_f64() - 24.0f64.ln()).abs() < 1e-15);
        assert!(v.im.abs() < 1e-25);
        // Gamma(1/2) = sqrt(pi)
        let h = DdC {
            re: Dd::from(0.5),
            im: Dd::ZERO,
        };
        let vh = lngamma_dd(h);
        assert!((vh.re.to_f64() - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-15);
        // recurrence in dd: lngamma(z+1) - lngamma(z) = ln z at complex z
        let zc = DdC {
            re: Dd::from(0.75),
            im: Dd::from(-1.3),
        };
        let one = DdC {
            re: Dd::ONE,
            im: Dd::ZERO,
        };
        let lhs = lngamma_dd(zc.add(one)).sub(lngamma_dd(zc));
        let rhs = ln_c_dd(zc);
        let diff = lhs.sub(rhs);
        assert!(diff.re.abs() < 1e-27 && diff.im.abs() < 1e-27);
    }
}
