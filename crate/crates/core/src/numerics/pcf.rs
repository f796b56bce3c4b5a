//! Parabolic cylinder function U(a, t): the solution of Weber's equation
//! w'' = (t^2/4 + a) w that is recessive as t -> +infinity.
//!
//! Evaluation strategy:
//!   * |t| <= 8: Maclaurin series in double-double arithmetic (the even/odd
//!     fundamental pair, combined with the exact values of U and U' at 0).
//!   * |t| > 8 with |arg t| <= ASYMP_ARG_MAX: the standard asymptotic series
//!     e^{-t^2/4} t^{-a-1/2} * sum_j (-1)^j (1/2+a)_{2j} / (j! (2 t^2)^j),
//!     truncated at its smallest term (at most 24 terms).
//!   * |t| > 8 elsewhere: the three-term connection formula expressing
//!     U(a, t) through U(a, -t) and U(-a, -it), whose arguments both fall in
//!     the asymptotic sector. Negative phases go through Schwarz reflection
//!     first. The combination never cancels: whichever exponential dominates
//!     at t is carried by exactly one of the two terms.

use super::dd::DdC;
use super::{cr, C64};
use std::f64::consts::PI;

const SERIES_RADIUS: f64 = 8.0;
// The plain asymptotic series is clean through |arg t| = pi/2; beyond that a
// subdominant exponential switches on (size e^{Re(t^2)/2} relative). Slightly
// past pi/2 it is still below 1e-13 for |t| >= 8, which gives the connection
// formula arguments enough sector to land in.
const ASYMP_ARG_MAX: f64 = 1.60;

/// U(a, t), total on the stated domain (entire in t).
pub fn pcf_u(a: C64, t: C64) -> C64 {
    if t.norm() <= SERIES_RADIUS {
        return maclaurin(a, t);
    }
    if t.arg().abs() <= ASYMP_ARG_MAX {
        return asymptotic(a, t);
    }
    if t.arg() < 0.0 {
        // Schwarz reflection: U(a*, t*) = U(a, t)*.
        return pcf_u(a.conj(), t.conj()).conj();
    }
    connected(a, t)
}

/// U(a, 0) and U'(a, 0) in double-double precision:
///   U(a, 0)  =  sqrt(pi) / (2^{a/2+1/4} Gamma(3/4 + a/2)),
///   U'(a, 0) = -sqrt(pi) / (2^{a/2-1/4} Gamma(1/4 + a/2)).
/// The Maclaurin decomposition cancels ~e^{|t|^2/2} near the seam, which is
/// why these constants need more than double precision.
fn connection_constants_dd(a: C64) -> (DdC, DdC) {
    use super::dd::{exp_c_dd, ln_dd, lngamma_dd, Dd, LN2_DD, PI_DD};
    let half_ln_pi = ln_dd(PI_DD).scale(0.5);
    let a2 = DdC::from_c(a).scale(0.5);
    let quarter = DdC {
        re: Dd::from(0.25),
        im: Dd::ZERO,
    };
    let three_quarter = DdC {
        re: Dd::from(0.75),
        im: Dd::ZERO,
    };
    // exponent for U(a,0): ln(sqrt(pi)) - (a/2 + 1/4) ln 2 - lngamma(3/4 + a/2)
    let mut e0 = DdC {
        re: half_ln_pi,
        im: Dd::ZERO,
    };
    let ln2c = DdC {
        re: LN2_DD,
        im: Dd::ZERO,
    };
    e0 = e0.sub(a2.add(quarter).mul(ln2c));
    e0 = e0.sub(lngamma_dd(three_quarter.add(a2)));
    let u0 = exp_c_dd(e0);
    // exponent for U'(a,0): ln(sqrt(pi)) - (a/2 - 1/4) ln 2 - lngamma(1/4 + a/2)
    let pole1 = is_gamma_pole(cr(0.25) + a * 0.5);
    let pole0 = is_gamma_pole(cr(0.75) + a * 0.5);
    let mut e1 = DdC {
        re: half_ln_pi,
        im: Dd::ZERO,
    };
    e1 = e1.sub(a2.sub(quarter).mul(ln2c));
    e1 = e1.sub(lngamma_dd(quarter.add(a2)));
    let du0 = exp_c_dd(e1);
    (
        if pole0 { DdC::ZERO } else { u0 },
        if pole1 {
            DdC::ZERO
        } else {
            DdC::ZERO.sub(du0)
        },
    )
}

fn is_gamma_pole(z: C64) -> bool {
    z.im.abs() < 1e-13 && z.re <= 0.1 && (z.re - z.re.round()).abs() < 1e-13
}

/// Maclaurin evaluation; returns U(a, t).
fn maclaurin(a: C64, t: C64) -> C64 {
    let (u, _) = maclaurin_with_derivative(a, t);
    u
}

/// (U, U') by direct series; double-double accumulation controls the
/// cancellation near |t| = 8.
fn maclaurin_with_derivative(a: C64, t: C64) -> (C64, C64) {
    let add = DdC::from_c(a);
    let tdd = DdC::from_c(t);

    // Even solution (1, 0) and odd solution (0, 1) of w'' = (t^2/4 + a) w.
    let one = DdC {
        re: super::dd::Dd::ONE,
        im: super::dd::Dd::ZERO,
    };
    let mut ek: Vec<DdC> = vec![one, DdC::ZERO];
    let mut ok: Vec<DdC> = vec![DdC::ZERO, one];

    let mut se = ek[0]; // sum of even series
    let mut so = tdd; // sum of odd series (starts with the t^1 term)
    let mut dse = DdC::ZERO; // derivative sums
    let mut dso = ok[1];

    // pw = t^{k+1} entering iteration k
    let mut pw = tdd;
    let mut max_mag = se.norm1().max(so.norm1()).max(1.0);
    let mut small_streak = 0;
    for k in 0..400usize {
        // coefficient c_{k+2} = (a c_k + c_{k-2}/4) / ((k+1)(k+2))
        let denom = ((k + 1) * (k + 2)) as f64;
        let mut e2 = add.mul(ek[k]);
        let mut o2 = add.mul(ok[k]);
        if k >= 2 {
            e2 = e2.add(ek[k - 2].scale(0.25));
            o2 = o2.add(ok[k - 2].scale(0.25));
        }
        e2 = e2.div_real(denom);
        o2 = o2.div_real(denom);
        ek.push(e2);
        ok.push(o2);

        // derivative terms: (k+2) c_{k+2} t^{k+1}
        dse = dse.add(e2.mul(pw).scale((k + 2) as f64));
        dso = dso.add(o2.mul(pw).scale((k + 2) as f64));

        let pw2 = pw.mul(tdd); // t^{k+2}
        let te = e2.mul(pw2);
        let to = o2.mul(pw2);
        se = se.add(te);
        so = so.add(to);
        pw = pw2;

        let tm = te.norm1().max(to.norm1());
        max_mag = max_mag.max(se.norm1()).max(so.norm1());
        if tm < 1e-34 * max_mag.max(1e-300) {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }

    let (u0, du0) = connection_constants_dd(a);
    let u = u0.mul(se).add(du0.mul(so));
    let du = u0.mul(dse).add(du0.mul(dso));
    (u.to_c(), du.to_c())
}

/// Asymptotic series, |arg t| < 3*pi/4; truncated at the smallest term.
fn asymptotic(a: C64, t: C64) -> C64 {
    let t2 = t * t;
    let inv2t2 = (t2 * 2.0).inv();
    let mut term = C64::ONE;
    let mut sum = C64::ONE;
    let mut best = term.norm();
    for j in 0..24usize {
        let j2 = 2.0 * j as f64;
        let f1 = a + cr(0.5 + j2);
        let f2 = a + cr(1.5 + j2);
        term = -term * f1 * f2 * inv2t2 / ((j + 1) as f64);
        if term.norm() > best {
            break;
        }
        sum += term;
        best = term.norm();
        if best < 1e-18 * sum.norm() {
            break;
        }
    }
    let prefactor = (-t2 * 0.25).exp() * ((-a - cr(0.5)) * t.ln()).exp();
    prefactor * sum
}

/// Connection formula for arg t in (ASYMP_ARG_MAX, pi]:
///   U(a, t) = -e^{-pi p} U(a, -t)
///             + i (e^{2 pi p} - 1) Gamma(ip) e^{-3 pi p/2} / sqrt(2 pi)
///               * U(-a, -it),
/// with p = i(a - 1/2), so Gamma(ip) = Gamma(1/2 - a). Derived from the
/// sector structure of the parabolic-cylinder Riemann-Hilbert problem; both
/// arguments -t and -it land in the asymptotic sector.
fn connected(a: C64, t: C64) -> C64 {
    let p = super::I * (a - cr(0.5));
    let coef2 = connection_coef2(p);
    let term1 = -(-PI * p).exp() * pcf_u(a, -t);
    let term2 = coef2 * pcf_u(-a, -super::I * t);
    term1 + term2
}

/// i (e^{2 pi p} - 1) Gamma(ip) e^{-3 pi p/2} / sqrt(2 pi), with the finite
/// limit -2 pi i (-1)^n / n! * e^{...}-free value used near p = -i n where the
/// zero of (e^{2 pi p} - 1) cancels the Gamma pole.
fn connection_coef2(p: C64) -> C64 {
    let ip = super::I * p;
    let near_int = ip.im.abs() < 1e-8 && (ip.re - ip.re.round()).abs() < 1e-8 && ip.re <= 0.1;
    if near_int {
        let n = (-ip.re.round()) as i32;
        // (e^{2 pi p} - 1) Gamma(ip) -> 2 pi (-1)^n / (i n!) as ip -> -n
        let mut fact = 1.0;
        for k in 1..=n {
            fact *= k as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let lim = cr(2.0 * PI * sign / fact) / super::I;
        return super::I * lim * (-1.5 * PI * p).exp() / (2.0 * PI).sqrt();
    }
    let g = super::gamma(ip).expect("gamma pole handled by the limit branch");
    super::I * ((2.0 * PI * p).exp() - C64::ONE) * g * (-1.5 * PI * p).exp() / (2.0 * PI).sqrt()
}
