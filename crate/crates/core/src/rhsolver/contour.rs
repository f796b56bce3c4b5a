//! Jump data and panelized contour for the Jimbo-Miwa Riemann-Hilbert
//! problem.
//!
//! The jump matrix lives on five rays at angles pi/2, 5pi/6, pi, -5pi/6,
//! -pi/2. With rays oriented toward increasing real part (outward for the
//! vertical pair), the entries are
//!   arg z =  pi/2 : lower-triangular, tau e^{-i(z^3 + y z)}
//!   arg z =  5pi/6: upper-triangular, tau e^{-2 pi p} e^{+i(z^3 + y z)}
//!   arg z =  pi   : diagonal e^{2 pi p sigma3}
//!   arg z = -5pi/6: lower-triangular, tau e^{-2 pi p} e^{-i(z^3 + y z)}
//!   arg z = -pi/2 : upper-triangular, tau e^{+i(z^3 + y z)}
//! This is the unique assignment with coefficients drawn from the transform
//! factors of the steepest-descent analysis that (i) degenerates to the
//! identity at p = 0, (ii) has unit determinant, (iii) satisfies the cyclic
//! identity at the origin given tau^2 = e^{2 pi p} - 1, and (iv) obeys the
//! Schwarz symmetry used by the vanishing lemma for p > 0.
//!
//! Discretization: the solution W itself has continuous boundary values at
//! the origin, while the normalized unknown M = W z^{i p sigma3} is flat at
//! infinity. The solver therefore works with the hybrid unknown
//!   Wt = W inside a unit polygon around the origin,
//!   Wt = W z^{i p sigma3} outside,
//! which keeps every arc density piecewise smooth: the original five-ray
//! jumps inside (including the short diagonal segment on [-1, 0]), the
//! power-conjugated ray jumps outside (which decay), and the diagonal jump
//! z^{-i p sigma3} on the polygon. The polygon has vertices on the rays so
//! junctions never sit inside a panel.

use super::cheb;
use crate::error::{Error, Result};
use crate::numerics::{c, cr, C64, Complex2x2, I};
use std::f64::consts::PI;

/// One ray of the five-ray jump contour in the description of the original
/// problem: triangularity, coefficient, and the exponent sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RayForm {
    Lower,
    Upper,
    Diagonal,
}

#[derive(Debug, Clone, Copy)]
pub struct RayJump {
    /// ray angle in (-pi, pi]
    pub angle: f64,
    pub form: RayForm,
    /// off-diagonal coefficient (or the (1,1) entry for the diagonal ray)
    pub coefficient: C64,
    /// sign s in e^{s i (z^3 + y z)}; 0 for the diagonal ray
    pub exponent_sign: i8,
}

impl RayJump {
    /// Jump matrix value at a point z on the ray (W-normalization).
    pub fn matrix(&self, z: C64, y: f64) -> Complex2x2 {
        let phase = z * z * z + z * y;
        match self.form {
            RayForm::Diagonal => Complex2x2::diag_sigma3(self.coefficient),
            RayForm::Lower => {
                Complex2x2::lower(self.coefficient * (I * phase * self.exponent_sign as f64).exp())
            }
            RayForm::Upper => {
                Complex2x2::upper(self.coefficient * (I * phase * self.exponent_sign as f64).exp())
            }
        }
    }
}

/// The five-ray template with the orientation conventions above.
pub fn w_jump_rays(p: f64, tau: C64) -> [RayJump; 5] {
    let e2 = (-2.0 * PI * p).exp();
    [
        RayJump {
            angle: PI / 2.0,
            form: RayForm::Lower,
            coefficient: tau,
            exponent_sign: -1,
        },
        RayJump {
            angle: 5.0 * PI / 6.0,
            form: RayForm::Upper,
            coefficient: tau * e2,
            exponent_sign: 1,
        },
        RayJump {
            angle: PI,
            form: RayForm::Diagonal,
            coefficient: cr((2.0 * PI * p).exp()),
            exponent_sign: 0,
        },
        RayJump {
            angle: -5.0 * PI / 6.0,
            form: RayForm::Lower,
            coefficient: tau * e2,
            exponent_sign: -1,
        },
        RayJump {
            angle: -PI / 2.0,
            form: RayForm::Upper,
            coefficient: tau,
            exponent_sign: 1,
        },
    ]
}

/// Cyclic product of the five jump matrices at the origin (exponentials set
/// to one), walking counterclockwise from the sector containing the positive
/// real axis; equals the identity exactly when tau^2 = e^{2 pi p} - 1.
pub fn cyclic_product_at_origin(p: f64, tau: C64) -> Complex2x2 {
    let rays = w_jump_rays(p, tau);
    let at_origin = |r: &RayJump| match r.form {
        RayForm::Diagonal => Complex2x2::diag_sigma3(r.coefficient),
        RayForm::Lower => Complex2x2::lower(r.coefficient),
        RayForm::Upper => Complex2x2::upper(r.coefficient),
    };
    at_origin(&rays[0])
        * at_origin(&rays[1]).inverse()
        * at_origin(&rays[2]).inverse()
        * at_origin(&rays[3]).inverse()
        * at_origin(&rays[4])
}

/// Arc classification on the hybrid contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArcKind {
    /// ray segment inside the polygon; index into the solver ray order
    /// (pi/2, 5pi/6, -5pi/6, -pi/2)
    InnerRay(usize),
    /// ray segment outside the polygon, conjugated by z^{i p sigma3}
    OuterRay(usize),
    /// the segment [-1, 0] with the constant diagonal jump e^{2 pi p sigma3}
    NegAxis,
    /// a polygon edge, oriented counterclockwise, jump z^{-i p sigma3}
    Polygon,
}

/// A straight panel with its physical Chebyshev nodes.
#[derive(Debug, Clone)]
pub struct Panel {
    pub kind: ArcKind,
    /// complex endpoints (orientation a -> b)
    pub za: C64,
    pub zb: C64,
    pub nodes: Vec<C64>,
}

impl Panel {
    pub fn mid(&self) -> C64 {
        0.5 * (self.za + self.zb)
    }
    pub fn half(&self) -> C64 {
        0.5 * (self.zb - self.za)
    }
}

/// Discretized hybrid contour.
pub struct Contour {
    pub p: f64,
    pub tau: C64,
    pub y: f64,
    pub trunc_tol: f64,
    pub dirs: [C64; 4],
    /// truncation radius per solver ray
    pub radii: [f64; 4],
    pub panels: Vec<Panel>,
    pub m: usize,
    pub ref_nodes: Vec<f64>,
    pub v2c: Vec<Vec<f64>>,
}

const RAY_ANGLES: [f64; 4] = [PI / 2.0, 5.0 * PI / 6.0, -5.0 * PI / 6.0, -PI / 2.0];

impl Contour {
    /// V(z) - I on the given arc (jump for the hybrid unknown).
    pub fn v_minus_identity(&self, kind: ArcKind, z: C64) -> Complex2x2 {
        let phase = z * z * z + z * self.y;
        let e2 = (-2.0 * PI * self.p).exp();
        let tau = self.tau;
        let mut out = Complex2x2::ZERO;
        match kind {
            ArcKind::InnerRay(0) => out.m21 = tau * (-I * phase).exp(),
            ArcKind::InnerRay(1) => out.m12 = -tau * e2 * (I * phase).exp(),
            ArcKind::InnerRay(2) => out.m21 = -tau * e2 * (-I * phase).exp(),
            ArcKind::InnerRay(3) => out.m12 = tau * (I * phase).exp(),
            ArcKind::OuterRay(r) => {
                let zp = (2.0 * I * self.p * z.ln()).exp(); // z^{2ip}
                match r {
                    0 => out.m21 = tau * zp * (-I * phase).exp(),
                    1 => out.m12 = -tau * e2 / zp * (I * phase).exp(),
                    2 => out.m21 = -tau * e2 * zp * (-I * phase).exp(),
                    3 => out.m12 = tau / zp * (I * phase).exp(),
                    _ => unreachable!(),
                }
            }
            ArcKind::NegAxis => {
                let d = (2.0 * PI * self.p).exp();
                out.m11 = cr(d - 1.0);
                out.m22 = cr(1.0 / d - 1.0);
            }
            ArcKind::Polygon => {
                let zp = (-I * self.p * z.ln()).exp(); // z^{-ip}
                out.m11 = zp - C64::ONE;
                out.m22 = zp.inv() - C64::ONE;
            }
            ArcKind::InnerRay(_) => unreachable!(),
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.panels.len() * self.m
    }
}

/// Decay exponent g(s) with |entry| = |coef| e^{-g(s)} on solver ray `ray`
/// at radius s >= 0 (real y).
fn decay_exponent(ray: usize, s: f64, y: f64) -> f64 {
    match ray {
        0 | 3 => s * s * s - y * s,
        _ => s * s * s + 0.5 * y * s,
    }
}

/// Build the hybrid panelized contour. `panels_per_ray` scales the panel
/// density everywhere; each outer ray is truncated where its jump entry
/// falls below trunc_tol.
pub fn build_contour(
    p: f64,
    tau: C64,
    y: f64,
    trunc_tol: f64,
    panels_per_ray: usize,
) -> Result<Contour> {
    let tau_sq = tau * tau;
    let expect = cr((2.0 * PI * p).exp()) - C64::ONE;
    if (tau_sq - expect).norm() > 1e-8 * expect.norm().max(1.0) {
        return Err(Error::Configuration(format!(
            "tau^2 = {tau_sq} does not satisfy tau^2 = e^(2 pi p) - 1 = {expect}"
        )));
    }
    if y.abs() > 40.0 {
        return Err(Error::Configuration(format!("|y| = {} > 40", y.abs())));
    }
    let m = 12usize;
    let dirs = [
        c(RAY_ANGLES[0].cos(), RAY_ANGLES[0].sin()),
        c(RAY_ANGLES[1].cos(), RAY_ANGLES[1].sin()),
        c(RAY_ANGLES[2].cos(), RAY_ANGLES[2].sin()),
        c(RAY_ANGLES[3].cos(), RAY_ANGLES[3].sin()),
    ];
    // |coef| per solver ray including the constant |z^{2ip}| modulus on it
    let coef_mag = [
        tau.norm() * (-PI * p).exp(),
        tau.norm() * (-2.0 * PI * p).exp() * (PI * p * 5.0 / 3.0).exp(),
        tau.norm() * (-2.0 * PI * p).exp() * (-PI * p * 5.0 / 3.0).exp(),
        tau.norm() * (PI * p).exp(),
    ];

    let mut radii = [0.0f64; 4];
    for ray in 0..4 {
        let target = (coef_mag[ray].max(1e-30) / trunc_tol).ln().max(1.0);
        let mut lo = 0.0;
        let mut hi: f64 = 1.0;
        while decay_exponent(ray, hi, y) < target && hi < 64.0 {
            hi *= 1.3;
        }
        if hi > 50.0 {
            return Err(Error::Configuration(format!(
                "truncation radius exceeds 50 on ray {ray} (y = {y})"
            )));
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if decay_exponent(ray, mid, y) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        radii[ray] = hi.max(1.5);
    }

    let ref_nodes = cheb::cheb_nodes(m);
    let v2c = cheb::vals_to_coefs_matrix(m);
    let density = (panels_per_ray as f64 / 16.0).max(0.5);
    let mut panels: Vec<Panel> = Vec::new();

    let push_segment = |panels: &mut Vec<Panel>, kind: ArcKind, za: C64, zb: C64, n: usize| {
        for k in 0..n {
            let a = za + (zb - za) * (k as f64 / n as f64);
            let b = za + (zb - za) * ((k + 1) as f64 / n as f64);
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            let nodes = ref_nodes.iter().map(|&t| mid + half * t).collect();
            panels.push(Panel {
                kind,
                za: a,
                zb: b,
                nodes,
            });
        }
    };

    for ray in 0..4 {
        // inner segment [0, 1]: mild grading toward the origin junction plus
        // enough panels for the oscillation of e^{i(z^3+yz)} (rate <= |y|+3)
        let osc_in = (y.abs() * 0.87 + 3.0) / 5.0;
        let n_in = ((2.0 + osc_in) * density).ceil() as usize + 1;
        // graded: [0, 0.1], [0.1, 0.4], [0.4, 1.0] split further by n_in
        let brk = [0.0, 0.04, 0.15, 0.45, 1.0];
        for w in brk.windows(2) {
            let extra = ((w[1] - w[0]) * n_in as f64).ceil().max(1.0) as usize;
            push_segment(
                &mut panels,
                ArcKind::InnerRay(ray),
                dirs[ray] * w[0],
                dirs[ray] * w[1],
                extra,
            );
        }
        // outer segment [1, R]: phase-resolved subdivision
        let r = radii[ray];
        let osc_rate = match ray {
            0 | 3 => 0.05 * y.abs() + 0.2,
            _ => 0.87 * y.abs() + 0.2,
        };
        let mut pts = vec![1.0f64];
        let cap = 3.0 / density;
        loop {
            let cur = *pts.last().unwrap();
            if cur >= r * (1.0 - 1e-12) {
                break;
            }
            // spacing limited by oscillation and by the cubic decay scale
            let h_osc = cap / osc_rate.max(1e-9);
            let h_decay = (1.2 / density) * (1.0 + cur * cur) / (1.0 + 0.3 * cur * cur * cur);
            let mut next = cur + h_osc.min(h_decay).min(1.5 / density);
            if next >= r || r - next < 0.35 * (next - cur) {
                next = r;
            }
            pts.push(next);
        }
        for w in pts.windows(2) {
            if w[1] - w[0] < 1e-14 * (1.0 + w[1]) {
                continue;
            }
            push_segment(
                &mut panels,
                ArcKind::OuterRay(ray),
                dirs[ray] * w[0],
                dirs[ray] * w[1],
                1,
            );
        }
    }

    // the diagonal segment [-1, 0], oriented toward the origin
    let n_neg = (2.0 * density).ceil() as usize + 1;
    push_segment(
        &mut panels,
        ArcKind::NegAxis,
        cr(-1.0),
        C64::ZERO,
        n_neg,
    );

    // unit polygon, counterclockwise, vertices at multiples of pi/6 so the
    // corners at the five junction angles are panel endpoints
    let n_poly_side = (density.ceil() as usize).max(1);
    for k in 0..12 {
        let a0 = -PI + PI / 6.0 * k as f64;
        let a1 = a0 + PI / 6.0;
        push_segment(
            &mut panels,
            ArcKind::Polygon,
            c(a0.cos(), a0.sin()),
            c(a1.cos(), a1.sin()),
            n_poly_side,
        );
    }

    Ok(Contour {
        p,
        tau,
        y,
        trunc_tol,
        dirs,
        radii,
        panels,
        m,
        ref_nodes,
        v2c,
    })
}
