//! Numerical Riemann-Hilbert oracle for the Jimbo-Miwa representation of the
//! tritronquee solutions: contour collocation for real p, moment extraction
//! of the potentials U, V and the logarithmic derivative Q.

mod cheb;
mod contour;
mod linalg;
mod solve;

pub use contour::{
    build_contour, cyclic_product_at_origin, w_jump_rays, ArcKind, Contour, RayForm, RayJump,
};
pub use solve::{
    com_check, extract_uvq, solve_w, solve_w_tol, uv_derivatives, uv_seed, RHSolution,
    DEFAULT_TRUNC_TOL,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{cr, C64};
    use std::f64::consts::PI;

    const LN2: f64 = std::f64::consts::LN_2;

    fn rogue_p_tau() -> (f64, C64) {
        (LN2 / (2.0 * PI), C64::ONE)
    }

    #[test]
    fn p_zero_gives_identity() {
        let sol = solve_w(0.0, C64::ZERO, 3.0, 12).unwrap();
        assert!(sol.w1.norm_max() <= 1e-12);
        assert!(sol.w2.norm_max() <= 1e-12);
        let m = sol.eval_wt(C64::new(0.4, 0.2));
        assert!((m - crate::numerics::Complex2x2::IDENTITY).norm_max() <= 1e-12);
    }

    #[test]
    fn rogue_case_solves_and_validates() {
        let (p, tau) = rogue_p_tau();
        let sol = solve_w(p, tau, 0.0, 32).unwrap();
        assert!(
            sol.jump_residual <= 1e-9,
            "jump residual {:.3e}",
            sol.jump_residual
        );
        assert!(
            sol.det_residual <= 1e-8,
            "det residual {:.3e}",
            sol.det_residual
        );
        // Schwarz relation V = -U* for p > 0, y real
        assert!(
            sol.schwarz_deviation() <= 1e-8,
            "schwarz {:.3e}",
            sol.schwarz_deviation()
        );
    }

    #[test]
    fn residual_tracks_truncation_tolerance() {
        // with a loose truncation, the jump residual is dominated by the
        // discarded tails and stays within a small multiple of trunc_tol
        let (p, tau) = rogue_p_tau();
        for tol in [1e-8, 1e-10] {
            let sol = solve_w_tol(p, tau, 1.0, 48, tol).unwrap();
            assert!(
                sol.jump_residual <= 10.0 * tol,
                "tol {tol:.0e}: residual {:.3e}",
                sol.jump_residual
            );
        }
    }

    #[test]
    fn panel_doubling_converges() {
        let (p, tau) = rogue_p_tau();
        let a = solve_w(p, tau, 2.0, 16).unwrap();
        let b = solve_w(p, tau, 2.0, 32).unwrap();
        let diff = (a.w1 - b.w1).norm_max();
        assert!(diff <= 1e-7, "W1 moved {diff:.3e} under doubling");
    }

    #[test]
    fn v_matches_left_asymptotics() {
        // y = -20 is deep in the region where the leading asymptotics of V
        // hold to O(|y|^{-5/4}).
        let (p, tau) = rogue_p_tau();
        let sol = solve_w(p, tau, -20.0, 16).unwrap();
        let (_, v, _) = extract_uvq(&sol).unwrap();
        let lead = crate::asymptotics::v_asym_minus(-20.0, cr(p), tau).unwrap();
        let rel = (v / lead - C64::ONE).norm();
        assert!(rel < 0.05, "V vs leading term: {rel:.3e}");
    }

    #[test]
    fn com_check_small_at_origin() {
        let (p, tau) = rogue_p_tau();
        let dev = com_check(p, tau, 0.0, 1e-3, 12).unwrap();
        assert!(dev <= 1e-5, "com deviation {dev:.3e}");
    }
}
