//! Cross-module check: the coupled potentials system integrated from a
//! Riemann-Hilbert seed must land on the Riemann-Hilbert solution at the
//! far end, and the finite-difference conservation check must exhibit its
//! second-order step scaling.

use painleve2::numerics::C64;
use painleve2::ode::integrate_uv;
use painleve2::rhsolver::{com_check, solve_w, uv_seed};

const LN2: f64 = std::f64::consts::LN_2;

#[test]
fn uv_integration_matches_second_solve() {
    let p = LN2 / (2.0 * std::f64::consts::PI);
    let tau = C64::new(1.0, 0.0);
    let from = solve_w(p, tau, 0.0, 24).unwrap();
    let seed = uv_seed(&from);
    let tr = integrate_uv(C64::new(p, 0.0), seed, (0.0, 5.0), 1e-11, 0.5).unwrap();
    assert!(
        tr.max_com_deviation <= 1e-7,
        "constant of motion drifted {:.3e}",
        tr.max_com_deviation
    );

    let to = solve_w(p, tau, 5.0, 24).unwrap();
    let i5 = tr
        .y_grid
        .iter()
        .position(|&y| (y - 5.0).abs() < 1e-9)
        .expect("grid reaches y = 5");
    let du = (tr.u[i5] - to.w1.m12).norm();
    let dv = (tr.v[i5] - to.w1.m21).norm();
    assert!(du <= 1e-6 && dv <= 1e-6, "U gap {du:.3e}, V gap {dv:.3e}");
}

#[test]
fn com_check_scales_quadratically_in_dy() {
    let p = LN2 / (2.0 * std::f64::consts::PI);
    let tau = C64::new(1.0, 0.0);
    let coarse = com_check(p, tau, 2.0, 8e-3, 16).unwrap();
    let fine = com_check(p, tau, 2.0, 4e-3, 16).unwrap();
    let ratio = coarse / fine;
    assert!(
        (2.5..6.0).contains(&ratio),
        "halving dy gave ratio {ratio:.2} (coarse {coarse:.3e}, fine {fine:.3e})"
    );
}
