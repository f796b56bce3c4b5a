//! Numerical library for the increasing tritronquee solutions of the
//! Painleve-II equation u'' = x u + 2 u^3 - alpha with complex parameter
//! alpha.
//!
//! The crate provides, at desk scale:
//!   * the parameter maps q(alpha), tau(alpha) and the regime classification
//!     of the alpha plane ([`params`]);
//!   * closed-form evaluators for the x -> +/-infinity asymptotic and
//!     connection formulas ([`asymptotics`]);
//!   * an adaptive meromorphic integrator that traces u(x) along the real
//!     axis through its poles and catalogs them ([`ode`]);
//!   * the regularized total-integral identity, with Hadamard principal
//!     values across real poles ([`integrals`]);
//!   * an independent Riemann-Hilbert collocation oracle for the Jimbo-Miwa
//!     problem ([`rhsolver`]);
//!   * the parabolic cylinder parametrix and its jump/normalization
//!     diagnostics ([`pcparametrix`]).

pub mod asymptotics;
pub mod error;
pub mod integrals;
pub mod numerics;
pub mod ode;
pub mod params;
pub mod pcparametrix;
pub mod quad;
pub mod rhsolver;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{Complex2x2, C64};
