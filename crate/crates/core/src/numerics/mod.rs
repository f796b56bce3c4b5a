//! Self-contained numerical kernels: two-by-two complex linear algebra,
//! principal-branch powers, complex log-gamma, and the parabolic cylinder
//! function U(a, t). Everything here is pure and deterministic.

mod dd;
mod gamma;
pub mod jet;
mod mat2;
mod pcf;
mod pow;

pub use gamma::{gamma, lngamma};
pub use mat2::Complex2x2;
pub use pcf::pcf_u;
pub use pow::{principal_pow, real_pow, PrincipalPower};



use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub type C64 = Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}
