//! Special functions needed by the closed-form transmission results.
//!
//! Everything here is a pure function of its arguments. Complex powers and
//! logarithms use the principal branch, `arg w` in `(-pi, pi]`.

mod bessel;
mod digamma;
mod gamma;
mod hyper;
mod incgamma;
mod power;

pub use bessel::{bessel_j, bessel_jy, bessel_y, BesselJY, BESSEL_SWITCH_X};
pub use digamma::digamma;
pub use gamma::{complex_gamma, gamma_real, ln_gamma, recip_gamma};
pub use hyper::{kummer_1f1, tricomi_u, KUMMER_SWITCH_RADIUS};
pub use incgamma::{
    incgamma_continued_fraction, incgamma_series, upper_incomplete_gamma, INCGAMMA_SWITCH_RADIUS,
};
pub use power::{principal_arg, principal_ln, principal_power, BranchConvention};

/// Complex scalar used for every amplitude and special-function value.
pub type Complex = num_complex::Complex64;

/// Hard cap on series / continued-fraction terms. Exceeding it is an error.
pub const MAX_TERMS: usize = 10_000;

pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub(crate) fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Returns `Some(n)` when `z` lies within `1e-12` of the non-positive integer `n`.
pub(crate) fn nonpositive_integer(z: Complex) -> Option<i64> {
    let n = z.re.round();
    if n <= 0.0 && (z - c(n, 0.0)).norm() <= 1e-12 {
        Some(n as i64)
    } else {
        None
    }
}

/// `cot(w)` evaluated without overflow for large `|Im w|`.
pub(crate) fn cot(w: Complex) -> Complex {
    let i = Complex::i();
    if w.im >= 0.0 {
        let e = (2.0 * i * w).exp();
        i * (e + 1.0) / (e - 1.0)
    } else {
        let e = (-2.0 * i * w).exp();
        i * (1.0 + e) / (1.0 - e)
    }
}
