//! Mildly singular regime, `0 < alpha < 1`.
//!
//! The wavefunction is written `psi = exp(h(z) +- i sqrt(eps) z)`. Near the
//! origin the potential dominates `(h')^2`, leaving the linear equation
//! `h'' +- 2i sqrt(eps) h' = u0 |z|^(-alpha)`, whose decaying solutions are
//! incomplete gamma functions. Matching at the origin gives the amplitudes
//!
//! ```text
//! t = X + 1/2,  r = X - 1/2,  X = A / (2 conj(A)),
//! A = 2 eps - (2i)^alpha eps^(alpha/2) Gamma(1 - alpha) u0,
//! ```
//!
//! so `|t|^2 + |r|^2 = 1` holds by construction.

use crate::error::{domain, Error, Result};
use crate::regimes::{ScatteringResult, MILD_GUARD_BAND};
use crate::specfun::{gamma_real, principal_power, upper_incomplete_gamma, Complex};

/// Sign in `psi = exp(h(z) +- i sqrt(eps) z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveBranch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MildAmplitudes {
    pub t: Complex,
    pub r: Complex,
}

impl MildAmplitudes {
    pub fn transmission(&self) -> f64 {
        self.t.norm_sqr()
    }

    pub fn reflection(&self) -> f64 {
        self.r.norm_sqr()
    }
}

fn check(epsilon: f64, u0: f64, alpha: f64) -> Result<()> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return domain(format!(
            "epsilon must be positive and finite, got {epsilon}"
        ));
    }
    if !u0.is_finite() {
        return domain(format!("u0 must be finite, got {u0}"));
    }
    if !(alpha > 0.0 && alpha < 1.0 - MILD_GUARD_BAND) {
        return domain(format!(
            "alpha = {alpha} outside (0, 1 - {MILD_GUARD_BAND})"
        ));
    }
    Ok(())
}

/// `A = 2 eps - (2i)^alpha eps^(alpha/2) Gamma(1 - alpha) u0`.
fn numerator(epsilon: f64, u0: f64, alpha: f64, two_i_pow: Complex) -> Result<Complex> {
    let g = gamma_real(1.0 - alpha)?;
    Ok(2.0 * epsilon - two_i_pow * epsilon.powf(0.5 * alpha) * g * u0)
}

/// The shared fraction `X`, of modulus 1/2.
pub fn core_ratio(epsilon: f64, u0: f64, alpha: f64) -> Result<Complex> {
    check(epsilon, u0, alpha)?;
    let i2 = Complex::new(0.0, 2.0);
    let a = numerator(epsilon, u0, alpha, principal_power(i2, alpha)?)?;
    let d = numerator(epsilon, u0, alpha, principal_power(-i2, alpha)?)?;
    Ok(a / (2.0 * d))
}

pub fn amplitudes(epsilon: f64, u0: f64, alpha: f64) -> Result<MildAmplitudes> {
    let x = core_ratio(epsilon, u0, alpha)?;
    Ok(MildAmplitudes {
        t: x + 0.5,
        r: x - 0.5,
    })
}

pub fn transmission(epsilon: f64, u0: f64, alpha: f64) -> Result<ScatteringResult> {
    let amp = amplitudes(epsilon, u0, alpha)?;
    Ok(ScatteringResult::computed(
        amp.transmission().clamp(0.0, 1.0),
    ))
}

/// `Re A(eps)`; its root is the total-reflection energy.
fn re_numerator(epsilon: f64, u0: f64, alpha: f64) -> Result<f64> {
    Ok(numerator(
        epsilon,
        u0,
        alpha,
        principal_power(Complex::new(0.0, 2.0), alpha)?,
    )?
    .re)
}

/// Energy `eps*` at which `Re A = 0`, where `t = 0` and `R = 1`.
///
/// Only barriers (`u0 > 0`) have such a point.
pub fn total_reflection_energy(u0: f64, alpha: f64) -> Result<f64> {
    check(1.0, u0, alpha)?;
    if !(u0 > 0.0) {
        return Err(Error::NoRoot(format!(
            "Re A has no positive root for u0 = {u0} <= 0"
        )));
    }
    let f = |e: f64| re_numerator(e, u0, alpha);

    let mut lo = 1e-6;
    while f(lo)? >= 0.0 {
        lo *= 1e-3;
        if lo < 1e-300 {
            return Err(Error::NoRoot(format!(
                "no sign change below eps = 1e-6 for u0 = {u0}"
            )));
        }
    }
    let mut hi = 1.0_f64.max(2.0 * lo);
    while f(hi)? <= 0.0 {
        hi *= 10.0;
        if hi > 1e300 {
            return Err(Error::NoRoot(format!(
                "no sign change above eps = 1 for u0 = {u0}"
            )));
        }
    }
    for _ in 0..50 {
        let mid = (lo * hi).sqrt();
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

/// `s` in `h'' - s h' = u0 |z|^(-alpha)`.
fn rate(branch: WaveBranch, epsilon: f64) -> Complex {
    let k = 2.0 * epsilon.sqrt();
    match branch {
        WaveBranch::Plus => Complex::new(0.0, -k),
        WaveBranch::Minus => Complex::new(0.0, k),
    }
}

fn check_side(z: f64, side: Side) -> Result<()> {
    let ok = match side {
        Side::Right => z > 0.0,
        Side::Left => z < 0.0,
    };
    if !ok || !z.is_finite() {
        return domain(format!("z = {z} is not on the {side:?} side"));
    }
    Ok(())
}

/// `h'(z)`, the solution that decays as `|z| -> infinity`.
///
/// Right: `h' = -u0 e^(sz) s^(alpha-1) Gamma(1 - alpha, sz)`.
/// Left: `h' = u0 e^(sz) (-s)^(alpha-1) Gamma(1 - alpha, sz)`.
pub fn h_prime(
    z: f64,
    side: Side,
    branch: WaveBranch,
    epsilon: f64,
    u0: f64,
    alpha: f64,
) -> Result<Complex> {
    check(epsilon, u0, alpha)?;
    check_side(z, side)?;
    if u0 == 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let s = rate(branch, epsilon);
    let sz = s * z;
    let g = upper_incomplete_gamma(1.0 - alpha, sz)?;
    Ok(match side {
        Side::Right => -u0 * sz.exp() * principal_power(s, alpha - 1.0)? * g,
        Side::Left => u0 * sz.exp() * principal_power(-s, alpha - 1.0)? * g,
    })
}

/// `h(z)`, normalized so that `h(0) = 0` on both sides.
pub fn h_value(
    z: f64,
    side: Side,
    branch: WaveBranch,
    epsilon: f64,
    u0: f64,
    alpha: f64,
) -> Result<Complex> {
    check(epsilon, u0, alpha)?;
    check_side(z, side)?;
    if u0 == 0.0 {
        return Ok(Complex::new(0.0, 0.0));
    }
    let s = rate(branch, epsilon);
    let sz = s * z;
    let g1 = gamma_real(1.0 - alpha)?;
    let tail = sz.exp() * upper_incomplete_gamma(2.0 - alpha, sz)? / (1.0 - alpha);
    Ok(match side {
        Side::Right => u0 * principal_power(s, alpha - 2.0)? * (g1 - tail),
        Side::Left => u0 * principal_power(-s, alpha - 1.0)? / s * (tail - g1),
    })
}

/// `lim h'(z)` as `z -> 0` on the given side.
pub fn h_prime_at_origin(
    side: Side,
    branch: WaveBranch,
    epsilon: f64,
    u0: f64,
    alpha: f64,
) -> Result<Complex> {
    check(epsilon, u0, alpha)?;
    let s = rate(branch, epsilon);
    let g1 = gamma_real(1.0 - alpha)?;
    Ok(match side {
        Side::Right => -u0 * principal_power(s, alpha - 1.0)? * g1,
        Side::Left => u0 * principal_power(-s, alpha - 1.0)? * g1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const ALPHA: f64 = 0.25;

    fn t_of(e: f64, u0: f64, alpha: f64) -> f64 {
        amplitudes(e, u0, alpha).unwrap().transmission()
    }

    #[test]
    fn ratio_has_modulus_one_half() {
        for &(e, u0, a) in &[
            (1.0, 1.0, 0.25),
            (1e-8, -3.0, 0.9),
            (1e5, 5.0, 0.05),
            (0.3, 0.01, 0.5),
        ] {
            let x = core_ratio(e, u0, a).unwrap();
            assert!((x.norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_limits() {
        let hi = core_ratio(1e8, 1.0, ALPHA).unwrap();
        assert!((hi - 0.5).norm() < 1e-5);
        let lo = core_ratio(1e-12, 1.0, ALPHA).unwrap();
        let want = Complex::from_polar(0.5, PI * ALPHA);
        assert!((lo - want).norm() < 1e-6);
    }

    #[test]
    fn zero_energy_transmission() {
        let want = (PI * ALPHA / 2.0).cos().powi(2);
        assert!((want - 0.853_553_390_593_273_8).abs() < 1e-15);
        for u0 in [1.0, -1.0] {
            assert!((t_of(1e-10, u0, ALPHA) - want).abs() < 1e-4);
        }
    }

    #[test]
    fn high_energy_transparency() {
        assert!(t_of(1e4, 1.0, ALPHA) >= 0.99);
        assert!(t_of(1e6, 1.0, ALPHA) > t_of(1e4, 1.0, ALPHA));
        assert!(t_of(1e4, 1.0, ALPHA) > t_of(1e2, 1.0, ALPHA));
    }

    #[test]
    fn total_reflection_root() {
        let e = total_reflection_energy(1.0, ALPHA).unwrap();
        assert!((e - 0.636_170_180_230_679_2).abs() < 1e-12, "{e}");
        let amp = amplitudes(e, 1.0, ALPHA).unwrap();
        assert!(amp.reflection() >= 1.0 - 1e-12);
        let e2 = total_reflection_energy(2.0, ALPHA).unwrap();
        let scale = 2f64.powf(1.0 / (1.0 - ALPHA / 2.0));
        assert!((e2 / (scale * e) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wells_have_no_total_reflection() {
        assert!(matches!(
            total_reflection_energy(-1.0, ALPHA),
            Err(Error::NoRoot(_))
        ));
    }

    #[test]
    fn branches_are_conjugate() {
        for side in [Side::Left, Side::Right] {
            let z = if side == Side::Right { 0.7 } else { -2.3 };
            let p = h_prime(z, side, WaveBranch::Plus, 1.3, 0.8, 0.4).unwrap();
            let m = h_prime(z, side, WaveBranch::Minus, 1.3, 0.8, 0.4).unwrap();
            assert!((p - m.conj()).norm() < 1e-13 * p.norm());
        }
    }

    #[test]
    fn h_prime_is_finite_difference_of_h() {
        let step = 1e-4;
        for side in [Side::Left, Side::Right] {
            for branch in [WaveBranch::Plus, WaveBranch::Minus] {
                let z = if side == Side::Right { 1.0 } else { -1.0 };
                let f = |x: f64| h_value(x, side, branch, 1.0, 1.0, ALPHA).unwrap();
                let fd = (f(z + step) - f(z - step)) / (2.0 * step);
                let hp = h_prime(z, side, branch, 1.0, 1.0, ALPHA).unwrap();
                assert!((fd - hp).norm() <= 1e-6 * hp.norm(), "{side:?} {branch:?}");
            }
        }
    }

    #[test]
    fn far_field_decay() {
        for z in [1e2, 1e3] {
            let hp = h_prime(z, Side::Right, WaveBranch::Plus, 1.0, 1.0, ALPHA).unwrap();
            assert!(hp.norm() <= 2.0 * z.powf(-ALPHA));
        }
    }

    #[test]
    fn free_particle() {
        let hp = h_prime(0.5, Side::Right, WaveBranch::Plus, 1.0, 0.0, ALPHA).unwrap();
        assert_eq!(hp, Complex::new(0.0, 0.0));
        let r = transmission(1.0, 0.0, ALPHA).unwrap();
        assert_eq!(r.t, Some(1.0));
    }

    #[test]
    fn wrong_side_rejected() {
        assert!(h_prime(-1.0, Side::Right, WaveBranch::Plus, 1.0, 1.0, ALPHA).is_err());
        assert!(h_value(1.0, Side::Left, WaveBranch::Plus, 1.0, 1.0, ALPHA).is_err());
        assert!(core_ratio(1.0, 1.0, 1.0 - 1e-7).is_err());
    }
}
