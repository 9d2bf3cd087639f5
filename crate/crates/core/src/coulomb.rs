//! One-dimensional Coulomb regime, `alpha = 1`.
//!
//! On each half-line the stationary equation is solved by Whittaker-type
//! functions. With `k = sqrt(eps)`, `eta = u0 / (2k)`, `a = 1 - i eta` and
//! `c = 2ik`, the right-side basis is
//!
//! ```text
//! psi_r1(z) = e^(-ikz) z M(a, 2, cz)    (real, regular at 0)
//! psi_r2(z) = e^(-ikz) z U(a, 2, cz)    (finite at 0, log-divergent slope)
//! ```
//!
//! and the left-side basis is its mirror image, `psi_l(z) = psi_r(-z)`. The
//! coefficients follow from continuity of `psi` and of the probability current
//! at the origin together with the absence of a wave incident from the right.

use crate::error::{domain, Error, Result};
use crate::regimes::ScatteringResult;
use crate::specfun::{complex_gamma, kummer_1f1, ln_gamma, principal_ln, tricomi_u, Complex};
use std::f64::consts::PI;

/// Default `|z|` at which current components are evaluated.
pub const CURRENT_EVAL_POINT: f64 = 5.0;

/// `|Re j_l12|` below this fraction of `|j_l12|` is treated as zero.
pub const DEGENERATE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombParams {
    pub epsilon: f64,
    pub u0: f64,
    /// Wave number `sqrt(eps)`.
    pub k: f64,
    /// Sommerfeld parameter `u0 / (2 sqrt(eps))`.
    pub eta: f64,
    /// First Kummer parameter `1 - i eta`.
    pub a: Complex,
    /// Argument scale `2i sqrt(eps)`.
    pub c: Complex,
}

impl CoulombParams {
    pub fn new(epsilon: f64, u0: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return domain(format!(
                "epsilon must be positive and finite, got {epsilon}"
            ));
        }
        if u0 == 0.0 || !u0.is_finite() {
            return domain(format!(
                "Coulomb strength u0 must be finite and nonzero, got {u0}"
            ));
        }
        let k = epsilon.sqrt();
        let eta = u0 / (2.0 * k);
        Ok(Self {
            epsilon,
            u0,
            k,
            eta,
            a: Complex::new(1.0, -eta),
            c: Complex::new(0.0, 2.0 * k),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    R1,
    R2,
    L1,
    L2,
}

impl Basis {
    fn is_right(self) -> bool {
        matches!(self, Basis::R1 | Basis::R2)
    }

    fn regular(self) -> bool {
        matches!(self, Basis::R1 | Basis::L1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLine {
    Left,
    Right,
}

/// Right-side basis function and its derivative at `x > 0`.
fn right_pair(x: f64, regular: bool, p: &CoulombParams) -> Result<(Complex, Complex)> {
    let w = p.c * x;
    let (f, df) = if regular {
        let two = Complex::new(2.0, 0.0);
        let m = kummer_1f1(p.a, two, w)?;
        let dm = p.a / 2.0 * kummer_1f1(p.a + 1.0, Complex::new(3.0, 0.0), w)?;
        (m, dm)
    } else {
        let u = tricomi_u(p.a, 2, w)?;
        let du = -p.a * tricomi_u(p.a + 1.0, 3, w)?;
        (u, du)
    };
    let phase = Complex::new(0.0, -p.k * x).exp();
    let ik = Complex::new(0.0, p.k);
    let value = phase * x * f;
    let slope = phase * ((1.0 - ik * x) * f + x * p.c * df);
    Ok((value, slope))
}

fn pair(z: f64, which: Basis, p: &CoulombParams) -> Result<(Complex, Complex)> {
    let ok = if which.is_right() { z > 0.0 } else { z < 0.0 };
    if !ok || !z.is_finite() {
        return domain(format!("z = {z} is on the wrong side for basis {which:?}"));
    }
    if which.is_right() {
        right_pair(z, which.regular(), p)
    } else {
        let (v, d) = right_pair(-z, which.regular(), p)?;
        Ok((v, -d))
    }
}

/// Basis solution `psi_which(z)`.
pub fn basis(z: f64, which: Basis, p: &CoulombParams) -> Result<Complex> {
    Ok(pair(z, which, p)?.0)
}

/// `d psi_which / dz`.
pub fn basis_derivative(z: f64, which: Basis, p: &CoulombParams) -> Result<Complex> {
    Ok(pair(z, which, p)?.1)
}

/// `j_mn = i (psi_m conj(psi_n)' - psi_m' conj(psi_n))` on one half-line, at `z_eval`
/// (a magnitude; the sign is taken from `side`). `kappa = 1`.
pub fn current_component(
    m: u8,
    n: u8,
    side: HalfLine,
    p: &CoulombParams,
    z_eval: f64,
) -> Result<Complex> {
    let pick = |idx: u8| -> Result<Basis> {
        Ok(match (side, idx) {
            (HalfLine::Right, 1) => Basis::R1,
            (HalfLine::Right, 2) => Basis::R2,
            (HalfLine::Left, 1) => Basis::L1,
            (HalfLine::Left, 2) => Basis::L2,
            _ => return domain(format!("current index {idx} not in {{1, 2}}")),
        })
    };
    let z = match side {
        HalfLine::Right => z_eval.abs(),
        HalfLine::Left => -z_eval.abs(),
    };
    let (pm, dm) = pair(z, pick(m)?, p)?;
    let (pn, dn) = pair(z, pick(n)?, p)?;
    Ok(Complex::i() * (pm * dn.conj() - dm * pn.conj()))
}

/// The two independent current components; the rest follow from
/// `j_21 = conj(j_12)`, `j_r12 = -j_l12`, `j_l22 = -j_r22` and `j_11 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentComponents {
    pub j_l12: Complex,
    pub j_r22: Complex,
    pub kappa: f64,
}

impl CurrentComponents {
    pub fn j_r12(&self) -> Complex {
        -self.j_l12
    }

    pub fn j_l21(&self) -> Complex {
        self.j_l12.conj()
    }

    pub fn j_l22(&self) -> Complex {
        -self.j_r22
    }
}

/// Both components evaluated from the basis functions at `|z| = z_eval`.
pub fn currents(p: &CoulombParams, z_eval: f64) -> Result<CurrentComponents> {
    Ok(CurrentComponents {
        j_l12: current_component(1, 2, HalfLine::Left, p, z_eval)?,
        j_r22: current_component(2, 2, HalfLine::Right, p, z_eval)?,
        kappa: 1.0,
    })
}

/// `j_r22 = -e^(-pi eta) / (2k)`, the current of `psi_r2` read off at infinity,
/// where it is the pure incoming wave `(2ik)^(-a) x^(i eta) e^(-ikx)`.
///
/// Near the origin a barrier makes `|psi_r2|^2` larger than this current by
/// about `e^(pi eta)`, so the pointwise bilinear loses that many digits there.
pub fn incoming_current(p: &CoulombParams) -> Complex {
    Complex::new(-(-PI * p.eta).exp() / (2.0 * p.k), 0.0)
}

/// Components used for the amplitudes: `j_l12` from the basis at `z_eval`,
/// `j_r22` from [`incoming_current`].
pub fn matching_currents(p: &CoulombParams, z_eval: f64) -> Result<CurrentComponents> {
    Ok(CurrentComponents {
        j_l12: current_component(1, 2, HalfLine::Left, p, z_eval)?,
        j_r22: incoming_current(p),
        kappa: 1.0,
    })
}

/// Coefficients of `psi = a_1 psi_1 + a_2 psi_2` on each side, normalized to `a_r2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombAmplitudes {
    pub a_l1: Complex,
    pub a_l2: Complex,
    pub a_r1: Complex,
    pub a_r2: Complex,
}

/// `a_r1 = -Gamma(2 - a) e^(-i pi a) = e^(-pi eta) Gamma(1 + i eta)` removes the
/// incoming part of `psi_r1` against that of `psi_r2`.
pub fn outgoing_coefficient(p: &CoulombParams) -> Result<Complex> {
    let g = complex_gamma(Complex::new(1.0, p.eta))?;
    Ok((-PI * p.eta).exp() * g)
}

pub fn solve_amplitudes(p: &CoulombParams) -> Result<CoulombAmplitudes> {
    solve_amplitudes_at(p, CURRENT_EVAL_POINT)
}

/// As [`solve_amplitudes`], with the currents evaluated at `|z| = z_eval`.
pub fn solve_amplitudes_at(p: &CoulombParams, z_eval: f64) -> Result<CoulombAmplitudes> {
    let j = matching_currents(p, z_eval)?;
    if j.j_l12.re.abs() < DEGENERATE_TOL * j.j_l12.norm() {
        return Err(Error::Degenerate {
            epsilon: p.epsilon,
            u0: p.u0,
        });
    }
    let a_r1 = outgoing_coefficient(p)?;
    let one = Complex::new(1.0, 0.0);
    // current continuity: Re[(a_l1 + a_r1) j_l12] = j_r22 with a_l1 + a_r1 real
    let a_l1 = -a_r1 + j.j_r22 / j.j_l12.re;
    Ok(CoulombAmplitudes {
        a_l1,
        a_l2: one,
        a_r1,
        a_r2: one,
    })
}

/// Coefficients of the plane-wave parts far from the origin, with the
/// logarithmic Coulomb phases `|z|^(+-i eta)` stripped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticWaves {
    pub incident: Complex,
    pub transmitted: Complex,
    pub reflected: Complex,
}

impl AsymptoticWaves {
    /// `| |inc|^2 - |trans|^2 - |refl|^2 | / |inc|^2`.
    pub fn flux_residual(&self) -> f64 {
        let inc = self.incident.norm_sqr();
        (inc - self.transmitted.norm_sqr() - self.reflected.norm_sqr()).abs() / inc
    }
}

/// Leading large-`x` coefficients of the right-side basis, as logarithms:
/// `psi_r1 ~ out1 e^(ikx) + in1 e^(-ikx)`, `psi_r2 ~ in2 e^(-ikx)`.
fn log_wave_coefficients(p: &CoulombParams) -> Result<(Complex, Complex, Complex)> {
    let a = p.a;
    let l = principal_ln(p.c);
    let i = Complex::i();
    let ln_out1 = (a - 2.0) * l - ln_gamma(a)?;
    let ln_in1 = i * PI * a - a * l - ln_gamma(2.0 - a)?;
    let ln_in2 = -a * l;
    Ok((ln_out1, ln_in1, ln_in2))
}

pub fn asymptotic_waves(amp: &CoulombAmplitudes, p: &CoulombParams) -> Result<AsymptoticWaves> {
    let (ln_out1, ln_in1, ln_in2) = log_wave_coefficients(p)?;
    let (out1, in1, in2) = (ln_out1.exp(), ln_in1.exp(), ln_in2.exp());
    Ok(AsymptoticWaves {
        incident: amp.a_l1 * in1 + amp.a_l2 * in2,
        transmitted: amp.a_r1 * out1,
        reflected: amp.a_l1 * out1,
    })
}

pub fn transmission(p: &CoulombParams) -> Result<ScatteringResult> {
    let amp = solve_amplitudes(p)?;
    let w = asymptotic_waves(&amp, p)?;
    let t = w.transmitted.norm_sqr() / w.incident.norm_sqr();
    if !t.is_finite() {
        return domain(format!(
            "Coulomb transmission not finite at eps = {}",
            p.epsilon
        ));
    }
    Ok(ScatteringResult::computed(t.clamp(0.0, 1.0)))
}
