//! Regime classification and the unified transmission entry point.

use crate::coulomb::{self, CoulombAmplitudes, CoulombParams};
use crate::error::{domain, Result};
use crate::highorder;
use crate::mild::{self, MildAmplitudes};
use std::fmt;

/// Distance from 1 or 2 within which `alpha` is snapped to the integer case.
pub const BOUNDARY_SNAP: f64 = 1e-12;

/// Width of the excluded band `[1 - MILD_GUARD_BAND, 1)` below the Coulomb point.
pub const MILD_GUARD_BAND: f64 = 1e-6;

/// The potential `u0 / |z|^alpha` in recoil units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub u0: f64,
    pub alpha: f64,
}

impl PotentialSpec {
    pub fn new(u0: f64, alpha: f64) -> Result<Self> {
        if !u0.is_finite() {
            return domain(format!("u0 must be finite, got {u0}"));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return domain(format!("alpha must be positive and finite, got {alpha}"));
        }
        Ok(Self { u0, alpha })
    }

    pub fn regime(&self) -> Result<Regime> {
        classify(self.alpha)
    }

    /// `true` for the free particle, which every regime short-circuits.
    pub fn is_free(&self) -> bool {
        self.u0 == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `0 < alpha < 1`
    MildlySingular,
    /// `alpha = 1`
    Coulomb,
    /// `1 < alpha < 2`
    Intermediate,
    /// `alpha = 2`
    InverseSquare,
    /// `alpha > 2`
    ExtraSingular,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::MildlySingular => "MildlySingular",
            Regime::Coulomb => "Coulomb",
            Regime::Intermediate => "Intermediate",
            Regime::InverseSquare => "InverseSquare",
            Regime::ExtraSingular => "ExtraSingular",
        };
        f.write_str(s)
    }
}

/// How a [`ScatteringResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// Evaluated numerically from the closed forms.
    Computed,
    /// Impenetrability is forced analytically; no numerics were run.
    ForcedZero,
    /// The matching method gives no definite answer.
    Undetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Computed => "Computed",
            Status::ForcedZero => "ForcedZero",
            Status::Undetermined => "Undetermined",
        };
        f.write_str(s)
    }
}

/// Transmission and reflection coefficients. `t` and `r` are `None` exactly
/// when the status is [`Status::Undetermined`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub t: Option<f64>,
    pub r: Option<f64>,
    pub status: Status,
}

impl ScatteringResult {
    /// `R` is set to `1 - T`.
    pub fn computed(t: f64) -> Self {
        Self {
            t: Some(t),
            r: Some(1.0 - t),
            status: Status::Computed,
        }
    }

    pub fn forced_zero() -> Self {
        Self {
            t: Some(0.0),
            r: Some(1.0),
            status: Status::ForcedZero,
        }
    }

    pub fn undetermined() -> Self {
        Self {
            t: None,
            r: None,
            status: Status::Undetermined,
        }
    }
}

/// Amplitudes behind a computed result, in the form each regime produces them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScatteringAmplitudes {
    Mild(MildAmplitudes),
    Coulomb(CoulombAmplitudes),
}

pub fn classify(alpha: f64) -> Result<Regime> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return domain(format!("alpha must be positive and finite, got {alpha}"));
    }
    Ok(if (alpha - 1.0).abs() <= BOUNDARY_SNAP {
        Regime::Coulomb
    } else if (alpha - 2.0).abs() <= BOUNDARY_SNAP {
        Regime::InverseSquare
    } else if alpha < 1.0 {
        Regime::MildlySingular
    } else if alpha < 2.0 {
        Regime::Intermediate
    } else {
        Regime::ExtraSingular
    })
}

fn check_energy(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return domain(format!(
            "epsilon must be positive and finite, got {epsilon}"
        ));
    }
    Ok(())
}

/// `T` and `R` for any `(u0, alpha)` at energy `epsilon`.
pub fn transmission_any(spec: PotentialSpec, epsilon: f64) -> Result<ScatteringResult> {
    check_energy(epsilon)?;
    let regime = spec.regime()?;
    if regime == Regime::MildlySingular && spec.alpha > 1.0 - MILD_GUARD_BAND {
        return domain(format!(
            "alpha = {} lies in the guard band below the Gamma(1 - alpha) pole",
            spec.alpha
        ));
    }
    if spec.is_free() {
        return Ok(ScatteringResult::computed(1.0));
    }
    match regime {
        Regime::MildlySingular => mild::transmission(epsilon, spec.u0, spec.alpha),
        Regime::Coulomb => coulomb::transmission(&CoulombParams::new(epsilon, spec.u0)?),
        Regime::Intermediate => Ok(highorder::intermediate_transmission(
            spec.u0, spec.alpha, epsilon,
        )),
        Regime::InverseSquare if spec.u0 < 0.0 => Ok(ScatteringResult::undetermined()),
        Regime::InverseSquare => highorder::inverse_square_transmission(spec.u0, epsilon),
        Regime::ExtraSingular => Ok(highorder::extra_singular_transmission(
            spec.u0, spec.alpha, epsilon,
        )),
    }
}

/// The amplitudes behind a `Computed` result. Regimes without computed
/// amplitudes, and the free particle, are a domain error.
pub fn scattering_amplitudes(spec: PotentialSpec, epsilon: f64) -> Result<ScatteringAmplitudes> {
    check_energy(epsilon)?;
    match spec.regime()? {
        Regime::MildlySingular if spec.alpha <= 1.0 - MILD_GUARD_BAND => Ok(
            ScatteringAmplitudes::Mild(mild::amplitudes(epsilon, spec.u0, spec.alpha)?),
        ),
        Regime::Coulomb if !spec.is_free() => {
            let params = CoulombParams::new(epsilon, spec.u0)?;
            Ok(ScatteringAmplitudes::Coulomb(coulomb::solve_amplitudes(
                &params,
            )?))
        }
        r => domain(format!(
            "no computed amplitudes for regime {r} with u0 = {}",
            spec.u0
        )),
    }
}
