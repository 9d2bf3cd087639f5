//! Regimes with `alpha > 1`: intermediate (`1 < alpha < 2`), inverse square
//! (`alpha = 2`) and extra singular (`alpha > 2`).
//!
//! Barriers in all three are impenetrable and the result is returned as
//! [`Status::ForcedZero`] without numerics. Wells with `alpha >= 2` are
//! [`Status::Undetermined`]. The functions below also expose the algebra and
//! the Bessel-function facts behind those conclusions as executable checks.

use crate::error::{domain, Result};
use crate::regimes::ScatteringResult;
use crate::specfun::{bessel_jy, Complex};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Seed used by [`intermediate_compatibility_check`].
pub const DEFAULT_SEED: u64 = 0x5eed_2023;

/// `1 < alpha < 2`: impenetrable for either sign of `u0`, at any energy.
pub fn intermediate_transmission(u0: f64, _alpha: f64, _epsilon: f64) -> ScatteringResult {
    if u0 == 0.0 {
        return ScatteringResult::computed(1.0);
    }
    ScatteringResult::forced_zero()
}

/// `alpha > 2`: barriers are impenetrable, wells are out of reach of the method.
pub fn extra_singular_transmission(u0: f64, _alpha: f64, _epsilon: f64) -> ScatteringResult {
    if u0 > 0.0 {
        ScatteringResult::forced_zero()
    } else if u0 < 0.0 {
        ScatteringResult::undetermined()
    } else {
        ScatteringResult::computed(1.0)
    }
}

/// Near-origin asymptote `h(z) ~ u0 |z|^(2 - alpha) / ((1 - alpha)(2 - alpha))`.
pub fn near_origin_h(z: f64, u0: f64, alpha: f64) -> Result<f64> {
    if !(z != 0.0 && z.abs() <= 0.1) {
        return domain(format!("near-origin form needs 0 < |z| <= 0.1, got {z}"));
    }
    if !(alpha > 1.0 && alpha < 2.0) {
        return domain(format!("alpha = {alpha} outside (1, 2)"));
    }
    Ok(u0 * z.abs().powf(2.0 - alpha) / ((1.0 - alpha) * (2.0 - alpha)))
}

/// Amplitudes of the `plus` / `minus` solutions on each side of the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermediateAmplitudes {
    pub a_l_plus: Complex,
    pub a_l_minus: Complex,
    pub a_r_plus: Complex,
    pub a_r_minus: Complex,
}

impl IntermediateAmplitudes {
    /// Outgoing-only right side, with `a_r_plus` fixed by continuity.
    pub fn from_left(a_l_plus: Complex, a_l_minus: Complex) -> Self {
        Self {
            a_l_plus,
            a_l_minus,
            a_r_plus: a_l_plus + a_l_minus,
            a_r_minus: Complex::new(0.0, 0.0),
        }
    }

    /// `|a_l_plus + a_l_minus - a_r_plus - a_r_minus|`.
    pub fn continuity_residual(&self) -> f64 {
        (self.a_l_plus + self.a_l_minus - self.a_r_plus - self.a_r_minus).norm()
    }

    /// `| |a_l_plus|^2 - |a_l_minus|^2 - |a_r_plus|^2 |`.
    pub fn current_residual(&self) -> f64 {
        (self.a_l_plus.norm_sqr() - self.a_l_minus.norm_sqr() - self.a_r_plus.norm_sqr()).abs()
    }
}

/// Outcome of [`intermediate_compatibility_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompatibilityReport {
    pub trials: usize,
    /// Largest `|a_r_plus|` among the constrained solutions.
    pub max_a_r_plus: f64,
    /// Largest remaining violation of either constraint.
    pub max_constraint_residual: f64,
    /// Trials whose solution has `a_l_plus = -a_l_minus` to within `1e-8`.
    pub forced_solutions: usize,
}

impl CompatibilityReport {
    pub fn confirms_impenetrability(&self) -> bool {
        self.max_a_r_plus <= 1e-8
    }
}

pub fn intermediate_compatibility_check(samples: usize) -> CompatibilityReport {
    intermediate_compatibility_check_seeded(samples, DEFAULT_SEED)
}

/// Draws random `(a_l_plus, a_l_minus)`, projects each pair onto the current
/// constraint by Newton steps with the continuity relation substituted, and
/// records the resulting transmitted amplitude.
pub fn intermediate_compatibility_check_seeded(samples: usize, seed: u64) -> CompatibilityReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = CompatibilityReport {
        trials: samples,
        max_a_r_plus: 0.0,
        max_constraint_residual: 0.0,
        forced_solutions: 0,
    };
    for _ in 0..samples {
        let mut x = [0.0f64; 4];
        for v in x.iter_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        project_onto_current_constraint(&mut x);
        let amp =
            IntermediateAmplitudes::from_left(Complex::new(x[0], x[1]), Complex::new(x[2], x[3]));
        let resid = amp.continuity_residual().max(amp.current_residual());
        report.max_constraint_residual = report.max_constraint_residual.max(resid);
        report.max_a_r_plus = report.max_a_r_plus.max(amp.a_r_plus.norm());
        if (amp.a_l_plus + amp.a_l_minus).norm() <= 1e-8 {
            report.forced_solutions += 1;
        }
    }
    report
}

/// With `p = a_l_plus`, `m = a_l_minus` and `a_r_plus = p + m`, the current
/// relation becomes `g = -2 Re(p conj m) - 2 |m|^2 = 0`.
fn project_onto_current_constraint(x: &mut [f64; 4]) {
    for _ in 0..100 {
        let (pr, pi, mr, mi) = (x[0], x[1], x[2], x[3]);
        let g = -2.0 * (pr * mr + pi * mi) - 2.0 * (mr * mr + mi * mi);
        if g.abs() <= 1e-14 {
            return;
        }
        let grad = [
            -2.0 * mr,
            -2.0 * mi,
            -2.0 * pr - 4.0 * mr,
            -2.0 * pi - 4.0 * mi,
        ];
        let n2: f64 = grad.iter().map(|v| v * v).sum();
        if n2 == 0.0 {
            return;
        }
        for (v, d) in x.iter_mut().zip(grad) {
            *v -= g * d / n2;
        }
    }
}

/// Bessel basis `sqrt(z) J_nu(sqrt(eps) z)`, `sqrt(z) Y_nu(sqrt(eps) z)` of the
/// inverse-square problem, `nu = sqrt(1/4 + u0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseSquareBasis {
    pub nu: f64,
}

impl InverseSquareBasis {
    pub fn new(u0: f64) -> Result<Self> {
        if !(u0 > -0.25) || !u0.is_finite() {
            return domain(format!(
                "inverse-square strength u0 = {u0} <= -1/4 gives imaginary order"
            ));
        }
        Ok(Self {
            nu: (0.25 + u0).sqrt(),
        })
    }

    /// `(psi_1, psi_2)` at `z > 0`.
    pub fn evaluate(&self, epsilon: f64, z: f64) -> Result<(f64, f64)> {
        if !(z > 0.0) {
            return domain(format!("inverse-square basis evaluated at z = {z} <= 0"));
        }
        let b = bessel_jy(self.nu, epsilon.sqrt() * z)?;
        Ok((z.sqrt() * b.j, z.sqrt() * b.y))
    }
}

/// `alpha = 2`: barriers are impenetrable, wells undetermined.
pub fn inverse_square_transmission(u0: f64, epsilon: f64) -> Result<ScatteringResult> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return domain(format!(
            "epsilon must be positive and finite, got {epsilon}"
        ));
    }
    InverseSquareBasis::new(u0)?;
    Ok(if u0 > 0.0 {
        ScatteringResult::forced_zero()
    } else if u0 < 0.0 {
        ScatteringResult::undetermined()
    } else {
        ScatteringResult::computed(1.0)
    })
}

/// Fraction of the incoming Hankel wave `H^(2) = J - iY` in
/// `f = a1 J_nu(x) + a2 Y_nu(x)`, from Wronskian projections at `x`:
/// `|W(f, H^(1))| / sqrt(|W(f, H^(1))|^2 + |W(f, H^(2))|^2)`. Zero for a pure
/// outgoing wave, one for a pure incoming wave.
pub fn incoming_projection(a1: Complex, a2: Complex, nu: f64, x: f64) -> Result<f64> {
    let b = bessel_jy(nu, x)?;
    let i = Complex::i();
    let f = a1 * b.j + a2 * b.y;
    let df = a1 * b.jp + a2 * b.yp;
    let h1 = b.j + i * b.y;
    let dh1 = b.jp + i * b.yp;
    let h2 = b.j - i * b.y;
    let dh2 = b.jp - i * b.yp;
    let w_out = f * dh1 - df * h1;
    let w_in = f * dh2 - df * h2;
    Ok(w_out.norm() / w_out.norm().hypot(w_in.norm()))
}

/// Checks that `a_r1 = -i a_r2` makes the right-side inverse-square solution a
/// pure outgoing wave: returns the incoming projection at `z_far`.
pub fn outgoing_combination_check(u0: f64, epsilon: f64, z_far: f64) -> Result<f64> {
    if !(u0 > 0.0) {
        return domain(format!("outgoing check needs a barrier, got u0 = {u0}"));
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return domain(format!(
            "epsilon must be positive and finite, got {epsilon}"
        ));
    }
    if !(z_far >= 50.0 / epsilon.sqrt()) {
        return domain(format!("z_far = {z_far} is below 50 / sqrt(eps)"));
    }
    let basis = InverseSquareBasis::new(u0)?;
    let a_r2 = Complex::new(1.0, 0.0);
    let a_r1 = -Complex::i() * a_r2;
    incoming_projection(a_r1, a_r2, basis.nu, epsilon.sqrt() * z_far)
}
