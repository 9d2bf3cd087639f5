//! Cutoff-regularized reference solver.
//!
//! The potential is made bounded by capping it inside `|z| < delta` and set
//! to zero beyond `|z| = L`. The stationary equation `psi'' = (V - eps) psi` is
//! then integrated with the Numerov three-point scheme from a discrete plane
//! wave on the transmitted side, and the solution on the incident side is
//! split into incident and reflected discrete plane waves.
//!
//! The scheme conserves the discrete Casoratian exactly, so `T + R = 1` to
//! rounding regardless of step size.

use crate::error::{domain, Error, Result};
use crate::regimes::{ScatteringResult, Status};
use crate::specfun::Complex;

/// Upper bound on `step * sqrt(eps + max|V|)`.
pub const MAX_PHASE_PER_STEP: f64 = 0.05;

/// Lower bound on `L * sqrt(eps)`.
pub const MIN_HALF_WIDTH_WAVES: f64 = 20.0;

/// Cutoff ladder used when none is given.
pub const DEFAULT_DELTAS: [f64; 5] = [0.2, 0.1, 0.05, 0.025, 0.0125];

/// Minimum number of grid steps across the cap `|z| < delta`.
const STEPS_PER_DELTA: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapMode {
    /// `V = u0 / delta^alpha` for `|z| < delta`.
    Plateau,
    /// `V = 0` for `|z| < delta`.
    Truncate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffPotential {
    pub u0: f64,
    pub alpha: f64,
    pub delta: f64,
    pub cap_mode: CapMode,
}

impl CutoffPotential {
    pub fn new(u0: f64, alpha: f64, delta: f64, cap_mode: CapMode) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return domain(format!("cutoff delta must be positive, got {delta}"));
        }
        if !(alpha > 0.0) || !alpha.is_finite() || !u0.is_finite() {
            return domain(format!("bad potential u0 = {u0}, alpha = {alpha}"));
        }
        Ok(Self {
            u0,
            alpha,
            delta,
            cap_mode,
        })
    }

    pub fn value(&self, z: f64) -> f64 {
        let r = z.abs();
        if r >= self.delta {
            self.u0 / r.powf(self.alpha)
        } else {
            match self.cap_mode {
                CapMode::Plateau => self.u0 / self.delta.powf(self.alpha),
                CapMode::Truncate => 0.0,
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        (self.u0 / self.delta.powf(self.alpha)).abs()
    }
}

/// Uniform grid `z_j = -L + 2L j / n`, `j = 0..=n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub half_width: f64,
    pub n: usize,
}

impl GridConfig {
    pub fn step(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -self.half_width + 2.0 * self.half_width * j as f64 / self.n as f64
    }

    /// Samples `v` at every grid point.
    pub fn sample(&self, v: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..=self.n).map(|j| v(self.point(j))).collect()
    }

    /// Smallest even `n` meeting the resolution rule with `L = max(20/sqrt(eps), 10)`.
    pub fn for_problem(epsilon: f64, max_abs_v: f64) -> Self {
        let half_width = (MIN_HALF_WIDTH_WAVES / epsilon.sqrt()).max(10.0);
        Self::with_step(
            half_width,
            MAX_PHASE_PER_STEP / (epsilon + max_abs_v).sqrt(),
        )
    }

    /// Smallest even `n` whose step does not exceed `max_step`.
    pub fn with_step(half_width: f64, max_step: f64) -> Self {
        let mut n = (2.0 * half_width / max_step).ceil() as usize;
        n += n % 2;
        Self { half_width, n }
    }

    pub fn validate(&self, epsilon: f64, max_abs_v: f64) -> Result<()> {
        if self.n < 2 || !(self.half_width > 0.0) {
            return Err(Error::Resolution(format!("degenerate grid {self:?}")));
        }
        let phase = self.step() * (epsilon + max_abs_v).sqrt();
        if phase > MAX_PHASE_PER_STEP * (1.0 + 1e-12) {
            return Err(Error::Resolution(format!(
                "step {} gives phase {phase} per step > {MAX_PHASE_PER_STEP}",
                self.step()
            )));
        }
        if self.half_width * epsilon.sqrt() < MIN_HALF_WIDTH_WAVES * (1.0 - 1e-12) {
            return Err(Error::Resolution(format!(
                "half-width {} < {MIN_HALF_WIDTH_WAVES} / sqrt(eps)",
                self.half_width
            )));
        }
        Ok(())
    }
}

/// Incident and reflected amplitudes for unit transmitted amplitude.
fn numerov_core(v: &[f64], epsilon: f64, h: f64) -> (Complex, Complex) {
    let w = h * h / 12.0;
    let k2 = epsilon;
    // discrete wave number of the free Numerov recursion
    let cos_kh = (1.0 - 5.0 * w * k2) / (1.0 + w * k2);
    let kh = cos_kh.acos();
    // two zero-potential points are padded on each side
    let m = v.len() + 4;
    let f = |j: usize| -> f64 {
        if j < 2 || j >= m - 2 {
            -k2
        } else {
            v[j - 2] - k2
        }
    };
    let g = |j: usize| 1.0 - w * f(j);
    let wave = |j: usize, sign: f64| Complex::from_polar(1.0, sign * kh * j as f64);

    // phi_j = (1 - h^2 f_j / 12) psi_j obeys phi_{j-1} = c_j phi_j - phi_{j+1}
    let mut phi_hi = g(m - 1) * wave(m - 1, 1.0);
    let mut phi = g(m - 2) * wave(m - 2, 1.0);
    for j in (1..m - 1).rev() {
        let c = 2.0 * (1.0 + 5.0 * w * f(j)) / g(j);
        let next = c * phi - phi_hi;
        phi_hi = phi;
        phi = next;
    }
    // phi now holds index 0, phi_hi index 1; both in the free region
    let g0 = g(0);
    let (psi0, psi1) = (phi / g0, phi_hi / g0);
    let (e0, e1) = (wave(0, 1.0), wave(1, 1.0));
    // psi_j = A e_j + B / e_j
    let det = e1 / e0 - e0 / e1;
    let a = (psi1 / e0 - psi0 / e1) / det;
    let b = (psi0 * e1 - psi1 * e0) / det;
    (a, b)
}

/// Transmission for a wave incident from the left on the sampled potential
/// `v[j] = V(z_j)` (zero outside the grid).
pub fn numerov_scatter(v: &[f64], epsilon: f64, grid: &GridConfig) -> Result<ScatteringResult> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return domain(format!(
            "epsilon must be positive and finite, got {epsilon}"
        ));
    }
    if v.len() != grid.n + 1 {
        return domain(format!(
            "{} samples for a grid of {} points",
            v.len(),
            grid.n + 1
        ));
    }
    let vmax = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if !vmax.is_finite() {
        return domain("sampled potential is not bounded");
    }
    grid.validate(epsilon, vmax)?;
    let (a, b) = numerov_core(v, epsilon, grid.step());
    let a2 = a.norm_sqr();
    Ok(ScatteringResult {
        t: Some(1.0 / a2),
        r: Some(b.norm_sqr() / a2),
        status: Status::Computed,
    })
}

/// As [`numerov_scatter`], for a wave incident from the right.
pub fn numerov_scatter_from_right(
    v: &[f64],
    epsilon: f64,
    grid: &GridConfig,
) -> Result<ScatteringResult> {
    let reversed: Vec<f64> = v.iter().rev().copied().collect();
    numerov_scatter(&reversed, epsilon, grid)
}

/// Grid for a cutoff potential: the resolution rule plus at least
/// `STEPS_PER_DELTA` steps across the cap.
pub fn cutoff_grid(potential: &CutoffPotential, epsilon: f64) -> GridConfig {
    let base = GridConfig::for_problem(epsilon, potential.max_abs());
    GridConfig::with_step(
        base.half_width,
        base.step().min(potential.delta / STEPS_PER_DELTA),
    )
}

/// Transmission through the capped potential for each cutoff in `deltas`,
/// which must be strictly decreasing and positive.
pub fn cutoff_sweep(u0: f64, alpha: f64, epsilon: f64, deltas: &[f64]) -> Result<Vec<(f64, f64)>> {
    cutoff_sweep_with(u0, alpha, epsilon, deltas, CapMode::Plateau)
}

pub fn cutoff_sweep_with(
    u0: f64,
    alpha: f64,
    epsilon: f64,
    deltas: &[f64],
    cap_mode: CapMode,
) -> Result<Vec<(f64, f64)>> {
    check_ladder(deltas)?;
    deltas
        .iter()
        .map(|&delta| {
            let pot = CutoffPotential::new(u0, alpha, delta, cap_mode)?;
            let grid = cutoff_grid(&pot, epsilon);
            let v = grid.sample(|z| pot.value(z));
            let res = numerov_scatter(&v, epsilon, &grid)?;
            Ok((delta, res.t.unwrap_or(f64::NAN)))
        })
        .collect()
}

pub fn check_ladder(deltas: &[f64]) -> Result<()> {
    if deltas.is_empty() {
        return domain("empty cutoff list");
    }
    if deltas.iter().any(|d| !(*d > 0.0) || !d.is_finite()) {
        return domain("cutoffs must be positive and finite");
    }
    if deltas.windows(2).any(|w| w[1] >= w[0]) {
        return domain("cutoffs must be strictly decreasing");
    }
    Ok(())
}

/// Closed-form transmission of a rectangular barrier of height `v0` and width
/// `width` (`v0 < 0` is a well).
pub fn rectangular_transmission(v0: f64, width: f64, epsilon: f64) -> f64 {
    let d = v0 - epsilon;
    // sinh^2(sqrt(d) a) / d, continued through d = 0 and into d < 0
    let ratio = if d > 0.0 {
        (d.sqrt() * width).sinh().powi(2) / d
    } else if d < 0.0 {
        ((-d).sqrt() * width).sin().powi(2) / -d
    } else {
        width * width
    };
    1.0 / (1.0 + v0 * v0 * ratio / (4.0 * epsilon))
}

/// Rectangular potential on `|z| < width / 2`, with half height on the edges.
pub fn rectangular_potential(v0: f64, width: f64) -> impl Fn(f64) -> f64 {
    move |z: f64| {
        let edge = 0.5 * width;
        let r = z.abs();
        if (r - edge).abs() <= 1e-12 * edge.max(1.0) {
            0.5 * v0
        } else if r < edge {
            v0
        } else {
            0.0
        }
    }
}
