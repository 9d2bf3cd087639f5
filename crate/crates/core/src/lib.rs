//! Quantum tunneling through the singular potential `V(z) = u0 / |z|^alpha`.
//!
//! Transmission and reflection coefficients are computed without regularizing
//! the singularity: the wavefunction is matched across the origin through the
//! continuity of the probability current. The crate covers every singularity
//! regime (`0 < alpha < 1`, the 1D Coulomb case, `1 < alpha < 2`, the inverse
//! square and `alpha > 2`), the special functions the closed forms need, and an
//! independent cutoff-regularized Numerov solver used as a contrast oracle.
//!
//! Energies and potential strengths are in units of the recoil energy
//! `hbar^2 / (2 m l^2)` and coordinates in units of the arbitrary length `l`,
//! so the stationary equation reads `psi'' + (epsilon - u0 / |z|^alpha) psi = 0`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod coulomb;
pub mod error;
pub mod highorder;
pub mod mild;
pub mod oracle;
pub mod regimes;
pub mod selftest;
pub mod specfun;

pub use error::{Error, Result};
pub use regimes::{classify, transmission_any, PotentialSpec, Regime, ScatteringResult, Status};
pub use specfun::Complex;
