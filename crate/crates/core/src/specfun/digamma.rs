use super::power::principal_ln;
use super::{cot, nonpositive_integer, Complex};
use crate::error::{Error, Result};
use std::f64::consts::PI;

// B_{2k} / (2k) for k = 1..7
const ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

const SHIFT_TO: f64 = 10.0;

/// Digamma function `psi(z) = Gamma'(z) / Gamma(z)`.
pub fn digamma(z: Complex) -> Result<Complex> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole {
            function: "digamma",
            at: z,
        });
    }
    Ok(digamma_unchecked(z))
}

fn digamma_unchecked(mut z: Complex) -> Complex {
    if z.re < 0.5 {
        // psi(1 - z) - psi(z) = pi cot(pi z)
        return digamma_unchecked(1.0 - z) - PI * cot(PI * z);
    }
    let mut acc = Complex::new(0.0, 0.0);
    while z.re < SHIFT_TO {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut pow = inv2;
    let mut tail = Complex::new(0.0, 0.0);
    for &b in &ASYMPTOTIC {
        tail += b * pow;
        pow *= inv2;
    }
    acc + principal_ln(z) - 0.5 / z - tail
}
