use super::Complex;
use crate::error::{domain, Result};
use std::f64::consts::PI;

/// Marker for the branch convention used throughout the crate: every complex
/// power `w^alpha` is `exp(alpha * (ln|w| + i Arg w))` with `Arg w` in `(-pi, pi]`.
///
/// With this choice `(2i)^alpha` and `(-2i)^alpha` are complex conjugates for real
/// `alpha`, which is what makes the mild-regime amplitude ratio unimodular.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BranchConvention;

/// Principal argument in `(-pi, pi]`. A signed-zero imaginary part on the
/// negative real axis still maps to `+pi`.
pub fn principal_arg(w: Complex) -> f64 {
    if w.im == 0.0 && w.re < 0.0 {
        PI
    } else {
        w.im.atan2(w.re)
    }
}

pub fn principal_ln(w: Complex) -> Complex {
    Complex::new(w.norm().ln(), principal_arg(w))
}

/// `w^alpha` on the principal branch.
pub fn principal_power(w: Complex, alpha: f64) -> Result<Complex> {
    if w == Complex::new(0.0, 0.0) {
        if alpha > 0.0 {
            return Ok(Complex::new(0.0, 0.0));
        }
        return domain(format!("0^{alpha} is undefined"));
    }
    Ok((alpha * principal_ln(w)).exp())
}

/// `w^p` for complex exponent `p`, principal branch. `w` must be nonzero.
pub(crate) fn cpow(w: Complex, p: Complex) -> Complex {
    (p * principal_ln(w)).exp()
}
