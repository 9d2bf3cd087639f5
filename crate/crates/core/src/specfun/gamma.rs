use super::power::principal_ln;
use super::{c, nonpositive_integer, Complex};
use crate::error::{Error, Result};
use std::f64::consts::PI;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln Gamma(z)` (not the principal log-gamma branch: the imaginary part is
/// only meaningful modulo `2 pi`). Exponentiate to get `Gamma(z)`.
pub fn ln_gamma(z: Complex) -> Result<Complex> {
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole {
            function: "gamma",
            at: z,
        });
    }
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: Complex) -> Complex {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        let s = (PI * z).sin();
        return c(PI.ln(), 0.0) - principal_ln(s) - ln_gamma_unchecked(1.0 - z);
    }
    let x = z - 1.0;
    let mut series = c(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        series += p / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * principal_ln(t) - t + principal_ln(series)
}

/// Complex gamma function.
///
/// Relative error is below `1e-12` for `|z| <= 50` away from the poles.
pub fn complex_gamma(z: Complex) -> Result<Complex> {
    if z.im == 0.0 && z.re >= 0.5 && z.re <= 171.0 {
        return Ok(c(gamma_positive_real(z.re), 0.0));
    }
    Ok(ln_gamma(z)?.exp())
}

/// `1 / Gamma(z)`, an entire function: exactly zero at the poles of `Gamma`.
pub fn recip_gamma(z: Complex) -> Complex {
    if nonpositive_integer(z).is_some() {
        return c(0.0, 0.0);
    }
    (-ln_gamma_unchecked(z)).exp()
}

/// Real gamma function.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x > 0.0 && x <= 0.5 {
        return Ok(1.0 / (x * rgamma1p(x)));
    }
    if x > 0.5 && x < 2.0 {
        let (shift, y) = if x <= 1.5 {
            (1.0, x - 1.0)
        } else {
            (x - 1.0, x - 2.0)
        };
        return Ok(shift / rgamma1p(y));
    }
    if x >= 0.5 {
        return Ok(gamma_positive_real(x));
    }
    let z = c(x, 0.0);
    if nonpositive_integer(z).is_some() {
        return Err(Error::Pole {
            function: "gamma",
            at: z,
        });
    }
    Ok(PI / ((PI * x).sin() * gamma_positive_real(1.0 - x)))
}

/// Taylor coefficients of `1/Gamma(1 + x)` about `x = 0`; enough for `|x| <= 1/2`.
pub(crate) const RGAMMA1P: [f64; 22] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
];

/// `1/Gamma(1 + x)` for `|x| <= 1/2`.
pub(crate) fn rgamma1p(x: f64) -> f64 {
    RGAMMA1P.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn gamma_positive_real(x: f64) -> f64 {
    let y = x - 1.0;
    let mut series = LANCZOS[0];
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        series += p / (y + i as f64);
    }
    let t = y + LANCZOS_G + 0.5;
    // Split the power to postpone overflow near x ~ 171.
    let half = t.powf(0.5 * (y + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * series
}
