//! Bessel functions `J_nu(x)`, `Y_nu(x)` of real order `nu >= 0` and real
//! argument `x > 0`.
//!
//! Below [`BESSEL_SWITCH_X`] the Steed/Temme method is used: the continued
//! fraction for `J'/J` fixes the ratio, Temme's series (small `x`) or the
//! complex continued fraction for `(J' + iY')/(J + iY)` fixes the
//! normalization, and `Y` is recurred upward from the reduced order
//! `|mu| <= 1/2`. Above it the Hankel expansion is used whenever its smallest
//! term is below double precision, which for `nu <= 5` is always.

use super::gamma::RGAMMA1P;
use crate::error::{domain, Error, Result};
use std::f64::consts::PI;

/// Argument above which the Hankel asymptotic expansion is tried first.
pub const BESSEL_SWITCH_X: f64 = 20.0;

const TEMME_X: f64 = 2.0;
const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;

/// Values and derivatives of both kinds at one `(nu, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJY {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.j)
}

pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(nu, x)?.y)
}

pub fn bessel_jy(nu: f64, x: f64) -> Result<BesselJY> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("Bessel argument must be positive, got x = {x}"));
    }
    if !(nu >= 0.0) || !nu.is_finite() {
        return domain(format!("Bessel order must be non-negative, got nu = {nu}"));
    }
    if x >= BESSEL_SWITCH_X {
        if let Some(v) = hankel(nu, x) {
            return Ok(v);
        }
    }
    steed(nu, x)
}

/// `(P, Q)` of the Hankel expansion, or `None` if it cannot reach `EPS`.
fn hankel_pq(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        let t = term.abs();
        if t == 0.0 {
            return Some((p, q));
        }
        if t > last {
            return None;
        }
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if t < EPS {
            return Some((p, q));
        }
        last = t;
    }
    None
}

fn hankel(nu: f64, x: f64) -> Option<BesselJY> {
    let amp = (2.0 / (PI * x)).sqrt();
    let eval = |order: f64| -> Option<(f64, f64)> {
        let (p, q) = hankel_pq(order, x)?;
        let chi = x - (0.5 * order + 0.25) * PI;
        let (s, c) = chi.sin_cos();
        Some((amp * (p * c - q * s), amp * (p * s + q * c)))
    };
    let (j, y) = eval(nu)?;
    let (j1, y1) = eval(nu + 1.0)?;
    Some(BesselJY {
        j,
        y,
        jp: nu / x * j - j1,
        yp: nu / x * y - y1,
    })
}

/// Temme's `gamma1`, `gamma2`, `1/Gamma(1 + mu)`, `1/Gamma(1 - mu)` for `|mu| <= 1/2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut pw = 1.0;
    for (m, &cm) in RGAMMA1P.iter().enumerate() {
        if m % 2 == 0 {
            even += cm * pw;
        } else {
            odd += cm * pw;
        }
        pw *= mu;
    }
    // odd collects c_m mu^m for odd m; gamma1 = -(c_1 + c_3 mu^2 + ...)
    let gam1 = if mu == 0.0 { -RGAMMA1P[1] } else { -odd / mu };
    let gam2 = even;
    (gam1, gam2, even + odd, even - odd)
}

fn steed(nu: f64, x: f64) -> Result<BesselJY> {
    let nl = if x < TEMME_X {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1 for J'_nu / J_nu.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut cc = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        cc = b - 1.0 / cc;
        if cc.abs() < FPMIN {
            cc = FPMIN;
        }
        d = 1.0 / d;
        let del = cc * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            function: "Bessel CF1",
            terms: MAXIT,
        });
    }

    // Downward recurrence of the unnormalized J to the reduced order.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < TEMME_X {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let dd = -x2.ln();
        let e = xmu * dd;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * dd);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence {
                function: "Bessel Temme series",
                terms: MAXIT,
            });
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2 (Steed) for p + iq = (J' + iY') / (J + iY).
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fct = a * xi / (p * p + q * q);
        let mut cr = br + q * fct;
        let mut ci = bi + p * fct;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 2..MAXIT {
            a += (2 * (i - 1)) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence {
                function: "Bessel CF2",
                terms: MAXIT,
            });
        }
        let gam = (p - f) / q;
        let mut rj = (w / ((p - f) * gam + q)).sqrt();
        if rjl < 0.0 {
            rj = -rj;
        }
        rjmu = rj;
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let jp = rjp1 * scale;
    for i in 1..=nl {
        let t = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
    }
    Ok(BesselJY {
        j,
        y: rymu,
        jp,
        yp: nu * xi * rymu - ry1,
    })
}
