//! Confluent hypergeometric functions of Kummer, `M(a, b, z) = 1F1(a; b; z)`,
//! and Tricomi, `U(a, b, z)`.
//!
//! Three evaluation routes are combined:
//!
//! * the power series (for `U` the logarithmic series for integer `b`), used
//!   while its cancellation stays below [`MAX_SERIES_CANCELLATION`];
//! * the large-`|z|` asymptotic expansions, used once their smallest term is
//!   below double precision;
//! * Taylor-series continuation of the Kummer equation
//!   `z w'' + (b - z) w' - a w = 0` along a ray, started from whichever of the
//!   first two routes is accurate. `M` is continued outward from near the
//!   origin, `U` inward from the asymptotic region; both directions follow the
//!   dominant solution, so the continuation is stable.

use super::digamma::digamma;
use super::gamma::{ln_gamma, recip_gamma};
use super::power::{cpow, principal_arg, principal_ln};
use super::{c, is_finite, nonpositive_integer, Complex, EULER_GAMMA, MAX_TERMS};
use crate::error::{domain, Error, Result};
use std::f64::consts::PI;

/// Beyond this `|z|` the asymptotic expansion of `M` is tried before the series.
pub const KUMMER_SWITCH_RADIUS: f64 = 30.0;

/// Largest accepted ratio of the biggest series term to the series sum.
const MAX_SERIES_CANCELLATION: f64 = 1e4;

/// Longest Taylor step of the continuation.
const MAX_STEP: f64 = 2.0;

const MAX_TAYLOR_TERMS: usize = 600;

/// Farthest point used to start the inward continuation of `U`.
const MAX_ASYMPTOTIC_START: f64 = 1e7;

/// Kummer's confluent hypergeometric function `1F1(a; b; z)`.
pub fn kummer_1f1(a: Complex, b: Complex, z: Complex) -> Result<Complex> {
    if nonpositive_integer(b).is_some() {
        return domain(format!(
            "1F1 lower parameter b = {b} is a non-positive integer"
        ));
    }
    if z.norm() == 0.0 {
        return Ok(c(1.0, 0.0));
    }
    if z.norm() <= KUMMER_SWITCH_RADIUS {
        let (v, cancel) = m_series(a, b, z)?;
        if cancel <= MAX_SERIES_CANCELLATION {
            return Ok(v);
        }
    } else if let Some(v) = m_asymptotic(a, b, z) {
        return Ok(v);
    }
    m_continued(a, b, z)
}

/// Tricomi's confluent hypergeometric function `U(a, b, z)` for `b` in `{2, 3}`.
///
/// Requires `Re a > 0` and `z != 0`. Points with `Re z < 0` are accepted only
/// where the logarithmic series or the asymptotic expansion is accurate on
/// its own.
pub fn tricomi_u(a: Complex, b: i32, z: Complex) -> Result<Complex> {
    if !(b == 2 || b == 3) {
        return domain(format!("U implemented for b in {{2, 3}}, got b = {b}"));
    }
    if a.re <= 0.0 {
        return domain(format!("U requires Re a > 0, got a = {a}"));
    }
    if z.norm() == 0.0 {
        return domain("U(a, b, 0) diverges for b >= 2");
    }
    if z.im == 0.0 && z.re < 0.0 {
        return domain(format!("U argument {z} on the branch cut"));
    }
    let bc = c(b as f64, 0.0);
    if let Ok((v, cancel)) = u_series(a, b, z) {
        if cancel <= MAX_SERIES_CANCELLATION {
            return Ok(v);
        }
    }
    if let Some(v) = u_asymptotic(a, bc, z) {
        return Ok(v);
    }
    if z.re < 0.0 {
        return domain(format!("U(a, {b}, z) not available at z = {z} (Re z < 0)"));
    }
    u_continued(a, bc, z)
}

/// Power series of `M`; also returns max|term| / |sum|.
fn m_series(a: Complex, b: Complex, z: Complex) -> Result<(Complex, f64)> {
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut biggest: f64 = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * z / ((b + nf) * (nf + 1.0));
        sum += term;
        let t = term.norm();
        biggest = biggest.max(t);
        if !t.is_finite() {
            break;
        }
        let ratio = ((a + nf + 1.0) * z / ((b + nf + 1.0) * (nf + 2.0))).norm();
        if t == 0.0 || (t <= 1e-17 * sum.norm() && ratio < 0.5) {
            return Ok((sum, biggest / sum.norm()));
        }
    }
    Err(Error::Convergence {
        function: "1F1 series",
        terms: MAX_TERMS,
    })
}

/// `sum_s (p)_s (q)_s / s! * x^s` until the terms drop below double precision.
/// Returns the sum and the magnitude of the first neglected term, or the
/// smallest term if the series starts diverging first.
fn asymptotic_sum(p: Complex, q: Complex, x: Complex) -> (Complex, f64) {
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut smallest = f64::INFINITY;
    for s in 0..MAX_TERMS {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) * x / (sf + 1.0);
        let t = next.norm();
        if t == 0.0 {
            return (sum, 0.0);
        }
        if t > term.norm() && s > 0 {
            return (sum, smallest.min(term.norm()));
        }
        if t <= 1e-17 * sum.norm() {
            return (sum, t);
        }
        smallest = smallest.min(t);
        term = next;
        sum += term;
    }
    (sum, smallest)
}

/// `U(a, b, z) ~ z^(-a) sum_s (a)_s (a - b + 1)_s / s! (-z)^(-s)`.
fn u_asymptotic(a: Complex, b: Complex, z: Complex) -> Option<Complex> {
    let (s, err) = asymptotic_sum(a, a - b + 1.0, -1.0 / z);
    if err > 1e-16 * s.norm() {
        return None;
    }
    let v = cpow(z, -a) * s;
    is_finite(v).then_some(v)
}

/// Two-sector large-`|z|` expansion of `M`:
/// `M ~ Gamma(b) [e^(+-i pi a) z^(-a) S1 / Gamma(b - a) + e^z z^(a - b) S2 / Gamma(a)]`.
fn m_asymptotic(a: Complex, b: Complex, z: Complex) -> Option<Complex> {
    let ln_gb = ln_gamma(b).ok()?;
    let lnz = principal_ln(z);
    let sign = if principal_arg(z) > -PI / 2.0 {
        1.0
    } else {
        -1.0
    };
    let i = Complex::i();

    let mut total = c(0.0, 0.0);
    let mut err = 0.0;
    if nonpositive_integer(b - a).is_none() {
        let pref = (ln_gb + sign * i * PI * a - a * lnz - ln_gamma(b - a).ok()?).exp();
        let (s1, e1) = asymptotic_sum(a, a - b + 1.0, -1.0 / z);
        total += pref * s1;
        err += pref.norm() * e1;
    }
    if nonpositive_integer(a).is_none() {
        let pref = (ln_gb + z + (a - b) * lnz - ln_gamma(a).ok()?).exp();
        let (s2, e2) = asymptotic_sum(b - a, 1.0 - a, 1.0 / z);
        total += pref * s2;
        err += pref.norm() * e2;
    }
    (is_finite(total) && err <= 1e-14 * total.norm()).then_some(total)
}

/// `M` by continuation from a point on the same ray where the series is accurate.
/// For `Re z < 0` Kummer's transformation is applied first, so the
/// continuation always runs where `e^z` dominates.
fn m_continued(a: Complex, b: Complex, z: Complex) -> Result<Complex> {
    if z.re < 0.0 {
        return Ok(z.exp() * m_continued(b - a, b, -z)?);
    }
    let dir = z / z.norm();
    let mut r0 = z.norm().min(4.0);
    loop {
        let z0 = dir * r0;
        let (m, cm) = m_series(a, b, z0)?;
        let (mp, cmp) = m_series(a + 1.0, b + 1.0, z0)?;
        if (cm <= MAX_SERIES_CANCELLATION && cmp <= MAX_SERIES_CANCELLATION) || r0 < 1e-3 {
            let dm = a / b * mp;
            let (w, _) = taylor_continue(a, b, z0, m, dm, z)?;
            return Ok(w);
        }
        r0 *= 0.5;
    }
}

/// `U` by inward continuation from the asymptotic region on the same ray.
fn u_continued(a: Complex, b: Complex, z: Complex) -> Result<Complex> {
    let dir = z / z.norm();
    let mut r = (2.0 * z.norm()).max(20.0);
    while r <= MAX_ASYMPTOTIC_START {
        let zf = dir * r;
        if let (Some(u), Some(u1)) = (u_asymptotic(a, b, zf), u_asymptotic(a + 1.0, b + 1.0, zf)) {
            let du = -a * u1;
            let (w, _) = taylor_continue(a, b, zf, u, du, z)?;
            return Ok(w);
        }
        r *= 2.0;
    }
    Err(Error::Convergence {
        function: "U asymptotic start",
        terms: MAX_TERMS,
    })
}

/// Integrates the Kummer equation from `z0` (value `w0`, derivative `dw0`) to
/// `z1` along the straight segment, one local Taylor expansion per step.
fn taylor_continue(
    a: Complex,
    b: Complex,
    z0: Complex,
    w0: Complex,
    dw0: Complex,
    z1: Complex,
) -> Result<(Complex, Complex)> {
    let mut p = z0;
    let mut w = w0;
    let mut dw = dw0;
    let scale_a = a.norm().max(1.0);
    loop {
        let remaining = z1 - p;
        let dist = remaining.norm();
        if dist <= 1e-15 * z1.norm() {
            break;
        }
        let rp = p.norm();
        let hmax = MAX_STEP
            .min(0.5 * rp)
            .min(2.0 * (rp / scale_a).sqrt().max(0.05 * rp));
        let h = if dist <= hmax {
            remaining
        } else {
            remaining * (hmax / dist)
        };
        let (nw, ndw) = taylor_step(a, b, p, w, dw, h)?;
        w = nw;
        dw = ndw;
        p += h;
    }
    if !is_finite(w) {
        return domain("confluent hypergeometric continuation overflowed");
    }
    Ok((w, dw))
}

fn taylor_step(
    a: Complex,
    b: Complex,
    p: Complex,
    w: Complex,
    dw: Complex,
    h: Complex,
) -> Result<(Complex, Complex)> {
    // d_n = c_n h^n, with c_n the Taylor coefficients of w about p.
    let mut d_prev = w;
    let mut d_cur = dw * h;
    let mut value = d_prev + d_cur;
    let mut slope = d_cur; // sum n d_n
    for n in 0..MAX_TAYLOR_TERMS {
        let nf = n as f64;
        let d_next = ((p - b - nf) * (nf + 1.0) * d_cur * h + (a + nf) * d_prev * h * h)
            / (p * (nf + 2.0) * (nf + 1.0));
        value += d_next;
        slope += (nf + 2.0) * d_next;
        let scale = value.norm().max(slope.norm());
        if n >= 4 && d_next.norm() + d_cur.norm() <= 1e-17 * scale {
            return Ok((value, slope / h));
        }
        d_prev = d_cur;
        d_cur = d_next;
    }
    Err(Error::Convergence {
        function: "Kummer Taylor step",
        terms: MAX_TAYLOR_TERMS,
    })
}

/// Logarithmic series for integer `b = n + 1`:
///
/// `U(a, n+1, z) = (-1)^(n+1) / (n! Gamma(a - n)) sum_k (a)_k z^k / ((n+1)_k k!)
///   [ln z + psi(a + k) - psi(1 + k) - psi(n + k + 1)]
///   + 1/Gamma(a) sum_{k=1}^{n} (k-1)! (1 - a + k)_{n-k} / (n-k)! z^(-k)`.
fn u_series(a: Complex, b: i32, z: Complex) -> Result<(Complex, f64)> {
    let n = (b - 1) as usize;
    let lnz = principal_ln(z);
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let n_fact = (1..=n).product::<usize>() as f64;
    let pref = sign * recip_gamma(a - n as f64) / n_fact;

    let mut psi_a = digamma(a)?;
    let mut psi_1 = c(-EULER_GAMMA, 0.0);
    let mut psi_n1 = c(
        -EULER_GAMMA + (1..=n).map(|j| 1.0 / j as f64).sum::<f64>(),
        0.0,
    );

    let mut term = c(1.0, 0.0); // (a)_k z^k / ((n+1)_k k!)
    let mut sum = c(0.0, 0.0);
    let mut biggest: f64 = 0.0;
    let mut converged = false;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let add = term * (lnz + psi_a - psi_1 - psi_n1);
        sum += add;
        biggest = biggest.max(add.norm());
        psi_a += 1.0 / (a + kf);
        psi_1 += 1.0 / (kf + 1.0);
        psi_n1 += 1.0 / (n as f64 + kf + 1.0);
        term *= (a + kf) * z / ((n as f64 + 1.0 + kf) * (kf + 1.0));
        if !is_finite(term) {
            break;
        }
        let ratio = ((a + kf + 1.0) * z / ((n as f64 + 2.0 + kf) * (kf + 2.0))).norm();
        if pref.norm() == 0.0 || (add.norm() <= 1e-17 * sum.norm() && ratio < 0.5 && k > 2) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            function: "U logarithmic series",
            terms: MAX_TERMS,
        });
    }

    let rg = recip_gamma(a);
    let mut finite = c(0.0, 0.0);
    let zinv = 1.0 / z;
    let mut zpow = zinv;
    for k in 1..=n {
        let mut poch = c(1.0, 0.0);
        for j in 0..(n - k) {
            poch *= 1.0 - a + k as f64 + j as f64;
        }
        let kfact = (1..k).product::<usize>() as f64;
        let nkfact = (1..=(n - k)).product::<usize>() as f64;
        finite += kfact * poch / nkfact * zpow;
        zpow *= zinv;
    }
    let series_part = pref * sum;
    let v = series_part + rg * finite;
    let cancel = (pref.norm() * biggest).max(series_part.norm()) / v.norm();
    if !is_finite(v) {
        return domain(format!("U series overflow at z = {z}"));
    }
    Ok((v, cancel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex, b: Complex) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn m_at_origin_is_one() {
        let v = kummer_1f1(c(0.3, -2.0), c(2.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn m_reduces_to_exponential() {
        for &z in &[c(0.0, 0.5), c(0.0, 40.0), c(-25.0, 3.0), c(12.0, -60.0)] {
            let v = kummer_1f1(c(1.0, 0.0), c(1.0, 0.0), z).unwrap();
            assert!(rel(v, z.exp()) < 1e-11, "z = {z}: {v}");
        }
    }

    #[test]
    fn m_reference_values() {
        let cases = [
            (
                c(1.0, -0.5),
                c(0.0, 4.0),
                c(-0.564_045_508_029_647, 1.232_461_919_738_373_9),
            ),
            (
                c(1.0, -20.0),
                c(0.0, 30.0),
                c(-1.423_396_655_431_801_7e17, 1.218_418_143_924_879e17),
            ),
            (
                c(1.0, -0.3),
                c(0.0, 200.0),
                c(-0.011_254_766_171_609_027, 0.006_608_955_307_806_298_7),
            ),
            (
                c(1.0, -50.0),
                c(0.0, 0.1),
                c(6.699_182_996_081_653, 0.335_238_561_844_286_3),
            ),
        ];
        for (a, z, want) in cases {
            let v = kummer_1f1(a, c(2.0, 0.0), z).unwrap();
            assert!(rel(v, want) < 1e-10, "a = {a}, z = {z}: {v} vs {want}");
        }
    }

    #[test]
    fn m_routes_agree_past_switch_radius() {
        let a = c(1.0, -0.4);
        let b = c(2.0, 0.0);
        for &z in &[c(0.0, 35.0), c(0.0, 80.0), c(20.0, 30.0)] {
            let asym = m_asymptotic(a, b, z).expect("asymptotic converges");
            let cont = m_continued(a, b, z).unwrap();
            assert!(rel(asym, cont) < 1e-10, "z = {z}");
        }
    }

    #[test]
    fn m_rejects_bad_b() {
        assert!(kummer_1f1(c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn u_elementary_case() {
        // U(1, 2, z) = 1/z
        for &z in &[c(0.0, 3.0), c(0.0, 0.01), c(0.0, 150.0), c(2.0, 7.0)] {
            let v = tricomi_u(c(1.0, 0.0), 2, z).unwrap();
            assert!(rel(v, 1.0 / z) < 1e-12, "z = {z}: {v}");
        }
    }

    #[test]
    fn u_reference_values() {
        let cases = [
            (
                c(1.0, -0.5),
                2,
                c(0.0, 2.0),
                c(0.101_572_190_544_222_88, -0.279_421_181_160_045_9),
            ),
            (
                c(1.0, -0.5),
                3,
                c(0.0, 2.0),
                c(-0.089_118_563_529_668_17, -0.283_562_855_246_605_7),
            ),
            (
                c(1.0, -20.0),
                2,
                c(0.0, 30.0),
                c(-1.358_830_833_824_737_5e-8, -1.186_999_516_921_162_8e-8),
            ),
            (
                c(1.0, -50.0),
                2,
                c(0.0, 0.1),
                c(2.227_548_884_570_930_4e32, 8.151_978_840_454_959e31),
            ),
            (
                c(1.0, -0.3),
                2,
                c(0.0, 200.0),
                c(0.003_125_320_414_237_351, 5.706_146_838_562_072e-5),
            ),
        ];
        for (a, b, z, want) in cases {
            let v = tricomi_u(a, b, z).unwrap();
            assert!(
                rel(v, want) < 1e-8,
                "a = {a}, b = {b}, z = {z}: {v} vs {want}"
            );
        }
    }

    #[test]
    fn u_small_argument_limit() {
        // z U(a, 2, z) -> 1 / Gamma(a) along the positive imaginary axis
        let a = c(1.0, -0.7);
        let z = c(0.0, 1e-9);
        let v = z * tricomi_u(a, 2, z).unwrap();
        assert!(rel(v, recip_gamma(a)) < 1e-7);
    }

    #[test]
    fn u_domain() {
        assert!(tricomi_u(c(1.0, 0.0), 4, c(1.0, 0.0)).is_err());
        assert!(tricomi_u(c(-1.0, 0.0), 2, c(1.0, 0.0)).is_err());
        assert!(tricomi_u(c(1.0, 0.0), 2, c(0.0, 0.0)).is_err());
        assert!(tricomi_u(c(1.0, 0.0), 2, c(-1.0, 0.0)).is_err());
    }
}
