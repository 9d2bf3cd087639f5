//! Invariant suites run by `tunnel selftest`.
//!
//! Each suite is a list of named checks over fixed-seed random samples. A
//! check either passes or fails; `info` lines carry diagnostics that are not
//! pass/fail criteria.

use crate::coulomb::{self, CoulombParams, HalfLine};
use crate::highorder;
use crate::mild;
use crate::oracle::{self, CapMode, CutoffPotential, GridConfig};
use crate::regimes::{transmission_any, PotentialSpec, Status};
use crate::specfun::{
    bessel_jy, complex_gamma, digamma, kummer_1f1, tricomi_u, upper_incomplete_gamma, Complex,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

const SEED: u64 = 20_231_107;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub info: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: Vec::new(),
            info: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    /// Records `worst <= tol`.
    fn bound(&mut self, name: &str, worst: f64, tol: f64) {
        self.check(
            name,
            worst <= tol,
            format!("worst {worst:.3e} (tol {tol:.0e})"),
        );
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn rand_complex(rng: &mut StdRng, re: (f64, f64), im: (f64, f64)) -> Complex {
    Complex::new(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1))
}

pub fn specfun_suite(samples: usize) -> SuiteReport {
    let mut s = SuiteReport::new("specfun");
    let mut rng = StdRng::seed_from_u64(SEED);

    let mut worst_conj = 0.0f64;
    let mut failed = 0usize;
    for _ in 0..samples {
        let z = rand_complex(&mut rng, (-8.0, 8.0), (-8.0, 8.0));
        let sv = rng.gen_range(0.05..1.95);
        let pairs = [
            (complex_gamma(z), complex_gamma(z.conj())),
            (digamma(z), digamma(z.conj())),
            (
                upper_incomplete_gamma(sv, z),
                upper_incomplete_gamma(sv, z.conj()),
            ),
        ];
        for (a, b) in pairs {
            match (a, b) {
                (Ok(a), Ok(b)) => worst_conj = worst_conj.max(rel(b, a.conj())),
                _ => failed += 1,
            }
        }
    }
    s.bound(
        "conjugate symmetry (gamma, digamma, incomplete gamma)",
        worst_conj,
        1e-12,
    );
    s.check(
        "conjugate symmetry evaluations",
        failed == 0,
        format!("{failed} errors"),
    );

    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = rand_complex(&mut rng, (-3.0, 3.0), (-3.0, 3.0));
        let b = Complex::new(rng.gen_range(0.5..4.0), rng.gen_range(-1.0..1.0));
        let r = rng.gen_range(0.0..20.0);
        let z = Complex::from_polar(r, rng.gen_range(-PI..PI));
        let lhs = kummer_1f1(a, b, z);
        let rhs = kummer_1f1(b - a, b, -z).map(|v| z.exp() * v);
        worst = worst.max(match (lhs, rhs) {
            (Ok(l), Ok(r)) => rel(l, r),
            _ => f64::INFINITY,
        });
    }
    s.bound("Kummer transformation", worst, 1e-10);

    let mut worst = 0.0f64;
    for _ in 0..samples {
        let sv = rng.gen_range(0.05..0.95);
        let z = Complex::from_polar(rng.gen_range(0.01..40.0), rng.gen_range(-3.0..3.0));
        let lhs = upper_incomplete_gamma(sv + 1.0, z);
        let rhs = upper_incomplete_gamma(sv, z).map(|g| sv * g + (sv * z.ln() - z).exp());
        worst = worst.max(match (lhs, rhs) {
            (Ok(l), Ok(r)) => rel(l, r),
            _ => f64::INFINITY,
        });
    }
    s.bound("incomplete gamma recurrence", worst, 1e-10);

    let mut worst = 0.0f64;
    for _ in 0..samples {
        let nu = rng.gen_range(0.0..5.0);
        let x = 10f64.powf(rng.gen_range(-2.0..3.0));
        worst = worst.max(match bessel_jy(nu, x) {
            Ok(b) => {
                let w = 2.0 / (PI * x);
                ((b.j * b.yp - b.jp * b.y) - w).abs() / w
            }
            Err(_) => f64::INFINITY,
        });
    }
    s.bound("Bessel Wronskian", worst, 1e-10);

    let mut worst = 0.0f64;
    for _ in 0..samples {
        let y = rng.gen_range(0.01..10.0);
        worst = worst.max(match complex_gamma(Complex::new(1.0, y)) {
            Ok(g) => (g.norm_sqr() - PI * y / (PI * y).sinh()).abs() / g.norm_sqr(),
            Err(_) => f64::INFINITY,
        });
    }
    s.bound(
        "gamma modulus |Gamma(1+iy)|^2 = pi y / sinh(pi y)",
        worst,
        1e-12,
    );

    let mut worst = 0.0f64;
    for _ in 0..samples.min(200) {
        let a = Complex::new(rng.gen_range(0.2..3.0), rng.gen_range(-5.0..5.0));
        let z = Complex::from_polar(rng.gen_range(0.05..30.0), rng.gen_range(-1.5..1.5));
        let terms = (
            tricomi_u(a, 3, z),
            tricomi_u(a + 1.0, 3, z),
            tricomi_u(a, 2, z),
        );
        worst = worst.max(match terms {
            (Ok(u3), Ok(u3a), Ok(u2)) => (u3 - a * u3a - u2).norm() / u3.norm(),
            _ => f64::INFINITY,
        });
    }
    s.bound(
        "U contiguous relation U(a,3,z) - a U(a+1,3,z) - U(a,2,z) = 0",
        worst,
        1e-8,
    );
    s
}

pub fn regimes_suite(samples: usize) -> SuiteReport {
    let mut s = SuiteReport::new("regimes");
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let mut worst = 0.0f64;
    let mut bad = 0usize;
    for _ in 0..samples {
        let alpha = if rng.gen_bool(0.5) {
            1.0
        } else {
            rng.gen_range(0.05..0.95)
        };
        let u0 = rng.gen_range(-5.0..5.0);
        let e = 10f64.powf(rng.gen_range(-3.0..3.0));
        match PotentialSpec::new(u0, alpha).and_then(|p| transmission_any(p, e)) {
            Ok(r) => match (r.t, r.r) {
                (Some(t), Some(rr)) if (0.0..=1.0).contains(&t) => {
                    worst = worst.max((t + rr - 1.0).abs())
                }
                _ => bad += 1,
            },
            Err(_) => bad += 1,
        }
    }
    s.bound("T + R = 1 (mild and Coulomb)", worst, 1e-10);
    s.check(
        "T in [0, 1], no errors",
        bad == 0,
        format!("{bad} bad points"),
    );

    let forced = [(1.5, 1.0), (1.5, -1.0), (2.0, 0.5), (3.0, 1.0)];
    let ok = forced.iter().all(|&(alpha, u0)| {
        [0.1, 1.0, 100.0].iter().all(|&e| {
            let r = transmission_any(PotentialSpec { u0, alpha }, e).unwrap();
            r.t == Some(0.0) && r.status == Status::ForcedZero
        })
    });
    s.check("forced impenetrability", ok, String::new());
    let und = [(2.0, -0.1), (3.0, -1.0)].iter().all(|&(alpha, u0)| {
        transmission_any(PotentialSpec { u0, alpha }, 1.0)
            .unwrap()
            .status
            == Status::Undetermined
    });
    s.check("undetermined wells", und, String::new());
    s
}

pub fn mild_suite(samples: usize) -> SuiteReport {
    let mut s = SuiteReport::new("mild");
    let mut rng = StdRng::seed_from_u64(SEED + 2);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let e = 10f64.powf(rng.gen_range(-6.0..6.0));
        let mut u0 = 0.0;
        while u0 == 0.0 {
            u0 = rng.gen_range(-5.0..5.0);
        }
        let alpha = rng.gen_range(0.05..0.95);
        worst = worst.max(match mild::amplitudes(e, u0, alpha) {
            Ok(a) => (a.transmission() + a.reflection() - 1.0).abs(),
            Err(_) => f64::INFINITY,
        });
    }
    s.bound("unitarity |t|^2 + |r|^2 = 1", worst, 1e-10);

    let mut worst = 0.0f64;
    for alpha in [0.1, 0.25, 0.5, 0.75] {
        let want = (PI * alpha / 2.0).cos().powi(2);
        for u0 in [1.0, -1.0] {
            let t = mild::amplitudes(1e-10, u0, alpha)
                .map(|a| a.transmission())
                .unwrap_or(f64::NAN);
            worst = worst.max((t - want).abs());
        }
    }
    s.bound("zero-energy limit cos^2(pi alpha / 2)", worst, 1e-4);

    let root = mild::total_reflection_energy(1.0, 0.25);
    let r = root
        .as_ref()
        .ok()
        .and_then(|&e| mild::amplitudes(e, 1.0, 0.25).ok())
        .map(|a| a.reflection());
    s.check(
        "total reflection R(eps*) >= 1 - 1e-8",
        r.is_some_and(|r| r >= 1.0 - 1e-8),
        format!("eps* = {root:?}, R = {r:?}"),
    );

    let t = |e: f64| {
        mild::amplitudes(e, 1.0, 0.25)
            .map(|a| a.transmission())
            .unwrap_or(f64::NAN)
    };
    s.check(
        "high-energy transparency",
        t(1e4) >= 0.99 && t(1e6) > t(1e4) && t(1e4) > t(1e2),
        format!(
            "T(1e2) = {:.6}, T(1e4) = {:.6}, T(1e6) = {:.8}",
            t(1e2),
            t(1e4),
            t(1e6)
        ),
    );
    s
}

pub fn coulomb_suite(samples: usize) -> SuiteReport {
    let mut s = SuiteReport::new("coulomb");
    let mut rng = StdRng::seed_from_u64(SEED + 3);
    let mut worst_w = 0.0f64;
    let mut worst_j11 = 0.0f64;
    let mut worst_flux = 0.0f64;
    let mut worst_im = 0.0f64;
    for _ in 0..samples {
        let e = 10f64.powf(rng.gen_range(-2.0..2.0));
        let u0 = if rng.gen_bool(0.5) { 1.0 } else { -1.0 } * rng.gen_range(0.1..3.0);
        let p = match CoulombParams::new(e, u0) {
            Ok(p) => p,
            Err(_) => continue,
        };
        for side in [HalfLine::Left, HalfLine::Right] {
            let j: Vec<_> = [0.5, 1.0, 5.0, 20.0]
                .iter()
                .map(|&z| coulomb::current_component(1, 2, side, &p, z))
                .collect();
            if let Some(Ok(j0)) = j.first() {
                for jz in &j {
                    worst_w =
                        worst_w.max(jz.as_ref().map(|v| rel(*v, *j0)).unwrap_or(f64::INFINITY));
                }
            } else {
                worst_w = f64::INFINITY;
            }
            let j11 = coulomb::current_component(1, 1, side, &p, 5.0).map(|v| v.norm());
            worst_j11 = worst_j11.max(j11.unwrap_or(f64::INFINITY));
        }
        match coulomb::solve_amplitudes(&p)
            .and_then(|a| Ok((a, coulomb::asymptotic_waves(&a, &p)?)))
        {
            Ok((a, w)) => {
                worst_flux = worst_flux.max(w.flux_residual());
                worst_im = worst_im.max(a.a_r1.im.abs() / a.a_r1.norm());
            }
            Err(crate::Error::Degenerate { .. }) => {}
            Err(_) => worst_flux = f64::INFINITY,
        }
    }
    s.bound("Wronskian constancy of j_12", worst_w, 1e-8);
    s.bound("j_11 = 0", worst_j11, 1e-10);
    s.bound("flux balance", worst_flux, 1e-8);
    s.info.push(format!(
        "max |Im a_r1| / |a_r1| = {worst_im:.3e} (a_r1 = e^(-pi eta) Gamma(1 + i eta) is complex)"
    ));

    let t = CoulombParams::new(1.0, 1e-6).and_then(|p| coulomb::transmission(&p));
    let tv = t.ok().and_then(|r| r.t);
    s.check(
        "u0 -> 0 gives T -> 1",
        tv.is_some_and(|t| (t - 1.0).abs() <= 1e-3),
        format!("T = {tv:?}"),
    );
    s
}

pub fn highorder_suite(samples: usize) -> SuiteReport {
    let mut s = SuiteReport::new("highorder");
    let r = highorder::intermediate_compatibility_check(samples);
    s.bound(
        "constrained solutions satisfy continuity and current equality",
        r.max_constraint_residual,
        1e-10,
    );
    s.info.push(format!(
        "max |a_r_plus| over {} constrained solutions = {:.3e}; {} of them have a_l_plus = -a_l_minus",
        r.trials, r.max_a_r_plus, r.forced_solutions
    ));
    let mut worst = 0.0f64;
    for u0 in [0.25, 0.5, 0.74] {
        for e in [0.5, 1.0, 4.0] {
            let z_far = 100.0 / f64::sqrt(e);
            worst = worst
                .max(highorder::outgoing_combination_check(u0, e, z_far).unwrap_or(f64::INFINITY));
        }
    }
    s.bound("inverse-square outgoing combination", worst, 1e-6);
    let h: Vec<f64> = [1e-2, 1e-4, 1e-6]
        .iter()
        .map(|&z| {
            highorder::near_origin_h(z, 1.0, 1.5)
                .map(f64::abs)
                .unwrap_or(f64::NAN)
        })
        .collect();
    s.check(
        "near-origin h decreases to 0",
        h[0] > h[1] && h[1] > h[2],
        format!("{h:?}"),
    );
    s
}

pub fn oracle_suite() -> SuiteReport {
    let mut s = SuiteReport::new("oracle");
    let grid = GridConfig::for_problem(1.0, 0.0);
    let free = oracle::numerov_scatter(&vec![0.0; grid.n + 1], 1.0, &grid);
    let t = free.ok().and_then(|r| r.t).unwrap_or(f64::NAN);
    s.bound("free particle T = 1", (t - 1.0).abs(), 1e-8);

    let fine = GridConfig::with_step(20.0, 2.5e-4);
    let v = fine.sample(oracle::rectangular_potential(2.0, 1.0));
    let t = oracle::numerov_scatter(&v, 1.0, &fine)
        .ok()
        .and_then(|r| r.t)
        .unwrap_or(f64::NAN);
    s.bound(
        "rectangular barrier vs closed form",
        (t - oracle::rectangular_transmission(2.0, 1.0, 1.0)).abs(),
        1e-6,
    );

    let pot = CutoffPotential::new(1.0, 1.0, 0.1, CapMode::Plateau).expect("valid cutoff");
    let g = oracle::cutoff_grid(&pot, 1.0);
    let v = g.sample(|z| pot.value(z));
    let l = oracle::numerov_scatter(&v, 1.0, &g).ok().and_then(|r| r.t);
    let r = oracle::numerov_scatter_from_right(&v, 1.0, &g)
        .ok()
        .and_then(|r| r.t);
    let d = match (l, r) {
        (Some(l), Some(r)) => (l - r).abs(),
        _ => f64::INFINITY,
    };
    s.bound("left/right incidence symmetry", d, 1e-8);

    match oracle::cutoff_sweep(1.0, 1.0, 1.0, &oracle::DEFAULT_DELTAS) {
        Ok(ts) => {
            let dec = ts.windows(2).all(|w| w[1].1 < w[0].1);
            let list: Vec<String> = ts.iter().map(|(d, t)| format!("{d}:{t:.6}")).collect();
            s.check(
                "cutoff Coulomb T(delta) strictly decreasing",
                dec,
                list.join(" "),
            );
        }
        Err(e) => s.check(
            "cutoff Coulomb T(delta) strictly decreasing",
            false,
            e.to_string(),
        ),
    }
    s
}

/// All suites with their default sample counts.
pub fn run_all() -> Vec<SuiteReport> {
    vec![
        specfun_suite(1000),
        regimes_suite(1000),
        mild_suite(1000),
        coulomb_suite(100),
        highorder_suite(1000),
        oracle_suite(),
    ]
}
