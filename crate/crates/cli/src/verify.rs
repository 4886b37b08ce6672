//! The `verify` battery: every identity, residual and oracle comparison the
//! library promises, evaluated on fixed grids plus seeded random draws.
//!
//! Each check reports `worst`, the largest ratio of an observed residual to
//! its pointwise tolerance; a check passes when that ratio is at most
//! `limit` (1 by default, overridable with --tol, which is how a forced
//! failure is injected).

use serde::Serialize;
use spherical_clothoid::curve::{self, CurveParams};
use spherical_clothoid::humbert;
use spherical_clothoid::identities;
use spherical_clothoid::mp_polys::{self, GenCase, MPParams};
use spherical_clothoid::oracle;
use spherical_clothoid::special::{hyp1f1, hyp2f1};
use spherical_clothoid::{Complex, DoubleSeriesControl, Error, SeriesControl};

#[derive(Serialize)]
pub struct VerifyCheck {
    pub name: String,
    /// Largest residual-to-tolerance ratio observed.
    pub worst: f64,
    pub limit: f64,
    pub passed: bool,
}

struct Battery {
    checks: Vec<VerifyCheck>,
    limit: f64,
}

impl Battery {
    fn push(&mut self, name: &str, result: Result<f64, Error>) {
        let worst = match result {
            Ok(r) => r,
            Err(e) => {
                eprintln!("sphero verify: {} failed to evaluate: {}", name, e);
                f64::INFINITY
            }
        };
        self.checks.push(VerifyCheck {
            name: name.to_string(),
            worst,
            limit: self.limit,
            passed: worst <= self.limit,
        });
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

pub fn run_battery(
    seed: u64,
    n_random: usize,
    ctrl: SeriesControl,
    tol_override: Option<f64>,
) -> Result<Vec<VerifyCheck>, Error> {
    let dctrl = DoubleSeriesControl::default();
    let mut battery = Battery {
        checks: Vec::new(),
        limit: tol_override.unwrap_or(1.0),
    };

    // identity suite
    for report in identities::run_suite(seed, n_random, ctrl) {
        let residual = if report.rhs.norm() < 1e-8 {
            report.abs_residual
        } else {
            report.rel_residual
        };
        let ratio = residual / report.tolerance.max(1e-300);
        battery.checks.push(VerifyCheck {
            name: format!("identity/{}", report.name),
            worst: ratio,
            limit: battery.limit,
            passed: ratio <= battery.limit,
        });
    }

    // geometry invariants on the grid, with the cancellation-aware tolerance
    let alphas = [0.25, 1.0, 2.0];
    let s_grid = grid(-3.0, 3.0, 25);
    let tol_at = |alpha: f64, s: f64| 1e-6 * ((alpha * s * s / 2.0).abs() / 10.0).exp();
    for (name, f) in [
        ("curve/sphere_residual", 0usize),
        ("curve/unit_speed", 1),
        ("curve/curvature_law", 2),
        ("curve/torsion_law", 3),
        ("curve/kappa_g_law", 4),
    ] {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for &alpha in &alphas {
                let p = CurveParams::new(alpha)?;
                for &s in &s_grid {
                    let sample = curve::frenet(&p, s, ctrl)?;
                    let residual = match f {
                        0 => curve::residual_sphere(&p, s, ctrl)?.abs(),
                        1 => (sample.derivs[0].norm() - 1.0).abs(),
                        2 => (sample.kappa * sample.kappa - (alpha * alpha * s * s + 1.0)).abs(),
                        3 => (sample.kappa * sample.kappa * sample.tau - alpha).abs(),
                        _ => (sample.kappa_g - alpha * s).abs(),
                    };
                    worst = worst.max(residual / tol_at(alpha, s));
                }
            }
            Ok(worst)
        };
        battery.push(name, run());
    }

    // governing-ODE residual by full analytic differentiation
    battery.push("curve/ode_residual", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for alpha in [0.25, 1.0] {
                let p = CurveParams::new(alpha)?;
                for s in [0.5, 1.0, 2.0] {
                    let r = curve::residual_ode(&p, s, ctrl)?.norm();
                    worst = worst.max(r / (1e-8 * (1.0 + alpha * alpha * s * s)));
                }
            }
            Ok(worst)
        };
        run()
    });

    // intrinsic sphericity condition (finite-difference limited)
    battery.push("curve/sphericity_condition", {
        let run = || -> Result<f64, Error> {
            let p = CurveParams::new(1.0)?;
            let mut worst: f64 = 0.0;
            for s in [0.5, 1.0, 2.0] {
                worst = worst.max(curve::residual_sphericity(&p, s, ctrl)?.abs() / 1e-4);
            }
            Ok(worst)
        };
        run()
    });

    // curvature ODE residual
    battery.push("curve/kappa_sq_ode", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for alpha in [1.0, 3.0] {
                let p = CurveParams::new(alpha)?;
                for s in [0.0, 0.5, 1.0, 1.5] {
                    let r = curve::residual_kappa_sq_ode(&p, s, ctrl)?.abs();
                    let scale = (1.0 + alpha * alpha * s * s).powi(2);
                    worst = worst.max(r / (1e-9 * scale));
                }
            }
            Ok(worst)
        };
        run()
    });

    // projection triple agreement
    battery.push("projection/triple_agreement", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.0] {
                let p = CurveParams::new(alpha)?;
                for &s in &grid(0.0, 3.0, 13) {
                    let quot = curve::stereographic(&p, s, ctrl)?;
                    let point = curve::project_point(curve::eval_position(&p, s, ctrl)?)?;
                    let pcf = curve::stereographic_pcf(&p, s)?;
                    let scale = quot.norm().max(1.0);
                    let dev = (quot - point).norm().max((quot - pcf).norm()).max((point - pcf).norm());
                    worst = worst.max(dev / (1e-10 * scale));
                }
            }
            Ok(worst)
        };
        run()
    });

    // closed form vs the integrated governing ODE
    battery.push("oracle/closed_vs_ode", {
        let run = || -> Result<f64, Error> {
            let p = CurveParams::new(1.0)?;
            let traj = oracle::integrate_mehlum_ode(&p, 3.0, 1e-3)?;
            let mut worst: f64 = 0.0;
            for i in 0..traj.len() {
                let (s, _) = traj.samples[i];
                let closed = curve::eval_position(&p, s, ctrl)?;
                worst = worst.max((traj.vec3_at(i) - closed).norm() / 1e-6);
            }
            Ok(worst)
        };
        run()
    });

    // two-level system: unitarity and the Kummer closed forms
    battery.push("oracle/two_level", {
        let run = || -> Result<f64, Error> {
            let alpha = 1.0;
            let traj = oracle::integrate_two_level(alpha, 3.0, 1e-3)?;
            let mut worst: f64 = 0.0;
            for i in 0..traj.len() {
                let (s, _) = traj.samples[i];
                let (a, b) = oracle::two_level_pair(&traj, i);
                worst = worst.max((a.norm_sqr() + b.norm_sqr() - 1.0).abs() / 1e-10);
                if i % 100 == 0 {
                    let w = Complex::new(0.0, alpha * s * s / 2.0);
                    let a_closed = hyp1f1(Complex::new(0.0, -1.0 / (8.0 * alpha)), Complex::new(0.5, 0.0), -w, ctrl)?.value;
                    let b_closed = Complex::new(0.0, s / 2.0)
                        * hyp1f1(Complex::new(0.5, 1.0 / (8.0 * alpha)), Complex::new(1.5, 0.0), w, ctrl)?.value;
                    worst = worst.max((a - a_closed).norm() / 1e-8);
                    worst = worst.max((b - b_closed).norm() / 1e-8);
                }
            }
            Ok(worst)
        };
        run()
    });

    // rolling frame = Hopf image of the two-level flow
    battery.push("oracle/hopf_vs_rolling", {
        let run = || -> Result<f64, Error> {
            let rolling = oracle::integrate_rolling_frame(1.0, 3.0, 1e-3)?;
            let two_level = oracle::integrate_two_level(1.0, 3.0, 1e-3)?;
            let mut worst: f64 = 0.0;
            for i in 0..rolling.len() {
                let (a, b) = oracle::two_level_pair(&two_level, i);
                let dev = (rolling.vec3_at(i) - oracle::hopf_map(a, b)).norm();
                worst = worst.max(dev / 1e-8);
            }
            Ok(worst)
        };
        run()
    });

    // rigid-motion-aligned kinematic curve trace = closed form
    battery.push("oracle/aligned_vs_closed", {
        let run = || -> Result<f64, Error> {
            let p = CurveParams::new(1.0)?;
            let two_level = oracle::integrate_two_level(1.0, 3.0, 1e-3)?;
            let trace = oracle::curve_trace_from_two_level(&two_level)?;
            let (motion, aligned) = oracle::align_to_mehlum_frame(&trace)?;
            let mut worst = motion.orthogonality_defect() / 1e-12;
            for i in 0..aligned.len() {
                let (s, _) = aligned.samples[i];
                let closed = curve::eval_position(&p, s, ctrl)?;
                worst = worst.max((aligned.vec3_at(i) - closed).norm() / 1e-6);
            }
            Ok(worst)
        };
        run()
    });

    // Meixner-Pollaczek machinery
    battery.push("polys/recurrence_residual", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for (x, c) in [(0.25, 0.5), (0.25, 1.0), (0.25, 1.5), (1.0, 0.5), (-0.7, 1.2)] {
                let seq = mp_polys::mp_sequence(
                    MPParams {
                        lambda: 0.0,
                        x,
                        phi: std::f64::consts::FRAC_PI_2,
                        c,
                    },
                    100,
                )?;
                worst = worst.max(seq.worst_relative_residual() / 1e-12);
            }
            Ok(worst)
        };
        run()
    });

    battery.push("polys/coordinate_series", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for alpha in [0.25, 1.0, 2.0] {
                let p = CurveParams::new(alpha)?;
                for s in [-1.0, -0.5, -0.25, 0.25, 0.5, 1.0] {
                    let r = curve::eval_position(&p, s, ctrl)?;
                    worst = worst.max((mp_polys::series_x(&p, s, 48)? - r.x).abs() / 1e-9);
                    worst = worst.max((mp_polys::series_y(&p, s, 48)? - r.y).abs() / 1e-9);
                    worst = worst.max((mp_polys::series_z(&p, s, 48)? - r.z).abs() / 1e-9);
                }
            }
            Ok(worst)
        };
        run()
    });

    battery.push("polys/generating_functions", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for case in [GenCase::Half, GenCase::One, GenCase::ThreeHalf] {
                for x in [0.1, 0.25, 1.0] {
                    for t in [-1.0, -0.5, -0.1, 0.1, 0.5, 1.0] {
                        let lhs = mp_polys::genfun_lhs(case, x, t, 48)?;
                        let rhs = mp_polys::genfun_rhs(case, x, t, ctrl)?;
                        worst = worst.max((lhs - rhs).abs() / (1e-9 * rhs.abs().max(1.0)));
                    }
                }
            }
            Ok(worst)
        };
        run()
    });

    // Humbert slice reductions and the single-sum route
    battery.push("humbert/slices", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            let zero = Complex::new(0.0, 0.0);
            for (q, y) in [(0.25, 0.5), (-0.4, 2.0), (0.1, -1.3)] {
                let a = Complex::new(1.0, q);
                let b = Complex::new(0.0, q);
                let cc = Complex::new(1.5, q);
                let yv = Complex::new(0.0, y);
                let f1 = humbert::phi1(a, b, cc, zero, yv, dctrl)?.value;
                let k1 = hyp1f1(a, cc, yv, ctrl)?.value;
                worst = worst.max((f1 - k1).norm() / (1e-11 * k1.norm().max(1.0)));
                let f2 = humbert::phi2(b, -b, cc, yv, zero, dctrl)?.value;
                let k2 = hyp1f1(b, cc, yv, ctrl)?.value;
                worst = worst.max((f2 - k2).norm() / (1e-11 * k2.norm().max(1.0)));
                let f3 = humbert::xi1(a, b, a, cc, zero, yv, dctrl)?.value;
                let k3 = hyp1f1(b, cc, yv, ctrl)?.value;
                worst = worst.max((f3 - k3).norm() / (1e-11 * k3.norm().max(1.0)));
                // y = 0 slice of phi1 is the Gauss series
                let x = Complex::new(0.4, 0.0);
                let f4 = humbert::phi1(a, b, cc, x, zero, dctrl)?.value;
                let k4 = hyp2f1(a, b, cc, 0.4, ctrl)?.value;
                worst = worst.max((f4 - k4).norm() / (1e-11 * k4.norm().max(1.0)));
            }
            Ok(worst)
        };
        run()
    });

    battery.push("humbert/xi1_single_sum", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for (alpha, s) in [(1.0, 1.0), (0.5, 1.5)] {
                let q = 1.0 / (4.0 * alpha);
                let a1 = Complex::new(0.0, q);
                let a2 = Complex::new(0.5, 0.0);
                let b = a1 + 1.0;
                let cc = a1 + 1.5;
                let y = Complex::new(0.0, -alpha * s * s / 2.0);
                let single = humbert::xi1_single_sum(a1, a2, b, cc, 0.5, y, 48)?;
                let rect = humbert::xi1(a1, a2, b, cc, Complex::new(0.5, 0.0), y, dctrl)?.value;
                worst = worst.max((single - rect).norm() / 1e-10);
            }
            Ok(worst)
        };
        run()
    });

    battery.push("humbert/mehlum_coordinates", {
        let run = || -> Result<f64, Error> {
            let mut worst: f64 = 0.0;
            for alpha in [0.5, 1.0] {
                let p = CurveParams::new(alpha)?;
                for s in [0.5, 1.0] {
                    let r = curve::eval_position(&p, s, ctrl)?;
                    let y2 = curve::mehlum_y(&p, s, dctrl)?;
                    worst = worst.max((y2 - r.y).abs() / 1e-8);
                    let xz = curve::mehlum_xz(&p, s, dctrl)?;
                    let direct = Complex::new(r.x, r.z);
                    worst = worst.max((xz - direct).norm() / (1e-8 * direct.norm().max(1.0)));
                }
            }
            Ok(worst)
        };
        run()
    });

    Ok(battery.checks)
}
