//! Independent numerical oracles for the closed forms: fixed-step classical
//! RK4 integration of the governing fourth-order ODE, of the two-level
//! complex system behind the kinematic construction, and of the
//! rolling-sphere frame equations, plus the Hopf map joining them and the
//! rigid-motion alignment back to the canonical initial conditions.
//!
//! Fixed step keeps the integrator deterministic and trivially
//! order-checkable; all right-hand sides here are smooth, so adaptivity
//! would buy nothing.

use crate::curve::{CurveParams, Vec3};
use crate::error::{Error, Result};
use crate::Complex;

/// A fixed-step integration result: strictly increasing arc lengths at a
/// constant step, with one flat state vector per sample.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<(f64, Vec<f64>)>,
    pub step: f64,
    pub dim: usize,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// The leading three state components at sample `i`, for trajectories
    /// whose state starts with a position.
    pub fn vec3_at(&self, i: usize) -> Vec3 {
        let st = &self.samples[i].1;
        Vec3::new(st[0], st[1], st[2])
    }
}

/// Orthogonal rotation (determinant +1) plus translation.
#[derive(Debug, Clone, Copy)]
pub struct RigidMotion {
    pub rotation: [[f64; 3]; 3],
    pub translation: Vec3,
}

impl RigidMotion {
    pub fn apply(&self, v: Vec3) -> Vec3 {
        let r = &self.rotation;
        Vec3::new(
            r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z + self.translation.x,
            r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z + self.translation.y,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z + self.translation.z,
        )
    }

    /// Max absolute entry of RᵀR − I; zero for an exactly orthogonal rotation.
    pub fn orthogonality_defect(&self) -> f64 {
        let r = &self.rotation;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = r.iter().map(|row| row[i] * row[j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Classical fixed-step fourth-order Runge-Kutta over `s_span`.
///
/// The step count is rounded so the grid lands exactly on the right
/// endpoint; the actual step (stored in the result) may therefore differ
/// from `h` by less than one part in the step count.
pub fn rk4(
    deriv: impl Fn(f64, &[f64], &mut [f64]),
    state0: &[f64],
    s_span: (f64, f64),
    h: f64,
) -> Result<Trajectory> {
    if h <= 0.0 || h.is_nan() {
        return Err(Error::Domain(format!("step must be positive, got {}", h)));
    }
    if s_span.1 < s_span.0 {
        return Err(Error::Domain("s_span must be non-decreasing".into()));
    }
    let dim = state0.len();
    let length = s_span.1 - s_span.0;
    let n = (length / h).round().max(if length > 0.0 { 1.0 } else { 0.0 }) as usize;
    let hh = if n > 0 { length / n as f64 } else { h };

    let mut state = state0.to_vec();
    let mut samples = Vec::with_capacity(n + 1);
    samples.push((s_span.0, state.clone()));

    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    for i in 0..n {
        let s = s_span.0 + i as f64 * hh;
        deriv(s, &state, &mut k1);
        for j in 0..dim {
            tmp[j] = state[j] + 0.5 * hh * k1[j];
        }
        deriv(s + 0.5 * hh, &tmp, &mut k2);
        for j in 0..dim {
            tmp[j] = state[j] + 0.5 * hh * k2[j];
        }
        deriv(s + 0.5 * hh, &tmp, &mut k3);
        for j in 0..dim {
            tmp[j] = state[j] + hh * k3[j];
        }
        deriv(s + hh, &tmp, &mut k4);
        for j in 0..dim {
            state[j] += hh / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            if !state[j].is_finite() {
                return Err(Error::Overflow(format!("non-finite state at s = {}", s + hh)));
            }
        }
        samples.push((s_span.0 + (i + 1) as f64 * hh, state.clone()));
    }

    Ok(Trajectory {
        samples,
        step: hh,
        dim,
    })
}

/// Integrate the governing fourth-order ODE
/// r'''' + (α²s²+1) r'' + 3α²s r' = 0 with its canonical initial conditions,
/// as a 12-dimensional first-order system (r, r', r'', r''' stacked).
pub fn integrate_mehlum_ode(p: &CurveParams, s_max: f64, h: f64) -> Result<Trajectory> {
    let alpha = p.alpha();
    let state0 = [
        0.0, 0.0, 0.0, // r
        1.0, 0.0, 0.0, // r'
        0.0, 1.0, 0.0, // r''
        -1.0, 0.0, alpha, // r'''
    ];
    let a2 = alpha * alpha;
    rk4(
        move |s, y, dy| {
            dy[..9].copy_from_slice(&y[3..12]);
            let c2 = -(a2 * s * s + 1.0);
            let c1 = -3.0 * a2 * s;
            for k in 0..3 {
                dy[9 + k] = c2 * y[6 + k] + c1 * y[3 + k];
            }
        },
        &state0,
        (0.0, s_max),
        h,
    )
}

/// Integrate the two-level complex system
/// i (a, b)' = −(1/2) [[0, e^{−iαs²/2}], [e^{iαs²/2}, 0]] (a, b)
/// from (a, b)(0) = (1, 0), as four real dimensions (Re a, Im a, Re b, Im b).
/// The evolution is unitary, so |a|² + |b|² is conserved.
pub fn integrate_two_level(alpha: f64, s_max: f64, h: f64) -> Result<Trajectory> {
    let state0 = [1.0, 0.0, 0.0, 0.0];
    rk4(
        move |s, y, dy| {
            let a = Complex::new(y[0], y[1]);
            let b = Complex::new(y[2], y[3]);
            let phase = Complex::from_polar(1.0, -alpha * s * s / 2.0);
            let da = Complex::new(0.0, 0.5) * b * phase;
            let db = Complex::new(0.0, 0.5) * a * phase.conj();
            dy[0] = da.re;
            dy[1] = da.im;
            dy[2] = db.re;
            dy[3] = db.im;
        },
        &state0,
        (0.0, s_max),
        h,
    )
}

/// The Feynman-Vernon-Hellwarth (Hopf) map from a complex pair to a real
/// 3-vector: (ab* + ba*, i(ab* − ba*), aa* − bb*).
pub fn hopf_map(a: Complex, b: Complex) -> Vec3 {
    let ab = a * b.conj();
    Vec3::new(2.0 * ab.re, -2.0 * ab.im, a.norm_sqr() - b.norm_sqr())
}

/// Complex pair (a, b) at sample `i` of a two-level trajectory.
pub fn two_level_pair(traj: &Trajectory, i: usize) -> (Complex, Complex) {
    let st = &traj.samples[i].1;
    (Complex::new(st[0], st[1]), Complex::new(st[2], st[3]))
}

/// Map a two-level trajectory onto the sphere point that traces the curve
/// itself: the Hopf image of the conjugated pair, hopf_map(ā, b).
///
/// The direct image hopf_map(a, b) solves the rolling-frame equation but is
/// not unit-speed, so no rigid motion takes it to the arc-length curve. The
/// conjugated pairing gives (2 Re(ab), 2 Im(ab), |a|²−|b|²), which is
/// exactly congruent to the closed form: the curve equals the proper
/// rotation [[0,1,0],[0,0,−1],[−1,0,0]] of it, translated by (0,1,0).
pub fn curve_trace_from_two_level(traj: &Trajectory) -> Result<Trajectory> {
    if traj.dim != 4 {
        return Err(Error::Domain("expected a two-level trajectory (4 real dimensions)".into()));
    }
    let samples = (0..traj.len())
        .map(|i| {
            let (a, b) = two_level_pair(traj, i);
            let v = hopf_map(a.conj(), b);
            (traj.samples[i].0, vec![v.x, v.y, v.z])
        })
        .collect();
    Ok(Trajectory {
        samples,
        step: traj.step,
        dim: 3,
    })
}

/// Integrate the rolling-sphere frame equation: the skew-symmetric system
/// driven by sin(αs²/2), cos(αs²/2) describing a unit sphere rolling
/// without slipping or twisting on a planar clothoid, from (0, 0, 1).
pub fn integrate_rolling_frame(alpha: f64, s_max: f64, h: f64) -> Result<Trajectory> {
    let state0 = [0.0, 0.0, 1.0];
    rk4(
        move |s, y, dy| {
            let (sin, cos) = (alpha * s * s / 2.0).sin_cos();
            dy[0] = -sin * y[2];
            dy[1] = cos * y[2];
            dy[2] = sin * y[0] - cos * y[1];
        },
        &state0,
        (0.0, s_max),
        h,
    )
}

/// Fourth-order one-sided finite-difference first and second derivatives at
/// the first sample of a 3-dimensional trajectory.
fn endpoint_derivatives(traj: &Trajectory) -> Result<(Vec3, Vec3)> {
    if traj.dim != 3 || traj.len() < 6 {
        return Err(Error::Domain("frame alignment needs a 3-dimensional trajectory with at least 6 samples".into()));
    }
    let h = traj.step;
    let f: Vec<Vec3> = (0..6).map(|i| traj.vec3_at(i)).collect();
    let d1 = (f[0].scale(-25.0) + f[1].scale(48.0) + f[2].scale(-36.0) + f[3].scale(16.0) + f[4].scale(-3.0))
        .scale(1.0 / (12.0 * h));
    let d2 = (f[0].scale(45.0)
        + f[1].scale(-154.0)
        + f[2].scale(214.0)
        + f[3].scale(-156.0)
        + f[4].scale(61.0)
        + f[5].scale(-10.0))
    .scale(1.0 / (12.0 * h * h));
    Ok((d1, d2))
}

/// Find the rigid motion taking a curve trajectory into the canonical frame
/// c(0) = 0, c'(0) = (1,0,0), c''(0) = (0,1,0), and return it together with
/// the transformed trajectory.
///
/// The rotation comes from Gram-Schmidt on the endpoint derivatives, so it
/// is orthogonal by construction; derivatives are estimated from the first
/// six samples with fourth-order one-sided stencils.
pub fn align_to_mehlum_frame(traj: &Trajectory) -> Result<(RigidMotion, Trajectory)> {
    let (d1, d2) = endpoint_derivatives(traj)?;
    if d1.norm() < 1e-8 {
        return Err(Error::DegenerateFrame(format!("|c'(0)| = {} too small", d1.norm())));
    }
    let t1 = d1.scale(1.0 / d1.norm());
    let ortho = d2 - t1.scale(d2.dot(t1));
    if ortho.norm() < 1e-8 {
        return Err(Error::DegenerateFrame("c'(0) and c''(0) nearly parallel".into()));
    }
    let e2 = ortho.scale(1.0 / ortho.norm());
    let e3 = t1.cross(e2);

    // Rows t1, e2, e3 map the observed frame onto the canonical axes.
    let rotation = [[t1.x, t1.y, t1.z], [e2.x, e2.y, e2.z], [e3.x, e3.y, e3.z]];
    let p0 = traj.vec3_at(0);
    let rotated_p0 = Vec3::new(
        rotation[0][0] * p0.x + rotation[0][1] * p0.y + rotation[0][2] * p0.z,
        rotation[1][0] * p0.x + rotation[1][1] * p0.y + rotation[1][2] * p0.z,
        rotation[2][0] * p0.x + rotation[2][1] * p0.y + rotation[2][2] * p0.z,
    );
    let motion = RigidMotion {
        rotation,
        translation: Vec3::new(-rotated_p0.x, -rotated_p0.y, -rotated_p0.z),
    };

    let samples = traj
        .samples
        .iter()
        .map(|(s, st)| {
            let v = motion.apply(Vec3::new(st[0], st[1], st[2]));
            (*s, vec![v.x, v.y, v.z])
        })
        .collect();
    Ok((
        motion,
        Trajectory {
            samples,
            step: traj.step,
            dim: 3,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{eval_position, CurveParams};
    use crate::series::SeriesControl;
    use crate::special::hyp1f1;

    #[test]
    fn rk4_constant_derivative() {
        let traj = rk4(|_, _, dy| dy.fill(0.0), &[1.0, -2.0], (0.0, 1.0), 0.1).unwrap();
        assert_eq!(traj.len(), 11);
        for (_, st) in &traj.samples {
            assert_eq!(st, &vec![1.0, -2.0]);
        }
    }

    #[test]
    fn rk4_exponential() {
        let traj = rk4(|_, y, dy| dy[0] = y[0], &[1.0], (0.0, 1.0), 1e-3).unwrap();
        let y1 = traj.samples.last().unwrap().1[0];
        assert!((y1 - std::f64::consts::E).abs() < 1e-10);
    }

    #[test]
    fn rk4_harmonic_energy_drift() {
        let traj = rk4(
            |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            &[1.0, 0.0],
            (0.0, 2.0 * std::f64::consts::PI),
            1e-3,
        )
        .unwrap();
        for (_, st) in &traj.samples {
            let energy = st[0] * st[0] + st[1] * st[1];
            assert!((energy - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rk4_rejects_bad_inputs() {
        assert!(rk4(|_, _, dy| dy.fill(0.0), &[0.0], (0.0, 1.0), 0.0).is_err());
        assert!(rk4(|_, _, dy| dy.fill(0.0), &[0.0], (1.0, 0.0), 0.1).is_err());
        // zero-length span gives a single-sample trajectory
        let traj = rk4(|_, _, dy| dy.fill(0.0), &[3.0], (0.0, 0.0), 0.1).unwrap();
        assert_eq!(traj.len(), 1);
    }

    #[test]
    fn mehlum_ode_initial_state_and_oracle_match() {
        let p = CurveParams::new(1.0).unwrap();
        let traj = integrate_mehlum_ode(&p, 1.0, 1e-3).unwrap();
        let (s0, st0) = &traj.samples[0];
        assert_eq!(*s0, 0.0);
        assert_eq!(st0[3..6], [1.0, 0.0, 0.0]);
        assert_eq!(st0[9..12], [-1.0, 0.0, 1.0]);

        let ctrl = SeriesControl::default();
        let end = traj.vec3_at(traj.len() - 1);
        let closed = eval_position(&p, 1.0, ctrl).unwrap();
        assert!((end - closed).norm() < 1e-6, "deviation {}", (end - closed).norm());

        // independent sphericity confirmation at s = 2
        let traj = integrate_mehlum_ode(&p, 2.0, 1e-3).unwrap();
        let r = traj.vec3_at(traj.len() - 1);
        let sphere = r.x * r.x + (r.y - 1.0) * (r.y - 1.0) + r.z * r.z - 1.0;
        assert!(sphere.abs() < 1e-6);
    }

    #[test]
    fn rk4_order_check() {
        // halving h cuts the error by >= 12x (16 expected, slack for roundoff)
        let p = CurveParams::new(1.0).unwrap();
        let ctrl = SeriesControl::default();
        let closed = eval_position(&p, 1.0, ctrl).unwrap();
        let err = |h: f64| {
            let traj = integrate_mehlum_ode(&p, 1.0, h).unwrap();
            (traj.vec3_at(traj.len() - 1) - closed).norm()
        };
        let e1 = err(0.02);
        let e2 = err(0.01);
        assert!(e1 / e2 >= 12.0, "order ratio {} (errors {} / {})", e1 / e2, e1, e2);
    }

    #[test]
    fn two_level_initial_conditions_and_norm() {
        let traj = integrate_two_level(1.0, 2.0, 1e-3).unwrap();
        let (a0, b0) = two_level_pair(&traj, 0);
        assert_eq!((a0, b0), (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)));
        for i in 0..traj.len() {
            let (a, b) = two_level_pair(&traj, i);
            assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn two_level_matches_kummer_closed_forms() {
        // a(s) = 1F1(-i/(8a), 1/2; -ia s^2/2),
        // b(s) = (is/2) 1F1(1/2 + i/(8a), 3/2; ia s^2/2)
        let alpha = 1.0;
        let ctrl = SeriesControl::default();
        let traj = integrate_two_level(alpha, 1.0, 1e-3).unwrap();
        let (a, b) = two_level_pair(&traj, traj.len() - 1);
        let w = Complex::new(0.0, alpha / 2.0);
        let a_closed = hyp1f1(Complex::new(0.0, -0.125), Complex::new(0.5, 0.0), -w, ctrl).unwrap().value;
        let b_closed =
            Complex::new(0.0, 0.5) * hyp1f1(Complex::new(0.5, 0.125), Complex::new(1.5, 0.0), w, ctrl).unwrap().value;
        assert!((a - a_closed).norm() < 1e-8, "a: {} vs {}", a, a_closed);
        assert!((b - b_closed).norm() < 1e-8, "b: {} vs {}", b, b_closed);
    }

    #[test]
    fn hopf_map_values() {
        let north = hopf_map(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
        assert_eq!((north.x, north.y, north.z), (0.0, 0.0, 1.0));
        let south = hopf_map(Complex::new(0.0, 0.0), Complex::new(1.0, 0.0));
        assert_eq!((south.x, south.y, south.z), (0.0, 0.0, -1.0));
        // direct substitution: ab* = i/2, so the image is (0, -1, 0)
        let v = hopf_map(Complex::new(0.5, 0.5), Complex::new(0.5, -0.5));
        assert!((v - Vec3::new(0.0, -1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rolling_frame_norm_and_hopf_consistency() {
        let alpha = 1.0;
        let rolling = integrate_rolling_frame(alpha, 2.0, 1e-3).unwrap();
        assert_eq!(rolling.vec3_at(0), Vec3::new(0.0, 0.0, 1.0));
        let two_level = integrate_two_level(alpha, 2.0, 1e-3).unwrap();
        for i in (0..rolling.len()).step_by(100) {
            let v = rolling.vec3_at(i);
            assert!((v.norm() - 1.0).abs() < 1e-10);
            let (a, b) = two_level_pair(&two_level, i);
            assert!((v - hopf_map(a, b)).norm() < 1e-8, "sample {}", i);
        }
    }

    #[test]
    fn aligned_curve_trace_matches_closed_form() {
        // end-to-end kinematic oracle: two-level flow -> conjugate Hopf
        // image -> rigid motion -> closed form
        let alpha = 1.0;
        let p = CurveParams::new(alpha).unwrap();
        let ctrl = SeriesControl::default();
        let two_level = integrate_two_level(alpha, 3.0, 1e-3).unwrap();
        let trace = curve_trace_from_two_level(&two_level).unwrap();
        let (motion, aligned) = align_to_mehlum_frame(&trace).unwrap();
        assert!(motion.orthogonality_defect() < 1e-12);
        let mut worst: f64 = 0.0;
        for i in (0..aligned.len()).step_by(50) {
            let (s, _) = aligned.samples[i];
            let closed = eval_position(&p, s, ctrl).unwrap();
            worst = worst.max((aligned.vec3_at(i) - closed).norm());
        }
        assert!(worst < 1e-6, "worst deviation {}", worst);
        // the recovered motion is the expected permutation rotation
        let expected = [[0.0, 1.0, 0.0], [0.0, 0.0, -1.0], [-1.0, 0.0, 0.0]];
        for (row, want_row) in motion.rotation.iter().zip(&expected) {
            for (got, want) in row.iter().zip(want_row) {
                assert!((got - want).abs() < 1e-7);
            }
        }
        assert!((motion.translation - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn alignment_of_already_canonical_curve_is_identity() {
        let p = CurveParams::new(1.0).unwrap();
        let ctrl = SeriesControl::default();
        let h = 1e-3;
        let samples: Vec<(f64, Vec<f64>)> = (0..=1000)
            .map(|i| {
                let s = i as f64 * h;
                let r = eval_position(&p, s, ctrl).unwrap();
                (s, vec![r.x, r.y, r.z])
            })
            .collect();
        let traj = Trajectory {
            samples,
            step: h,
            dim: 3,
        };
        let (motion, aligned) = align_to_mehlum_frame(&traj).unwrap();
        assert!(motion.orthogonality_defect() < 1e-12);
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((motion.rotation[i][j] - target).abs() < 1e-8);
            }
        }
        assert!(motion.translation.norm() < 1e-8);
        let dev = (aligned.vec3_at(1000) - traj.vec3_at(1000)).norm();
        assert!(dev < 1e-8);
    }

    #[test]
    fn alignment_rejects_degenerate_input() {
        let constant = Trajectory {
            samples: (0..10).map(|i| (i as f64 * 0.1, vec![1.0, 2.0, 3.0])).collect(),
            step: 0.1,
            dim: 3,
        };
        assert!(matches!(align_to_mehlum_frame(&constant), Err(Error::DegenerateFrame(_))));
    }
}
