//! Residual evaluators for every identity tying the crate's evaluation
//! routes together: the φ₂ reduction formula, the φ₁ identity, Mitra's two
//! ₂F₁ closed forms at z = 1/2, the contiguous-relation companion, and the
//! u/v determination checks, packaged as a deterministic seeded suite with
//! a machine-readable JSON report.
//!
//! Gamma prefactors appear as products of Γ and Γ² factors that can
//! overflow individually but not jointly, so every prefactor is assembled
//! in log space and exponentiated once.

use crate::curve::uv_coefficients;
use crate::error::{Error, Result};
use crate::humbert::{phi1, phi2};
use crate::series::{DoubleSeriesControl, SeriesControl};
use crate::special::{hyp1f1, hyp2f1, ln_gamma};
use crate::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

fn complex_as_object<S: Serializer>(z: &Complex, s: S) -> std::result::Result<S::Ok, S::Error> {
    ComplexJson { re: z.re, im: z.im }.serialize(s)
}

fn complex_vec_as_objects<S: Serializer>(v: &[Complex], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| ComplexJson { re: z.re, im: z.im }))
}

/// Outcome of one identity evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub name: String,
    #[serde(serialize_with = "complex_vec_as_objects")]
    pub inputs: Vec<Complex>,
    #[serde(serialize_with = "complex_as_object")]
    pub lhs: Complex,
    #[serde(serialize_with = "complex_as_object")]
    pub rhs: Complex,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub passed: bool,
    pub tolerance: f64,
}

impl IdentityReport {
    fn new(name: &str, inputs: Vec<Complex>, lhs: Complex, rhs: Complex, tolerance: f64) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = abs_residual / rhs.norm().max(1e-300);
        // identities pass through zeros of the right side, where only the
        // absolute residual is meaningful
        let passed = if rhs.norm() < 1e-8 {
            abs_residual <= tolerance
        } else {
            rel_residual <= tolerance
        };
        IdentityReport {
            name: name.to_string(),
            inputs,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            passed,
            tolerance,
        }
    }

    /// Same evaluation, different pass bar.
    fn with_tolerance(self, tolerance: f64) -> Self {
        IdentityReport::new(&self.name, self.inputs, self.lhs, self.rhs, tolerance)
    }
}

/// Serialize reports as a JSON array (complex values as {re, im} objects).
pub fn reports_to_json(reports: &[IdentityReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports are always serializable")
}

/// Default pass bar inside the documented parameter boxes.
const BOX_TOLERANCE: f64 = 1e-8;
/// Pass bar at the curve-regime parameter points.
const REGIME_TOLERANCE: f64 = 1e-9;

/// exp(ln_pre + Σ lnΓ(num) − Σ lnΓ(den)). A gamma pole in a denominator
/// argument sends the whole term to zero (reciprocal gamma is entire); a
/// pole in a numerator argument is a real error.
fn gamma_product(ln_pre: Complex, num: &[Complex], den: &[Complex]) -> Result<Complex> {
    let mut acc = ln_pre;
    for &z in num {
        acc += ln_gamma(z)?;
    }
    for &z in den {
        match ln_gamma(z) {
            Ok(lg) => acc -= lg,
            Err(Error::Pole { .. }) => return Ok(Complex::new(0.0, 0.0)),
            Err(e) => return Err(e),
        }
    }
    Ok(acc.exp())
}

const HALF_LN_PI: f64 = 0.5723649429247001; // ln sqrt(pi)

/// Residual of the φ₂ reduction formula
/// φ₂(a, −a, 1/2; x, −x) = 2 ₁F₁(a/2, 1/2; x) ₁F₁(−a/2, 1/2; −x) − 1.
pub fn residual_phi2_reduction(a: Complex, x: Complex, ctrl: DoubleSeriesControl) -> Result<IdentityReport> {
    let half = Complex::new(0.5, 0.0);
    let sctrl = SeriesControl::default();
    let lhs = phi2(a, -a, half, x, -x, ctrl)?.value;
    let rhs = 2.0 * hyp1f1(a * 0.5, half, x, sctrl)?.value * hyp1f1(-a * 0.5, half, -x, sctrl)?.value - 1.0;
    Ok(IdentityReport::new("phi2_reduction", vec![a, x], lhs, rhs, BOX_TOLERANCE))
}

/// Residual of the φ₁ identity: the two gamma-prefactor combination of
/// e^{∓x} φ₁(±a+1, ±a, ±a+3/2; 1/2, ±x) against
/// ₁F₁(−a/2, 1/2; −x) ₁F₁(a/2+1/2, 3/2; x).
pub fn residual_phi1_identity(a: Complex, x: Complex, ctrl: DoubleSeriesControl) -> Result<IdentityReport> {
    if a.norm() < 1e-12 {
        return Err(Error::Domain("the phi1 identity prefactor divides by a".into()));
    }
    let half = Complex::new(0.5, 0.0);
    let ln_cos = (std::f64::consts::PI * a).cos().ln();

    // sqrt(pi) cos(pi a) Gamma(-a-1/2) / (a Gamma(-a/2)^2)
    let pre1 = gamma_product(
        HALF_LN_PI + ln_cos - a.ln(),
        &[-a - 0.5],
        &[-a * 0.5, -a * 0.5],
    )?;
    // -sqrt(pi) cos(pi a) Gamma(a-1/2) / (2 Gamma((a+1)/2)^2)
    let pre2 = -gamma_product(
        HALF_LN_PI + ln_cos - std::f64::consts::LN_2,
        &[a - 0.5],
        &[(a + 1.0) * 0.5, (a + 1.0) * 0.5],
    )?;

    let p1 = phi1(a + 1.0, a, a + 1.5, half, x, ctrl)?.value;
    let p2 = phi1(-a + 1.0, -a, -a + 1.5, half, -x, ctrl)?.value;
    let lhs = pre1 * (-x).exp() * p1 + pre2 * x.exp() * p2;

    let sctrl = SeriesControl::default();
    let rhs = hyp1f1(-a * 0.5, half, -x, sctrl)?.value * hyp1f1(a * 0.5 + 0.5, Complex::new(1.5, 0.0), x, sctrl)?.value;
    Ok(IdentityReport::new("phi1_identity", vec![a, x], lhs, rhs, BOX_TOLERANCE))
}

/// Which of Mitra's two ₂F₁(…; 1/2) gamma closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MitraKind {
    /// ₂F₁(a, a+1, a+1/2; 1/2)
    Half,
    /// ₂F₁(a, a+1, a+3/2; 1/2)
    ThreeHalf,
}

/// Residual of a Mitra identity: direct series on the left, gamma closed
/// form on the right.
pub fn residual_mitra(which: MitraKind, a: Complex, ctrl: SeriesControl) -> Result<IdentityReport> {
    let (shift, scale, sign, name): (f64, f64, f64, &str) = match which {
        MitraKind::Half => (0.5, 1.0, 1.0, "mitra_half"),
        MitraKind::ThreeHalf => (1.5, 2.0, -1.0, "mitra_three_half"),
    };
    let lhs = hyp2f1(a, a + 1.0, a + shift, 0.5, ctrl)?.value;
    let term1 = gamma_product(Complex::new(HALF_LN_PI + scale.ln(), 0.0), &[a + shift], &[a * 0.5 + 0.5, a * 0.5 + 0.5])?;
    let term2 = gamma_product(Complex::new(HALF_LN_PI + scale.ln(), 0.0), &[a + shift], &[a * 0.5 + 1.0, a * 0.5])?;
    let rhs = term1 + sign * term2;
    Ok(IdentityReport::new(name, vec![a], lhs, rhs, BOX_TOLERANCE))
}

/// Residual of the contiguous-relation companion identity
/// ₂F₁(a, a+1, a+5/2; 1/2) = (4/3)√π Γ(a+5/2) [(1−4a) Γ((a+1)/2)⁻² + (1+4a)(Γ(a/2+1)Γ(a/2))⁻¹].
pub fn residual_contiguous(a: Complex, ctrl: SeriesControl) -> Result<IdentityReport> {
    let lhs = hyp2f1(a, a + 1.0, a + 2.5, 0.5, ctrl)?.value;
    let base = Complex::new(HALF_LN_PI + (4.0f64 / 3.0).ln(), 0.0);
    let term1 = gamma_product(base, &[a + 2.5], &[a * 0.5 + 0.5, a * 0.5 + 0.5])?;
    let term2 = gamma_product(base, &[a + 2.5], &[a * 0.5 + 1.0, a * 0.5])?;
    let rhs = (1.0 - 4.0 * a) * term1 + (1.0 + 4.0 * a) * term2;
    Ok(IdentityReport::new("contiguous_2f1", vec![a], lhs, rhs, BOX_TOLERANCE))
}

/// Numerically replay the u/v determination: with b, b*, c, c* the gamma
/// expressions fixing the coefficients, u·b + v·b* = 1 and
/// 3!(u·c + v·c*) = −1 + iα.
pub fn check_uv_conditions(alpha: f64) -> Result<(IdentityReport, IdentityReport)> {
    if alpha == 0.0 || alpha.abs() < 0.05 {
        return Err(Error::Overflow(format!(
            "|alpha| >= 0.05 required to keep cosh(pi/(4 alpha)) representable, got {}",
            alpha
        )));
    }
    let (u, v) = uv_coefficients(alpha)?;
    let ia8 = Complex::new(0.0, 1.0 / (8.0 * alpha));
    let two_sqrt_pi = Complex::new(HALF_LN_PI + std::f64::consts::LN_2, 0.0);

    // b = 2 sqrt(pi) Gamma(ia4+3/2) [Gamma(ia8+1/2)^-2 - (Gamma(ia8+1) Gamma(ia8))^-1]
    let mitra_32 = |q: Complex| -> Result<Complex> {
        let t1 = gamma_product(two_sqrt_pi, &[q * 2.0 + 1.5], &[q + 0.5, q + 0.5])?;
        let t2 = gamma_product(two_sqrt_pi, &[q * 2.0 + 1.5], &[q + 1.0, q])?;
        Ok(t1 - t2)
    };
    let b = mitra_32(ia8)?;
    let b_star = mitra_32(-ia8)?;
    let first = IdentityReport::new(
        "uv_first_condition",
        vec![Complex::new(alpha, 0.0), u, v],
        u * b + v * b_star,
        Complex::new(1.0, 0.0),
        1e-10,
    );

    // c = (1/2)/(ia4+3/2) * (4/3) sqrt(pi) Gamma(ia4+5/2)
    //     * [(1-i/alpha) Gamma(ia8+1/2)^-2 + (1+i/alpha) (Gamma(ia8+1) Gamma(ia8))^-1] * (-i alpha/2)
    let second_coeff = |q: Complex, w: Complex| -> Result<Complex> {
        let base = Complex::new(HALF_LN_PI + (4.0f64 / 3.0).ln(), 0.0);
        let t1 = gamma_product(base, &[q * 2.0 + 2.5], &[q + 0.5, q + 0.5])?;
        let t2 = gamma_product(base, &[q * 2.0 + 2.5], &[q + 1.0, q])?;
        let bracket = (1.0 - 4.0 * (q * 2.0)) * t1 + (1.0 + 4.0 * (q * 2.0)) * t2;
        Ok(0.5 / (q * 2.0 + 1.5) * bracket * w)
    };
    let c = second_coeff(ia8, Complex::new(0.0, -alpha / 2.0))?;
    let c_star = second_coeff(-ia8, Complex::new(0.0, alpha / 2.0))?;
    let second = IdentityReport::new(
        "uv_second_condition",
        vec![Complex::new(alpha, 0.0), u, v],
        6.0 * (u * c + v * c_star),
        Complex::new(-1.0, alpha),
        1e-10,
    );
    Ok((first, second))
}

/// Distance from z to the set of nonpositive integers (the gamma poles).
fn pole_distance(z: Complex) -> f64 {
    let nearest = z.re.round().min(0.0);
    (z - nearest).norm()
}

const POLE_MARGIN: f64 = 0.05;

fn draw_in_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex {
    loop {
        let z = Complex::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius));
        if z.norm() <= radius {
            return z;
        }
    }
}

/// Run every identity at the curve-regime parameter points plus `n_random`
/// seeded draws per identity inside the documented boxes (|a| ≤ 2, |x| ≤ 5,
/// gamma-pole neighbourhoods rejected). Identical seeds give identical
/// reports; evaluation failures are recorded as failed reports, not thrown.
pub fn run_suite(seed: u64, n_random: usize, ctrl: SeriesControl) -> Vec<IdentityReport> {
    fn record(reports: &mut Vec<IdentityReport>, r: Result<IdentityReport>, name: &str, inputs: Vec<Complex>) {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => reports.push(IdentityReport {
                name: format!("{} (evaluation error: {})", name, e),
                inputs,
                lhs: Complex::new(f64::MAX, 0.0),
                rhs: Complex::new(0.0, 0.0),
                abs_residual: f64::MAX,
                rel_residual: f64::MAX,
                passed: false,
                tolerance: 0.0,
            }),
        }
    }

    let dctrl = DoubleSeriesControl::default();
    let mut reports = Vec::new();

    // curve-regime fixed points: a = i/(4 alpha), x = i alpha s^2/2
    for alpha in [0.25, 1.0, 2.0] {
        let a = Complex::new(0.0, 1.0 / (4.0 * alpha));
        for s in [0.5, 1.0, 2.0] {
            let x = Complex::new(0.0, alpha * s * s / 2.0);
            record(&mut reports,
                residual_phi2_reduction(a, x, dctrl).map(|r| r.with_tolerance(REGIME_TOLERANCE)),
                "phi2_reduction",
                vec![a, x],
            );
            record(&mut reports,
                residual_phi1_identity(a, x, dctrl).map(|r| r.with_tolerance(REGIME_TOLERANCE)),
                "phi1_identity",
                vec![a, x],
            );
        }
        record(&mut reports,
            residual_mitra(MitraKind::Half, a, ctrl).map(|r| r.with_tolerance(REGIME_TOLERANCE)),
            "mitra_half",
            vec![a],
        );
        record(&mut reports,
            residual_mitra(MitraKind::ThreeHalf, a, ctrl).map(|r| r.with_tolerance(REGIME_TOLERANCE)),
            "mitra_three_half",
            vec![a],
        );
        record(&mut reports,
            residual_contiguous(a, ctrl).map(|r| r.with_tolerance(REGIME_TOLERANCE)),
            "contiguous_2f1",
            vec![a],
        );
    }

    // real-parameter spot checks
    for a in [1.0, 0.5] {
        let a = Complex::new(a, 0.0);
        record(&mut reports, residual_mitra(MitraKind::Half, a, ctrl), "mitra_half", vec![a]);
        record(&mut reports, residual_mitra(MitraKind::ThreeHalf, a, ctrl), "mitra_three_half", vec![a]);
        record(&mut reports, residual_contiguous(a, ctrl), "contiguous_2f1", vec![a]);
    }

    // u/v determination
    for alpha in [0.5, 1.0, 2.0] {
        match check_uv_conditions(alpha) {
            Ok((first, second)) => {
                reports.push(first);
                reports.push(second);
            }
            Err(e) => record(&mut reports, Err(e), "uv_conditions", vec![Complex::new(alpha, 0.0)]),
        }
    }

    // seeded random draws in the documented boxes
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_random {
        let a = draw_in_disc(&mut rng, 2.0);
        let x = draw_in_disc(&mut rng, 5.0);
        record(&mut reports, residual_phi2_reduction(a, x, dctrl), "phi2_reduction", vec![a, x]);
    }
    for _ in 0..n_random {
        let (a, x) = loop {
            let a = draw_in_disc(&mut rng, 2.0);
            let x = draw_in_disc(&mut rng, 5.0);
            let guarded = [
                -a - 0.5,
                a - 0.5,
                -a * 0.5,
                (a + 1.0) * 0.5,
                a + 1.5,
                -a + 1.5,
                a, // the 1/a prefactor
            ];
            if guarded.iter().all(|&z| pole_distance(z) >= POLE_MARGIN) {
                break (a, x);
            }
        };
        record(&mut reports, residual_phi1_identity(a, x, dctrl), "phi1_identity", vec![a, x]);
    }
    for _ in 0..n_random {
        let a = loop {
            let a = draw_in_disc(&mut rng, 2.0);
            if pole_distance(a + 0.5) >= POLE_MARGIN {
                break a;
            }
        };
        record(&mut reports, residual_mitra(MitraKind::Half, a, ctrl), "mitra_half", vec![a]);
    }
    for _ in 0..n_random {
        let a = loop {
            let a = draw_in_disc(&mut rng, 2.0);
            if pole_distance(a + 1.5) >= POLE_MARGIN {
                break a;
            }
        };
        record(&mut reports, residual_mitra(MitraKind::ThreeHalf, a, ctrl), "mitra_three_half", vec![a]);
    }
    for _ in 0..n_random {
        let a = loop {
            let a = draw_in_disc(&mut rng, 2.0);
            if pole_distance(a + 2.5) >= POLE_MARGIN {
                break a;
            }
        };
        record(&mut reports, residual_contiguous(a, ctrl), "contiguous_2f1", vec![a]);
    }

    reports
}
