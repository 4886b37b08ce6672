//! Associated Meixner-Pollaczek polynomials Qₙ^λ(x; φ, c) by their
//! three-term recurrence, the coordinate series built on them, and the
//! three generating-function identities whose right-hand sides are products
//! of Kummer functions at ±it.

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::series::SeriesControl;
use crate::special::hyp1f1;
use crate::Complex;

/// Parameters of the polynomial family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MPParams {
    pub lambda: f64,
    pub x: f64,
    /// Angle in radians.
    pub phi: f64,
    /// Association parameter; c > −1 keeps every recurrence denominator
    /// n + c + 1 nonzero.
    pub c: f64,
}

/// Q₀ … Q_N of one family, produced by forward recurrence.
#[derive(Debug, Clone)]
pub struct PolySequence {
    pub params: MPParams,
    pub values: Vec<f64>,
}

impl PolySequence {
    /// Residual of the defining recurrence at index n (with Q₋₁ = 0),
    /// for 0 ≤ n ≤ len − 2.
    pub fn recurrence_residual(&self, n: usize) -> f64 {
        let p = &self.params;
        let nn = n as f64;
        let q_prev = if n == 0 { 0.0 } else { self.values[n - 1] };
        (nn + p.c + 1.0) * self.values[n + 1]
            - 2.0 * ((nn + p.lambda + p.c) * p.phi.cos() + p.x * p.phi.sin()) * self.values[n]
            + (nn + 2.0 * p.lambda + p.c - 1.0) * q_prev
    }

    /// Largest recurrence residual over all interior indices, relative to
    /// max(1, max |Qₙ|).
    pub fn worst_relative_residual(&self) -> f64 {
        let scale = self.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        (0..self.values.len().saturating_sub(1))
            .map(|n| self.recurrence_residual(n).abs() / scale)
            .fold(0.0, f64::max)
    }
}

/// Forward recurrence
/// (n+c+1) Qₙ₊₁ = 2[(n+λ+c)cos φ + x sin φ] Qₙ − (n+2λ+c−1) Qₙ₋₁,
/// with Q₋₁ = 0 and Q₀ = 1.
pub fn mp_sequence(params: MPParams, n_max: usize) -> Result<PolySequence> {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(1.0);
    let mut prev = 0.0;
    for n in 0..n_max {
        let nn = n as f64;
        let denom = nn + params.c + 1.0;
        if denom == 0.0 {
            return Err(Error::Domain(format!("recurrence denominator n + c + 1 = 0 at n = {}", n)));
        }
        let current = values[n];
        let next = (2.0 * ((nn + params.lambda + params.c) * params.phi.cos() + params.x * params.phi.sin()) * current
            - (nn + 2.0 * params.lambda + params.c - 1.0) * prev)
            / denom;
        if !next.is_finite() {
            return Err(Error::Overflow(format!("polynomial value at n = {}", n + 1)));
        }
        values.push(next);
        prev = current;
    }
    Ok(PolySequence { params, values })
}

const SERIES_REL_TOL: f64 = 1e-12;

fn mp_values_for_curve(p: &CurveParams, c: f64, n_terms: usize) -> Result<Vec<f64>> {
    let params = MPParams {
        lambda: 0.0,
        x: 1.0 / (4.0 * p.alpha()),
        phi: std::f64::consts::FRAC_PI_2,
        c,
    };
    Ok(mp_sequence(params, n_terms.saturating_sub(1))?.values)
}

fn polynomial_series(q: &[f64], first_factor: f64, step_denominator: impl Fn(f64) -> f64, alpha: f64, s: f64) -> Result<f64> {
    // factor_j = leading * (-alpha/2)^j s^{2j} / (weight)_j, stepped incrementally
    let mut factor = first_factor;
    let mut sum = 0.0;
    let mut last = 0.0;
    for (j, qj) in q.iter().enumerate() {
        last = qj * factor;
        sum += last;
        factor *= -alpha / 2.0 * s * s / step_denominator(j as f64);
    }
    if s != 0.0 && last.abs() > SERIES_REL_TOL * sum.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NonConvergence { max_terms: q.len() });
    }
    Ok(sum)
}

/// x(s) = Σⱼ Qⱼ⁰(1/(4α); π/2, 1/2) (−α/2)ʲ s^{2j+1} / (1)ⱼ, truncated to
/// `n_terms` terms. Errors if the last term is still significant.
pub fn series_x(p: &CurveParams, s: f64, n_terms: usize) -> Result<f64> {
    let q = mp_values_for_curve(p, 0.5, n_terms)?;
    polynomial_series(&q, s, |j| j + 1.0, p.alpha(), s)
}

/// y(s) = (1/2) Σⱼ Qⱼ⁰(1/(4α); π/2, 1) (−α/2)ʲ s^{2j+2} / (3/2)ⱼ.
pub fn series_y(p: &CurveParams, s: f64, n_terms: usize) -> Result<f64> {
    let q = mp_values_for_curve(p, 1.0, n_terms)?;
    polynomial_series(&q, 0.5 * s * s, |j| j + 1.5, p.alpha(), s)
}

/// z(s) = (α/6) Σⱼ Qⱼ⁰(1/(4α); π/2, 3/2) (−α/2)ʲ s^{2j+3} / (2)ⱼ.
pub fn series_z(p: &CurveParams, s: f64, n_terms: usize) -> Result<f64> {
    let q = mp_values_for_curve(p, 1.5, n_terms)?;
    polynomial_series(&q, p.alpha() / 6.0 * s * s * s, |j| j + 2.0, p.alpha(), s)
}

/// Which of the three generating-function identities: they differ in the
/// association parameter c and in the term weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenCase {
    /// c = 1/2, weights j!
    Half,
    /// c = 1, weights (3/2)ⱼ
    One,
    /// c = 3/2, weights (j+1)!
    ThreeHalf,
}

impl GenCase {
    fn c(self) -> f64 {
        match self {
            GenCase::Half => 0.5,
            GenCase::One => 1.0,
            GenCase::ThreeHalf => 1.5,
        }
    }

    /// Multiplier taking the weighted factor tʲ/wⱼ to t^{j+1}/w_{j+1}.
    fn weight_step(self, j: f64) -> f64 {
        match self {
            GenCase::Half => j + 1.0,
            GenCase::One => j + 1.5,
            GenCase::ThreeHalf => j + 2.0,
        }
    }
}

/// Truncated generating-function left side Σⱼ Qⱼ⁰(x; π/2, c) tʲ/wⱼ.
pub fn genfun_lhs(c_case: GenCase, x: f64, t: f64, n_terms: usize) -> Result<f64> {
    let params = MPParams {
        lambda: 0.0,
        x,
        phi: std::f64::consts::FRAC_PI_2,
        c: c_case.c(),
    };
    let q = mp_sequence(params, n_terms.saturating_sub(1))?.values;
    let mut factor = 1.0;
    let mut sum = 0.0;
    let mut last = 0.0;
    for (j, qj) in q.iter().enumerate() {
        last = qj * factor;
        sum += last;
        factor *= t / c_case.weight_step(j as f64);
    }
    if t != 0.0 && last.abs() > SERIES_REL_TOL * sum.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NonConvergence { max_terms: n_terms });
    }
    Ok(sum)
}

/// Generating-function right side: the closed form in products of ₁F₁ at
/// ±it. The combination is real for real x, t by conjugate pairing; the
/// imaginary residue is checked and discarded.
pub fn genfun_rhs(c_case: GenCase, x: f64, t: f64, ctrl: SeriesControl) -> Result<f64> {
    let it = Complex::new(0.0, t);
    let ix2 = Complex::new(0.0, x / 2.0);
    let half = Complex::new(0.5, 0.0);
    let three_half = Complex::new(1.5, 0.0);
    let f = |a: Complex, b: Complex, z: Complex| -> Result<Complex> { Ok(hyp1f1(a, b, z, ctrl)?.value) };

    let value = match c_case {
        GenCase::Half => {
            let p = f(-ix2, half, it)? * f(ix2 + 0.5, three_half, -it)?;
            let q = f(ix2, half, -it)? * f(-ix2 + 0.5, three_half, it)?;
            0.5 * (p + q)
        }
        GenCase::One => {
            if x * t == 0.0 {
                return Err(Error::Domain("the c = 1 closed form has a removable singularity at x t = 0; use the series side".into()));
            }
            let p = f(ix2, half, -it)? * f(-ix2, half, it)?;
            (p - 1.0) / (2.0 * x * t)
        }
        GenCase::ThreeHalf => {
            if t == 0.0 {
                return Err(Error::Domain("the c = 3/2 closed form has a removable singularity at t = 0; use the series side".into()));
            }
            let p = f(-ix2, half, it)? * f(ix2 + 0.5, three_half, -it)?;
            let q = f(ix2, half, -it)? * f(-ix2 + 0.5, three_half, it)?;
            Complex::new(0.0, 1.5 / t) * (p - q)
        }
    };
    if value.im.abs() > 1e-11 * value.re.abs().max(1.0) {
        return Err(Error::Domain(format!("generating-function value has imaginary residue {}", value.im)));
    }
    Ok(value.re)
}
