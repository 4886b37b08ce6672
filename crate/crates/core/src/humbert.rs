//! Humbert confluent hypergeometric series in two variables: φ₁, φ₂ and Ξ₁,
//! plus the single-sum Ξ₁ expansion whose coefficients are ₂F₁ values.
//!
//! All three double series are summed by anti-diagonals of constant total
//! degree k = m + n, because the (·)_{m+n} Pochhammer factors depend only on
//! k and can be shared across a diagonal. Summation stops once three
//! consecutive diagonals are negligible relative to the partial sum.

use crate::error::{is_nonpositive_integer, Error, Result};
use crate::series::{sum_diagonal_series, DoubleSeriesControl, EvalResult, SeriesControl};
use crate::special::hyp2f1;
use crate::Complex;

fn check_c_parameter(c: Complex) -> Result<()> {
    if is_nonpositive_integer(c) {
        return Err(Error::Pole { what: "Humbert parameter c", arg: c });
    }
    Ok(())
}

fn check_x_domain(x: Complex, name: &str) -> Result<()> {
    let r = x.norm();
    if r >= 1.0 || r.is_nan() {
        return Err(Error::Domain(format!("{} requires |x| < 1, got |x| = {}", name, r)));
    }
    Ok(())
}

/// φ₁(a, b, c; x, y) = Σ (a)_{m+n} (b)_m / (c)_{m+n} · xᵐ/m! · yⁿ/n!,
/// convergent for |x| < 1 and all y.
pub fn phi1(
    a: Complex,
    b: Complex,
    c: Complex,
    x: Complex,
    y: Complex,
    ctrl: DoubleSeriesControl,
) -> Result<EvalResult> {
    check_c_parameter(c)?;
    check_x_domain(x, "phi1")?;
    sum_diagonal_series(
        ctrl,
        |m| (b + m as f64) * x / (m as f64 + 1.0),
        |n| y / (n as f64 + 1.0),
        |k| (a + k as f64) / (c + k as f64),
    )
}

/// φ₂(b₁, b₂, c; x, y) = Σ (b₁)_m (b₂)_n / (c)_{m+n} · xᵐ/m! · yⁿ/n!,
/// entire in both variables.
pub fn phi2(
    b1: Complex,
    b2: Complex,
    c: Complex,
    x: Complex,
    y: Complex,
    ctrl: DoubleSeriesControl,
) -> Result<EvalResult> {
    check_c_parameter(c)?;
    sum_diagonal_series(
        ctrl,
        |m| (b1 + m as f64) * x / (m as f64 + 1.0),
        |n| (b2 + n as f64) * y / (n as f64 + 1.0),
        |k| 1.0 / (c + k as f64),
    )
}

/// Ξ₁(a₁, a₂, b, c; x, y) = Σ (a₁)_m (a₂)_n (b)_m / (c)_{m+n} · xᵐ/m! · yⁿ/n!,
/// convergent for |x| < 1 and all y.
pub fn xi1(
    a1: Complex,
    a2: Complex,
    b: Complex,
    c: Complex,
    x: Complex,
    y: Complex,
    ctrl: DoubleSeriesControl,
) -> Result<EvalResult> {
    check_c_parameter(c)?;
    check_x_domain(x, "xi1")?;
    sum_diagonal_series(
        ctrl,
        |m| (a1 + m as f64) * (b + m as f64) * x / (m as f64 + 1.0),
        |n| (a2 + n as f64) * y / (n as f64 + 1.0),
        |k| 1.0 / (c + k as f64),
    )
}

/// Ξ₁ as a single sum over the y-index, each coefficient a ₂F₁ value:
///
/// Ξ₁(a₁, a₂, b, c; x, y) = Σₙ (a₂)ₙ/(c)ₙ · ₂F₁(a₁, b, c+n; x) · yⁿ/n!
///
/// summed over `n_terms` outer terms. Used with x = 1/2, where the ₂F₁
/// coefficients reduce to gamma closed forms.
pub fn xi1_single_sum(
    a1: Complex,
    a2: Complex,
    b: Complex,
    c: Complex,
    x: f64,
    y: Complex,
    n_terms: usize,
) -> Result<Complex> {
    check_c_parameter(c)?;
    let ctrl = SeriesControl::default();
    let mut weight = Complex::new(1.0, 0.0); // (a2)_n / (c)_n * y^n / n!
    let mut sum = Complex::new(0.0, 0.0);
    for n in 0..n_terms {
        let coeff = hyp2f1(a1, b, c + n as f64, x, ctrl)?.value;
        sum += weight * coeff;
        let nf = n as f64;
        weight *= (a2 + nf) * y / ((c + nf) * (nf + 1.0));
    }
    if !sum.is_finite() {
        return Err(Error::Overflow("xi1 single sum".into()));
    }
    Ok(sum)
}
