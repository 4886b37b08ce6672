//! Truncation policies and evaluated-series results.
//!
//! Every series in this crate reports not just its value but how hard it was
//! to obtain: the number of terms summed, the largest term magnitude seen,
//! and the decimal digits lost to cancellation. Oscillatory complex series
//! (purely imaginary Kummer arguments in particular) sum to values far
//! smaller than their largest term, and downstream tolerances must scale
//! with that loss.

use crate::error::{Error, Result};
use crate::Complex;

/// Truncation policy for single series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesControl {
    /// Relative size below which a term counts as negligible.
    pub rel_tol: f64,
    /// Absolute floor protecting the stopping test when the partial sum
    /// passes through zero.
    pub abs_tol: f64,
    /// Hard cap on the number of terms.
    pub max_terms: usize,
    /// Number of consecutive negligible terms required before stopping.
    /// Oscillatory complex series have transiently tiny terms, so a single
    /// small term must not end the summation.
    pub consecutive_small: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            abs_tol: 1e-300,
            max_terms: 10_000,
            consecutive_small: 3,
        }
    }
}

/// Truncation policy for the two-variable Humbert series, which are summed
/// by anti-diagonals of constant total degree m + n.
#[derive(Debug, Clone, Copy)]
pub struct DoubleSeriesControl {
    /// Relative size below which a whole diagonal counts as negligible.
    pub rel_tol: f64,
    /// Largest total degree m + n attempted.
    pub max_total_degree: usize,
}

impl Default for DoubleSeriesControl {
    fn default() -> Self {
        DoubleSeriesControl {
            rel_tol: 1e-13,
            max_total_degree: 400,
        }
    }
}

/// A converged series value plus its convergence diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: Complex,
    /// Terms actually summed.
    pub terms_used: usize,
    /// Largest |term| encountered on the way.
    pub max_term_magnitude: f64,
    /// log10(max_term_magnitude / |value|), clamped to zero: the decimal
    /// digits lost to cancellation.
    pub cancellation_digits: f64,
}

impl EvalResult {
    pub(crate) fn new(value: Complex, terms_used: usize, max_term_magnitude: f64, abs_tol: f64) -> Self {
        let cancellation_digits = (max_term_magnitude / value.norm().max(abs_tol)).log10().max(0.0);
        EvalResult {
            value,
            terms_used,
            max_term_magnitude,
            cancellation_digits,
        }
    }
}

/// Sum `1 + t1 + t2 + ...` where `ratio(m)` returns `t_{m+1}/t_m`.
///
/// Stops once `consecutive_small` successive terms are below
/// `rel_tol * |partial sum| + abs_tol`.
pub(crate) fn sum_power_series(
    ctrl: SeriesControl,
    mut ratio: impl FnMut(usize) -> Complex,
) -> Result<EvalResult> {
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = term;
    let mut max_mag: f64 = 1.0;
    let mut small = 0usize;
    for m in 0..ctrl.max_terms {
        term *= ratio(m);
        sum += term;
        if !sum.is_finite() || !term.is_finite() {
            return Err(Error::Overflow(format!("series term {} is not finite", m + 1)));
        }
        let mag = term.norm();
        max_mag = max_mag.max(mag);
        if mag < ctrl.rel_tol * sum.norm() + ctrl.abs_tol {
            small += 1;
            if small >= ctrl.consecutive_small {
                return Ok(EvalResult::new(sum, m + 2, max_mag, ctrl.abs_tol));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        max_terms: ctrl.max_terms,
    })
}

/// Sum a double series by anti-diagonals.
///
/// The term at (m, n) is `w_{m+n} * u_m * v_n`, with each coefficient
/// sequence generated incrementally: `u_{m+1} = u_m * next_u(m)` and
/// likewise for `v` and `w`. Stops once three consecutive diagonals are
/// below `rel_tol * |partial sum|`.
pub(crate) fn sum_diagonal_series(
    ctrl: DoubleSeriesControl,
    mut next_u: impl FnMut(usize) -> Complex,
    mut next_v: impl FnMut(usize) -> Complex,
    mut next_w: impl FnMut(usize) -> Complex,
) -> Result<EvalResult> {
    let one = Complex::new(1.0, 0.0);
    let mut u = vec![one];
    let mut v = vec![one];
    let mut w = one;
    let mut sum = one; // the (0, 0) term
    let mut max_mag: f64 = 1.0;
    let mut terms = 1usize;
    let mut small = 0usize;
    for k in 1..=ctrl.max_total_degree {
        u.push(u[k - 1] * next_u(k - 1));
        v.push(v[k - 1] * next_v(k - 1));
        w *= next_w(k - 1);
        let mut diag = Complex::new(0.0, 0.0);
        for m in 0..=k {
            let t = u[m] * v[k - m];
            diag += t;
            max_mag = max_mag.max(w.norm() * t.norm());
        }
        let diag = w * diag;
        sum += diag;
        terms += k + 1;
        if !sum.is_finite() {
            return Err(Error::Overflow(format!("double series diverged at degree {}", k)));
        }
        if diag.norm() < ctrl.rel_tol * sum.norm() + 1e-300 {
            small += 1;
            if small >= 3 {
                return Ok(EvalResult::new(sum, terms, max_mag, 1e-300));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        max_terms: ctrl.max_total_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_series_sums_exp() {
        // exp(z) has ratio z/(m+1)
        let z = Complex::new(0.3, -0.7);
        let r = sum_power_series(SeriesControl::default(), |m| z / (m as f64 + 1.0)).unwrap();
        let expected = z.exp();
        assert!((r.value - expected).norm() < 1e-14 * expected.norm());
        assert!(r.terms_used < 40);
        assert!(r.cancellation_digits < 1.0);
    }

    #[test]
    fn power_series_reports_cancellation() {
        // exp(-20): terms peak near 20^20/20! ~ 4e7 while the sum is ~2e-9
        let z = Complex::new(-20.0, 0.0);
        let r = sum_power_series(SeriesControl::default(), |m| z / (m as f64 + 1.0)).unwrap();
        assert!(r.cancellation_digits > 10.0);
        assert!((r.value.re - (-20.0f64).exp()).abs() < 1e-7);
    }

    #[test]
    fn power_series_non_convergence() {
        let ctrl = SeriesControl {
            max_terms: 10,
            ..SeriesControl::default()
        };
        let err = sum_power_series(ctrl, |_| Complex::new(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { max_terms: 10 }));
    }

    #[test]
    fn diagonal_series_sums_product_of_exponentials() {
        // sum x^m/m! * y^n/n! = e^{x+y} with unit diagonal weight
        let x = Complex::new(0.4, 0.1);
        let y = Complex::new(-0.2, 0.3);
        let r = sum_diagonal_series(
            DoubleSeriesControl::default(),
            |m| x / (m as f64 + 1.0),
            |n| y / (n as f64 + 1.0),
            |_| Complex::new(1.0, 0.0),
        )
        .unwrap();
        let expected = (x + y).exp();
        assert!((r.value - expected).norm() < 1e-13 * expected.norm());
    }
}
