//! Browser bindings for the spherical clothoid demo page.
//!
//! Three operations back the page: curve sampling with Frenet data (drives
//! the orthographic views and the readout), stereographic projection
//! sampling (drives the main plot), and the identity residual report for
//! the current α. Everything returns flat `Vec<f64>` or a JSON string so
//! the page needs no framework, just typed arrays and `JSON.parse`.

use spherical_clothoid::curve::{self, CurveParams};
use spherical_clothoid::identities::{self, MitraKind};
use spherical_clothoid::{Complex, DoubleSeriesControl, SeriesControl};
use wasm_bindgen::prelude::*;

/// Columns per sample in [`sample_curve`]'s output.
pub const CURVE_STRIDE: usize = 8;

fn grid(s_min: f64, s_max: f64, n: usize) -> Result<Vec<f64>, String> {
    if n < 2 {
        return Err("need at least 2 samples".into());
    }
    if s_min >= s_max || s_min.is_nan() || s_max.is_nan() {
        return Err(format!("need s_min < s_max, got [{}, {}]", s_min, s_max));
    }
    Ok((0..n)
        .map(|i| s_min + (s_max - s_min) * i as f64 / (n - 1) as f64)
        .collect())
}

/// Rows of (s, x, y, z, kappa, tau, kappa_g, sphere_residual), flattened.
pub fn sample_curve_impl(alpha: f64, s_min: f64, s_max: f64, n: usize) -> Result<Vec<f64>, String> {
    let ctrl = SeriesControl::default();
    let p = CurveParams::new(alpha).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(n * CURVE_STRIDE);
    for s in grid(s_min, s_max, n)? {
        let sample = curve::frenet(&p, s, ctrl).map_err(|e| e.to_string())?;
        let sphere = curve::residual_sphere(&p, s, ctrl).map_err(|e| e.to_string())?;
        out.extend_from_slice(&[
            s,
            sample.position.x,
            sample.position.y,
            sample.position.z,
            sample.kappa,
            sample.tau,
            sample.kappa_g,
            sphere,
        ]);
    }
    Ok(out)
}

/// Rows of (s, X, Y), flattened: the stereographic projection.
pub fn sample_projection_impl(alpha: f64, s_min: f64, s_max: f64, n: usize) -> Result<Vec<f64>, String> {
    let ctrl = SeriesControl::default();
    let p = CurveParams::new(alpha).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(n * 3);
    for s in grid(s_min, s_max, n)? {
        let zeta = curve::stereographic(&p, s, ctrl).map_err(|e| e.to_string())?;
        out.extend_from_slice(&[s, zeta.re, zeta.im]);
    }
    Ok(out)
}

/// JSON report of the identity residuals at the curve's own parameter
/// point a = i/(4α): the φ₂ reduction, both Mitra forms, the contiguous
/// companion, and the two u/v determination checks.
pub fn identity_residuals_impl(alpha: f64) -> Result<String, String> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err("alpha must be nonzero".into());
    }
    let ctrl = SeriesControl::default();
    let dctrl = DoubleSeriesControl::default();
    let a = Complex::new(0.0, 1.0 / (4.0 * alpha));
    let x = Complex::new(0.0, alpha / 2.0); // s = 1
    let mut reports = vec![
        identities::residual_phi2_reduction(a, x, dctrl).map_err(|e| e.to_string())?,
        identities::residual_phi1_identity(a, x, dctrl).map_err(|e| e.to_string())?,
        identities::residual_mitra(MitraKind::Half, a, ctrl).map_err(|e| e.to_string())?,
        identities::residual_mitra(MitraKind::ThreeHalf, a, ctrl).map_err(|e| e.to_string())?,
        identities::residual_contiguous(a, ctrl).map_err(|e| e.to_string())?,
    ];
    if alpha.abs() >= 0.05 {
        let (first, second) = identities::check_uv_conditions(alpha).map_err(|e| e.to_string())?;
        reports.push(first);
        reports.push(second);
    }
    Ok(identities::reports_to_json(&reports))
}

#[wasm_bindgen]
pub fn sample_curve(alpha: f64, s_min: f64, s_max: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    sample_curve_impl(alpha, s_min, s_max, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn sample_projection(alpha: f64, s_min: f64, s_max: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    sample_projection_impl(alpha, s_min, s_max, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn identity_residuals(alpha: f64) -> Result<String, JsValue> {
    identity_residuals_impl(alpha).map_err(|e| JsValue::from_str(&e))
}
