//! WebAssembly bindings behind the demo page in `www/`.
//!
//! Every curve is sampled on a uniform grid and returned as a flat
//! `Float64Array`. Points where an estimator is undefined come back as NaN
//! so the page can leave a gap instead of aborting the whole plot.

use udw_causality::rwa::{estimator_rwa, RwaScenario};
use udw_causality::smearing::estimator_gaussian;
use udw_causality::uvcut::estimator_cutoff;
use udw_causality::{Dimension, Result};
use wasm_bindgen::prelude::*;

const TOL: f64 = 1e-9;
const MAX_POINTS: usize = 4096;

/// `n` evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> std::result::Result<Vec<f64>, String> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite lo < hi, got [{lo}, {hi}]"));
    }
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(format!("points must lie in 2..={MAX_POINTS}"));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect())
}

fn dimension(dim: u8) -> std::result::Result<Dimension, String> {
    Dimension::try_from(dim).map_err(|e| e.to_string())
}

fn sample(xs: &[f64], f: impl Fn(f64) -> Result<f64>) -> Vec<f64> {
    xs.iter().map(|&x| f(x).unwrap_or(f64::NAN)).collect()
}

/// Gaussian-smeared estimator against separation.
pub fn gaussian_vs_separation(
    dim: u8,
    time_gap: f64,
    sigma: f64,
    l_min: f64,
    l_max: f64,
    points: usize,
) -> std::result::Result<Vec<f64>, String> {
    let dim = dimension(dim)?;
    let ls = linspace(l_min, l_max, points)?;
    Ok(sample(&ls, |l| Ok(estimator_gaussian(dim, time_gap, l, sigma, TOL)?.value)))
}

/// Hard-cutoff estimator of pointlike detectors against separation.
pub fn cutoff_vs_separation(
    dim: u8,
    time_gap: f64,
    cutoff: f64,
    l_min: f64,
    l_max: f64,
    points: usize,
) -> std::result::Result<Vec<f64>, String> {
    let dim = dimension(dim)?;
    let ls = linspace(l_min, l_max, points)?;
    Ok(sample(&ls, |l| Ok(estimator_cutoff(dim, time_gap, l, cutoff, TOL)?.value)))
}

/// Rotating-wave estimator against the detector gap.
pub fn rwa_vs_gap(
    time_gap: f64,
    duration: f64,
    separation: f64,
    omega_min: f64,
    omega_max: f64,
    points: usize,
) -> std::result::Result<Vec<f64>, String> {
    let omegas = linspace(omega_min, omega_max, points)?;
    Ok(sample(&omegas, |w| {
        Ok(estimator_rwa(&RwaScenario::new(time_gap, duration, separation, w)?, TOL)?.value)
    }))
}

fn js<T>(r: std::result::Result<T, String>) -> std::result::Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = linspace)]
pub fn linspace_js(lo: f64, hi: f64, points: usize) -> std::result::Result<Vec<f64>, JsError> {
    js(linspace(lo, hi, points))
}

#[wasm_bindgen(js_name = gaussianVsSeparation)]
pub fn gaussian_vs_separation_js(
    dim: u8,
    time_gap: f64,
    sigma: f64,
    l_min: f64,
    l_max: f64,
    points: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    js(gaussian_vs_separation(dim, time_gap, sigma, l_min, l_max, points))
}

#[wasm_bindgen(js_name = cutoffVsSeparation)]
pub fn cutoff_vs_separation_js(
    dim: u8,
    time_gap: f64,
    cutoff: f64,
    l_min: f64,
    l_max: f64,
    points: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    js(cutoff_vs_separation(dim, time_gap, cutoff, l_min, l_max, points))
}

#[wasm_bindgen(js_name = rwaVsGap)]
pub fn rwa_vs_gap_js(
    time_gap: f64,
    duration: f64,
    separation: f64,
    omega_min: f64,
    omega_max: f64,
    points: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    js(rwa_vs_gap(time_gap, duration, separation, omega_min, omega_max, points))
}
