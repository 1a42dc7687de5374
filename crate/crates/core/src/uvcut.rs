//! Signalling estimators for pointlike, delta-switched detectors coupled to a
//! field with a hard UV cutoff `Lambda`, and the power-law fit of their decay.

use std::f64::consts::PI;

use serde::Serialize;

use crate::commutators::{commutator_2d_cutoff_integrand, scaled_sinc};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_oscillatory, CompensatedSum};
use crate::smearing::EstimatorValue;
use crate::specfun::{sine_integral, SICI_ABS_TOL};
use crate::types::Dimension;

/// Samples per envelope window.
pub const ENVELOPE_SAMPLES: usize = 32;

/// Least-squares power law `envelope ~ Lambda^(-exponent)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    pub exponent: f64,
    pub r_squared: f64,
    pub samples: Vec<(f64, f64)>,
}

fn check(time_gap: f64, separation: f64, cutoff: f64) -> Result<()> {
    if !(time_gap.is_finite() && time_gap > 0.0) {
        return Err(Error::invalid("time_gap", "time_gap must be positive"));
    }
    if !(separation.is_finite() && separation >= 0.0) {
        return Err(Error::invalid("separation", "must be non-negative"));
    }
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(Error::invalid("cutoff", "must be positive"));
    }
    Ok(())
}

fn estimator_3d_bracket(time_gap: f64, separation: f64, cutoff: f64, sign: f64) -> Result<f64> {
    check(time_gap, separation, cutoff)?;
    if separation == 0.0 {
        return Err(Error::invalid("separation", "must be positive in 3+1"));
    }
    let (d, l) = (time_gap, separation);
    let bracket = scaled_sinc(cutoff, l - d) + sign * scaled_sinc(cutoff, l + d);
    Ok((bracket / (4.0 * PI * PI * l)).abs())
}

/// 2+1 mode integral `int_a^b J0(k L) sin(k Delta) dk`.
fn mode_integral_2d(time_gap: f64, separation: f64, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    let r = integrate_oscillatory(
        |k| commutator_2d_cutoff_integrand(k, separation, time_gap),
        a,
        b,
        separation + time_gap,
        tol,
    )?;
    Ok((r.value, r.est_abs_error))
}

/// `|C(0, Delta)|` for the cutoff commutator of pointlike detectors:
///
/// * 1+1: `(1/2 pi) |Si(Lambda (L + Delta)) - Si(Lambda (L - Delta))|`
/// * 2+1: `(1/2 pi) |int_0^Lambda J0(k L) sin(k Delta) dk|`
/// * 3+1: `(1/4 pi^2 L) |sin(Lambda (L - Delta))/(L - Delta) - sin(Lambda (L + Delta))/(L + Delta)|`
pub fn estimator_cutoff(
    dim: Dimension,
    time_gap: f64,
    separation: f64,
    cutoff: f64,
    tol: f64,
) -> Result<EstimatorValue> {
    check(time_gap, separation, cutoff)?;
    let (d, l) = (time_gap, separation);
    Ok(match dim {
        Dimension::One => {
            let v = (sine_integral(cutoff * (l + d)) - sine_integral(cutoff * (l - d))).abs() / (2.0 * PI);
            EstimatorValue {
                value: v,
                est_abs_error: SICI_ABS_TOL / PI,
            }
        }
        Dimension::Two => {
            let (v, err) = mode_integral_2d(d, l, 0.0, cutoff, 2.0 * PI * tol)?;
            EstimatorValue {
                value: v.abs() / (2.0 * PI),
                est_abs_error: err / (2.0 * PI),
            }
        }
        Dimension::Three => {
            let v = estimator_3d_bracket(d, l, cutoff, -1.0)?;
            EstimatorValue {
                value: v,
                est_abs_error: 8.0 * f64::EPSILON * (cutoff / l + v),
            }
        }
    })
}

/// 3+1 cutoff estimator with a `+` between the two sinc terms.
pub fn estimator_cutoff_3d_as_printed(time_gap: f64, separation: f64, cutoff: f64) -> Result<f64> {
    estimator_3d_bracket(time_gap, separation, cutoff, 1.0)
}

/// For each `Lambda` of the grid, the maximum of [`estimator_cutoff`] over
/// `ENVELOPE_SAMPLES` equispaced points of `[Lambda, Lambda + pi/|L - Delta|]`,
/// one period of the dominant oscillation.
pub fn envelope_over_lambda(
    dim: Dimension,
    time_gap: f64,
    separation: f64,
    grid: &[f64],
    tol: f64,
) -> Result<Vec<(f64, f64)>> {
    if grid.len() < 8 {
        return Err(Error::invalid("grid", "needs at least 8 points"));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("grid", "must be strictly increasing"));
    }
    check(time_gap, separation, grid[0])?;
    let detuning = (separation - time_gap).abs();
    if detuning == 0.0 {
        return Err(Error::invalid("separation", "envelope window undefined at L = Delta"));
    }
    let width = PI / detuning;
    let mut out = Vec::with_capacity(grid.len());
    for &cutoff in grid {
        let points: Vec<f64> = (0..ENVELOPE_SAMPLES)
            .map(|j| cutoff + width * j as f64 / (ENVELOPE_SAMPLES - 1) as f64)
            .collect();
        let best = match dim {
            Dimension::Two => {
                // accumulate the mode integral across the window instead of
                // restarting it from zero at every sample
                let (base, _) = mode_integral_2d(time_gap, separation, 0.0, cutoff, 2.0 * PI * tol)?;
                let mut acc = CompensatedSum::new();
                acc.add(base);
                let mut best = base.abs();
                for w in points.windows(2) {
                    let (piece, _) = mode_integral_2d(time_gap, separation, w[0], w[1], 2.0 * PI * tol)?;
                    acc.add(piece);
                    best = best.max(acc.value().abs());
                }
                best / (2.0 * PI)
            }
            _ => {
                let mut best = 0.0_f64;
                for &p in &points {
                    best = best.max(estimator_cutoff(dim, time_gap, separation, p, tol)?.value);
                }
                best
            }
        };
        out.push((cutoff, best));
    }
    Ok(out)
}

/// Fits `log(envelope) = c - exponent * log(Lambda)` by least squares.
pub fn fit_decay(samples: &[(f64, f64)]) -> Result<DecayFit> {
    if samples.len() < 4 {
        return Err(Error::invalid("samples", "needs at least 4 points"));
    }
    if samples.iter().any(|&(l, e)| !(l > 0.0 && e > 0.0 && l.is_finite() && e.is_finite())) {
        return Err(Error::invalid("samples", "cutoffs and envelope values must be positive"));
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("samples", "cutoffs must not all coincide"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if ss_tot <= f64::EPSILON * ys.len() as f64 * my.abs().max(1.0) {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(DecayFit {
        exponent: -slope,
        r_squared,
        samples: samples.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_d_examples() {
        let v = estimator_cutoff(Dimension::One, 2.0, 0.5, 1e6, 1e-9).unwrap();
        assert!((v.value - 0.5).abs() < 1e-5);
        let v = estimator_cutoff(Dimension::One, 1.0, 1.4, 10.0, 1e-9).unwrap();
        assert!((v.value - 0.032_382_372_519_499_29).abs() < 1e-12);
        assert!((v.value - (sine_integral(24.0) - sine_integral(4.0)).abs() / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn three_d_at_light_contact() {
        let (d, cut) = (1.3, 17.0);
        let v = estimator_cutoff(Dimension::Three, d, d, cut, 1e-9).unwrap().value;
        let want = (cut - (2.0 * cut * d).sin() / (2.0 * d)).abs() / (4.0 * PI * PI * d);
        assert!((v - want).abs() < 1e-12);
        let p = estimator_cutoff_3d_as_printed(d, d, cut).unwrap();
        let want = (cut + (2.0 * cut * d).sin() / (2.0 * d)).abs() / (4.0 * PI * PI * d);
        assert!((p - want).abs() < 1e-12);
        assert!(estimator_cutoff(Dimension::Three, 1.0, 0.0, cut, 1e-9).is_err());
    }

    #[test]
    fn two_d_matches_frozen_mode_integral() {
        // int_0^100 J0(1.4 k) sin(k) dk at 40 digits
        let v = estimator_cutoff(Dimension::Two, 1.0, 1.4, 100.0, 1e-12).unwrap();
        assert!((v.value - 0.006_864_571_677_163_527 / (2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn fit_exact_power_law() {
        let s: Vec<(f64, f64)> = (1..=8).map(|i| (i as f64 * 10.0, 3.0 * (i as f64 * 10.0).powi(-2))).collect();
        let f = fit_decay(&s).unwrap();
        assert!((f.exponent - 2.0).abs() < 1e-10);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        let flat: Vec<(f64, f64)> = (1..=8).map(|i| (i as f64, 0.7)).collect();
        let f = fit_decay(&flat).unwrap();
        assert!(f.exponent.abs() < 1e-15);
        assert!(fit_decay(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0), (4.0, 1.0)]).is_err());
    }

    #[test]
    fn envelope_preserves_grid_and_bound() {
        let grid: Vec<f64> = (0..10).map(|i| 25.0 * 1.5f64.powi(i)).collect();
        let env = envelope_over_lambda(Dimension::Three, 1.0, 1.4, &grid, 1e-9).unwrap();
        let bound = (1.0 / 0.4 + 1.0 / 2.4) / (4.0 * PI * PI * 1.4);
        for (w, (cut, e)) in env.iter().enumerate() {
            assert_eq!(*cut, grid[w]);
            assert!(*e <= bound);
        }
        assert!(envelope_over_lambda(Dimension::Three, 1.0, 1.4, &grid[..5], 1e-9).is_err());
    }
}
