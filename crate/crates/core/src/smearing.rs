//! Causality functionals `C_n(t, t')` for Gaussian-smeared detectors, the
//! delta-switching estimators `E_n(Delta, L, sigma)` and the 3+1 top-hat
//! estimator with its pointlike limit.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with, QuadratureResult, Tolerance, MAX_EVALUATIONS};
use crate::specfun::{erf, erfc, i0_scaled_unchecked, ERF_ABS_TOL};
use crate::types::Dimension;

/// Smeared kernel parameters left after the spatial integrals: the dimension,
/// the centre-of-mass separation `L` and the Gaussian width `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmearedKernel {
    pub dim: Dimension,
    pub separation: f64,
    pub sigma: f64,
}

impl SmearedKernel {
    pub fn new(dim: Dimension, separation: f64, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::invalid("smearing", "must be positive"));
        }
        if !(separation.is_finite() && separation >= 0.0) {
            return Err(Error::invalid("separation", "must be non-negative"));
        }
        Ok(SmearedKernel {
            dim,
            separation,
            sigma,
        })
    }

    fn expect(&self, dim: Dimension) -> Result<()> {
        if self.dim != dim {
            return Err(Error::invalid(
                "dim",
                format!("kernel has dimension {}, expected {dim}", self.dim),
            ));
        }
        Ok(())
    }
}

/// Magnitude of a signalling functional with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorValue {
    pub value: f64,
    pub est_abs_error: f64,
}

/// `erf(a) - erf(b)` without cancellation when both arguments sit in the
/// same tail.
pub(crate) fn erf_diff(a: f64, b: f64) -> f64 {
    if a > 0.5 && b > 0.5 {
        erfc(b) - erfc(a)
    } else if a < -0.5 && b < -0.5 {
        erfc(-a) - erfc(-b)
    } else {
        erf(a) - erf(b)
    }
}

/// `(1/4) [erf((t - t' + L)/(sqrt2 sigma)) - erf((t' - t + L)/(sqrt2 sigma))]`.
pub fn c1(kernel: &SmearedKernel, t: f64, t2: f64) -> Result<f64> {
    kernel.expect(Dimension::One)?;
    let s = SQRT_2 * kernel.sigma;
    let l = kernel.separation;
    Ok(0.25 * erf_diff((t - t2 + l) / s, (t2 - t + l) / s))
}

fn check_order(t: f64, t2: f64) -> Result<f64> {
    let tau = t2 - t;
    if !(tau >= 0.0) {
        return Err(Error::invalid("t", "requires t' >= t"));
    }
    Ok(tau)
}

/// `-(1/pi sigma^2) int_0^tau y / sqrt(tau^2 - y^2) e^{-(L - y)^2/2 sigma^2} I0(L y / sigma^2) dy`
/// with `tau = t' - t`, integrated over `theta` after `y = tau sin(theta)`.
///
/// The exponential factor at the point of the range closest to `L` is pulled
/// out before integrating, so deep-tail values keep full relative accuracy.
pub fn c2(kernel: &SmearedKernel, t: f64, t2: f64, tol: f64) -> Result<QuadratureResult> {
    kernel.expect(Dimension::Two)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive and finite"));
    }
    let tau = t2 - t;
    if !(tau > 0.0) {
        return Err(Error::invalid("t", "requires t' > t"));
    }
    let (l, sig) = (kernel.separation, kernel.sigma);
    let two_s2 = 2.0 * sig * sig;
    let gap = (l - tau).max(0.0);
    let peak = -gap * gap / two_s2;
    let integrand = |theta: f64| {
        let y = tau * theta.sin();
        let arg = l * y / (sig * sig);
        y * (-(l - y).powi(2) / two_s2 - peak).exp() * i0_scaled_unchecked(arg)
    };
    let prefactor = peak.exp() / (PI * sig * sig);

    let mut knots = vec![0.0, FRAC_PI_2];
    if l > 0.0 && l < tau {
        knots.insert(1, (l / tau).asin());
    }
    let rough = integrate_with(integrand, &knots, Tolerance { abs: 1e-300, rel: 1e-6 }, MAX_EVALUATIONS)?;
    if prefactor == 0.0 || rough.value == 0.0 {
        return Ok(QuadratureResult {
            value: -0.0,
            est_abs_error: 0.0,
            panels_used: rough.panels_used,
        });
    }
    let abs = (tol / prefactor).min(1e-12 * rough.value.abs());
    let fine = integrate_with(integrand, &knots, Tolerance::absolute(abs), MAX_EVALUATIONS)?;
    Ok(QuadratureResult {
        value: -prefactor * fine.value,
        est_abs_error: prefactor * fine.est_abs_error,
        panels_used: fine.panels_used,
    })
}

/// `-1/(2 sqrt(2 pi^3) sigma L) [e^{-(L - tau)^2/2 sigma^2} - e^{-(L + tau)^2/2 sigma^2}]`
/// with `tau = t' - t`.
pub fn c3(kernel: &SmearedKernel, t: f64, t2: f64) -> Result<f64> {
    kernel.expect(Dimension::Three)?;
    let l = kernel.separation;
    if l == 0.0 {
        return Err(Error::invalid("separation", "must be positive in 3+1"));
    }
    let tau = check_order(t, t2)?;
    let sig = kernel.sigma;
    // g(L - tau) (1 - e^{-2 L tau / s^2}), combined in log space so the
    // product stays accurate down into the subnormal range
    let m = -(-2.0 * l * tau / (sig * sig)).exp_m1();
    if m == 0.0 {
        return Ok(0.0);
    }
    let log_mag = -(l - tau).powi(2) / (2.0 * sig * sig) + m.ln() - (2.0 * (2.0 * PI.powi(3)).sqrt() * sig * l).ln();
    Ok(-log_mag.exp())
}

/// `|C_n(0, Delta)|` for delta-switched smeared detectors.
pub fn estimator_gaussian(
    dim: Dimension,
    time_gap: f64,
    separation: f64,
    sigma: f64,
    tol: f64,
) -> Result<EstimatorValue> {
    if !(time_gap.is_finite() && time_gap > 0.0) {
        return Err(Error::invalid("time_gap", "time_gap must be positive"));
    }
    let kernel = SmearedKernel::new(dim, separation, sigma)?;
    Ok(match dim {
        Dimension::One => {
            let v = c1(&kernel, 0.0, time_gap)?.abs();
            EstimatorValue {
                value: v,
                est_abs_error: 0.5 * ERF_ABS_TOL.min(v.max(f64::MIN_POSITIVE)),
            }
        }
        Dimension::Two => {
            let r = c2(&kernel, 0.0, time_gap, tol)?;
            EstimatorValue {
                value: r.value.abs(),
                est_abs_error: r.est_abs_error,
            }
        }
        Dimension::Three => {
            let v = c3(&kernel, 0.0, time_gap)?.abs();
            EstimatorValue {
                value: v,
                est_abs_error: 8.0 * f64::EPSILON * v,
            }
        }
    })
}

fn check_tophat(time_gap: f64, separation: f64, sigma: f64, duration: f64) -> Result<()> {
    if !(time_gap.is_finite() && time_gap > 0.0) {
        return Err(Error::invalid("time_gap", "time_gap must be positive"));
    }
    if !(separation.is_finite() && separation > 0.0) {
        return Err(Error::invalid("separation", "must be positive"));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::invalid("smearing", "must be positive"));
    }
    if !(duration.is_finite() && duration > 0.0) {
        return Err(Error::invalid("duration", "must be positive"));
    }
    Ok(())
}

/// Closed form of `|int_0^T dt int_{T+Delta}^{2T+Delta} dt' C_3(t, t')|` for
/// top-hat switching of duration `T` separated by `Delta`.
pub fn estimator_tophat_3d(time_gap: f64, separation: f64, sigma: f64, duration: f64) -> Result<f64> {
    check_tophat(time_gap, separation, sigma, duration)?;
    let (d, l, t) = (time_gap, separation, duration);
    let s = SQRT_2 * sigma;
    let e = |x: f64| (-x * x / (2.0 * sigma * sigma)).exp();
    let erf_terms = (l - d) * erf((l - d) / s) - (d + l) * erf((d + l) / s)
        + 2.0 * (d - l + t) * erf((l - d - t) / s)
        + (l - d - 2.0 * t) * erf((l - d - 2.0 * t) / s)
        + 2.0 * (d + l + t) * erf((d + l + t) / s)
        - (d + l + 2.0 * t) * erf((d + l + 2.0 * t) / s);
    let gauss_terms = e(l - d) - e(d + l) - e(d - l + t) + e(d + l + t) - e(d - l + t)
        + e(d - l + 2.0 * t)
        + e(d + l + t)
        - e(d + l + 2.0 * t);
    let bracket = erf_terms + (2.0 / PI).sqrt() * sigma * gauss_terms;
    Ok((bracket / (4.0 * PI * l)).abs())
}

/// `sigma -> 0` limit of [`estimator_tophat_3d`]:
/// `(|L - Delta| + |L - 2T - Delta| - 2|L - T - Delta|) / (4 pi L)`.
pub fn tophat_pointlike_limit(time_gap: f64, separation: f64, duration: f64) -> Result<f64> {
    check_tophat(time_gap, separation, 1.0, duration)?;
    let (d, l, t) = (time_gap, separation, duration);
    let num = (l - d).abs() + (l - 2.0 * t - d).abs() - 2.0 * (l - t - d).abs();
    Ok(num / (4.0 * PI * l))
}

/// Maximum of [`tophat_pointlike_limit`] over `L`, reached at `L = Delta + T`.
pub fn tophat_peak(time_gap: f64, duration: f64) -> Result<f64> {
    if !(time_gap.is_finite() && time_gap > 0.0) {
        return Err(Error::invalid("time_gap", "time_gap must be positive"));
    }
    if !(duration > 0.0) {
        return Err(Error::invalid("duration", "must be positive"));
    }
    if duration.is_infinite() {
        return Ok(1.0 / (2.0 * PI));
    }
    Ok(1.0 / (2.0 * PI * (1.0 + time_gap / duration)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(dim: Dimension, l: f64, s: f64) -> SmearedKernel {
        SmearedKernel::new(dim, l, s).unwrap()
    }

    #[test]
    fn c1_examples() {
        let kk = k(Dimension::One, 0.7, 0.3);
        assert_eq!(c1(&kk, 1.2, 1.2).unwrap(), 0.0);
        let v = c1(&k(Dimension::One, 0.0, 0.3), 0.0, 0.8).unwrap();
        assert!((v + 0.5 * erf(0.8 / (SQRT_2 * 0.3))).abs() < 1e-15);
        let v = c1(&k(Dimension::One, 1.0, 1e-6), 0.0, 2.0).unwrap();
        assert!((v + 0.5).abs() < 1e-12);
    }

    #[test]
    fn c2_examples() {
        let kk = k(Dimension::Two, 0.0, 1.0);
        let r = c2(&kk, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - (-0.230_704_148_795_005_67)).abs() < 1e-12);
        let r = c2(&k(Dimension::Two, 0.5, 0.2), 0.0, 1e-12, 1e-9).unwrap();
        assert!(r.value.abs() < 1e-9);
        assert!(c2(&kk, 1.0, 0.5, 1e-9).is_err());
    }

    #[test]
    fn c3_examples() {
        let kk = k(Dimension::Three, 1.0, 0.1);
        assert_eq!(c3(&kk, 0.4, 0.4).unwrap(), 0.0);
        let v = c3(&kk, 0.0, 1.0).unwrap();
        assert!((v - (-0.634_936_359_342_409_7)).abs() < 1e-12);
        assert!(c3(&k(Dimension::Three, 0.0, 0.1), 0.0, 1.0).is_err());
        assert!(c3(&k(Dimension::Three, 5.0, 0.1), 0.0, 1.0).unwrap().abs() < 1e-300);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        assert!(c1(&k(Dimension::Two, 1.0, 0.1), 0.0, 1.0).is_err());
        assert!(SmearedKernel::new(Dimension::One, 1.0, 0.0).is_err());
    }

    #[test]
    fn gaussian_estimator_examples() {
        let v = estimator_gaussian(Dimension::One, 1.0, 1.0, 0.2, 1e-9).unwrap();
        assert!((v.value - 0.25 * erf(2.0 / (0.2 * SQRT_2))).abs() < 1e-12);
        assert!((v.value - 0.25).abs() < 1e-12);
        let v = estimator_gaussian(Dimension::One, 2.0, 1.0, 1e-3, 1e-9).unwrap();
        assert!((v.value - 0.5).abs() < 1e-12);
        let v = estimator_gaussian(Dimension::Three, 1.0, 1.0, 0.1, 1e-9).unwrap();
        assert!((v.value - 0.634_936_359_342_409_7).abs() < 1e-12);
        assert!(estimator_gaussian(Dimension::One, 0.0, 1.0, 0.1, 1e-9).is_err());
    }

    #[test]
    fn tophat_examples() {
        let v = estimator_tophat_3d(1.0, 1.05, 1e-4, 0.1).unwrap();
        assert!((v - 0.1 / (4.0 * PI * 1.05)).abs() < 1e-5);
        let (d, t, s) = (1.0, 0.3, 0.01);
        assert!(estimator_tophat_3d(d, d + 2.0 * t + 10.0 * s, s, t).unwrap() <= 1e-8);
        assert!(estimator_tophat_3d(1.0, 1.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn pointlike_limit_examples() {
        let (d, t) = (1.0, 0.4);
        let v = tophat_pointlike_limit(d, d + t, t).unwrap();
        assert!((v - 1.0 / (2.0 * PI * (1.0 + d / t))).abs() < 1e-15);
        assert!(tophat_pointlike_limit(d, d + 2.0 * t + 0.1, t).unwrap().abs() < 1e-16);
        assert_eq!(tophat_pointlike_limit(d, 0.5 * d, t).unwrap(), 0.0);
    }

    #[test]
    fn peak_examples() {
        assert!((tophat_peak(1.0, 1.0).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-16);
        assert_eq!(tophat_peak(1.0, f64::INFINITY).unwrap(), 1.0 / (2.0 * PI));
        assert!(tophat_peak(1e12, 1.0).unwrap() < 1e-12);
    }
}
