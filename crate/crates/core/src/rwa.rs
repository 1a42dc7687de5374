//! Acausal signalling of pointlike top-hat-switched detectors under the
//! rotating-wave approximation.
//!
//! The double time integral over the two switching windows depends on
//! `t' - t` only, so it collapses to a single integral over the offset
//! `s in [Delta, 2T + Delta]` weighted by the overlap length
//! `w(s) = T - |s - (T + Delta)|`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_pv_with, integrate_with, PoleSpec, Tolerance, MAX_EVALUATIONS};
use crate::smearing::EstimatorValue;

/// Minimum distance between the pole `s = L` and an end of the offset band.
pub const POLE_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaScenario {
    pub time_gap: f64,
    pub duration: f64,
    pub separation: f64,
    pub gap: f64,
}

impl RwaScenario {
    pub fn new(time_gap: f64, duration: f64, separation: f64, gap: f64) -> Result<Self> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::invalid(name, "must be positive"))
            }
        };
        positive("time_gap", time_gap)?;
        positive("duration", duration)?;
        positive("separation", separation)?;
        if !gap.is_finite() {
            return Err(Error::invalid("gap", "must be finite"));
        }
        Ok(RwaScenario {
            time_gap,
            duration,
            separation,
            gap,
        })
    }

    /// Offset band `[Delta, 2T + Delta]` on which the overlap weight is non-zero.
    pub fn band(&self) -> (f64, f64) {
        (self.time_gap, self.time_gap + 2.0 * self.duration)
    }

    /// Overlap length of the two switching windows at offset `s = t' - t`.
    pub fn weight(&self, s: f64) -> f64 {
        (self.duration - (s - self.duration - self.time_gap).abs()).max(0.0)
    }
}

/// One point of the reduced integrand: offset, overlap weight and kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedIntegrand {
    pub s: f64,
    pub weight: f64,
    pub kernel: Complex64,
}

impl ReducedIntegrand {
    pub fn at(sc: &RwaScenario, s: f64) -> Result<Self> {
        Ok(ReducedIntegrand {
            s,
            weight: sc.weight(s),
            kernel: rwa_kernel(s, sc.separation, sc.gap)?,
        })
    }

    pub fn value(&self) -> Complex64 {
        self.kernel * self.weight
    }
}

/// `e^{i Omega s} / (L^2 - s^2)`.
pub fn rwa_kernel(s: f64, separation: f64, gap: f64) -> Result<Complex64> {
    let den = (separation - s) * (separation + s);
    if den == 0.0 {
        return Err(Error::Singular(format!("RWA kernel pole at s = {s}")));
    }
    Ok(Complex64::from_polar(1.0 / den, gap * s))
}

/// `|int_Delta^{2T+Delta} w(s) e^{i Omega s} / (L^2 - s^2) ds|`, as a principal
/// value when `L` falls inside the band.
pub fn estimator_rwa(sc: &RwaScenario, tol: f64) -> Result<EstimatorValue> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive and finite"));
    }
    let (lo, hi) = sc.band();
    let mid = sc.duration + sc.time_gap;
    let l = sc.separation;
    let knots = [lo, mid, hi];
    if (l - lo).abs() < POLE_MARGIN || (l - hi).abs() < POLE_MARGIN {
        return Err(Error::Singular(format!(
            "separation {l} sits on an end of the light-contact band [{lo}, {hi}]"
        )));
    }
    let phase = |s: f64| Complex64::from_polar(sc.weight(s), sc.gap * s);
    let result = if l > lo && l < hi {
        // 1/(L^2 - s^2) = (1/2L) [1/(L - s) + 1/(L + s)]; only L - s vanishes
        let inv = 1.0 / (2.0 * l);
        let regular = integrate_with(
            |s: f64| phase(s) * (inv / (l + s)),
            &knots,
            Tolerance::absolute(0.5 * tol),
            MAX_EVALUATIONS,
        )?;
        let singular = integrate_pv_with(|s: f64| -phase(s) * inv, PoleSpec::new(l), &knots, 0.5 * tol)?;
        (regular.value + singular.value, regular.est_abs_error + singular.est_abs_error)
    } else {
        let r = integrate_with(
            |s: f64| phase(s) / ((l - s) * (l + s)),
            &knots,
            Tolerance::absolute(tol),
            MAX_EVALUATIONS,
        )?;
        (r.value, r.est_abs_error)
    };
    Ok(EstimatorValue {
        value: result.0.norm(),
        est_abs_error: result.1,
    })
}

/// [`estimator_rwa`] at each gap of `grid`.
pub fn rwa_omega_sweep(sc: &RwaScenario, grid: &[f64], tol: f64) -> Result<Vec<(f64, EstimatorValue)>> {
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("grid", "must be strictly increasing"));
    }
    grid.iter()
        .map(|&gap| {
            let s = RwaScenario::new(sc.time_gap, sc.duration, sc.separation, gap)?;
            Ok((gap, estimator_rwa(&s, tol)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert_eq!(rwa_kernel(0.0, 2.0, 0.0).unwrap(), Complex64::new(0.25, 0.0));
        assert_eq!(rwa_kernel(0.7, 2.0, 0.0).unwrap(), rwa_kernel(-0.7, 2.0, 0.0).unwrap());
        assert!(rwa_kernel(1e8, 2.0, 3.0).unwrap().norm() < 1.1e-16);
        assert!(rwa_kernel(2.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn weight_is_triangular() {
        let sc = RwaScenario::new(1.0, 0.5, 3.0, 1.0).unwrap();
        assert_eq!(sc.weight(1.0), 0.0);
        assert_eq!(sc.weight(2.0), 0.0);
        assert_eq!(sc.weight(1.5), 0.5);
        assert_eq!(sc.weight(1.25), 0.25);
        let p = ReducedIntegrand::at(&sc, 1.5).unwrap();
        assert_eq!(p.value(), p.kernel * 0.5);
    }

    #[test]
    fn frozen_spacelike_value() {
        let sc = RwaScenario::new(1.0, 1.0, 4.0, 1.0).unwrap();
        let v = estimator_rwa(&sc, 1e-12).unwrap();
        assert!((v.value - 0.079_174_584_057_373_8).abs() < 1e-10);
    }

    #[test]
    fn short_windows_vanish() {
        let sc = RwaScenario::new(1.0, 1e-9, 3.0, 2.0).unwrap();
        assert!(estimator_rwa(&sc, 1e-12).unwrap().value < 1e-18);
    }

    #[test]
    fn degenerate_pole_is_rejected() {
        let sc = RwaScenario::new(1.0, 1.0, 1.0, 2.0).unwrap();
        assert!(estimator_rwa(&sc, 1e-9).is_err());
        let sc = RwaScenario::new(1.0, 1.0, 3.0 + 1e-12, 2.0).unwrap();
        assert!(estimator_rwa(&sc, 1e-9).is_err());
        assert!(RwaScenario::new(1.0, 0.0, 2.0, 1.0).is_err());
    }
}
