//! Vacuum commutators `<[phi(x, t), phi(x', t')]>` of the free massless scalar
//! field in 1+1, 2+1 and 3+1 dimensions, with and without a hard UV cutoff.
//!
//! All of them are c-numbers of the form `i * real`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::integrate_oscillatory;
use crate::specfun::{bessel_j0, sine_integral};
use crate::types::Dimension;

/// Distance from the lightcone below which the 2+1 commutator is treated as singular.
pub const LIGHTCONE_EPS: f64 = 1e-12;

/// A spacetime point.
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub t: f64,
    pub x: Vec<f64>,
}

impl Event {
    pub fn new(t: f64, x: &[f64]) -> Result<Self> {
        if !t.is_finite() || x.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("event", "components must be finite"));
        }
        if x.is_empty() || x.len() > 3 {
            return Err(Error::invalid("event", "needs 1 to 3 spatial components"));
        }
        Ok(Event { t, x: x.to_vec() })
    }

    pub fn dim(&self) -> Dimension {
        Dimension::try_from(self.x.len() as u8).expect("length checked at construction")
    }
}

/// `(t' - t, |x - x'|)` for a pair of events of dimension `dim`.
fn separation(e: &Event, e2: &Event, dim: Dimension) -> Result<(f64, f64)> {
    if e.x.len() != dim.spatial() || e2.x.len() != dim.spatial() {
        return Err(Error::invalid(
            "event",
            format!("expected {} spatial components", dim.spatial()),
        ));
    }
    let r2: f64 = e.x.iter().zip(&e2.x).map(|(a, b)| (a - b).powi(2)).sum();
    Ok((e2.t - e.t, r2.sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorValue {
    pub value: Complex64,
}

impl CommutatorValue {
    fn imaginary(im: f64) -> Self {
        CommutatorValue {
            value: Complex64::new(0.0, im),
        }
    }
}

/// The distributional 3+1 commutator
/// `(i / 4 pi r) [delta(t - t' + r) - delta(t - t' - r)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPulsePair {
    pub radius: f64,
    pub weight: f64,
}

impl DeltaPulsePair {
    /// Values of `t - t'` carrying the `+i w` and `-i w` pulses.
    pub fn pulse_offsets(&self) -> (f64, f64) {
        (-self.radius, self.radius)
    }

    /// Integral of the pair against a test function `g(t - t')`.
    pub fn sift(&self, g: impl Fn(f64) -> f64) -> Complex64 {
        Complex64::new(0.0, self.weight * (g(-self.radius) - g(self.radius)))
    }
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `(i/2) sgn(t' - t) Theta(|t - t'| - |x - x'|)`, with `Theta(0) = 1/2`.
pub fn commutator_1d(e: &Event, e2: &Event) -> Result<CommutatorValue> {
    let (dt, r) = separation(e, e2, Dimension::One)?;
    let step = match dt.abs().partial_cmp(&r) {
        Some(std::cmp::Ordering::Greater) => 1.0,
        Some(std::cmp::Ordering::Equal) => 0.5,
        _ => 0.0,
    };
    Ok(CommutatorValue::imaginary(0.5 * sgn(dt) * step))
}

/// `(i/2 pi) sgn(t' - t) / sqrt((t - t')^2 - |x - x'|^2)` inside the
/// lightcone, zero outside.
pub fn commutator_2d(e: &Event, e2: &Event) -> Result<CommutatorValue> {
    let (dt, r) = separation(e, e2, Dimension::Two)?;
    let s = (dt - r) * (dt + r);
    if s.abs() <= LIGHTCONE_EPS {
        return Err(Error::Singular(format!(
            "2+1 commutator diverges on the lightcone (dt = {dt}, r = {r})"
        )));
    }
    if s < 0.0 {
        return Ok(CommutatorValue::imaginary(0.0));
    }
    Ok(CommutatorValue::imaginary(sgn(dt) / (2.0 * PI * s.sqrt())))
}

pub fn commutator_3d(e: &Event, e2: &Event) -> Result<DeltaPulsePair> {
    let (_, r) = separation(e, e2, Dimension::Three)?;
    if r == 0.0 {
        return Err(Error::Singular("3+1 commutator at coincident points".into()));
    }
    Ok(DeltaPulsePair {
        radius: r,
        weight: 1.0 / (4.0 * PI * r),
    })
}

fn check_cutoff(cutoff: f64) -> Result<()> {
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(Error::invalid("cutoff", "must be positive"));
    }
    Ok(())
}

/// `(-i/2 pi) [Si(Lambda (t - t' + x - x')) + Si(Lambda (t - t' - x + x'))]`.
pub fn commutator_1d_cutoff(e: &Event, e2: &Event, cutoff: f64) -> Result<CommutatorValue> {
    check_cutoff(cutoff)?;
    separation(e, e2, Dimension::One)?;
    let u = e.t - e2.t;
    let d = e.x[0] - e2.x[0];
    let s = sine_integral(cutoff * (u + d)) + sine_integral(cutoff * (u - d));
    Ok(CommutatorValue::imaginary(-s / (2.0 * PI)))
}

/// `J0(k r) sin(k tau)`: the mode integrand of the 2+1 commutator, whose
/// integral over `k in [0, Lambda]` times `i / 2 pi` gives the cutoff commutator.
pub fn commutator_2d_cutoff_integrand(k: f64, r: f64, tau: f64) -> f64 {
    bessel_j0(k * r) * (k * tau).sin()
}

/// `(i/2 pi) int_0^Lambda J0(k r) sin(k (t' - t)) dk`.
pub fn commutator_2d_cutoff(e: &Event, e2: &Event, cutoff: f64, tol: f64) -> Result<CommutatorValue> {
    check_cutoff(cutoff)?;
    let (tau, r) = separation(e, e2, Dimension::Two)?;
    let scale = (r + tau.abs()).max(f64::MIN_POSITIVE.sqrt());
    let res = integrate_oscillatory(
        |k| commutator_2d_cutoff_integrand(k, r, tau),
        0.0,
        cutoff,
        scale,
        tol,
    )?;
    Ok(CommutatorValue::imaginary(res.value / (2.0 * PI)))
}

/// `sin(cutoff * x) / x`, switching to its Taylor series near the removable
/// singularity at `x = 0`.
pub fn scaled_sinc(cutoff: f64, x: f64) -> f64 {
    let z = cutoff * x;
    if x.abs() < 1e-8 || z.abs() < 1e-4 {
        cutoff * (1.0 - z * z / 6.0)
    } else {
        z.sin() / x
    }
}

/// `(i / 4 pi^2 r) [sin(Lambda (u + r))/(u + r) - sin(Lambda (u - r))/(u - r)]`
/// with `u = t - t'`.
pub fn commutator_3d_cutoff(e: &Event, e2: &Event, cutoff: f64) -> Result<CommutatorValue> {
    check_cutoff(cutoff)?;
    let (_, r) = separation(e, e2, Dimension::Three)?;
    if r == 0.0 {
        return Err(Error::Singular("3+1 commutator at coincident points".into()));
    }
    let u = e.t - e2.t;
    let bracket = scaled_sinc(cutoff, u + r) - scaled_sinc(cutoff, u - r);
    Ok(CommutatorValue::imaginary(bracket / (4.0 * PI * PI * r)))
}

/// The 3+1 cutoff commutator with the relative sign between the two sinc
/// terms taken as `+`. The result is symmetric under event exchange, so it is
/// not a commutator; kept for comparison with tabulated values in that form.
pub fn commutator_3d_cutoff_as_printed(e: &Event, e2: &Event, cutoff: f64) -> Result<CommutatorValue> {
    check_cutoff(cutoff)?;
    let (_, r) = separation(e, e2, Dimension::Three)?;
    if r == 0.0 {
        return Err(Error::Singular("3+1 commutator at coincident points".into()));
    }
    let u = e.t - e2.t;
    let bracket = scaled_sinc(cutoff, u + r) + scaled_sinc(cutoff, -u + r);
    Ok(CommutatorValue::imaginary(bracket / (4.0 * PI * PI * r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(t: f64, x: &[f64]) -> Event {
        Event::new(t, x).unwrap()
    }

    #[test]
    fn one_d_examples() {
        let v = commutator_1d(&ev(0.0, &[0.0]), &ev(2.0, &[1.0])).unwrap();
        assert_eq!(v.value, Complex64::new(0.0, 0.5));
        let v = commutator_1d(&ev(0.0, &[0.0]), &ev(1.0, &[2.0])).unwrap();
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
        let v = commutator_1d(&ev(0.0, &[0.0]), &ev(1.0, &[1.0])).unwrap();
        assert_eq!(v.value.im, 0.25);
        let v = commutator_1d(&ev(2.0, &[1.0]), &ev(0.0, &[0.0])).unwrap();
        assert_eq!(v.value.im, -0.5);
    }

    #[test]
    fn two_d_examples() {
        let v = commutator_2d(&ev(0.0, &[0.0, 0.0]), &ev(2.0, &[1.0, 0.0])).unwrap();
        assert!((v.value.im - 1.0 / (2.0 * PI * 3f64.sqrt())).abs() < 1e-15);
        let v = commutator_2d(&ev(0.0, &[0.0, 0.0]), &ev(1.0, &[0.0, 2.0])).unwrap();
        assert_eq!(v.value.im, 0.0);
        let err = commutator_2d(&ev(0.0, &[0.0, 0.0]), &ev(1.0, &[1.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::Singular(_)));
    }

    #[test]
    fn three_d_pulse_pair() {
        let p = commutator_3d(&ev(0.0, &[0.0; 3]), &ev(0.0, &[0.0, 2.0, 0.0])).unwrap();
        assert_eq!(p.pulse_offsets(), (-2.0, 2.0));
        assert!((p.weight - 1.0 / (8.0 * PI)).abs() < 1e-16);
        assert!((p.weight * p.radius - 1.0 / (4.0 * PI)).abs() < 1e-16);
        let s = p.sift(|u| u * u + u);
        assert!((s.im - p.weight * ((4.0 - 2.0) - (4.0 + 2.0))).abs() < 1e-15);
        assert!(commutator_3d(&ev(0.0, &[1.0; 3]), &ev(3.0, &[1.0; 3])).is_err());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(commutator_1d(&ev(0.0, &[0.0, 1.0]), &ev(1.0, &[0.0, 1.0])).is_err());
        assert!(Event::new(0.0, &[]).is_err());
        assert!(Event::new(f64::NAN, &[0.0]).is_err());
    }

    #[test]
    fn one_d_cutoff_examples() {
        let e = ev(0.3, &[0.7]);
        assert_eq!(commutator_1d_cutoff(&e, &e, 5.0).unwrap().value.im, 0.0);
        let v = commutator_1d_cutoff(&ev(0.0, &[0.0]), &ev(2.0, &[1.0]), 1e6).unwrap();
        assert!((v.value.im - 0.5).abs() < 1e-5);
        let w = commutator_1d_cutoff(&ev(2.0, &[1.0]), &ev(0.0, &[0.0]), 1e6).unwrap();
        assert_eq!(w.value.im, -v.value.im);
    }

    #[test]
    fn two_d_cutoff_integrand() {
        assert_eq!(commutator_2d_cutoff_integrand(0.0, 1.0, 2.0), 0.0);
        assert_eq!(commutator_2d_cutoff_integrand(1.3, 0.0, 2.0), (2.6f64).sin());
        assert_eq!(commutator_2d_cutoff_integrand(1.3, 0.5, 0.0), 0.0);
    }

    #[test]
    fn three_d_cutoff_examples() {
        let (cut, r) = (7.0, 1.5);
        let a = ev(0.0, &[0.0; 3]);
        let b = ev(0.0, &[r, 0.0, 0.0]);
        // equal times: the two sinc terms cancel
        assert_eq!(commutator_3d_cutoff(&a, &b, cut).unwrap().value.im, 0.0);
        let printed = commutator_3d_cutoff_as_printed(&a, &b, cut).unwrap().value.im;
        let want = 2.0 * (cut * r).sin() / r / (4.0 * PI * PI * r);
        assert!((printed - want).abs() < 1e-15);

        // on the pulse t - t' = -r
        let b_late = ev(r, &[r, 0.0, 0.0]);
        let v = commutator_3d_cutoff(&a, &b_late, cut).unwrap().value.im;
        let want = (cut - (2.0 * cut * r).sin() / (2.0 * r)) / (4.0 * PI * PI * r);
        assert!((v - want).abs() < 1e-14);
        let p = commutator_3d_cutoff_as_printed(&a, &b_late, cut).unwrap().value.im;
        let want = (cut + (2.0 * cut * r).sin() / (2.0 * r)) / (4.0 * PI * PI * r);
        assert!((p - want).abs() < 1e-14);

        // both sinc zeros
        let cut = PI;
        let b = ev(2.0, &[1.0, 0.0, 0.0]);
        let v = commutator_3d_cutoff(&a, &b, cut).unwrap().value.im;
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn scaled_sinc_is_continuous() {
        for cut in [1.0_f64, 100.0, 1e4] {
            let x = 0.99e-4 / cut;
            let exact = (cut * x).sin() / x;
            assert!((scaled_sinc(cut, x) - exact).abs() <= 1e-15 * cut);
        }
        assert_eq!(scaled_sinc(3.0, 0.0), 3.0);
    }
}
