//! Leading-order signal contribution of detector A to detector B's density
//! matrix.
//!
//! Every entry is linear in the causality functional
//! `C(t, t') = i <[phi_A(t), phi_B(t')]>` (smeared as appropriate), so the
//! signal carries no dependence on the state of the field.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_with, Tolerance, MAX_EVALUATIONS};
use crate::smearing::{c1, c2, c3, SmearedKernel};
use crate::types::{validate, DetectorState, Dimension, ScenarioSpec, SignalMatrix};

/// Switching function `chi(t)` of one detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SwitchingSpec {
    Delta { t0: f64 },
    TopHat { on: f64, off: f64 },
}

impl SwitchingSpec {
    pub fn tophat(on: f64, off: f64) -> Result<Self> {
        if !(on.is_finite() && off.is_finite() && off > on) {
            return Err(Error::invalid("switching", "top-hat needs t_off > t_on"));
        }
        Ok(SwitchingSpec::TopHat { on, off })
    }

    /// First and last instants of the support.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            SwitchingSpec::Delta { t0 } => (t0, t0),
            SwitchingSpec::TopHat { on, off } => (on, off),
        }
    }

    /// Switchings of A and B for a scenario.
    pub fn from_scenario(sc: &ScenarioSpec) -> (SwitchingSpec, SwitchingSpec) {
        if sc.is_delta_switching() {
            (
                SwitchingSpec::Delta { t0: 0.0 },
                SwitchingSpec::Delta { t0: sc.time_gap },
            )
        } else {
            let (a0, a1) = sc.window_a();
            let (b0, b1) = sc.window_b();
            (
                SwitchingSpec::TopHat { on: a0, off: a1 },
                SwitchingSpec::TopHat { on: b0, off: b1 },
            )
        }
    }
}

/// Rejects supports that overlap or put B before A. Touching supports are allowed.
pub fn check_ordering(a: &SwitchingSpec, b: &SwitchingSpec) -> Result<()> {
    if a.support().1 > b.support().0 {
        return Err(Error::invalid(
            "switching",
            "detector B must be switched on after detector A is switched off",
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonopoleCommutatorMatrix {
    pub entries: [[Complex64; 2]; 2],
}

/// `<mu(t)> = 2 Re(beta e^{i Omega t})`.
pub fn monopole_expectation(state: &DetectorState, gap: f64, t: f64) -> f64 {
    2.0 * (state.beta() * Complex64::from_polar(1.0, gap * t)).re
}

/// `[mu(t), rho]` in the `{|g>, |e>}` basis.
pub fn monopole_commutator(state: &DetectorState, gap: f64, t: f64) -> MonopoleCommutatorMatrix {
    let phase = Complex64::from_polar(1.0, gap * t);
    let im = (state.beta() * phase).im;
    let k = 1.0 - 2.0 * state.alpha();
    let i = Complex64::i();
    MonopoleCommutatorMatrix {
        entries: [
            [-2.0 * i * im, phase.conj() * k],
            [-phase * k, 2.0 * i * im],
        ],
    }
}

/// Signal matrix for instantaneous kicks at `t_A = 0` and `t_B = Delta`,
/// given the value of the causality functional `C(t_A, t_B)`.
pub fn signal_matrix_delta(
    sc: &ScenarioSpec,
    state_a: &DetectorState,
    state_b: &DetectorState,
    c_value: f64,
) -> Result<SignalMatrix> {
    if !sc.is_delta_switching() {
        return Err(Error::invalid("duration", "delta switching requires duration = 0"));
    }
    let (ta, tb) = (0.0, sc.time_gap);
    let pre = sc.coupling_product() * monopole_expectation(state_a, sc.gap_a, ta) * c_value;
    let phase = Complex64::from_polar(1.0, sc.gap_b * tb);
    let im = (state_b.beta() * phase).im;
    let k = 1.0 - 2.0 * state_b.alpha();
    let i = Complex64::i();
    let m = [
        [Complex64::new(-2.0 * im, 0.0), -i * phase.conj() * k],
        [i * phase * k, Complex64::new(2.0 * im, 0.0)],
    ];
    Ok(SignalMatrix {
        entries: m.map(|row| row.map(|z| z * pre)),
    })
}

/// The causality functional `C(t, t')` as consumed by
/// [`signal_matrix_general`]: integrated over A's window against a source
/// profile.
pub trait CausalFunctional: Sync {
    /// `int_a^b g(t) C(t, t2) dt`.
    fn integrate_source(&self, g: &dyn Fn(f64) -> f64, a: f64, b: f64, t2: f64, tol: f64) -> Result<f64>;

    /// Values of `t'` at which the source integral is not smooth, given A's window.
    fn outer_breakpoints(&self, _a: f64, _b: f64) -> Vec<f64> {
        Vec::new()
    }
}

/// A pointwise-evaluable `C(t, t')`, optionally with a lightcone distance
/// `L` at which it has a kink or step.
pub struct Pointwise<F> {
    pub c: F,
    pub lightcone: Option<f64>,
}

impl<F: Fn(f64, f64) -> f64 + Sync> CausalFunctional for Pointwise<F> {
    fn integrate_source(&self, g: &dyn Fn(f64) -> f64, a: f64, b: f64, t2: f64, tol: f64) -> Result<f64> {
        let mut knots = vec![a, b];
        if let Some(l) = self.lightcone {
            let k = t2 - l;
            if k > a && k < b {
                knots.insert(1, k);
            }
        }
        let r = integrate_with(|t| g(t) * (self.c)(t, t2), &knots, Tolerance::absolute(tol), MAX_EVALUATIONS)?;
        Ok(r.value)
    }

    fn outer_breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        self.lightcone.map(|l| vec![a + l, b + l]).unwrap_or_default()
    }
}

/// Gaussian-smeared functional `C_n` of [`crate::smearing`].
pub struct Smeared {
    pub kernel: SmearedKernel,
}

impl CausalFunctional for Smeared {
    fn integrate_source(&self, g: &dyn Fn(f64) -> f64, a: f64, b: f64, t2: f64, tol: f64) -> Result<f64> {
        let k = &self.kernel;
        let inner_tol = 0.1 * tol / (b - a).max(1.0);
        let c = |t: f64| -> Result<f64> {
            match k.dim {
                Dimension::One => c1(k, t, t2),
                Dimension::Two => {
                    if t2 <= t {
                        Ok(0.0)
                    } else {
                        Ok(c2(k, t, t2, inner_tol)?.value)
                    }
                }
                Dimension::Three => c3(k, t, t2),
            }
        };
        // surface the first kernel failure instead of integrating through it
        let failure = std::cell::RefCell::new(None);
        let r = integrate(
            |t| match c(t) {
                Ok(v) => g(t) * v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            },
            a,
            b,
            tol,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        Ok(r?.value)
    }

    fn outer_breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let l = self.kernel.separation;
        vec![a + l, b + l]
    }
}

/// Pointlike detectors, uncut field: `C = i <[phi(t, x_A), phi(t', x_B)]>`.
///
/// * 1+1: `-1/2` inside the future lightcone.
/// * 2+1: `-1 / (2 pi sqrt((t' - t)^2 - L^2))` inside, integrated after
///   `t' - t = L cosh(u)`.
/// * 3+1: `-delta(t' - t - L) / (4 pi L)`, sifted analytically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pointlike {
    pub dim: Dimension,
    pub separation: f64,
}

impl CausalFunctional for Pointlike {
    fn integrate_source(&self, g: &dyn Fn(f64) -> f64, a: f64, b: f64, t2: f64, tol: f64) -> Result<f64> {
        let l = self.separation;
        let hi = b.min(t2 - l);
        match self.dim {
            Dimension::One => {
                if hi <= a {
                    return Ok(0.0);
                }
                Ok(-0.5 * integrate(g, a, hi, 2.0 * tol)?.value)
            }
            Dimension::Two => {
                if hi <= a {
                    return Ok(0.0);
                }
                let (tau_lo, tau_hi) = (t2 - hi, t2 - a);
                let v = if l > 0.0 {
                    let u_lo = (tau_lo / l).max(1.0).acosh();
                    let u_hi = (tau_hi / l).acosh();
                    integrate(|u: f64| g(t2 - l * u.cosh()), u_lo, u_hi, 2.0 * PI * tol)?.value
                } else {
                    integrate(|tau: f64| g(t2 - tau) / tau, tau_lo, tau_hi, 2.0 * PI * tol)?.value
                };
                Ok(-v / (2.0 * PI))
            }
            Dimension::Three => {
                if l == 0.0 {
                    return Err(Error::Singular("3+1 commutator at coincident points".into()));
                }
                let t = t2 - l;
                if t < a || t > b {
                    return Ok(0.0);
                }
                Ok(-g(t) / (4.0 * PI * l))
            }
        }
    }

    fn outer_breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        vec![a + self.separation, b + self.separation]
    }
}

/// Signal matrix for top-hat switchings: the double time integral of
/// `chi_A chi_B <mu_A> C [mu_B, rho_B]`, assembled so that the result is
/// traceless and Hermitian by construction.
pub fn signal_matrix_general(
    sc: &ScenarioSpec,
    state_a: &DetectorState,
    state_b: &DetectorState,
    c: &dyn CausalFunctional,
    tol: f64,
) -> Result<SignalMatrix> {
    let sc = validate(sc.clone())?;
    if sc.is_delta_switching() {
        return Err(Error::invalid(
            "duration",
            "general switching needs duration > 0; use signal_matrix_delta",
        ));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive and finite"));
    }
    let (sa, sb) = SwitchingSpec::from_scenario(&sc);
    check_ordering(&sa, &sb)?;
    let (a0, a1) = sa.support();
    let (b0, b1) = sb.support();

    let lam = sc.coupling_product().abs().max(f64::MIN_POSITIVE);
    let outer_tol = tol / (16.0 * lam);
    let inner_tol = outer_tol / (b1 - b0).max(1.0);

    let beta_a = state_a.beta();
    let source = |t: f64| (beta_a * Complex64::from_polar(1.0, sc.gap_a * t)).re;

    let mut knots = vec![b0, b1];
    for p in c.outer_breakpoints(a0, a1) {
        if p > b0 && p < b1 {
            knots.push(p);
        }
    }
    knots.sort_by(f64::total_cmp);

    let beta_b = state_b.beta();
    let failure = std::cell::RefCell::new(None);
    let r = integrate_with(
        |t2: f64| -> [f64; 3] {
            let gv = match c.integrate_source(&source, a0, a1, t2, inner_tol) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            };
            let phase = Complex64::from_polar(1.0, sc.gap_b * t2);
            [(beta_b * phase).im * gv, phase.re * gv, phase.im * gv]
        },
        &knots,
        Tolerance::absolute(outer_tol),
        MAX_EVALUATIONS,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let [i_im, i_cos, i_sin] = r?.value;

    let lam = sc.coupling_product();
    let k = 1.0 - 2.0 * state_b.alpha();
    let m00 = Complex64::new(-4.0 * i_im * lam, 0.0);
    let m01 = Complex64::new(-i_sin, -i_cos) * (2.0 * k * lam);
    Ok(SignalMatrix {
        entries: [[m00, m01], [m01.conj(), -m00]],
    })
}

/// `C(0, Delta)` for a delta-switched scenario: the smeared closed forms when
/// `smearing > 0`, the pointlike commutator otherwise (not available in 3+1,
/// where it is a distribution).
pub fn delta_causal_value(sc: &ScenarioSpec, tol: f64) -> Result<f64> {
    let sc = validate(sc.clone())?;
    let (l, d) = (sc.separation, sc.time_gap);
    if sc.is_pointlike() {
        return match sc.dim {
            Dimension::One => Ok(if d > l {
                -0.5
            } else if d == l {
                -0.25
            } else {
                0.0
            }),
            Dimension::Two => {
                let s = (d - l) * (d + l);
                if s.abs() <= crate::commutators::LIGHTCONE_EPS {
                    Err(Error::Singular("pointlike 2+1 kick on the lightcone".into()))
                } else if s < 0.0 {
                    Ok(0.0)
                } else {
                    Ok(-1.0 / (2.0 * PI * s.sqrt()))
                }
            }
            Dimension::Three => Err(Error::invalid(
                "smearing",
                "pointlike 3+1 delta kicks are distributional; use a positive smearing or duration",
            )),
        };
    }
    let k = SmearedKernel::new(sc.dim, l, sc.smearing)?;
    match sc.dim {
        Dimension::One => c1(&k, 0.0, d),
        Dimension::Two => Ok(c2(&k, 0.0, d, tol)?.value),
        Dimension::Three => c3(&k, 0.0, d),
    }
}

/// Signal matrix for any validated scenario, choosing the delta closed form
/// or the general double integral and the matching causality functional.
pub fn signal_matrix(
    sc: &ScenarioSpec,
    state_a: &DetectorState,
    state_b: &DetectorState,
    tol: f64,
) -> Result<SignalMatrix> {
    let sc = validate(sc.clone())?;
    if sc.cutoff.is_some() {
        return Err(Error::invalid(
            "cutoff",
            "signal matrices are computed for the uncut field only",
        ));
    }
    if sc.is_delta_switching() {
        let c = delta_causal_value(&sc, tol)?;
        return signal_matrix_delta(&sc, state_a, state_b, c);
    }
    if sc.is_pointlike() {
        let c = Pointlike {
            dim: sc.dim,
            separation: sc.separation,
        };
        signal_matrix_general(&sc, state_a, state_b, &c, tol)
    } else {
        let c = Smeared {
            kernel: SmearedKernel::new(sc.dim, sc.separation, sc.smearing)?,
        };
        signal_matrix_general(&sc, state_a, state_b, &c, tol)
    }
}
