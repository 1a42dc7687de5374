//! Parameter sweeps over the estimators and their tabular output.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rwa::{estimator_rwa, RwaScenario};
use crate::smearing::{estimator_gaussian, estimator_tophat_3d, tophat_pointlike_limit, EstimatorValue};
use crate::types::{validate, Dimension, ScenarioSpec};
use crate::uvcut::estimator_cutoff;

pub const CSV_HEADER: &str = "parameter,value,estimator,abs_error,dim";

/// One `(parameter, estimator)` record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: String,
    pub value: f64,
    pub estimator: f64,
    pub abs_error: f64,
    pub dim: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    #[serde(rename = "L")]
    Separation,
    #[serde(rename = "sigma")]
    Sigma,
    #[serde(rename = "lambda_cutoff")]
    Cutoff,
    #[serde(rename = "omega")]
    Omega,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Separation => "L",
            SweepAxis::Sigma => "sigma",
            SweepAxis::Cutoff => "lambda_cutoff",
            SweepAxis::Omega => "omega",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "L" => Ok(SweepAxis::Separation),
            "sigma" => Ok(SweepAxis::Sigma),
            "lambda_cutoff" => Ok(SweepAxis::Cutoff),
            "omega" => Ok(SweepAxis::Omega),
            _ => Err(Error::invalid("axis", format!("unknown axis {s:?}"))),
        }
    }

    /// Copy of `spec` with the swept parameter set to `x`.
    pub fn apply(self, spec: &ScenarioSpec, x: f64) -> ScenarioSpec {
        let mut s = spec.clone();
        match self {
            SweepAxis::Separation => s.separation = x,
            SweepAxis::Sigma => s.smearing = x,
            SweepAxis::Cutoff => s.cutoff = Some(x),
            SweepAxis::Omega => {
                s.gap_a = x;
                s.gap_b = x;
            }
        }
        s
    }
}

/// Which estimator a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    /// Delta switching, Gaussian smearing.
    Gaussian,
    /// 3+1 top-hat switching, Gaussian smearing.
    Tophat,
    /// Pointlike limit of the 3+1 top-hat estimator.
    TophatPointlike,
    /// Pointlike delta switching, hard UV cutoff.
    Cutoff,
    /// Pointlike top-hat switching under the rotating-wave approximation.
    Rwa,
}

impl EstimatorKind {
    /// Picks the estimator implied by a scenario and sweep axis.
    pub fn infer(spec: &ScenarioSpec, axis: Option<SweepAxis>) -> EstimatorKind {
        if axis == Some(SweepAxis::Omega) {
            EstimatorKind::Rwa
        } else if spec.cutoff.is_some() || axis == Some(SweepAxis::Cutoff) {
            EstimatorKind::Cutoff
        } else if spec.duration > 0.0 {
            EstimatorKind::Tophat
        } else {
            EstimatorKind::Gaussian
        }
    }
}

/// Evaluates one estimator for one validated scenario.
pub fn evaluate(spec: &ScenarioSpec, kind: EstimatorKind, tol: f64) -> Result<EstimatorValue> {
    let s = validate(spec.clone())?;
    let need_positive = |name: &'static str, v: f64| {
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Error::invalid(name, format!("must be positive for the {kind:?} estimator")))
        }
    };
    let need_3d = || {
        if s.dim == Dimension::Three {
            Ok(())
        } else {
            Err(Error::invalid("dim", "top-hat estimators exist in 3+1 only"))
        }
    };
    match kind {
        EstimatorKind::Gaussian => {
            need_positive("smearing", s.smearing)?;
            estimator_gaussian(s.dim, s.time_gap, s.separation, s.smearing, tol)
        }
        EstimatorKind::Tophat => {
            need_3d()?;
            need_positive("duration", s.duration)?;
            let v = estimator_tophat_3d(s.time_gap, s.separation, s.smearing, s.duration)?;
            Ok(EstimatorValue {
                value: v,
                est_abs_error: 1e-13 * (s.separation + s.time_gap + 2.0 * s.duration) / s.separation,
            })
        }
        EstimatorKind::TophatPointlike => {
            need_3d()?;
            let v = tophat_pointlike_limit(s.time_gap, s.separation, s.duration)?;
            Ok(EstimatorValue {
                value: v,
                est_abs_error: 4.0 * f64::EPSILON * v,
            })
        }
        EstimatorKind::Cutoff => {
            let cutoff = s
                .cutoff
                .ok_or_else(|| Error::invalid("cutoff", "required for the cutoff estimator"))?;
            estimator_cutoff(s.dim, s.time_gap, s.separation, cutoff, tol)
        }
        EstimatorKind::Rwa => {
            if s.gap_a != s.gap_b {
                return Err(Error::invalid("gap_b", "the RWA estimator uses a common gap"));
            }
            let sc = RwaScenario::new(s.time_gap, s.duration, s.separation, s.gap_a)?;
            estimator_rwa(&sc, tol)
        }
    }
}

/// Evaluates `kind` at every grid point in parallel; rows come back in grid order.
pub fn run_sweep(
    spec: &ScenarioSpec,
    kind: EstimatorKind,
    axis: SweepAxis,
    grid: &[f64],
    tol: f64,
) -> Result<Vec<SweepRow>> {
    sweep_with(grid, axis.name(), spec.dim, tol, |x| evaluate(&axis.apply(spec, x), kind, tol))
}

/// Sweep driver for arbitrary parameterizations.
pub fn sweep_with<F>(grid: &[f64], parameter: &str, dim: Dimension, tol: f64, eval: F) -> Result<Vec<SweepRow>>
where
    F: Fn(f64) -> Result<EstimatorValue> + Sync,
{
    if grid.len() < 2 {
        return Err(Error::invalid("points", "a sweep needs at least 2 grid points"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive and finite"));
    }
    let values: Vec<Result<EstimatorValue>> = grid.par_iter().map(|&x| eval(x)).collect();
    grid.iter()
        .zip(values)
        .map(|(&x, v)| {
            let v = v?;
            Ok(SweepRow {
                parameter: parameter.to_string(),
                value: x,
                estimator: v.value,
                abs_error: v.est_abs_error,
                dim: dim.into(),
            })
        })
        .collect()
}

/// `n` equispaced points of `[lo, hi]`, or log-spaced when `log` is set.
pub fn grid(lo: f64, hi: f64, n: usize, log: bool) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::invalid("points", "a sweep needs at least 2 grid points"));
    }
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::invalid("max", "needs finite min < max"));
    }
    if log && lo <= 0.0 {
        return Err(Error::invalid("min", "log spacing needs min > 0"));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let f = i as f64 / last;
            if log {
                (lo.ln() + (hi.ln() - lo.ln()) * f).exp()
            } else {
                lo + (hi - lo) * f
            }
        })
        .collect())
}

/// CSV with [`CSV_HEADER`], LF line endings and shortest round-trip floats.
pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:?},{:?},{:?},{}",
            r.parameter, r.value, r.estimator, r.abs_error, r.dim
        );
    }
    out
}
