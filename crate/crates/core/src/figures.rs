//! Datasets behind the five published figures, with their parameters fixed.
//!
//! All lengths and times are in units of the time gap `Delta = 1`, except
//! figure 5 where `T = Delta = 1/Omega = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rwa::{estimator_rwa, RwaScenario};
use crate::smearing::{estimator_gaussian, EstimatorValue};
use crate::sweep::{evaluate, grid, sweep_with, EstimatorKind, SweepRow};
use crate::types::{Dimension, ScenarioSpec};
use crate::uvcut::{envelope_over_lambda, estimator_cutoff, fit_decay, DecayFit};

pub const FIGURES: [u8; 5] = [1, 2, 3, 4, 5];

/// Smearing widths shared by figures 1 and 3.
pub const SIGMAS: [f64; 4] = [0.02, 0.05, 0.1, 0.2];

/// Number of separation samples on the `[0, 2]` axis of figures 1, 3 and 4.
pub const SEPARATION_POINTS: usize = 120;

/// Separation at which figure 4's cutoff decay is examined.
pub const DECAY_SEPARATION: f64 = 1.4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub name: String,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRecord {
    pub dim: u8,
    pub fit: DecayFit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureData {
    pub figure: u8,
    pub series: Vec<Series>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fits: Vec<FitRecord>,
    pub notes: Vec<String>,
}

/// `L_k = 2k/n` for `k = 1..=n`; the coincident point `L = 0` is left out
/// because the 3+1 closed form divides by `L`.
pub fn separation_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|k| 2.0 * k as f64 / n as f64).collect()
}

fn label(x: f64) -> String {
    format!("{x}").replace('.', "p")
}

fn base(dim: Dimension) -> ScenarioSpec {
    ScenarioSpec::new(dim, 1.0, 1.0)
}

/// Builds the dataset of figure `n`.
pub fn figure(n: u8, tol: f64) -> Result<FigureData> {
    match n {
        1 => figure1(tol),
        2 => figure2(tol),
        3 => figure3(tol),
        4 => figure4(tol),
        5 => figure5(tol),
        _ => Err(Error::invalid("figure", format!("{n} is not one of 1..5"))),
    }
}

fn figure1(tol: f64) -> Result<FigureData> {
    let ls = separation_grid(SEPARATION_POINTS);
    let mut series = Vec::new();
    for dim in Dimension::ALL {
        for sigma in SIGMAS {
            let spec = ScenarioSpec { smearing: sigma, ..base(dim) };
            let rows = sweep_with(&ls, "L", dim, tol, |l| {
                evaluate(&ScenarioSpec { separation: l, ..spec.clone() }, EstimatorKind::Gaussian, tol)
            })?;
            series.push(Series {
                name: format!("fig1_dim{}_sigma{}", u8::from(dim), label(sigma)),
                rows,
            });
        }
    }
    Ok(FigureData {
        figure: 1,
        series,
        fits: Vec::new(),
        notes: vec!["delta switching at t = 0 and t = 1, Gaussian smearing, L on (0, 2]".into()],
    })
}

fn figure2(tol: f64) -> Result<FigureData> {
    let top = grid(0.01, 1.0, 60, true)?;
    let bottom = grid(0.01, 2.0, 60, true)?;
    let mut series = Vec::new();
    for dim in Dimension::ALL {
        let rows = sweep_with(&top, "sigma", dim, tol, |s| estimator_gaussian(dim, 1.0, 1.1, s, tol))?;
        series.push(Series {
            name: format!("fig2_top_dim{}", u8::from(dim)),
            rows,
        });
    }
    for dim in Dimension::ALL {
        let rows = sweep_with(&bottom, "sigma", dim, tol, |s| {
            estimator_gaussian(dim, 1.0, 1.0 + 2.0 * s, s, tol)
        })?;
        series.push(Series {
            name: format!("fig2_bottom_dim{}", u8::from(dim)),
            rows,
        });
    }
    Ok(FigureData {
        figure: 2,
        series,
        fits: Vec::new(),
        notes: vec![
            "top: L = 1.1, sigma log-spaced on [0.01, 1]".into(),
            "bottom: L = 1 + 2 sigma, sigma log-spaced on [0.01, 2]".into(),
        ],
    })
}

fn figure3(tol: f64) -> Result<FigureData> {
    let ls = separation_grid(SEPARATION_POINTS);
    let spec = ScenarioSpec { duration: 0.1, ..base(Dimension::Three) };
    let mut series = Vec::new();
    for sigma in SIGMAS {
        let s = ScenarioSpec { smearing: sigma, ..spec.clone() };
        let rows = sweep_with(&ls, "L", Dimension::Three, tol, |l| {
            evaluate(&ScenarioSpec { separation: l, ..s.clone() }, EstimatorKind::Tophat, tol)
        })?;
        series.push(Series {
            name: format!("fig3_sigma{}", label(sigma)),
            rows,
        });
    }
    let rows = sweep_with(&ls, "L", Dimension::Three, tol, |l| {
        evaluate(&ScenarioSpec { separation: l, ..spec.clone() }, EstimatorKind::TophatPointlike, tol)
    })?;
    series.push(Series {
        name: "fig3_pointlike".into(),
        rows,
    });
    Ok(FigureData {
        figure: 3,
        series,
        fits: Vec::new(),
        notes: vec!["3+1 top-hat switching of duration T = 0.1, Delta = 1".into()],
    })
}

/// Cutoffs drawn in figure 4's separation panels.
pub fn figure4_cutoffs(dim: Dimension) -> &'static [f64] {
    match dim {
        Dimension::One => &[5.0, 10.0, 20.0, 1000.0],
        _ => &[25.0, 50.0, 100.0],
    }
}

/// Log-spaced cutoff grid of figure 4's decay panel.
pub fn figure4_decay_grid() -> Vec<f64> {
    grid(25.0, 1000.0, 16, true).expect("fixed grid is valid")
}

fn figure4(tol: f64) -> Result<FigureData> {
    let ls = separation_grid(SEPARATION_POINTS);
    let lambdas = figure4_decay_grid();
    let mut series = Vec::new();
    let mut fits = Vec::new();
    for dim in Dimension::ALL {
        for &cutoff in figure4_cutoffs(dim) {
            let rows = sweep_with(&ls, "L", dim, tol, |l| estimator_cutoff(dim, 1.0, l, cutoff, tol))?;
            series.push(Series {
                name: format!("fig4_dim{}_cutoff{}", u8::from(dim), label(cutoff)),
                rows,
            });
        }
    }
    for dim in Dimension::ALL {
        let rows = sweep_with(&lambdas, "lambda_cutoff", dim, tol, |c| {
            estimator_cutoff(dim, 1.0, DECAY_SEPARATION, c, tol)
        })?;
        series.push(Series {
            name: format!("fig4_scatter_dim{}", u8::from(dim)),
            rows,
        });
        let envelope = envelope_over_lambda(dim, 1.0, DECAY_SEPARATION, &lambdas, tol)?;
        let rows = envelope
            .iter()
            .map(|&(c, e)| SweepRow {
                parameter: "lambda_cutoff".into(),
                value: c,
                estimator: e,
                abs_error: tol,
                dim: dim.into(),
            })
            .collect();
        series.push(Series {
            name: format!("fig4_envelope_dim{}", u8::from(dim)),
            rows,
        });
        fits.push(FitRecord {
            dim: dim.into(),
            fit: fit_decay(&envelope)?,
        });
    }
    Ok(FigureData {
        figure: 4,
        series,
        fits,
        notes: vec![
            "pointlike delta switching with a hard UV cutoff, Delta = 1".into(),
            "envelope: maximum over one oscillation period [Lambda, Lambda + pi/|L - Delta|]".into(),
            "fits: envelope ~ Lambda^(-exponent), least squares in log-log".into(),
        ],
    })
}

/// Separations `L_k = 6(k - 1/2)/n` of figure 5's upper panel; the offsets
/// keep every sample off the band ends `L = 1` and `L = 3`.
pub fn figure5_separations(n: usize) -> Vec<f64> {
    (1..=n).map(|k| 6.0 * (k as f64 - 0.5) / n as f64).collect()
}

fn figure5(tol: f64) -> Result<FigureData> {
    let ls = figure5_separations(SEPARATION_POINTS);
    let omegas = grid(0.1, 20.0, 60, true)?;
    let top = sweep_with(&ls, "L", Dimension::Three, tol, |l| rwa(1.0, 1.0, l, 1.0, tol))?;
    let bottom = sweep_with(&omegas, "omega", Dimension::Three, tol, |w| rwa(1.0, 1.0, 4.0, w, tol))?;
    Ok(FigureData {
        figure: 5,
        series: vec![
            Series {
                name: "fig5_top".into(),
                rows: top,
            },
            Series {
                name: "fig5_bottom".into(),
                rows: bottom,
            },
        ],
        fits: Vec::new(),
        notes: vec![
            "top: T = Delta = 1/Omega = 1, L in units of 1/Omega".into(),
            "bottom: T = Delta = 1, L = 3T + Delta = 4, Omega log-spaced on [0.1, 20]".into(),
            "principal value taken at s = L inside the band [Delta, 2T + Delta]".into(),
        ],
    })
}

fn rwa(time_gap: f64, duration: f64, separation: f64, gap: f64, tol: f64) -> Result<EstimatorValue> {
    estimator_rwa(&RwaScenario::new(time_gap, duration, separation, gap)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let l = separation_grid(120);
        assert_eq!(l.len(), 120);
        assert_eq!(l[59], 1.0);
        assert_eq!(l[119], 2.0);
        let f5 = figure5_separations(120);
        assert!(f5.iter().all(|&x| (x - 1.0).abs() > 1e-3 && (x - 3.0).abs() > 1e-3));
        assert_eq!(figure4_decay_grid().len(), 16);
    }

    #[test]
    fn labels() {
        assert_eq!(label(0.05), "0p05");
        assert_eq!(label(1000.0), "1000");
    }

    #[test]
    fn unknown_figure() {
        assert!(figure(6, 1e-9).is_err());
        assert!(figure(0, 1e-9).is_err());
    }
}
