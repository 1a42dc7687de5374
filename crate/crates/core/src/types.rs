//! Shared domain types. Natural units (c = 1) throughout: lengths and times
//! share one unit, frequencies and cutoffs are its inverse.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute per-entry tolerance for the traceless/Hermitian checks.
pub const MATRIX_TOLERANCE: f64 = 1e-12;

/// Number of spatial dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Dimension {
    One,
    Two,
    Three,
}

impl Dimension {
    pub const ALL: [Dimension; 3] = [Dimension::One, Dimension::Two, Dimension::Three];

    pub fn spatial(self) -> usize {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }
}

impl TryFrom<u8> for Dimension {
    type Error = Error;

    fn try_from(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Dimension::One),
            2 => Ok(Dimension::Two),
            3 => Ok(Dimension::Three),
            _ => Err(Error::invalid("dim", format!("must be 1, 2 or 3, got {n}"))),
        }
    }
}

impl From<Dimension> for u8 {
    fn from(d: Dimension) -> u8 {
        d.spatial() as u8
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.spatial())
    }
}

/// Qubit density matrix `[[alpha, beta], [conj(beta), 1 - alpha]]` in the
/// `{|g>, |e>}` basis.
///
/// Positivity (`0 <= alpha <= 1`, `|beta|^2 <= alpha (1 - alpha)`) is checked
/// at construction and on deserialization, so every value of this type is a
/// valid state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDetectorState", into = "RawDetectorState")]
pub struct DetectorState {
    alpha: f64,
    beta: Complex64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDetectorState {
    alpha: f64,
    beta: Complex64,
}

impl TryFrom<RawDetectorState> for DetectorState {
    type Error = Error;

    fn try_from(raw: RawDetectorState) -> Result<Self> {
        DetectorState::new(raw.alpha, raw.beta)
    }
}

impl From<DetectorState> for RawDetectorState {
    fn from(s: DetectorState) -> Self {
        RawDetectorState {
            alpha: s.alpha,
            beta: s.beta,
        }
    }
}

impl DetectorState {
    pub fn new(alpha: f64, beta: Complex64) -> Result<Self> {
        if !alpha.is_finite() || !beta.re.is_finite() || !beta.im.is_finite() {
            return Err(Error::invalid("state", "entries must be finite"));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid("alpha", "must lie in [0, 1]"));
        }
        // small slack so that pure states built from trigonometric
        // parametrizations are not rejected over rounding
        if beta.norm_sqr() > alpha * (1.0 - alpha) + 4.0 * f64::EPSILON {
            return Err(Error::invalid(
                "beta",
                format!(
                    "positivity violated: |beta|^2 = {} > alpha(1 - alpha) = {}",
                    beta.norm_sqr(),
                    alpha * (1.0 - alpha)
                ),
            ));
        }
        Ok(DetectorState { alpha, beta })
    }

    /// The ground state `|g><g|`.
    pub fn ground() -> Self {
        DetectorState {
            alpha: 1.0,
            beta: Complex64::new(0.0, 0.0),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.alpha, 0.0), self.beta],
            [self.beta.conj(), Complex64::new(1.0 - self.alpha, 0.0)],
        ]
    }
}

/// Geometry, timing and model parameters of a two-detector scenario.
///
/// `duration == 0` selects delta switching (A kicks at `t = 0`, B at
/// `t = time_gap`); `duration > 0` selects top-hat switching with A on
/// `[0, T]` and B on `[T + time_gap, 2T + time_gap]`. `smearing == 0` means
/// pointlike detectors and an absent `cutoff` means no UV cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub dim: Dimension,
    pub separation: f64,
    pub time_gap: f64,
    #[serde(default)]
    pub duration: f64,
    #[serde(default)]
    pub smearing: f64,
    #[serde(default)]
    pub gap_a: f64,
    #[serde(default)]
    pub gap_b: f64,
    #[serde(default = "unit_coupling")]
    pub coupling_a: f64,
    #[serde(default = "unit_coupling")]
    pub coupling_b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
}

fn unit_coupling() -> f64 {
    1.0
}

impl ScenarioSpec {
    /// Delta-switched pointlike scenario with unit couplings and gapless detectors.
    pub fn new(dim: Dimension, separation: f64, time_gap: f64) -> Self {
        ScenarioSpec {
            dim,
            separation,
            time_gap,
            duration: 0.0,
            smearing: 0.0,
            gap_a: 0.0,
            gap_b: 0.0,
            coupling_a: 1.0,
            coupling_b: 1.0,
            cutoff: None,
        }
    }

    pub fn is_delta_switching(&self) -> bool {
        self.duration == 0.0
    }

    pub fn is_pointlike(&self) -> bool {
        self.smearing == 0.0
    }

    /// Overall prefactor `lambda_A * lambda_B` of the signal matrix.
    pub fn coupling_product(&self) -> f64 {
        self.coupling_a * self.coupling_b
    }

    /// Switch-on and switch-off times of detector A.
    pub fn window_a(&self) -> (f64, f64) {
        (0.0, self.duration)
    }

    /// Switch-on and switch-off times of detector B.
    pub fn window_b(&self) -> (f64, f64) {
        let on = self.duration + self.time_gap;
        (on, on + self.duration)
    }
}

/// Checks every [`ScenarioSpec`] invariant, returning the spec unchanged when
/// all hold and naming the first violated one otherwise.
pub fn validate(spec: ScenarioSpec) -> Result<ScenarioSpec> {
    let finite = [
        ("separation", spec.separation),
        ("time_gap", spec.time_gap),
        ("duration", spec.duration),
        ("smearing", spec.smearing),
        ("gap_a", spec.gap_a),
        ("gap_b", spec.gap_b),
        ("coupling_a", spec.coupling_a),
        ("coupling_b", spec.coupling_b),
    ];
    for (name, v) in finite {
        if !v.is_finite() {
            return Err(Error::invalid(name, "must be finite"));
        }
    }
    if spec.separation < 0.0 {
        return Err(Error::invalid("separation", "must be non-negative"));
    }
    if spec.time_gap <= 0.0 {
        return Err(Error::invalid("time_gap", "time_gap must be positive"));
    }
    if spec.duration < 0.0 {
        return Err(Error::invalid("duration", "must be non-negative"));
    }
    if spec.smearing < 0.0 {
        return Err(Error::invalid("smearing", "must be non-negative"));
    }
    if let Some(cutoff) = spec.cutoff {
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::invalid("cutoff", "must be positive when present"));
        }
    }
    Ok(spec)
}

/// Leading-order signal contribution to detector B's density matrix, in the
/// `{|g>, |e>}` basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalMatrix {
    pub entries: [[Complex64; 2]; 2],
}

impl SignalMatrix {
    pub fn zero() -> Self {
        SignalMatrix {
            entries: [[Complex64::new(0.0, 0.0); 2]; 2],
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Largest entrywise deviation `|M_ij - conj(M_ji)|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let m = &self.entries;
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((m[i][j] - m[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn scale(&self, k: f64) -> SignalMatrix {
        let mut out = *self;
        out.entries.iter_mut().flatten().for_each(|z| *z *= k);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Traceless and Hermitian within [`MATRIX_TOLERANCE`].
    pub fn is_physical(&self) -> bool {
        self.trace().norm() <= MATRIX_TOLERANCE && self.hermiticity_residual() <= MATRIX_TOLERANCE
    }
}
