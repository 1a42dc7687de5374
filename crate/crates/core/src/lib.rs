//! Leading-order signalling between two Unruh-DeWitt detectors coupled to a
//! free massless scalar field, under Gaussian smearing, hard UV cutoffs and
//! the rotating-wave approximation.

pub mod commutators;
pub mod dynamics;
pub mod error;
pub mod figures;
pub mod quadrature;
pub mod rwa;
pub mod smearing;
pub mod specfun;
pub mod sweep;
pub mod types;
pub mod uvcut;

pub use error::{Error, Result};
pub use smearing::EstimatorValue;
pub use types::{validate, DetectorState, Dimension, ScenarioSpec, SignalMatrix};
