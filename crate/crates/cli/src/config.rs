//! JSON scenario configs.

use std::path::Path;

use serde_json::{Map, Value};
use udw_causality::sweep::SweepAxis;
use udw_causality::{validate, DetectorState, ScenarioSpec};

use crate::CliError;

pub type Object = Map<String, Value>;

/// Reads a config file into a JSON object, checking and stripping `units`.
pub fn load(path: Option<&Path>) -> Result<Object, CliError> {
    let Some(path) = path else {
        return Ok(Object::new());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))?;
    let Value::Object(mut map) = value else {
        return Err(CliError::Invalid("config must be a JSON object".into()));
    };
    match map.remove("units") {
        None => {}
        Some(Value::String(u)) if u == "natural" => {}
        Some(other) => {
            return Err(CliError::Invalid(format!("units: only \"natural\" is supported, got {other}")));
        }
    }
    Ok(map)
}

/// Builds a validated scenario from a config object. `time_gap` defaults to
/// 1 so that lengths are in units of the gap; the swept field may be omitted.
pub fn scenario(mut map: Object, dim: Option<u8>, axis: Option<SweepAxis>) -> Result<ScenarioSpec, CliError> {
    if let Some(d) = dim {
        map.insert("dim".into(), Value::from(d));
    }
    map.entry("time_gap").or_insert(Value::from(1.0));
    if let Some(axis) = axis {
        let (field, placeholder) = match axis {
            SweepAxis::Separation => ("separation", 1.0),
            SweepAxis::Sigma => ("smearing", 1.0),
            SweepAxis::Cutoff => ("cutoff", 1.0),
            SweepAxis::Omega => ("gap_a", 0.0),
        };
        map.entry(field).or_insert(Value::from(placeholder));
    }
    if !map.contains_key("dim") {
        return Err(CliError::Invalid("dim: missing; pass --dim or set it in the config".into()));
    }
    let spec: ScenarioSpec =
        serde_json::from_value(Value::Object(map)).map_err(|e| CliError::Invalid(format!("config: {e}")))?;
    Ok(validate(spec)?)
}

/// Splits `state_a` and `state_b` out of a signal-matrix config.
pub fn states(map: &mut Object) -> Result<(DetectorState, DetectorState), CliError> {
    let mut take = |key: &str| -> Result<DetectorState, CliError> {
        match map.remove(key) {
            None => Ok(DetectorState::ground()),
            Some(v) => serde_json::from_value(v).map_err(|e| CliError::Invalid(format!("{key}: {e}"))),
        }
    };
    Ok((take("state_a")?, take("state_b")?))
}
