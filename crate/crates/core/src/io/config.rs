//! JSON run configuration with named presets.
//!
//! A document may name a preset with `"preset": "<name>"`; its remaining
//! keys are merged over the preset recursively (objects merge key by key,
//! anything else replaces). Unknown keys are rejected.

use std::path::Path;

use serde_json::Value;
use thiserror::Error;

use crate::sim::{SimConfig, SimError};

pub const PRESETS: &[(&str, &str)] = &[
    ("paper-fig3", include_str!("../../presets/paper-fig3.json")),
    ("stationary", include_str!("../../presets/stationary.json")),
    ("equilibrium", include_str!("../../presets/equilibrium.json")),
    ("pe-negative", include_str!("../../presets/pe-negative.json")),
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error in {origin}: {message}")]
    Parse { origin: String, message: String },
    #[error("schema error in {origin} at `{path}`: {message}")]
    Schema { origin: String, path: String, message: String },
    #[error("validation error in {origin}: {message}")]
    Validation { origin: String, message: String },
}

pub fn preset_text(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn preset(name: &str) -> Result<SimConfig, ConfigError> {
    let text = preset_text(name).ok_or_else(|| unknown_preset(name, name))?;
    load_config_str(text, name)
}

fn unknown_preset(origin: &str, name: &str) -> ConfigError {
    let known: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
    ConfigError::Schema {
        origin: origin.to_string(),
        path: "preset".into(),
        message: format!("unknown preset `{name}` (known: {})", known.join(", ")),
    }
}

pub fn load_config(path: &Path) -> Result<SimConfig, ConfigError> {
    let origin = path.display().to_string();
    config_from_value(load_config_value(path)?, &origin)
}

pub fn load_config_str(text: &str, origin: &str) -> Result<SimConfig, ConfigError> {
    config_from_value(resolve_str(text, origin)?, origin)
}

/// Reads a file and expands its preset, without deserializing.
pub fn load_config_value(path: &Path) -> Result<Value, ConfigError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Parse { origin: origin.clone(), message: format!("cannot read file: {e}") })?;
    resolve_str(&text, &origin)
}

pub fn resolve_str(text: &str, origin: &str) -> Result<Value, ConfigError> {
    if text.trim().is_empty() {
        return Err(ConfigError::Schema {
            origin: origin.into(),
            path: ".".into(),
            message: "empty document, expected a configuration object".into(),
        });
    }
    let value: Value = serde_json::from_str(text)
        .map_err(|e| ConfigError::Parse { origin: origin.into(), message: e.to_string() })?;
    let Value::Object(mut map) = value else {
        return Err(ConfigError::Schema {
            origin: origin.into(),
            path: ".".into(),
            message: "expected a configuration object at the top level".into(),
        });
    };
    let Some(name) = map.remove("preset") else {
        return Ok(Value::Object(map));
    };
    let Value::String(name) = name else {
        return Err(ConfigError::Schema {
            origin: origin.into(),
            path: "preset".into(),
            message: "expected a preset name".into(),
        });
    };
    let base = preset_text(&name).ok_or_else(|| unknown_preset(origin, &name))?;
    let mut base: Value = serde_json::from_str(base).expect("presets are valid JSON");
    merge(&mut base, Value::Object(map));
    Ok(base)
}

fn merge(base: &mut Value, over: Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

pub fn config_from_value(value: Value, origin: &str) -> Result<SimConfig, ConfigError> {
    let cfg: SimConfig = serde_path_to_error::deserialize(value).map_err(|e| ConfigError::Schema {
        origin: origin.into(),
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    cfg.validate().map_err(|e| ConfigError::Validation {
        origin: origin.into(),
        message: match e {
            SimError::Validation(m) => m,
            other => other.to_string(),
        },
    })?;
    Ok(cfg)
}

/// Sets a dotted key such as `estimator.gamma` or `agents.0` in a resolved
/// document. Intermediate objects must already exist.
pub fn set_path(doc: &mut Value, key: &str, value: Value) -> Result<(), ConfigError> {
    let schema_err = |message: String| ConfigError::Schema { origin: "--vary".into(), path: key.into(), message };
    let mut slot = doc;
    for part in key.split('.') {
        slot = match slot {
            Value::Object(map) => map.entry(part.to_string()).or_insert(Value::Null),
            Value::Array(items) => {
                let i: usize = part.parse().map_err(|_| schema_err(format!("`{part}` is not an index")))?;
                let len = items.len();
                items.get_mut(i).ok_or_else(|| schema_err(format!("index {i} out of range ({len})")))?
            }
            _ => return Err(schema_err(format!("cannot descend into `{part}`"))),
        };
    }
    *slot = value;
    Ok(())
}
