//! Flat key/value parameters from a TOML file and `--set key=value`
//! overrides. Scenarios pull typed values out one key at a time; anything
//! left unread at the end is reported as an unknown field.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde_json::Value as Json;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config {path} is not valid TOML: {source}")]
    Toml { path: String, source: toml::de::Error },
    #[error("override `{0}` must have the form key=value")]
    Override(String),
    #[error("field `{key}`: {reason}")]
    Field { key: String, reason: String },
    #[error("unknown field `{key}` for scenario `{scenario}`")]
    Unknown { key: String, scenario: String },
}

fn field(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Field { key: key.to_string(), reason: reason.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Text(String),
    List(Vec<f64>),
}

impl Value {
    /// Override values: a number, a comma-separated list of numbers, or text.
    pub fn parse(raw: &str) -> Value {
        let raw = raw.trim();
        if let Ok(x) = raw.parse::<f64>() {
            return Value::Num(x);
        }
        if raw.contains(',') {
            let parts: Result<Vec<f64>, _> = raw.split(',').map(|s| s.trim().parse::<f64>()).collect();
            if let Ok(v) = parts {
                return Value::List(v);
            }
        }
        Value::Text(raw.to_string())
    }

    fn from_toml(key: &str, v: toml::Value) -> Result<Value, ConfigError> {
        let num = |v: &toml::Value| match v {
            toml::Value::Integer(i) => Some(*i as f64),
            toml::Value::Float(x) => Some(*x),
            _ => None,
        };
        match v {
            toml::Value::String(s) => Ok(Value::parse(&s)),
            toml::Value::Boolean(b) => Ok(Value::Text(b.to_string())),
            toml::Value::Array(items) => items
                .iter()
                .map(|x| num(x).ok_or_else(|| field(key, "lists may only hold numbers")))
                .collect::<Result<_, _>>()
                .map(Value::List),
            toml::Value::Table(_) => Err(field(key, "nested tables are not supported, keep the config flat")),
            other => num(&other).map(Value::Num).ok_or_else(|| field(key, "unsupported value type")),
        }
    }
}

/// Parameter bag with usage tracking and an echo of every resolved value.
#[derive(Debug, Default, Clone)]
pub struct Params {
    values: BTreeMap<String, Value>,
    used: BTreeSet<String>,
    echo: BTreeMap<String, Json>,
}

impl Params {
    pub fn from_toml_str(text: &str, path: &str) -> Result<Self, ConfigError> {
        let table: toml::Table =
            toml::from_str(text).map_err(|source| ConfigError::Toml { path: path.to_string(), source })?;
        let mut params = Params::default();
        for (k, v) in table {
            let value = Value::from_toml(&k, v)?;
            params.values.insert(k, value);
        }
        Ok(params)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: shown.clone(), source })?;
        Self::from_toml_str(&text, &shown)
    }

    /// Apply `key=value` overrides; later ones win.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<(), ConfigError> {
        for o in overrides {
            let (k, v) = o.split_once('=').ok_or_else(|| ConfigError::Override(o.clone()))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(ConfigError::Override(o.clone()));
            }
            self.values.insert(k.to_string(), Value::parse(v));
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.values.insert(key.to_string(), value);
    }

    /// Insert `value` only when the key is not already present.
    pub fn set_default(&mut self, key: &str, value: Value) {
        self.values.entry(key.to_string()).or_insert(value);
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    /// Remove a key that is consumed outside scenario code.
    pub fn take(&mut self, key: &str) -> Option<Value> {
        self.values.remove(key)
    }

    fn raw(&mut self, key: &str) -> Option<Value> {
        self.used.insert(key.to_string());
        self.values.get(key).cloned()
    }

    pub fn f64(&mut self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let x = match self.raw(key) {
            None => default,
            Some(Value::Num(x)) => x,
            Some(other) => return Err(field(key, format!("expected a number, got {other:?}"))),
        };
        if !x.is_finite() {
            return Err(field(key, format!("must be finite, got {x}")));
        }
        self.echo.insert(key.to_string(), Json::from(x));
        Ok(x)
    }

    pub fn opt_f64(&mut self, key: &str) -> Result<Option<f64>, ConfigError> {
        if self.values.contains_key(key) {
            self.f64(key, 0.0).map(Some)
        } else {
            self.used.insert(key.to_string());
            Ok(None)
        }
    }

    pub fn positive(&mut self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let x = self.f64(key, default)?;
        if x <= 0.0 {
            return Err(field(key, format!("must be positive, got {x}")));
        }
        Ok(x)
    }

    pub fn non_negative(&mut self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let x = self.f64(key, default)?;
        if x < 0.0 {
            return Err(field(key, format!("must be non-negative, got {x}")));
        }
        Ok(x)
    }

    pub fn count(&mut self, key: &str, default: usize) -> Result<usize, ConfigError> {
        let x = self.f64(key, default as f64)?;
        if x < 1.0 || x.fract() != 0.0 || x > u32::MAX as f64 {
            return Err(field(key, format!("must be a positive integer, got {x}")));
        }
        self.echo.insert(key.to_string(), Json::from(x as u64));
        Ok(x as usize)
    }

    pub fn text(&mut self, key: &str, default: &str) -> Result<String, ConfigError> {
        let s = match self.raw(key) {
            None => default.to_string(),
            Some(Value::Text(s)) => s,
            Some(Value::Num(x)) => x.to_string(),
            Some(other) => return Err(field(key, format!("expected text, got {other:?}"))),
        };
        self.echo.insert(key.to_string(), Json::from(s.clone()));
        Ok(s)
    }

    pub fn choice(&mut self, key: &str, default: &str, allowed: &[&str]) -> Result<String, ConfigError> {
        let s = self.text(key, default)?;
        if !allowed.contains(&s.as_str()) {
            return Err(field(key, format!("expected one of {}, got `{s}`", allowed.join(", "))));
        }
        Ok(s)
    }

    pub fn list(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>, ConfigError> {
        let v = match self.raw(key) {
            None => default.to_vec(),
            Some(Value::List(v)) => v,
            Some(Value::Num(x)) => vec![x],
            Some(other) => return Err(field(key, format!("expected a list of numbers, got {other:?}"))),
        };
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
            return Err(field(key, "must be a non-empty list of finite numbers"));
        }
        self.echo.insert(key.to_string(), Json::from(v.clone()));
        Ok(v)
    }

    /// Fail on the first key that no scenario getter asked for.
    pub fn finish(&self, scenario: &str) -> Result<(), ConfigError> {
        match self.values.keys().find(|k| !self.used.contains(*k)) {
            Some(key) => Err(ConfigError::Unknown { key: key.clone(), scenario: scenario.to_string() }),
            None => Ok(()),
        }
    }

    pub fn echo(&self) -> &BTreeMap<String, Json> {
        &self.echo
    }
}

/// Wrap a library error as a field error, for arguments checked downstream.
pub fn invalid(key: &str, err: impl std::fmt::Display) -> ConfigError {
    field(key, err.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_beat_file_values() {
        let mut p = Params::from_toml_str("a = 5\nb = 0.7\n", "cfg").unwrap();
        p.apply_overrides(&["b=0.5".into()]).unwrap();
        assert_eq!(p.f64("a", 0.0).unwrap(), 5.0);
        assert_eq!(p.f64("b", 0.0).unwrap(), 0.5);
        assert!(p.finish("x").is_ok());
    }

    #[test]
    fn lists_from_both_sources() {
        let mut p = Params::from_toml_str("ys = [0, 0.5, 1]\n", "cfg").unwrap();
        assert_eq!(p.list("ys", &[]).unwrap(), vec![0.0, 0.5, 1.0]);
        p.apply_overrides(&["ys=1, 2".into()]).unwrap();
        assert_eq!(p.list("ys", &[]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn unknown_and_invalid_fields_are_named() {
        let mut p = Params::default();
        p.apply_overrides(&["sigma_x=-1".into(), "colour=red".into()]).unwrap();
        let err = p.positive("sigma_x", 0.5).unwrap_err().to_string();
        assert!(err.contains("sigma_x"), "{err}");
        let err = p.finish("slits").unwrap_err().to_string();
        assert!(err.contains("colour") && err.contains("slits"), "{err}");
    }

    #[test]
    fn nested_tables_rejected() {
        let err = Params::from_toml_str("[slits]\na = 1\n", "cfg").unwrap_err().to_string();
        assert!(err.contains("slits"), "{err}");
    }

    #[test]
    fn counts_must_be_integers() {
        let mut p = Params::default();
        p.set("n", Value::Num(2.5));
        assert!(p.count("n", 1).is_err());
        p.set("n", Value::Num(64.0));
        assert_eq!(p.count("n", 1).unwrap(), 64);
        assert_eq!(p.echo()["n"], Json::from(64u64));
    }

    #[test]
    fn malformed_override() {
        let mut p = Params::default();
        assert!(matches!(p.apply_overrides(&["novalue".into()]), Err(ConfigError::Override(_))));
    }
}
