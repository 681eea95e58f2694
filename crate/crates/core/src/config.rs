//! JSON parameter configuration.
//!
//! ```json
//! {"k1": 1.2, "b": 0.75, "z": 0.55, "x": 0.25, "M": 45,
//!  "fields": {"title": {"boost": 2, "b": 0}, "body": {"boost": 1}}}
//! ```
//!
//! Every key is optional. A field missing from `fields`, or a key missing
//! inside a field entry, falls back to the built-in default for that field
//! (see [`FieldParams::default_for`]), which reads the flat `b`, `z` and `x`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::scoring::{
    Bm25Params, EsParams, FieldParams, ParamError, ScorerParams, DEFAULT_B, DEFAULT_K1, DEFAULT_X,
    DEFAULT_Z,
};
use crate::spans::DEFAULT_MAX_GAP;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("reading config: {0}")]
    Io(#[from] std::io::Error),
    #[error("parsing config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config names field {0:?} which is not in the index schema")]
    UnknownField(String),
    #[error(transparent)]
    Param(#[from] ParamError),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boost: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScorerConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub max_gap: Option<u32>,
    /// Clamp negative idf to zero (off unless set).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clamp_idf: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fields: BTreeMap<String, FieldConfig>,
}

impl ScorerConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Resolves against an index schema, filling defaults and validating ranges.
    pub fn resolve(&self, schema: &[String]) -> Result<ScorerParams, ConfigError> {
        if let Some(unknown) = self.fields.keys().find(|f| !schema.contains(f)) {
            return Err(ConfigError::UnknownField(unknown.clone()));
        }
        let bm25 = Bm25Params::new(self.k1.unwrap_or(DEFAULT_K1), self.b.unwrap_or(DEFAULT_B))?;
        let es = EsParams::new(
            self.z.unwrap_or(DEFAULT_Z),
            self.x.unwrap_or(DEFAULT_X),
            self.max_gap.unwrap_or(DEFAULT_MAX_GAP),
        )?;
        let fields = schema
            .iter()
            .map(|name| {
                let base = FieldParams::default_for(name, bm25.b, es.z, es.x);
                let entry = self.fields.get(name).cloned().unwrap_or_default();
                FieldParams::new(
                    entry.boost.unwrap_or(base.boost),
                    entry.b.unwrap_or(base.b),
                    entry.z.unwrap_or(base.z),
                    entry.x.unwrap_or(base.x),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ScorerParams {
            bm25,
            es,
            fields,
            clamp_negative_idf: self.clamp_idf.unwrap_or(false),
        })
    }
}
