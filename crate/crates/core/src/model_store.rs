//! Versioned JSON model documents (`.model`).
//!
//! Top-level keys are `version`, `kind`, `created`, `schema` and `payload`.
//! Floats are written in shortest round-trip form, so loading a document
//! and saving it again reproduces it byte for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::{FeatureEncoding, Schema};
use crate::ensemble::StackedModel;
use crate::error::{Error, Result};
use crate::learners::TrainedModel;

pub const FORMAT_VERSION: u64 = 1;
pub const EXTENSION: &str = "model";

/// Column layout the model was trained on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaStamp {
    pub encoding: FeatureEncoding,
    pub columns: Vec<String>,
    pub fingerprint: String,
}

impl SchemaStamp {
    pub fn new(schema: &Schema, encoding: FeatureEncoding) -> Self {
        Self {
            encoding,
            columns: schema.encoded_columns(encoding),
            fingerprint: schema.fingerprint(encoding),
        }
    }

    /// Errors unless `schema` under `encoding` has the stamped fingerprint.
    pub fn check(&self, schema: &Schema, encoding: FeatureEncoding) -> Result<()> {
        let data = schema.fingerprint(encoding);
        if data != self.fingerprint {
            return Err(Error::SchemaMismatch {
                model: self.fingerprint.clone(),
                data,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum StoredModel {
    Single(Box<TrainedModel>),
    Stacked(Box<StackedModel>),
}

impl StoredModel {
    pub fn kind(&self) -> &'static str {
        match self {
            StoredModel::Single(_) => "single",
            StoredModel::Stacked(_) => "stacked",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub version: u64,
    /// Seconds since the Unix epoch; taken from `SOURCE_DATE_EPOCH`, else 0,
    /// so repeated runs write identical files.
    pub created: u64,
    pub schema: SchemaStamp,
    #[serde(flatten)]
    pub model: StoredModel,
}

impl ModelFile {
    pub fn new(model: StoredModel, schema: SchemaStamp) -> Self {
        let created = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(0);
        Self {
            version: FORMAT_VERSION,
            created,
            schema,
            model,
        }
    }
}

pub fn to_string(file: &ModelFile) -> Result<String> {
    let mut s = serde_json::to_string_pretty(file)?;
    s.push('\n');
    Ok(s)
}

/// Parses a document. The version is checked before the payload is read.
pub fn from_str(text: &str) -> Result<ModelFile> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::CorruptModel(e.to_string()))?;
    let version = value
        .get("version")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::CorruptModel("missing or non-integer `version`".into()))?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion {
            found: version,
            supported: FORMAT_VERSION,
        });
    }
    serde_json::from_str(text).map_err(|e| Error::CorruptModel(e.to_string()))
}

pub fn save(path: impl AsRef<Path>, file: &ModelFile) -> Result<()> {
    let path = path.as_ref();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, to_string(file)?).map_err(|e| Error::io(path, e))
}

pub fn load(path: impl AsRef<Path>) -> Result<ModelFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Matrix;
    use crate::learners::{fit, Algorithm, LearnerSpec};

    fn cart() -> ModelFile {
        let x = Matrix::from_rows(&[[0.5, 1.0], [0.25, 3.0], [0.1, 2.0], [0.9, 0.3]]).unwrap();
        let m = fit(&LearnerSpec::new(Algorithm::Cart), &x, &[0, 1, 1, 0]).unwrap();
        ModelFile::new(
            StoredModel::Single(Box::new(m)),
            SchemaStamp::new(&Schema::canonical(), FeatureEncoding::Codes),
        )
    }

    #[test]
    fn resave_is_byte_identical() {
        let a = to_string(&cart()).unwrap();
        let b = to_string(&from_str(&a).unwrap()).unwrap();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        for k in ["version", "kind", "created", "schema", "payload"] {
            assert!(keys.iter().any(|x| x == k), "{k}");
        }
    }

    #[test]
    fn truncated_and_future_versions() {
        let s = to_string(&cart()).unwrap();
        assert!(matches!(from_str(&s[..s.len() / 2]), Err(Error::CorruptModel(_))));
        let future = s.replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(matches!(
            from_str(&future),
            Err(Error::UnsupportedVersion { found: 2, supported: 1 })
        ));
    }

    #[test]
    fn fingerprint_mismatch() {
        let f = cart();
        assert!(f.schema.check(&Schema::canonical(), FeatureEncoding::Codes).is_ok());
        assert!(matches!(
            f.schema.check(&Schema::canonical(), FeatureEncoding::OneHot),
            Err(Error::SchemaMismatch { .. })
        ));
    }
}
