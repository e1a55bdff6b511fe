use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Matrix;

/// Canonical feature columns, in model input order.
pub const FEATURE_NAMES: [&str; 11] = [
    "age",
    "sex",
    "chest_pain_type",
    "resting_blood_pressure",
    "cholesterol",
    "fasting_blood_sugar",
    "rest_ecg",
    "max_heart_rate_achieved",
    "exercise_induced_angina",
    "st_depression",
    "st_slope",
];

pub const TARGET_NAME: &str = "target";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributeKind {
    Numeric,
    Nominal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
    /// Accepted integer codes; empty for numeric attributes.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub allowed_codes: Vec<i64>,
    pub units: String,
}

impl AttributeSpec {
    fn numeric(name: &str, units: &str) -> Self {
        Self {
            name: name.into(),
            kind: AttributeKind::Numeric,
            allowed_codes: Vec::new(),
            units: units.into(),
        }
    }

    fn nominal(name: &str, codes: &[i64], units: &str) -> Self {
        Self {
            name: name.into(),
            kind: AttributeKind::Nominal,
            allowed_codes: codes.to_vec(),
            units: units.into(),
        }
    }

    pub fn is_nominal(&self) -> bool {
        self.kind == AttributeKind::Nominal
    }
}

/// How nominal attributes are presented to learners.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureEncoding {
    /// Integer codes as-is.
    #[default]
    Codes,
    /// Indicator columns for nominals with more than two codes.
    OneHot,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schema {
    pub features: Vec<AttributeSpec>,
    pub target: AttributeSpec,
}

impl Schema {
    /// The eleven-feature heart-disease schema plus the binary target.
    pub fn canonical() -> Self {
        use AttributeSpec as A;
        Self {
            features: vec![
                A::numeric("age", "years"),
                A::nominal("sex", &[0, 1], "1 = male, 0 = female"),
                A::nominal(
                    "chest_pain_type",
                    &[1, 2, 3, 4],
                    "1 typical angina, 2 atypical angina, 3 non-anginal, 4 asymptomatic",
                ),
                A::numeric("resting_blood_pressure", "mm Hg"),
                A::numeric("cholesterol", "mg/dl"),
                A::nominal("fasting_blood_sugar", &[0, 1], "1 = fasting sugar > 120 mg/dl"),
                A::nominal(
                    "rest_ecg",
                    &[0, 1, 2],
                    "0 normal, 1 ST-T abnormality, 2 left ventricular hypertrophy",
                ),
                A::numeric("max_heart_rate_achieved", "beats per minute"),
                A::nominal("exercise_induced_angina", &[0, 1], "1 = yes"),
                A::numeric("st_depression", "mm"),
                A::nominal("st_slope", &[0, 1, 2, 3], "1 up, 2 flat, 3 down; 0 undocumented"),
            ],
            target: A::nominal(TARGET_NAME, &[0, 1], "1 = heart disease, 0 = normal"),
        }
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|a| a.name == name)
    }

    /// Column names after encoding.
    pub fn encoded_columns(&self, encoding: FeatureEncoding) -> Vec<String> {
        let mut out = Vec::new();
        for a in &self.features {
            if encoding == FeatureEncoding::OneHot && a.is_nominal() && a.allowed_codes.len() > 2 {
                for c in &a.allowed_codes {
                    out.push(format!("{}={c}", a.name));
                }
            } else {
                out.push(a.name.clone());
            }
        }
        out
    }

    /// Applies `encoding` to a raw feature matrix laid out in schema order.
    pub fn encode(&self, raw: &Matrix, encoding: FeatureEncoding) -> Matrix {
        if encoding == FeatureEncoding::Codes {
            return raw.clone();
        }
        let width = self.encoded_columns(encoding).len();
        let mut out = Vec::with_capacity(raw.n_rows() * width);
        for row in raw.rows() {
            for (a, &v) in self.features.iter().zip(row) {
                if a.is_nominal() && a.allowed_codes.len() > 2 {
                    for &c in &a.allowed_codes {
                        out.push(if v == c as f64 { 1.0 } else { 0.0 });
                    }
                } else {
                    out.push(v);
                }
            }
        }
        Matrix::new(raw.n_rows(), width, out).expect("encoded width is consistent")
    }

    /// Short hex digest of the encoded column names and kinds.
    pub fn fingerprint(&self, encoding: FeatureEncoding) -> String {
        let mut h = Sha256::new();
        h.update(format!("{encoding:?};"));
        for a in &self.features {
            h.update(format!("{}:{:?};", a.name, a.kind));
        }
        for c in self.encoded_columns(encoding) {
            h.update(c.as_bytes());
            h.update(b";");
        }
        hex::encode(&h.finalize()[..8])
    }
}
