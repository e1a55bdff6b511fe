use serde::{Deserialize, Serialize};

use super::Dataset;

/// One out-of-range or suspicious nominal value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Issue {
    /// Zero-based row index in the dataset.
    pub row: usize,
    /// Line in the source file.
    pub line: usize,
    pub column: String,
    pub value: f64,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub rows: usize,
    pub violations: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

/// Checks every nominal value against its allowed codes.
///
/// `st_slope = 0` is accepted with a warning: the attribute is documented
/// as 1–3 but the distributed data also carries code 0.
pub fn validate_schema(ds: &Dataset) -> ValidationReport {
    let schema = ds.schema();
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    for (i, row) in ds.features().rows().enumerate() {
        for (a, &v) in schema.features.iter().zip(row) {
            if !a.is_nominal() {
                continue;
            }
            let issue = |message: String| Issue {
                row: i,
                line: ds.lines()[i],
                column: a.name.clone(),
                value: v,
                message,
            };
            let code = v as i64;
            if v.fract() != 0.0 || !a.allowed_codes.contains(&code) {
                violations.push(issue(format!(
                    "value {v} not in allowed codes {:?}",
                    a.allowed_codes
                )));
            } else if a.name == "st_slope" && code == 0 {
                warnings.push(issue("st_slope code 0 is undocumented".into()));
            }
        }
    }
    ValidationReport {
        valid: violations.is_empty(),
        rows: ds.len(),
        violations,
        warnings,
    }
}
