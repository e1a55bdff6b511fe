use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Matrix, Schema};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    /// Name of the cleaning strategy applied, if any.
    pub cleaning: Option<String>,
}

/// Validated table of instances: eleven features in schema order plus a
/// binary target.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    schema: Schema,
    features: Matrix,
    targets: Vec<u8>,
    /// Source line of each row, for diagnostics.
    lines: Vec<usize>,
    provenance: Provenance,
}

impl Dataset {
    pub fn new(schema: Schema, features: Matrix, targets: Vec<u8>, provenance: Provenance) -> Result<Self> {
        let lines = (0..targets.len()).map(|i| i + 2).collect();
        Self::with_lines(schema, features, targets, lines, provenance)
    }

    fn with_lines(
        schema: Schema,
        features: Matrix,
        targets: Vec<u8>,
        lines: Vec<usize>,
        provenance: Provenance,
    ) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if features.n_rows() != targets.len() {
            return Err(Error::LengthMismatch(features.n_rows(), targets.len()));
        }
        if features.n_cols() != schema.n_features() {
            return Err(Error::ShapeMismatch {
                expected: schema.n_features(),
                found: features.n_cols(),
            });
        }
        if let Some(&bad) = targets.iter().find(|&&t| t > 1) {
            return Err(Error::NonBinaryLabel(bad));
        }
        Ok(Self {
            schema,
            features,
            targets,
            lines,
            provenance,
        })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn targets(&self) -> &[u8] {
        &self.targets
    }

    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// Rows `idx` in the given order. Fails if `idx` is empty.
    pub fn select(&self, idx: &[usize]) -> Result<Self> {
        Self::with_lines(
            self.schema.clone(),
            self.features.select_rows(idx),
            idx.iter().map(|&i| self.targets[i]).collect(),
            idx.iter().map(|&i| self.lines[i]).collect(),
            self.provenance.clone(),
        )
    }

    pub(crate) fn with_cleaning(mut self, name: String) -> Self {
        self.provenance.cleaning = Some(name);
        self
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        if name == self.schema.target.name {
            return Some(self.targets.iter().map(|&t| f64::from(t)).collect());
        }
        self.schema.feature_index(name).map(|j| self.features.column(j))
    }

    pub fn class_counts(&self) -> [usize; 2] {
        let ones = self.targets.iter().filter(|&&t| t == 1).count();
        [self.targets.len() - ones, ones]
    }

    /// Canonical-header CSV that [`parse_csv`] reads back unchanged.
    pub fn to_csv(&self) -> String {
        let mut out: Vec<String> = self.schema.features.iter().map(|a| a.name.clone()).collect();
        out.push(self.schema.target.name.clone());
        let mut s = out.join(",");
        s.push('\n');
        for (r, t) in self.features.rows().zip(&self.targets) {
            for v in r {
                s.push_str(&v.to_string());
                s.push(',');
            }
            s.push_str(&t.to_string());
            s.push('\n');
        }
        s
    }
}

/// Feature rows for scoring; the target column is optional.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoringTable {
    pub schema: Schema,
    pub features: Matrix,
    pub targets: Option<Vec<u8>>,
}

fn normalize_header(h: &str) -> String {
    let s: String = h
        .trim()
        .trim_start_matches('\u{feff}')
        .to_ascii_lowercase()
        .chars()
        .map(|c| if c == ' ' || c == '-' { '_' } else { c })
        .collect();
    // Names used by the distributed copy of the combined dataset.
    match s.as_str() {
        "resting_bp_s" | "resting_bp" => "resting_blood_pressure".into(),
        "resting_ecg" => "rest_ecg".into(),
        "max_heart_rate" => "max_heart_rate_achieved".into(),
        "exercise_angina" => "exercise_induced_angina".into(),
        "oldpeak" => "st_depression".into(),
        "class" => "target".into(),
        _ => s,
    }
}

enum TargetPolicy {
    Required,
    Optional,
}

struct Parsed {
    features: Matrix,
    targets: Option<Vec<u8>>,
    lines: Vec<usize>,
}

fn parse_cell_real(cell: &str, line: usize, column: &str) -> Result<f64> {
    let t = cell.trim();
    t.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::BadCell {
        line,
        column: column.into(),
        value: t.into(),
        expected: "a real number",
    })
}

fn parse_cell_code(cell: &str, line: usize, column: &str) -> Result<i64> {
    let t = cell.trim();
    if let Ok(v) = t.parse::<i64>() {
        return Ok(v);
    }
    match t.parse::<f64>() {
        Ok(v) if v.fract() == 0.0 && v.abs() < 1e15 => Ok(v as i64),
        _ => Err(Error::BadCell {
            line,
            column: column.into(),
            value: t.into(),
            expected: "an integer code",
        }),
    }
}

fn parse_impl<R: Read>(reader: R, schema: &Schema, policy: TargetPolicy) -> Result<Parsed> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().all(|h| h.trim().is_empty()) {
        return Err(Error::EmptyDataset);
    }
    let n_feat = schema.n_features();
    // slot per header field: Some(feature index) or None for the target
    let mut slots: Vec<Option<usize>> = Vec::with_capacity(headers.len());
    let mut seen = vec![false; n_feat];
    let mut target_col = None;
    for (pos, h) in headers.iter().enumerate() {
        let name = normalize_header(h);
        if name == schema.target.name {
            if target_col.replace(pos).is_some() {
                return Err(Error::DuplicateColumn { line: 1, column: name });
            }
            slots.push(None);
        } else if let Some(j) = schema.feature_index(&name) {
            if seen[j] {
                return Err(Error::DuplicateColumn { line: 1, column: name });
            }
            seen[j] = true;
            slots.push(Some(j));
        } else {
            return Err(Error::UnknownColumn {
                line: 1,
                column: h.trim().to_string(),
            });
        }
    }
    if let Some(j) = seen.iter().position(|s| !s) {
        return Err(Error::MissingColumn {
            line: 1,
            column: schema.features[j].name.clone(),
        });
    }
    if target_col.is_none() && matches!(policy, TargetPolicy::Required) {
        return Err(Error::MissingColumn {
            line: 1,
            column: schema.target.name.clone(),
        });
    }

    let mut data = Vec::new();
    let mut targets = Vec::new();
    let mut lines = Vec::new();
    let mut row = vec![0.0; n_feat];
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() == 1 && rec[0].trim().is_empty() {
            continue;
        }
        if rec.len() != headers.len() {
            return Err(Error::RaggedRow {
                line,
                expected: headers.len(),
                found: rec.len(),
            });
        }
        for (pos, cell) in rec.iter().enumerate() {
            let col = &headers[pos];
            if cell.trim().is_empty() {
                return Err(Error::BadCell {
                    line,
                    column: col.trim().into(),
                    value: String::new(),
                    expected: "a value (missing values are not supported)",
                });
            }
            match slots[pos] {
                Some(j) => {
                    row[j] = if schema.features[j].is_nominal() {
                        parse_cell_code(cell, line, col.trim())? as f64
                    } else {
                        parse_cell_real(cell, line, col.trim())?
                    };
                }
                None => {
                    let code = parse_cell_code(cell, line, col.trim())?;
                    if !(0..=1).contains(&code) {
                        return Err(Error::BadCell {
                            line,
                            column: col.trim().into(),
                            value: cell.trim().into(),
                            expected: "0 or 1",
                        });
                    }
                    targets.push(code as u8);
                }
            }
        }
        data.extend_from_slice(&row);
        lines.push(line);
    }
    if lines.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(Parsed {
        features: Matrix::new(lines.len(), n_feat, data)?,
        targets: target_col.map(|_| targets),
        lines,
    })
}

/// Parses a comma-separated table with a header row. Columns are matched to
/// the canonical schema by name, in any order.
pub fn parse_csv<R: Read>(reader: R, source: &str) -> Result<Dataset> {
    let schema = Schema::canonical();
    let p = parse_impl(reader, &schema, TargetPolicy::Required)?;
    Dataset::with_lines(
        schema,
        p.features,
        p.targets.expect("target required"),
        p.lines,
        Provenance {
            source: source.into(),
            cleaning: None,
        },
    )
}

pub fn parse_csv_path(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_csv(std::io::BufReader::new(f), &path.display().to_string())
}

/// Parses rows for scoring; the target column may be absent.
pub fn parse_scoring_csv<R: Read>(reader: R) -> Result<ScoringTable> {
    let schema = Schema::canonical();
    let p = parse_impl(reader, &schema, TargetPolicy::Optional)?;
    Ok(ScoringTable {
        schema,
        features: p.features,
        targets: p.targets,
    })
}
