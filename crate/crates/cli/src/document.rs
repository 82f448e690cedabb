//! JSON channel documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use uncert::channels::{ChoiOperator, Device, Instrument};
use uncert::numerics::{ComplexMatrix, C64};

pub const SCHEMA_VERSION: &str = "1";

/// Tolerance for positivity and normalization checks at load time.
pub const LOAD_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid device: {0}")]
    Invariant(#[from] uncert::Error),
}

/// A complex entry as `[re, im]`.
pub type Entry = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDocument {
    pub schema_version: String,
    pub dim_in: usize,
    pub dim_out: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<Vec<String>>,
    pub blocks: Vec<Vec<Vec<Entry>>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

fn matrix_from_rows(rows: &[Vec<Entry>], k: usize) -> Result<ComplexMatrix, DocumentError> {
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(DocumentError::Schema(format!(
                "blocks[{k}][{r}] has {} entries, expected {n}",
                row.len()
            )));
        }
        data.extend(row.iter().map(|e| C64::new(e[0], e[1])));
    }
    Ok(ComplexMatrix::new(n, n, data)?)
}

fn rows_from_matrix(m: &ComplexMatrix) -> Vec<Vec<Entry>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

impl ChannelDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: Self =
            serde_json::from_str(text).map_err(|e| DocumentError::Schema(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::Schema(format!(
                "schema_version: expected {SCHEMA_VERSION:?}, found {:?}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Build the device; `raw` skips positivity and normalization checks.
    pub fn to_device(&self, raw: bool) -> Result<Device, DocumentError> {
        if self.blocks.is_empty() {
            return Err(DocumentError::Schema("blocks: empty list".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, b)| matrix_from_rows(b, k))
            .collect::<Result<Vec<_>, _>>()?;
        match &self.outcomes {
            None => {
                if blocks.len() != 1 {
                    return Err(DocumentError::Schema(format!(
                        "blocks: a channel without outcomes has one block, found {}",
                        blocks.len()
                    )));
                }
                let m = blocks.into_iter().next().expect("one block");
                let c = if raw {
                    ChoiOperator::unchecked(self.dim_in, self.dim_out, m)?
                } else {
                    ChoiOperator::with_tolerance(self.dim_in, self.dim_out, m, LOAD_TOLERANCE)?
                };
                Ok(Device::Channel(c))
            }
            Some(labels) => {
                let e = if raw {
                    Instrument::unchecked(self.dim_in, self.dim_out, labels.clone(), blocks)?
                } else {
                    Instrument::with_tolerance(
                        self.dim_in,
                        self.dim_out,
                        labels.clone(),
                        blocks,
                        LOAD_TOLERANCE,
                    )?
                };
                Ok(Device::Instrument(e))
            }
        }
    }

    pub fn from_device(device: &Device, metadata: BTreeMap<String, String>) -> Self {
        match device {
            Device::Channel(c) => Self {
                schema_version: SCHEMA_VERSION.into(),
                dim_in: c.dim_in(),
                dim_out: c.dim_out(),
                outcomes: None,
                blocks: vec![rows_from_matrix(c.matrix())],
                metadata,
            },
            Device::Instrument(e) => Self {
                schema_version: SCHEMA_VERSION.into(),
                dim_in: e.dim_in(),
                dim_out: e.dim_out(),
                outcomes: Some(e.outcomes().to_vec()),
                blocks: e.blocks().iter().map(rows_from_matrix).collect(),
                metadata,
            },
        }
    }
}

pub fn parse_channel_document(text: &str, raw: bool) -> Result<Device, DocumentError> {
    ChannelDocument::parse(text)?.to_device(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use uncert::channels::{conjugate_basis, ideal_measurement};

    #[test]
    fn ideal_measurement_round_trip() {
        let (_, x) = conjugate_basis(2).unwrap();
        let q = Device::from(ideal_measurement(&x, false));
        let doc = ChannelDocument::from_device(&q, BTreeMap::new());
        let back = parse_channel_document(&doc.to_json(), false).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn wrong_version_rejected() {
        let text = r#"{"schema_version":"2","dim_in":1,"dim_out":1,"blocks":[[[[1,0]]]]}"#;
        let err = ChannelDocument::parse(text).unwrap_err().to_string();
        assert!(err.contains("schema_version"), "{err}");
    }
}
