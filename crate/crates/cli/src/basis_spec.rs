//! Basis mini-language: `conjugate:D:X`, `conjugate:D:Z`, `file:PATH`.
//!
//! A basis file is JSON `{"label": "...", "vectors": [[[re, im], ...], ...]}`.

use std::path::Path;

use serde::Deserialize;
use uncert::channels::{conjugate_basis, Basis};
use uncert::numerics::C64;

use crate::document::Entry;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    #[serde(default)]
    label: Option<String>,
    vectors: Vec<Vec<Entry>>,
}

pub fn parse_basis(spec: &str) -> anyhow::Result<Basis> {
    if let Some(path) = spec.strip_prefix("file:") {
        return load_basis_file(Path::new(path));
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["conjugate", d, which] => {
            let d: usize = d
                .parse()
                .map_err(|_| anyhow::anyhow!("basis {spec:?}: dimension {d:?} is not a count"))?;
            let (z, x) = conjugate_basis(d)?;
            match *which {
                "X" => Ok(x),
                "Z" => Ok(z),
                other => anyhow::bail!("basis {spec:?}: expected X or Z, found {other:?}"),
            }
        }
        _ => anyhow::bail!("basis {spec:?}: expected conjugate:D:X, conjugate:D:Z or file:PATH"),
    }
}

fn load_basis_file(path: &Path) -> anyhow::Result<Basis> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read basis file {}: {e}", path.display()))?;
    let f: BasisFile = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("basis file {}: {e}", path.display()))?;
    let vectors = f
        .vectors
        .into_iter()
        .map(|v| v.into_iter().map(|e| C64::new(e[0], e[1])).collect())
        .collect();
    let label = f.label.unwrap_or_else(|| path.display().to_string());
    Ok(Basis::new(label, vectors)?)
}
