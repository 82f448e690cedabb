//! Result documents and conversions from library types.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use uncert::bounds::{BoundReport, Relation};
use uncert::gallery::{Check, FigureTable, GalleryReport};
use uncert::measures::MeasureResult;
use uncert::sdp::SolveStatus;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverInfo {
    pub gap: f64,
    pub iterations: usize,
    pub status: String,
}

impl SolverInfo {
    pub fn from_results<'a>(rs: impl IntoIterator<Item = &'a MeasureResult>) -> Self {
        let mut info = SolverInfo { gap: 0.0, iterations: 0, status: "optimal".into() };
        for r in rs {
            info.gap = info.gap.max(r.gap);
            info.iterations += r.iterations;
            if r.status != SolveStatus::Optimal {
                info.status = r.status.to_string();
            }
        }
        info
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub version: String,
    pub generated_at_unix: u64,
}

impl Meta {
    pub fn now() -> Self {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Meta { version: env!("CARGO_PKG_VERSION").into(), generated_at_unix: secs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub values: BTreeMap<String, f64>,
    pub reports: Vec<Value>,
    pub solver: Option<SolverInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl ResultDocument {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            reports: vec![],
            solver: None,
            meta: None,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub fn value(&mut self, key: &str, v: f64) -> &mut Self {
        self.values.insert(key.into(), v);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result document serializes")
    }
}

pub fn bound_report(r: &BoundReport) -> Value {
    let components: serde_json::Map<String, Value> =
        r.components.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    json!({
        "name": r.name,
        "relation": match r.relation { Relation::AtLeast => ">=", Relation::AtMost => "<=" },
        "lhs": r.lhs,
        "rhs": r.rhs,
        "slack": r.slack,
        "satisfied": r.satisfied,
        "components": components,
    })
}

pub fn gallery_report(r: &GalleryReport) -> Value {
    let computed: serde_json::Map<String, Value> =
        r.computed.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let expected: Vec<Value> = r
        .expected
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "value": e.value,
                "check": match e.check { Check::Equal => "==", Check::AtLeast => ">=", Check::AtMost => "<=" },
                "tolerance": e.tolerance,
                "source": e.source,
            })
        })
        .collect();
    json!({ "name": r.name, "computed": computed, "expected": expected, "pass": r.pass })
}

pub fn measure_report(name: &str, r: &MeasureResult) -> Value {
    json!({
        "name": name,
        "formulation": r.formulation,
        "value": r.value,
        "min_form": r.min_value,
        "max_form": r.max_value,
        "gap": r.gap,
        "iterations": r.iterations,
    })
}

pub fn table_json(t: &FigureTable) -> Value {
    json!({ "columns": t.columns, "rows": t.rows })
}

pub fn table_csv(t: &FigureTable) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(&t.columns)?;
    for row in &t.rows {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
