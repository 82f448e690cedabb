use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_3;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use uncert::channels::{conjugate_basis, ideal_measurement, mz_apparatus, ChoiOperator, Device};
use uncert_cli::{parse_channel_document, ChannelDocument};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_uncert"));
    c.env_remove("UNCERT_SDP_TOL");
    c
}

fn write_device(dir: &Path, name: &str, dev: &Device, meta: &[(&str, String)]) -> PathBuf {
    let metadata: BTreeMap<String, String> =
        meta.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let path = dir.join(name);
    std::fs::write(&path, ChannelDocument::from_device(dev, metadata).to_json()).unwrap();
    path
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

#[test]
fn measure_epsilon_of_stored_mz_device() {
    let dir = tempfile::tempdir().unwrap();
    let theta = FRAC_PI_3;
    let p = write_device(
        dir.path(),
        "mz.json",
        &Device::from(mz_apparatus(theta).unwrap()),
        &[("theta", theta.to_string())],
    );
    let o = bin()
        .args(["measure", "--kind", "epsilon", "--basis", "conjugate:2:X", "--no-meta", "--channel"])
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    let got = v["values"]["value"].as_f64().unwrap();
    assert!((got - 0.5 * (1.0 - theta.cos())).abs() < 1e-6, "{got}");
    assert_eq!(v["solver"]["status"], "optimal");
    assert!(v["solver"]["gap"].as_f64().unwrap() <= 1e-6);
    assert!(v.get("meta").is_none());
}

#[test]
fn gallery_all_passes() {
    let o = bin().args(["gallery", "--all", "--no-meta"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.len() >= 6);
    assert!(reports.iter().all(|r| r["pass"] == true));
    assert_eq!(reports[0]["name"], "appendix_a");
}

#[test]
fn gaussian_at_heisenberg_limit_is_zero() {
    let o = bin()
        .args(["gaussian", "--sigma-q", "0.5", "--sigma-p", "1.0", "--kind", "measurement"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["values"]["bound"].as_f64(), Some(0.0));
    assert!(v["meta"]["generated_at_unix"].is_u64());
}

#[test]
fn ideal_measurement_document_loads() {
    let (_, x) = conjugate_basis(2).unwrap();
    let q = ideal_measurement(&x, false);
    let text = ChannelDocument::from_device(&Device::from(q.clone()), BTreeMap::new()).to_json();
    assert_eq!(parse_channel_document(&text, false).unwrap(), Device::from(q));
}

#[test]
fn missing_field_is_named() {
    let text = r#"{"schema_version": "1", "dim_in": 2, "dim_out": 1, "outcomes": ["0", "1"]}"#;
    let err = parse_channel_document(text, false).unwrap_err().to_string();
    assert!(err.contains("blocks"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cut.json");
    std::fs::write(&p, text).unwrap();
    let o = bin().args(["validate", "--channel"]).arg(&p).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("blocks"));
}

#[test]
fn negative_block_reports_its_eigenvalue() {
    let text = r#"{
        "schema_version": "1", "dim_in": 2, "dim_out": 1, "outcomes": ["0", "1"],
        "blocks": [
            [[[1.001, 0], [0, 0]], [[0, 0], [-0.001, 0]]],
            [[[-0.001, 0], [0, 0]], [[0, 0], [1.001, 0]]]
        ]
    }"#;
    let err = parse_channel_document(text, false).unwrap_err().to_string();
    assert!(err.contains("-1e-3"), "{err}");
    // inspection mode accepts it
    assert!(parse_channel_document(text, true).is_ok());
}

#[test]
fn canonical_documents_round_trip_exactly() {
    let devices = [
        Device::from(mz_apparatus(0.3).unwrap()),
        Device::from(uncert::channels::random_channel(2, 3, 7).unwrap()),
        Device::from(ChoiOperator::identity(3)),
    ];
    for dev in devices {
        let doc = ChannelDocument::from_device(&dev, BTreeMap::from([("k".into(), "v".into())]));
        let text = doc.to_json();
        let again = ChannelDocument::parse(&text).unwrap();
        assert_eq!(again.to_json(), text);
        assert_eq!(again.to_device(false).unwrap(), dev);
    }
}

#[test]
fn outputs_are_deterministic_without_meta() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_device(dir.path(), "mz.json", &Device::from(mz_apparatus(0.4).unwrap()), &[]);
    let run = || {
        bin()
            .args(["verify", "--theorem", "2", "--x", "conjugate:2:X", "--z", "conjugate:2:Z", "--no-meta", "--channel"])
            .arg(&p)
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v = json_out(&a);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = bin()
        .args(["complementarity", "--x", "conjugate:2:X", "--z", "conjugate:2:Z", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    for k in ["c_m", "c_p", "c_p_hat"] {
        assert!((v["values"][k].as_f64().unwrap() - 0.5).abs() < 1e-6);
    }
}

#[test]
fn unreachable_tolerance_is_a_solver_failure() {
    let o = bin()
        .env("UNCERT_SDP_TOL", "1e-300")
        .args(["complementarity", "--x", "conjugate:2:X", "--z", "conjugate:2:Z"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bad_tolerance_and_basis_are_input_errors() {
    let o = bin()
        .env("UNCERT_SDP_TOL", "tight")
        .args(["bound", "--kind", "overlap", "--x", "conjugate:2:X", "--z", "conjugate:2:Z"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin()
        .args(["bound", "--kind", "overlap", "--x", "conjugate:2:Q", "--z", "conjugate:2:Z"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figure7_csv() {
    let o = bin()
        .args(["figure-data", "--which", "fig7", "--grid", "7", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "c,sigma_q_sigma_p,measurement,preparation");
    assert_eq!(lines.len(), 8);
    assert!(lines[4].starts_with("1,0.5,0,"), "{}", lines[4]);
}

#[test]
fn figure5_json_rows_follow_grid_order() {
    let o = bin()
        .args(["figure-data", "--which", "fig5", "--grid", "5", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let rows = v["rows"].as_array().unwrap();
    let thetas: Vec<f64> = rows.iter().map(|r| r[0].as_f64().unwrap()).collect();
    assert!(thetas.windows(2).all(|w| w[0] < w[1]));
    assert!((rows[0][2].as_f64().unwrap() - 0.5).abs() < 1e-6);
}

#[test]
fn basis_file_spec() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    std::fs::write(
        &p,
        format!(r#"{{"label": "H", "vectors": [[[{h}, 0], [{h}, 0]], [[{h}, 0], [-{h}, 0]]]}}"#),
    )
    .unwrap();
    let spec = format!("file:{}", p.display());
    let o = bin()
        .args(["bound", "--kind", "demerit", "--variant", "row-p", "--z", "conjugate:2:Z", "--x"])
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!((json_out(&o)["values"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}
