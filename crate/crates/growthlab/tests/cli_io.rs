//! End-to-end checks of the growthlab binary: byte-reproducible outputs,
//! exact CSV shape, JSON schema conformance and CI exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_growthlab"))
}

fn run_ok(args: &[&str]) -> std::process::Output {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

// ---------------------------------------------------------------------------
// Minimal JSON-schema walker: enough of draft-07 for the shipped schemas
// (type, required, properties, items, enum).
// ---------------------------------------------------------------------------

fn validate(schema: &serde_json::Value, value: &serde_json::Value, path: &str) {
    if let Some(types) = schema.get("type") {
        let allowed: Vec<String> = match types {
            serde_json::Value::String(s) => vec![s.clone()],
            serde_json::Value::Array(a) => {
                a.iter().map(|v| v.as_str().unwrap().to_string()).collect()
            }
            _ => vec![],
        };
        let actual = match value {
            serde_json::Value::Null => "null",
            serde_json::Value::Bool(_) => "boolean",
            serde_json::Value::Number(n) => {
                if n.is_i64() || n.is_u64() {
                    "integer"
                } else {
                    "number"
                }
            }
            serde_json::Value::String(_) => "string",
            serde_json::Value::Array(_) => "array",
            serde_json::Value::Object(_) => "object",
        };
        let ok = allowed
            .iter()
            .any(|t| t == actual || (t == "number" && actual == "integer"));
        assert!(ok, "{path}: type {actual} not in {allowed:?}");
        if actual == "null" {
            return; // nothing further to check on nulls
        }
    }
    if let Some(en) = schema.get("enum") {
        assert!(
            en.as_array().unwrap().contains(value),
            "{path}: {value} not in enum {en}"
        );
    }
    if let Some(required) = schema.get("required") {
        for field in required.as_array().unwrap() {
            let name = field.as_str().unwrap();
            assert!(
                value.get(name).is_some(),
                "{path}: missing required field `{name}`"
            );
        }
    }
    if let Some(props) = schema.get("properties") {
        for (name, sub) in props.as_object().unwrap() {
            if let Some(v) = value.get(name) {
                validate(sub, v, &format!("{path}.{name}"));
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = value.as_array() {
            for (k, v) in arr.iter().enumerate() {
                validate(items, v, &format!("{path}[{k}]"));
            }
        }
    }
}

fn schema(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------

#[test]
fn profile_outputs_are_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join("growthlab_cli_det");
    std::fs::create_dir_all(&dir).unwrap();
    let mut bodies = Vec::new();
    for run in 0..2 {
        let csv = dir.join(format!("sl2c_{run}.csv"));
        let json = dir.join(format!("sl2c_{run}.json"));
        run_ok(&[
            "profile",
            "--model",
            "sl2c",
            "--seed",
            "7",
            "--quad",
            "mc",
            "--mc-samples",
            "40000",
            "--t-min",
            "0.5",
            "--t-max",
            "6",
            "--t-steps",
            "16",
            "--out-csv",
            csv.to_str().unwrap(),
            "--out-json",
            json.to_str().unwrap(),
        ]);
        bodies.push((std::fs::read(&csv).unwrap(), std::fs::read(&json).unwrap()));
    }
    assert_eq!(bodies[0].0, bodies[1].0, "CSV bytes differ between runs");
    assert_eq!(bodies[0].1, bodies[1].1, "JSON bytes differ between runs");
}

#[test]
fn csv_has_exact_header_and_row_count() {
    let dir = std::env::temp_dir().join("growthlab_cli_csv");
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("torus.csv");
    run_ok(&[
        "profile",
        "--model",
        "torus",
        "--t-min",
        "0.5",
        "--t-max",
        "4",
        "--t-steps",
        "21",
        "--order",
        "8",
        "--out-csv",
        csv_path.to_str().unwrap(),
    ]);
    let body = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines[0], "t,vol,sphere_ball,sphere_direct,ratio_i,F");
    assert_eq!(lines.len(), 22, "header plus exactly t_steps rows");
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 6);
    }
}

#[test]
fn profile_json_validates_against_shipped_schema() {
    let dir = std::env::temp_dir().join("growthlab_cli_schema");
    std::fs::create_dir_all(&dir).unwrap();
    let json_path = dir.join("iwasawa.json");
    run_ok(&[
        "classify",
        "--model",
        "iwasawa",
        "--t-min",
        "0.5",
        "--t-max",
        "8",
        "--t-steps",
        "24",
        "--order",
        "16",
        "--out-json",
        json_path.to_str().unwrap(),
    ]);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    validate(&schema("profile_report.schema.json"), &report, "report");
}

#[test]
fn lie_json_validates_and_matches_published_equations() {
    let dir = std::env::temp_dir().join("growthlab_cli_lie");
    std::fs::create_dir_all(&dir).unwrap();
    let structure = dir.join("sl2c.json");
    std::fs::write(
        &structure,
        r#"{
  "dim": 3,
  "constants": [[1,2,3,1,0],[2,3,1,1,0],[3,1,2,1,0]],
  "labels": ["alpha","beta","gamma"]
}"#,
    )
    .unwrap();
    let json_path = dir.join("report.json");
    let out = run_ok(&[
        "lie",
        "--structure",
        structure.to_str().unwrap(),
        "--check",
        "jacobi,structure-eqs,witness",
        "--out-json",
        json_path.to_str().unwrap(),
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("degenerate balanced"), "stdout: {stdout}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    validate(&schema("lie_report.schema.json"), &report, "report");
    let eqs = report["checks"][1]["equations"].as_array().unwrap();
    assert_eq!(eqs[0], "d alpha = beta∧gamma");
}

#[test]
fn torus_witness_is_infeasible_with_exit_zero() {
    let dir = std::env::temp_dir().join("growthlab_cli_torus");
    std::fs::create_dir_all(&dir).unwrap();
    let structure = dir.join("torus.json");
    std::fs::write(&structure, r#"{"dim": 3, "constants": []}"#).unwrap();
    let out = run_ok(&[
        "lie",
        "--structure",
        structure.to_str().unwrap(),
        "--check",
        "witness",
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("not degenerate balanced"),
        "stdout: {stdout}"
    );
}

#[test]
fn corrupted_constants_exit_2_naming_the_triple() {
    let dir = std::env::temp_dir().join("growthlab_cli_bad");
    std::fs::create_dir_all(&dir).unwrap();
    let structure = dir.join("bad.json");
    // sl(2,ℂ) with c²₂₃ bumped by 1: Jacobi fails.
    std::fs::write(
        &structure,
        r#"{"dim": 3, "constants": [[1,2,3,1,0],[2,3,1,1,0],[3,1,2,1,0],[2,2,3,1,0]]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["lie", "--structure", structure.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("Jacobi"), "stderr: {stderr}");
    assert!(
        stderr.contains("ξ"),
        "stderr names the offending triple: {stderr}"
    );
}

#[test]
fn under_resolved_quadrature_exits_3() {
    // Order 8 against its half-resolution control on the exponential model
    // at t = 10 drifts far beyond tolerance.
    let out = bin()
        .args([
            "classify",
            "--model",
            "sl2c",
            "--t-min",
            "0.5",
            "--t-max",
            "10",
            "--t-steps",
            "24",
            "--order",
            "8",
        ])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(3),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("non-convergence"), "stderr: {stderr}");
}

#[test]
fn unknown_model_exits_2() {
    let out = bin()
        .args(["profile", "--model", "mystery"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
