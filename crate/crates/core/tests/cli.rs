use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_efimov-lab");

fn lab(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("EFIMOV_LAB_THREADS")
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .expect("binary runs")
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

const COMMANDS: &[(&str, &[&str])] = &[
    ("constants", &["constants"]),
    (
        "potential",
        &[
            "potential",
            "--a",
            "-10",
            "--points",
            "20",
            "--rho-max",
            "2000",
        ],
    ),
    (
        "potential",
        &[
            "potential",
            "--regularization",
            "hard-wall",
            "--r",
            "1",
            "--points",
            "20",
        ],
    ),
    ("spectrum", &["spectrum", "--levels", "4"]),
    (
        "spectrum",
        &["spectrum", "--regularization", "cap", "--levels", "4"],
    ),
    ("nodes", &["nodes"]),
    (
        "nodes",
        &[
            "nodes",
            "--energy",
            "-1e-4",
            "--decades",
            "12",
            "--rho-max",
            "1e4",
        ],
    ),
    ("nodes", &["nodes", "--analytic"]),
    (
        "meanfield",
        &[
            "meanfield",
            "--statistics",
            "bose",
            "--t0",
            "-1",
            "--stabilizer",
            "three-body",
            "--t3",
            "1",
        ],
    ),
    (
        "meanfield",
        &["meanfield", "--statistics", "fermi", "--t0", "1"],
    ),
    ("branches", &["branches", "--x", "1.5", "--count", "4"]),
];

#[test]
fn json_outputs_validate_against_shipped_schemas() {
    for (name, args) in COMMANDS {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let out = lab(&full);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_valid(name, &doc);
        assert_eq!(doc["manifest"]["command"], *name);
        assert_eq!(doc["manifest"]["timestamp"], 0);
    }
}

#[test]
fn csv_sidecars_validate_and_tables_are_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    for (i, (name, args)) in COMMANDS.iter().enumerate() {
        let path = dir.path().join(format!("{i}.csv"));
        let mut full = args.to_vec();
        full.extend(["--output", path.to_str().unwrap()]);
        let out = lab(&full);
        assert!(out.status.success(), "{args:?}");
        let csv = std::fs::read_to_string(&path).unwrap();
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
        let mut lines = csv.lines();
        let width = lines.next().unwrap().split(',').count();
        for line in lines {
            assert_eq!(line.split(',').count(), width, "{name}: {line}");
        }
        let sidecar: Value = serde_json::from_str(
            &std::fs::read_to_string(format!("{}.json", path.display())).unwrap(),
        )
        .unwrap();
        assert_valid("manifest", &sidecar);
    }
}

#[test]
fn csv_headers_are_fixed() {
    let header = |args: &[&str]| {
        let out = lab(args);
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .next()
            .unwrap()
            .to_string()
    };
    assert_eq!(header(&["constants"]), "b,C,residual");
    assert_eq!(
        header(&["potential", "--points", "3"]),
        "rho,x,nu_squared,lambda,v_eff"
    );
    assert_eq!(
        header(&["spectrum", "--levels", "2"]),
        "n,E_n,kappa_n,node_count,ratio_to_next,flag"
    );
    assert_eq!(header(&["nodes"]), "k,rho_k,ratio");
    assert_eq!(
        header(&["meanfield", "--statistics", "bose", "--t0", "1"]),
        "n,epsilon,epsilon_per_particle"
    );
    assert_eq!(
        header(&["branches", "--x", "0"]),
        "index,nu_squared,lambda,residual"
    );
}

#[test]
fn exit_codes() {
    let out = lab(&["spectrum", "--regularization", "none"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("collapse"));
    assert_eq!(lab(&["nodes", "--level", "1"]).status.code(), Some(2));
    assert_eq!(
        lab(&[
            "meanfield",
            "--statistics",
            "fermi",
            "--t0",
            "-1",
            "--stabilizer",
            "three-body",
            "--t3",
            "-1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(lab(&["potential", "--a", "0"]).status.code(), Some(2));
    assert_eq!(lab(&["constants"]).status.code(), Some(0));
}

#[test]
fn unitarity_potential_columns() {
    let out = lab(&["potential", "--points", "30", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = efimov_lab::efimov_constants(1e-12).unwrap().c;
    for row in doc["rows"].as_array().unwrap() {
        let rho = row["rho"].as_f64().unwrap();
        let nu2 = row["nu_squared"].as_f64().unwrap();
        assert_eq!(row["lambda"].as_f64().unwrap(), nu2 - 4.0);
        let v = row["v_eff"].as_f64().unwrap();
        assert!((v * 2.0 * rho * rho + c).abs() < 1e-9);
    }
}

#[test]
fn reruns_and_thread_counts_give_identical_csv() {
    for (_, args) in COMMANDS {
        let base = lab(args).stdout;
        assert_eq!(lab(args).stdout, base, "{args:?} rerun");
        for threads in ["1", "4"] {
            let mut full = args.to_vec();
            full.extend(["--threads", threads]);
            assert_eq!(lab(&full).stdout, base, "{args:?} --threads {threads}");
        }
        let via_env = Command::new(BIN)
            .args(*args)
            .env("EFIMOV_LAB_THREADS", "3")
            .output()
            .unwrap();
        assert_eq!(via_env.stdout, base, "{args:?} via env");
    }
}
