use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ksubmod::Instance;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ksubmod"))
}

fn instances() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("instances")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn solve_modular_instance_with_exact() {
    let path = instances().join("modular_uniform.json");
    let out = run(&["solve", path.to_str().unwrap(), "--exact"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["objective"], 3);
    assert_eq!(report["exact"]["opt"], 3);
    assert_eq!(report["exact"]["ratio"], 1);
    assert_eq!(report["exact"]["verdict"], "PASS");
    assert_eq!(report["support"]["a"], 1);
}

#[test]
fn solve_is_byte_identical_across_runs() {
    for name in [
        "sensors_graphic.json",
        "coverage_partition.json",
        "table_uniform.json",
    ] {
        let path = instances().join(name);
        for format in ["json", "text"] {
            let args = [
                "solve",
                path.to_str().unwrap(),
                "--exact",
                "--validate",
                "--trace",
                "--format",
                format,
            ];
            let a = run(&args);
            let b = run(&args);
            assert_eq!(code(&a), 0);
            assert_eq!(a.stdout, b.stdout);
        }
    }
}

#[test]
fn validate_golden_instances_pass() {
    for entry in std::fs::read_dir(instances()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|x| x == "json") {
            let out = run(&["validate", path.to_str().unwrap()]);
            assert_eq!(code(&out), 0, "{}", path.display());
        }
    }
}

#[test]
fn validate_reports_witnesses_for_planted_failures() {
    let out = run(&[
        "validate",
        instances().join("invalid/even_sets.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["matroid_axioms"]["witness"]["axiom"], "M2");
    assert_eq!(
        report["matroid_axioms"]["witness"]["subset"],
        serde_json::json!(["e1"])
    );

    let out = run(&[
        "validate",
        instances()
            .join("invalid/nonmonotone_table.json")
            .to_str()
            .unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["monotone"]["witness"]["kind"], "not_monotone");
    assert_eq!(report["verdict"], "FAIL");
}

#[test]
fn solve_with_validate_fails_on_nonmonotone_table() {
    let path = instances().join("invalid/nonmonotone_table.json");
    let out = run(&["solve", path.to_str().unwrap(), "--validate", "--exact"]);
    assert_eq!(code(&out), 3);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["guarantee"], "void");
    assert_eq!(report["exact"]["verdict"], "NOT_APPLICABLE");
    assert!(report["validation"]["monotone"]["witness"].is_object());
}

#[test]
fn parse_errors_exit_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"k\": 2,\n  \"elements\": [\"a\"\n").unwrap();
    let out = run(&["solve", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let unknown = dir.path().join("unknown.json");
    let text = std::fs::read_to_string(instances().join("coverage_partition.json"))
        .unwrap()
        .replace("[\"x3\", \"x4\"]", "[\"x3\", \"x4\", \"c\"]");
    std::fs::write(&unknown, text).unwrap();
    let out = run(&["solve", unknown.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains('c'));
}

#[test]
fn oversized_table_generation_exits_with_budget_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "generate",
        "--n",
        "10",
        "--k",
        "3",
        "--matroid",
        "uniform",
        "--function",
        "table",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = run(&[
            "generate",
            "--n",
            "4",
            "--k",
            "2",
            "--matroid",
            "graphic",
            "--function",
            "coverage",
            "--seed",
            "1",
            "--count",
            "3",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 3);
    for name in names {
        let x = std::fs::read_to_string(a.path().join(&name)).unwrap();
        let y = std::fs::read_to_string(b.path().join(&name)).unwrap();
        assert_eq!(x, y);
        let inst = Instance::parse_str(&x).unwrap();
        assert_eq!(inst.to_json(), x);
        assert_eq!(Instance::parse_str(&inst.to_json()).unwrap(), inst);
    }
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = run(&[
        "bench",
        "--dir",
        instances().to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,n,k,matroid_type,M,greedy_value,opt_value,ratio,membership_calls,eval_calls"
    );
    assert_eq!(lines.count(), 6);
}
