use std::path::Path;
use std::process::{Command, Output};

fn smoothlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smoothlab")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn tail_matrix_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let args = [
        "tail-matrix", "--d", "4", "--sigma", "1", "--center", "zero", "--threshold", "40", "--trials", "2000", "--seed",
        "7", "--out", path(&out),
    ];
    assert_eq!(code(&smoothlab(&args)), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema=smoothlab.tail-matrix.v1 kind=matrix_tail seed=7"));
    assert_eq!(lines.next(), Some("sigma,threshold,empirical,stderr,bound_edelman,bound_sst,bound_thm43,bound_conj1"));
    assert_eq!(lines.count(), 1);

    let again = dir.path().join("again.csv");
    let mut args2 = args;
    args2[14] = path(&again);
    assert_eq!(code(&smoothlab(&args2)), 0);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn exit_codes() {
    // Config errors.
    assert_eq!(code(&smoothlab(&["tail-matrix", "--d", "3"])), 1);
    assert_eq!(code(&smoothlab(&["tail-matrix", "--threshold", "-1"])), 1);
    assert_eq!(code(&smoothlab(&["tail-matrix", "--threshold", "3", "--trials", "0"])), 1);
    assert_eq!(code(&smoothlab(&["tail-matrix", "--no-such-flag"])), 1);
    assert_eq!(code(&smoothlab(&["tail-matrix", "--threshold", "3", "--per-trial"])), 1);
    // Out of regime.
    assert_eq!(code(&smoothlab(&["shadow-size", "--d", "2", "--n", "6", "--sigma", "0.01"])), 2);
    assert_eq!(code(&smoothlab(&["shadow-size", "--d", "3", "--n", "8", "--sigma", "1"])), 2);
    assert_eq!(code(&smoothlab(&["tail-perceptron", "--d", "3", "--sigma", "1", "--threshold", "5"])), 2);
    // Size limits.
    assert_eq!(code(&smoothlab(&["submatrix-lemma", "--n", "40", "--d", "6", "--sigma", "0.01"])), 3);
    assert_eq!(code(&smoothlab(&["tail-rademacher", "--d", "5", "--exhaustive", "--threshold", "2"])), 3);
    // Help is not an error.
    assert_eq!(code(&smoothlab(&["--help"])), 0);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# defaults\nd = 2\nthreshold = 5, 50\ntrials = 10\nformat = json\n").unwrap();
    let out = smoothlab(&["tail-matrix", "--config", path(&cfg), "--trials", "12"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["d"], 2);
    assert_eq!(doc["config"]["trials"], 12);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&smoothlab(&["tail-matrix", "--config", path(&cfg)])), 1);
}

#[test]
fn json_inferred_from_extension_and_verified() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("shadow.json");
    let run = smoothlab(&["shadow-size", "--sigma", "boundary", "--trials", "20", "--per-trial", "--out", path(&out)]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"schema\": \"smoothlab.shadow-size.v1\""));
    assert_eq!(code(&smoothlab(&["verify", path(&out)])), 0);

    let tampered = text.replacen("\"trials\": 20", "\"trials\": 21", 1);
    std::fs::write(&out, tampered).unwrap();
    assert_ne!(code(&smoothlab(&["verify", path(&out)])), 0);
}

#[test]
fn tampered_aggregate_is_a_replay_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let args = ["tail-matrix", "--threshold", "2", "--trials", "50", "--per-trial", "--out", path(&out)];
    assert_eq!(code(&smoothlab(&args)), 0);
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    doc["rows"][0]["empirical"] = serde_json::json!(0.999);
    std::fs::write(&out, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(code(&smoothlab(&["verify", path(&out)])), 4);
}

#[test]
fn thread_count_does_not_change_output() {
    let base = ["simplex-pivots", "--n", "8", "--d", "3", "--sigma", "0.1", "--trials", "60", "--format", "json"];
    let one = smoothlab(&[&base[..], &["--threads", "1"]].concat());
    let many = smoothlab(&[&base[..], &["--threads", "6"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn solve_lp_on_cube() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cube.lp");
    std::fs::write(&file, "4 2\n1 0 1\n-1 0 1\n0 1 1\n0 -1 1\n1 2\n").unwrap();
    let out = smoothlab(&["solve-lp", path(&file)]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"], "optimal");
    assert_eq!(doc["value"], 3.0);
    assert_eq!(doc["oracle_value"], 3.0);

    std::fs::write(&file, "2 2\n1 0\n").unwrap();
    assert_eq!(code(&smoothlab(&["solve-lp", path(&file)])), 1);
}

#[test]
fn run_perceptron_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    std::fs::write(&file, "3 2\n1 0.2\n0.5 1\n1 -0.3\n").unwrap();
    let out = smoothlab(&["run-perceptron", path(&file), "--rule", "random-violated", "--seed", "4"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"], "solved");
    assert!(doc["iterations"].as_u64().unwrap() <= doc["iteration_bound"].as_u64().unwrap());
    assert_eq!(code(&smoothlab(&["run-perceptron", path(&file), "--rule", "fastest"])), 1);
}
