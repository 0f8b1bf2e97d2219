use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsey-forge"))
        .args(args)
        .current_dir(dir)
        .env_remove("RAMSEY_FORGE_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k2.json", r#"{"n":2,"edges":[[0,1]]}"#);
    write(dir.path(), "c3.json", r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#);
    write(
        dir.path(),
        "c5.json",
        r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#,
    );
    dir
}

#[test]
fn f3_report_contains_three() {
    let dir = setup();
    let out = run(dir.path(), &["bounds", "f3", "--N", "4", "--s", "4", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["value"], 3);
    assert_eq!(r["verification"], "exhaustive");
}

#[test]
fn empty_three_graph_is_link_free() {
    let dir = setup();
    write(dir.path(), "empty.json", r#"{"n":6,"triples":[]}"#);
    let out = run(
        dir.path(),
        &["gamma", "verify", "--gamma", "empty.json", "--forbidden", "c3.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["link_free"], true);
}

#[test]
fn link_violation_exits_one() {
    let dir = setup();
    write(
        dir.path(),
        "k4.json",
        r#"{"n":4,"triples":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#,
    );
    let out = run(
        dir.path(),
        &["gamma", "verify", "--gamma", "k4.json", "--forbidden", "c3.json"],
    );
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["certified"], false);
    assert_eq!(r["result"]["link_free"], false);
}

#[test]
fn unknown_flag_is_usage_error() {
    let dir = setup();
    let out = run(dir.path(), &["bounds", "f3", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn malformed_json_reports_byte_offset() {
    let dir = setup();
    let text = "{\"n\": 3,\n \"triples\": [[0,1,2],, ]}";
    write(dir.path(), "bad.json", text);
    let out = run(
        dir.path(),
        &["gamma", "verify", "--gamma", "bad.json", "--forbidden", "c3.json"],
    );
    assert_eq!(out.status.code(), Some(2));
    let offset = text.find(",,").unwrap() + 1;
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(&format!("at byte {offset}:")), "{err}");
}

#[test]
fn limit_errors_exit_two() {
    let dir = setup();
    let out = run(dir.path(), &["bounds", "f3", "--N", "9", "--s", "4", "--t", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
}

#[test]
fn build_verify_reduce_chain() {
    let dir = setup();
    let d = dir.path();
    let out = run(
        d,
        &[
            "gamma",
            "build",
            "--N",
            "36",
            "--palette",
            "c5.json",
            "--seed",
            "5",
            "--out",
            "gamma.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run(
        d,
        &["gamma", "verify", "--gamma", "gamma.json", "--forbidden", "c3.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let out = run(
        d,
        &[
            "game",
            "reduce",
            "--host",
            "gamma.json",
            "--s",
            "3",
            "--n",
            "3",
            "--alpha",
            "1/3",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["witness_certified"], true);
}

#[test]
fn auxgraph_output_feeds_gamma_build() {
    let dir = setup();
    let d = dir.path();
    let out = run(
        d,
        &["auxgraph", "--g", "3", "--m", "12", "--seed", "7", "--out", "aux.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let aux: Value = serde_json::from_slice(&std::fs::read(d.join("aux.json")).unwrap()).unwrap();
    assert_eq!(aux["result"]["certificate"]["girth_ok"], true);
    let out = run(d, &["gamma", "build", "--N", "10", "--palette", "aux.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["coloring"]["N"], 10);
}

#[test]
fn census_csv_row() {
    let dir = setup();
    let out = run(
        dir.path(),
        &["census", "--n", "1", "--palette", "k2.json", "--report", "csv"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    let get = |k: &str| {
        row.get(header.iter().position(|h| h == k).unwrap())
            .unwrap()
            .to_string()
    };
    assert_eq!(get("census.count"), "56");
    assert_eq!(get("members.product_e3_failures"), "0");
    assert_eq!(get("members.product_e1_failures"), "0");
}

#[test]
fn game_play_stays_within_caps() {
    let dir = setup();
    for painter in ["random", "all-red", "all-blue", "minimax"] {
        let out = run(
            dir.path(),
            &[
                "game",
                "play",
                "--s",
                "4",
                "--n",
                "4",
                "--painter",
                painter,
                "--seed",
                "3",
            ],
        );
        assert_eq!(out.status.code(), Some(0), "{painter}");
        assert_eq!(json(&out)["result"]["within_caps"], true);
    }
}

#[test]
fn pipeline_csv_has_one_row_per_trial() {
    let dir = setup();
    let args = [
        "pipeline",
        "--g",
        "3",
        "--N",
        "12",
        "--n",
        "2",
        "--trials",
        "6",
        "--palette",
        "c5.json",
        "--format",
        "csv",
    ];
    let out = run(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn pipeline_payload_is_reproducible() {
    let dir = setup();
    let args = [
        "pipeline",
        "--N",
        "9",
        "--n",
        "1",
        "--trials",
        "4",
        "--palette",
        "c5.json",
        "--seed",
        "8",
    ];
    let (a, b) = (json(&run(dir.path(), &args)), json(&run(dir.path(), &args)));
    assert_eq!(a["result"].to_string(), b["result"].to_string());
    assert_eq!(a["seed"], 8);
}

#[test]
fn seed_defaults_from_environment() {
    let dir = setup();
    let out = Command::new(env!("CARGO_BIN_EXE_ramsey-forge"))
        .args(["game", "play", "--s", "3", "--n", "3"])
        .env("RAMSEY_FORGE_SEED", "41")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 41);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = setup();
    let cfg = r#"{"g":3,"m":5,"N":9,"n":1,"trials":2,"seed":9,"palette":{"kind":"given","graph":{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}}}"#;
    write(dir.path(), "cfg.json", cfg);
    let r = json(&run(dir.path(), &["pipeline", "--config", "cfg.json", "--trials", "3"]));
    assert_eq!(r["seed"], 9);
    assert_eq!(r["result"]["trials"].as_array().unwrap().len(), 3);
}
