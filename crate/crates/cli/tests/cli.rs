use std::path::Path;
use std::process::{Command, Output};

fn bggcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bggcoh"))
        .args(args)
        .env_remove("BGGCOH_CACHE_DIR")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = bggcoh(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn bwb_examples() {
    let v = json(&["bwb", "--d", "1", "--mu", "-1,1"]);
    assert_eq!(v["schema"], "bggcoh/1");
    assert_eq!(v["dims"], serde_json::json!([0, 1]));
    let v = json(&["bwb", "--d", "1", "--mu", "-1,0"]);
    assert_eq!(v["dims"], serde_json::json!([0, 0]));
    let v = json(&["bwb", "--d", "2", "--lambda", "0,0,0", "--bgg"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    assert_eq!(v["delta_property"], true);
}

#[test]
fn pipeline_examples() {
    let v = json(&["derham-v", "--d", "2", "--j", "0", "--window", "3"]);
    assert_eq!(v["dims"], serde_json::json!([1, 0, 1, 0]));
    assert_eq!(v["pass"], true);
    let out = bggcoh(&[
        "acyclicity",
        "--d",
        "2",
        "--j",
        "1",
        "--window",
        "4",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));
    let v = json(&["local", "--d", "2", "--j", "1", "--p", "0", "--window", "3"]);
    let hit = v["rows"].as_array().unwrap().iter().any(|r| {
        r["coh_degree"] == 1 && r["multidegree"] == serde_json::json!([1, 0, -1]) && r["dim"] == 1
    });
    assert!(hit);
}

#[test]
fn table_csv_and_text() {
    let out = bggcoh(&["table", "--d", "2", "--lambda", "0,0,0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].contains("analog=finite-field"));
    assert_eq!(
        lines[1],
        "degree,parabolic,dim_v_lambda,q_dim,q_dim_coefficients"
    );
    assert_eq!(lines[3], "1,\"P_(2,1)\",1,q^2 + q,0;1;1");
    let out = bggcoh(&["table", "--d", "2", "--lambda", "1,0,0", "--format", "text"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("dim V(lambda) = 3"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["local", "--d", "2", "--j", "0", "--p", "1", "--window", "3"][..],
        &[
            "derham-v",
            "--d",
            "2",
            "--j",
            "0",
            "--window",
            "2",
            "--threads",
            "2",
        ][..],
        &[
            "table", "--d", "3", "--lambda", "2,1,1,0", "--format", "csv",
        ][..],
    ] {
        assert_eq!(bggcoh(args).stdout, bggcoh(args).stdout, "{args:?}");
    }
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect()
}

#[test]
fn cache_hits_equal_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["local", "--d", "2", "--j", "1", "--p", "1", "--window", "3"];
    let fresh = bggcoh(&args).stdout;
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_bggcoh"))
            .args(args)
            .env("BGGCOH_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(cache_files(dir.path()).len(), 1);
    let second = run();
    assert_eq!(first.stdout, fresh);
    assert_eq!(second.stdout, fresh);

    // entries from another engine version are ignored and overwritten
    let path = &cache_files(dir.path())[0];
    let mut entry: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    entry["version"] = "0.0.0-stale".into();
    entry["output"] = "garbage".into();
    std::fs::write(path, entry.to_string()).unwrap();
    assert_eq!(run().stdout, fresh);

    // a different format is a different key
    let mut csv_args = args.to_vec();
    csv_args.extend([
        "--format",
        "csv",
        "--cache-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(bggcoh(&csv_args).status.success());
    assert_eq!(cache_files(dir.path()).len(), 2);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = bggcoh(&[
        "table",
        "--d",
        "1",
        "--lambda",
        "0,0",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["rows"][1]["q_dim"], "q");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bggcoh(args).status.code().unwrap();
    assert_eq!(code(&["bwb", "--d", "1", "--mu", "x,1"]), 2);
    assert_eq!(code(&["bwb", "--d", "2", "--mu", "1,0"]), 2);
    assert_eq!(code(&["bwb", "--d", "2", "--mu", "0,0,1"]), 2);
    assert_eq!(code(&["table", "--d", "2", "--lambda", "0,1,0"]), 2);
    assert_eq!(
        code(&["table", "--d", "7", "--lambda", "0,0,0,0,0,0,0,0"]),
        2
    );
    assert_eq!(code(&["derham-v", "--d", "4", "--j", "0"]), 2);
    assert_eq!(code(&["acyclicity", "--d", "2", "--j", "2"]), 2);
    assert_eq!(code(&["local", "--d", "2", "--j", "0", "--p", "3"]), 2);
    assert_eq!(
        code(&["local", "--d", "2", "--j", "0", "--p", "0", "--window", "0"]),
        2
    );
    assert_eq!(
        code(&["derham-v", "--d", "2", "--j", "0", "--threads", "0"]),
        2
    );
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["--help"]), 0);
}
