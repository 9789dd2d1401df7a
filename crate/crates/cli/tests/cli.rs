use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SMALL: &str = r#"{
  "params": { "mu": [0.85, 0.9, 0.95], "p": [0.1, 0.4, 0.7] },
  "horizons": [200, 500],
  "runs": 3,
  "master_seed": 7,
  "policies": ["ec", "ae", "lcb", "ts"],
  "checkpoint_schedule": "linear:100"
}"#;

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cascade-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run_ok(config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let output = bench(&args);
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

fn sorted_files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn writes_csvs_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "small.json", SMALL);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_ok(&config, &a, &[]);
    run_ok(&config, &b, &["--serial"]);
    let files = sorted_files(&a);
    assert_eq!(
        files,
        [
            "cumulative_T200.csv",
            "cumulative_T500.csv",
            "regret_vs_horizon.csv"
        ]
    );
    for f in &files {
        assert_eq!(
            fs::read(a.join(f)).unwrap(),
            fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
    let horizon = fs::read_to_string(a.join("regret_vs_horizon.csv")).unwrap();
    let mut lines = horizon.lines();
    assert_eq!(
        lines.next(),
        Some("policy,horizon,mean_final_regret,stderr,runs")
    );
    assert_eq!(lines.count(), 8);
}

#[test]
fn svg_policy_filter_and_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "small.json", SMALL);
    let out = dir.path().join("svg");
    run_ok(&config, &out, &["--svg", "--policies", "ts,lcb"]);
    assert!(out.join("regret_vs_horizon.svg").exists());
    assert!(out.join("cumulative_T500.svg").exists());
    let csv = fs::read_to_string(out.join("regret_vs_horizon.csv")).unwrap();
    let policies: Vec<&str> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(policies, ["lcb", "lcb", "ts", "ts"]);

    let reseeded = dir.path().join("reseeded");
    run_ok(&config, &reseeded, &["--policies", "ts,lcb", "--seed", "8"]);
    assert_ne!(
        fs::read(out.join("regret_vs_horizon.csv")).unwrap(),
        fs::read(reseeded.join("regret_vs_horizon.csv")).unwrap()
    );
}

#[test]
fn configuration_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();
    let cases = [
        ("bad_p.json", SMALL.replace("0.7]", "1.5]"), "p[2]"),
        (
            "unknown_key.json",
            SMALL.replace("\"runs\"", "\"repeats\""),
            "repeats",
        ),
        (
            "zero_runs.json",
            SMALL.replace("\"runs\": 3", "\"runs\": 0"),
            "runs",
        ),
        ("bad_policy.json", SMALL.replace("\"ts\"", "\"ucb\""), "ucb"),
        ("not_json.json", "{".to_string(), ""),
    ];
    for (name, text, needle) in cases {
        let config = write_config(dir.path(), name, &text);
        let output = bench(&["--config", config.to_str().unwrap(), "--out", out]);
        let stderr = String::from_utf8_lossy(&output.stderr);
        assert_eq!(output.status.code(), Some(1), "{name}: {stderr}");
        assert!(stderr.contains(needle), "{name}: {stderr}");
    }
    let missing = dir.path().join("missing.json");
    assert_eq!(
        bench(&["--config", missing.to_str().unwrap(), "--out", out])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(bench(&["--out", out]).status.code(), Some(1));

    let config = write_config(dir.path(), "small.json", SMALL);
    let output = bench(&[
        "--config",
        config.to_str().unwrap(),
        "--out",
        out,
        "--policies",
        "ucb",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(!Path::new(out).exists());
}

#[test]
fn unwritable_output_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "small.json", SMALL);
    // A regular file where the output directory should go.
    let blocker = write_config(dir.path(), "blocker", "");
    let output = bench(&[
        "--config",
        config.to_str().unwrap(),
        "--out",
        blocker.join("out").to_str().unwrap(),
    ]);
    assert_eq!(
        output.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
}
