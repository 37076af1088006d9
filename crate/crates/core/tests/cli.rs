use std::path::Path;
use std::process::{Command, Output};

const CONFIG: &str = r#"seed = 11

[field]
p = 2

[inner]
kind = "single-parity"

[graph]
n = 20
d = 6

[params]
l1 = 2
l2 = 1

[correct]
positions = [3, 4]
"#;

fn run(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expander-lcc"))
        .args(args)
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

#[test]
fn pipeline_writes_manifests() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("c.toml");
    std::fs::write(&config, CONFIG).unwrap();
    let out = tmp.path().join("out");
    for cmd in ["build", "encode", "correct", "spectrum-check"] {
        let o = run(&[cmd], &config, &out);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(out.join(format!("{cmd}.manifest.json")).exists());
    }
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("correct.manifest.json")).unwrap()).unwrap();
    assert!(manifest["inputs"]["code.json"].is_string());
    assert!(manifest["outputs"]["trials.json"].is_string());
    let trials: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("trials.json")).unwrap()).unwrap();
    assert_eq!(trials.as_array().unwrap().len(), 2);
    assert_eq!(trials[0]["symbol"], trials[0]["truth"]);
}

#[test]
fn seed_flag_changes_the_graph() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("c.toml");
    std::fs::write(&config, CONFIG).unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert!(run(&["build"], &config, &a).status.success());
    assert!(run(&["build", "--seed", "12"], &config, &b).status.success());
    assert_ne!(std::fs::read(a.join("graph.json")).unwrap(), std::fs::read(b.join("graph.json")).unwrap());
}

#[test]
fn validation_errors_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("bad.toml");
    std::fs::write(&config, CONFIG.replace("d = 6", "d = 6\nweight = 2")).unwrap();
    let o = run(&["build"], &config, tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.toml:12"));

    std::fs::write(&config, CONFIG.replace("n = 20", "n = 5")).unwrap();
    let o = run(&["build"], &config, tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("graph.d"));
}

#[test]
fn missing_artifacts_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("c.toml");
    std::fs::write(&config, CONFIG).unwrap();
    let o = run(&["correct"], &config, &tmp.path().join("empty"));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("code.json"));
}

#[test]
fn tampered_graph_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("c.toml");
    std::fs::write(&config, CONFIG).unwrap();
    let out = tmp.path().join("out");
    assert!(run(&["build"], &config, &out).status.success());
    let path = out.join("graph.json");
    let mut text = std::fs::read_to_string(&path).unwrap();
    text.push(' ');
    std::fs::write(&path, text).unwrap();
    let o = run(&["encode"], &config, &out);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_expander-lcc")).arg("decode").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}
