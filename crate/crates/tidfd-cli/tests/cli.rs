//! End-to-end checks of the binary: exit codes and output files.

use std::path::PathBuf;
use std::process::Command;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_tidfd")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tidfd-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn reconstruct_succeeds_and_writes_outputs() {
    let dir = scratch("ok");
    let config = dir.join("config.json");
    std::fs::write(&config, r#"{"n": 128, "trials": 2, "seed": 3}"#).unwrap();
    let out = dir.join("out");
    let result = Command::new(binary())
        .args(["reconstruct", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    assert!(out.join("recon.csv").exists());
    let report = std::fs::read_to_string(out.join("report.json")).unwrap();
    assert!(report.contains("\"relative_error\""));
    assert!(report.contains("\"norm_bound\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_config_exits_with_code_2() {
    let dir = scratch("bad");
    let config = dir.join("config.json");

    std::fs::write(&config, r#"{"n": 100}"#).unwrap();
    let result = Command::new(binary())
        .args(["reconstruct", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));

    std::fs::write(&config, r#"{"unknown_key": 1}"#).unwrap();
    let result = Command::new(binary())
        .args(["reconstruct", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));

    // Missing file is a config error too.
    let result = Command::new(binary())
        .args(["reconstruct", "--config"])
        .arg(dir.join("nope.json"))
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));

    // Soft thresholding is not a filter family for validate-filter.
    std::fs::write(&config, r#"{"filter": "soft"}"#).unwrap();
    let result = Command::new(binary())
        .args(["validate-filter", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validation_commands_pass_on_defaults() {
    let dir = scratch("validate");
    for sub in ["validate-frame", "validate-filter", "probe-optimality"] {
        let out = dir.join(sub);
        let result = Command::new(binary())
            .args([sub, "--seed", "5", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        assert_eq!(
            result.status.code(),
            Some(0),
            "{sub}: {}",
            String::from_utf8_lossy(&result.stderr)
        );
        assert!(std::fs::read_dir(&out).unwrap().count() >= 1);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rate_study_warns_beyond_qualification_but_runs() {
    let dir = scratch("qualification");
    let config = dir.join("config.json");
    std::fs::write(
        &config,
        r#"{"n": 128, "phantom": {"band": {"scale": 3}}, "filter": "tikhonov",
            "mu": 2.0, "trials": 2, "delta_list": [1e-2, 1e-3]}"#,
    )
    .unwrap();
    let result = Command::new(binary())
        .args(["rate-study", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(0), "{result:?}");
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("qualification"), "stderr: {stderr}");
    std::fs::remove_dir_all(&dir).unwrap();
}
