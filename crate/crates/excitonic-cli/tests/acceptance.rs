//! Acceptance criterion for the command-line surface: repeated sweep runs
//! are byte-identical.

use std::process::Command;

use serde_json::json;

fn run_sweep(config: &str, out: &str) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_excitonic"))
        .args(["sweep", "--config", config, "--out", out])
        .status()
        .expect("binary runs");
    assert!(status.success());
    std::fs::read(out).unwrap()
}

/// Criterion 10: a sweep is a pure function of its config document — two
/// runs produce byte-identical CSV.
#[test]
fn criterion_10_sweep_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    std::fs::write(
        &config,
        serde_json::to_string_pretty(&json!({
            "quantity": "gamma_geometric",
            "base": {
                "drive": {"epsilon": 1.3, "amplitude": 0.1, "omega": 1.0},
                "integrator": {"steps_per_period": 512}
            },
            "axes": [
                {"path": "drive.amplitude", "start": 0.05, "stop": 0.45, "count": 5},
                {"path": "drive.omega", "start": 0.8, "stop": 1.2, "count": 3}
            ]
        }))
        .unwrap(),
    )
    .unwrap();

    let first = run_sweep(
        config.to_str().unwrap(),
        dir.path().join("a.csv").to_str().unwrap(),
    );
    let second = run_sweep(
        config.to_str().unwrap(),
        dir.path().join("b.csv").to_str().unwrap(),
    );
    assert!(!first.is_empty());
    assert_eq!(first, second, "sweep runs must be byte-identical");

    // sanity: the file is UTF-8 with LF endings and the expected row count
    let text = String::from_utf8(first).unwrap();
    assert!(!text.contains('\r'));
    let rows = text
        .lines()
        .skip_while(|l| l.starts_with('#'))
        .skip(1)
        .count();
    assert_eq!(rows, 15);
    println!("ACCEPTANCE 10 sweep determinism: PASS ({rows} rows, byte-identical)");
}
