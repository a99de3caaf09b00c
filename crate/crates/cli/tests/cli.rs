use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn flrw(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flrw"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn snapshot(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/snapshots")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn figure_three_matches_snapshot() {
    let dir = TempDir::new().unwrap();
    let o = flrw(&["figures", "--which", "3", "--out", "figs"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("figs/fig3.csv")).unwrap();
    assert_eq!(csv, snapshot("fig3.csv"));
    let script = std::fs::read_to_string(dir.path().join("figs/plot_fig3.py")).unwrap();
    assert!(script.contains("matplotlib"));
}

#[test]
fn all_figures_are_written() {
    let dir = TempDir::new().unwrap();
    let o = flrw(&["figures", "--out", "."], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for w in 1..=4 {
        let csv = std::fs::read_to_string(dir.path().join(format!("fig{w}.csv"))).unwrap();
        assert!(csv.starts_with("# tool: flrw-splitting"));
        assert!(csv.lines().any(|l| l.starts_with("# model: {")));
        assert!(dir.path().join(format!("plot_fig{w}.py")).exists());
    }
    let f4 = std::fs::read_to_string(dir.path().join("fig4.csv")).unwrap();
    assert_eq!(f4, snapshot("fig4.csv"));
}

#[test]
fn malformed_config_exits_one_with_position() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        "{\n  \"model\": {\"k\": 1,,}\n}",
    )
    .unwrap();
    let o = flrw(
        &["simulate", "--config", "bad.json", "--out", "o"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("line 2") && err.contains("column"), "{err}");
    assert!(!dir.path().join("o").exists());
}

#[test]
fn numeric_failure_exits_two_and_writes_nothing() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("res.json"),
        r#"{"model": {"k": -1, "Lambda": -1.0, "coupling": "minimal", "phi": [1.0]}}"#,
    )
    .unwrap();
    let o = flrw(
        &["birkhoff", "--config", "res.json", "--out", "o"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("resonance"));
    assert!(!dir.path().join("o").exists());
}

#[test]
fn usage_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(flrw(&["nonsense"], dir.path()).status.code(), Some(1));
    assert_eq!(
        flrw(&["figures", "--which", "7"], dir.path()).status.code(),
        Some(1)
    );
    assert_eq!(
        flrw(&["simulate", "--which", "1"], dir.path())
            .status
            .code(),
        Some(1)
    );
    std::fs::write(dir.path().join("file"), "").unwrap();
    assert_eq!(
        flrw(&["simulate", "--out", "file"], dir.path())
            .status
            .code(),
        Some(1)
    );
    std::fs::write(
        dir.path().join("k1.json"),
        r#"{"k": 1, "Lambda": 1.0, "coupling": "minimal", "phi": [1.0]}"#,
    )
    .unwrap();
    assert_eq!(
        flrw(&["melnikov", "--config", "k1.json"], dir.path())
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn outputs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for out in ["a", "b"] {
        for cmd in ["simulate", "scattering", "birkhoff", "poincare"] {
            let o = flrw(&[cmd, "--out", out], dir.path());
            assert_eq!(o.status.code(), Some(0), "{cmd}: {}", stderr(&o));
        }
    }
    for f in [
        "trajectory.csv",
        "scattering.json",
        "scattering_curve.csv",
        "birkhoff.json",
        "crossings.csv",
    ] {
        let a = std::fs::read(dir.path().join("a").join(f)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(f)).unwrap();
        assert_eq!(a, b, "{f}");
    }
}

#[test]
fn resultant_prints_exact_and_decimal() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("r.json"),
        r#"{"rational": {"L": "1", "phi": "3", "v3": "1", "v4": "0"}}"#,
    )
    .unwrap();
    let o = flrw(
        &["resultant", "--config", "r.json", "--out", "o"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(
        text.contains("resultant      46656000000  (4.6656000000000000e10)"),
        "{text}"
    );
    assert!(text.contains("sign           1"), "{text}");
    let path = dir.path().join("o/resultant.json");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(json["report"]["resultant"], "46656000000");
}

#[test]
fn birkhoff_prints_rational_invariants() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("b.json"),
        r#"{"rational": {"L": "1", "phi": "2", "v3": "0", "v4": "0"}}"#,
    )
    .unwrap();
    let o = flrw(
        &["birkhoff", "--config", "b.json", "--out", "o"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("A12            -5/6"), "{text}");
    assert!(text.contains("A22            5/12"), "{text}");
    assert!(
        text.contains("verdict        \"nondegenerate_hessian\""),
        "{text}"
    );
}

#[test]
fn melnikov_reports_hessian_structure() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("m.json"),
        r#"{"phi_matrix": [[2.0, 0.5], [0.5, 1.0]], "grid": {"lo": 0, "hi": 2, "n": 4}}"#,
    )
    .unwrap();
    let o = flrw(
        &["melnikov", "--config", "m.json", "--out", "o"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(
        stdout(&o).contains("m01 (free basis) = -1.99999999999999"),
        "{}",
        stdout(&o)
    );
    let path = dir.path().join("o/melnikov.json");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let z = json["splitting"]["delta_fit"]["z_star"].as_f64().unwrap();
    assert!((z - 3.0).abs() < 1e-4, "{z}");
    let csv = std::fs::read_to_string(dir.path().join("o/overlap.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 6);
}

#[test]
fn verify_passes_on_clean_build() {
    let dir = TempDir::new().unwrap();
    let o = flrw(&["verify", "--out", "v"], dir.path());
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(
        text.lines().filter(|l| l.starts_with("[PASS]")).count(),
        11,
        "{text}"
    );
    assert!(dir.path().join("v/acceptance.json").exists());
}
