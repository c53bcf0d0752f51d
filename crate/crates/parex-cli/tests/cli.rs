//! End-to-end checks of the binary: exit codes, diagnostics, determinism of
//! the JSON summary, the golden constants table, dump formats, and the
//! docs coverage table.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn parex(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parex"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("spawn parex")
}

#[test]
fn constants_on_default_config_exits_zero_and_unit_rows_are_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = parex(&["constants"], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("constants.csv")).unwrap();
    assert!(csv.starts_with("scenario,check,value_lhs,value_rhs,tolerance,pass\n"));
    let mut unit_rows = 0;
    for line in csv.lines().filter(|l| l.contains("constant[unit/")) {
        // Numeric columns never contain commas; read them from the end.
        let fields: Vec<&str> = line.rsplit(',').collect();
        assert_eq!(fields[3], "1", "unit-weight row not exactly 1: {line}");
        unit_rows += 1;
    }
    assert!(unit_rows >= 8);
}

#[test]
fn constants_match_the_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = parex(&["constants"], dir.path());
    assert!(out.status.success());
    let produced = fs::read_to_string(dir.path().join("constants.csv")).unwrap();
    let golden_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/constants.csv");
    let golden = fs::read_to_string(&golden_path).expect("golden file present");
    assert_eq!(
        produced, golden,
        "constants table deviates from the golden file"
    );
}

#[test]
fn summary_is_byte_identical_across_runs() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    for d in [&dir1, &dir2] {
        let out = parex(
            &["extrapolate", "--mode", "vector-valued", "--seed", "9"],
            d.path(),
        );
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = fs::read_to_string(dir1.path().join("extrapolate.json")).unwrap();
    let b = fs::read_to_string(dir2.path().join("extrapolate.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn malformed_config_yields_line_diagnostic_and_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, "{\n  \"grid\": {\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_parex"))
        .args(["constants", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "diagnostic should name a line: {err}");
}

#[test]
fn gap_violation_in_config_is_refused_at_load() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg: serde_json::Value =
        serde_json::from_str(include_str!("../configs/default16.json")).unwrap();
    cfg["extrapolate"]["targets"] = serde_json::json!([[2.0, 4.0]]);
    let path = dir.path().join("bad-gap.json");
    fs::write(&path, serde_json::to_string_pretty(&cfg).unwrap()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_parex"))
        .args(["extrapolate", "--mode", "strong", "--config"])
        .arg(&path)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("off-diagonal"), "{err}");
}

#[test]
fn operator_dumps_use_documented_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = parex(&["operators", "--binary"], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let dump = dir.path().join("noise_fractional-maximal_fast.csv");
    let text = fs::read_to_string(&dump).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("order=row-major-time-slowest"));
    assert_eq!(lines.next().unwrap(), "x,t,value");
    // 16×16 grid: first data rows are t=0, x ascending.
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!((first[0], first[1]), ("0", "0"));
    let second: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!((second[0], second[1]), ("1", "0"));
    // Binary dump has 16·16 f64 values plus a sidecar.
    let bin = fs::read(dir.path().join("noise_fractional-maximal_fast.f64")).unwrap();
    assert_eq!(bin.len(), 16 * 16 * 8);
    let meta: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("noise_fractional-maximal_fast.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(meta["order"], "row-major-time-slowest");
}

#[test]
fn verify_subcommand_is_green_on_default_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = parex(&["verify", "--threads", "2"], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("PASS verify/lattice"));
    assert!(stdout.contains("PASS verify/domination"));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(summary["all_pass"], true);
    // The suite is the broad net the README promises.
    let total: usize = summary["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["checks"].as_array().unwrap().len())
        .sum();
    assert!(total >= 200, "expected hundreds of checks, got {total}");
}

#[test]
fn every_characterize_kind_runs_from_the_bundled_config() {
    for kind in [
        "integral-bracket",
        "campanato-fractional",
        "maximal-bracket",
        "even-order-maximal",
    ] {
        let dir = tempfile::tempdir().unwrap();
        let out = parex(&["characterize", "--kind", kind], dir.path());
        assert!(
            out.status.success(),
            "kind {kind}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(dir.path().join("characterize.json").exists());
    }
}

#[test]
fn every_extrapolate_mode_runs_from_the_bundled_config() {
    for mode in [
        "strong",
        "weak",
        "vector-valued",
        "a-infinity",
        "at-infinity",
    ] {
        let dir = tempfile::tempdir().unwrap();
        let out = parex(&["extrapolate", "--mode", mode], dir.path());
        assert!(
            out.status.success(),
            "mode {mode}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(dir.path().join("extrapolate.csv").exists());
    }
}

#[test]
fn readme_coverage_table_matches_the_registry() {
    let readme = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md"))
        .expect("workspace README");
    let entries = parex_core::checks::coverage_entries();
    for (capability, command) in entries {
        assert!(
            readme.contains(capability),
            "README coverage table misses capability: {capability}"
        );
        assert!(
            readme.contains(command),
            "README coverage table misses command: {command}"
        );
    }
    // Capabilities are unique.
    let mut caps: Vec<&str> = entries.iter().map(|(c, _)| *c).collect();
    caps.sort_unstable();
    caps.dedup();
    assert_eq!(caps.len(), entries.len());
    // Every verify area named in the registry is reachable via the verify
    // command referenced in the table.
    for (area, _) in parex_core::checks::registered_checks() {
        assert!(
            entries
                .iter()
                .any(|(_, cmd)| cmd.contains(area) || cmd.contains("verify")),
            "area {area} unreachable in the coverage table"
        );
    }
}
