use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn herbst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_herbst"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Scalars from the `# key = value` lines.
fn scalar(csv: &str, key: &str) -> String {
    let prefix = format!("# {key} = ");
    csv.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no scalar {key}"))
        .to_string()
}

/// Data rows below the header, split on commas.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn kernel_default_has_100_finite_rows() {
    let o = herbst(&["kernel"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(scalar(&out, "mu"), "0.0000000000000000e0");
    let r = rows(&out);
    assert_eq!(r.len(), 100);
    for row in r {
        let g: f64 = row[1].parse().unwrap();
        let b: f64 = row[2].parse().unwrap();
        assert!(g.is_finite() && g > 0.0 && b >= g);
    }
}

#[test]
fn kernel_rows_respect_bound_below_threshold() {
    let o = herbst(&["kernel", "--energy", "-0.1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(scalar(&out, "all_within_bound"), "true");
    for row in rows(&out) {
        let g: f64 = row[1].parse().unwrap();
        let b: f64 = row[2].parse().unwrap();
        assert!(b.is_finite() && g <= b);
    }
}

#[test]
fn kernel_rejects_mu_at_mass() {
    let o = herbst(&["kernel", "--mu", "1.0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu must lie in [0, m)"));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(herbst(&["--bogus"]).status.code(), Some(1));
    assert_eq!(
        herbst(&["kernel", "--energy", "-0.1", "--mu", "0.2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        herbst(&["spectrum", "--format", "xml"]).status.code(),
        Some(1)
    );
    assert_eq!(
        herbst(&["spectrum", "--grid-n", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(herbst(&["--help"]).status.code(), Some(0));
}

#[test]
fn zero_potential_has_no_threshold() {
    let o = herbst(&["spectrum", "--depth", "0", "--grid-n", "20"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(scalar(&out, "mu0"), "0.0000000000000000e0");
    assert_eq!(scalar(&out, "lambda0"), "undefined");
    assert_eq!(scalar(&out, "threshold_defined"), "false");
    assert_eq!(
        herbst(&["threshold", "--depth", "0", "--grid-n", "20"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn doubling_depth_halves_threshold() {
    let l = |d: &str| -> f64 {
        let o = herbst(&[
            "spectrum", "--depth", d, "--grid-n", "60", "--format", "json",
        ]);
        json(&o)["data"]["lambda0"].as_f64().unwrap()
    };
    let (l1, l2) = (l("1"), l("2"));
    assert!((l2 / (l1 / 2.0) - 1.0).abs() < 1e-10, "{l1} {l2}");
}

#[test]
fn default_spectrum_certificate() {
    let o = herbst(&["spectrum", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert!(v["data"]["certificate_delta"].as_f64().unwrap() < 1e-4);
    assert_eq!(v["meta"]["config"]["grid_n"], 200);
    assert_eq!(v["data"]["rows"].as_array().unwrap().len(), 200);
}

#[test]
fn output_is_deterministic() {
    let a = herbst(&["spectrum", "--grid-n", "40"]);
    let b = herbst(&["spectrum", "--grid-n", "40"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "depth = 2.0\ngrid_n = 40\nformat = \"json\"\n").unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&herbst(&["spectrum", "--config", c]));
    assert_eq!(v["meta"]["config"]["depth"], 2.0);
    let v = json(&herbst(&["spectrum", "--config", c, "--depth", "3"]));
    assert_eq!(v["meta"]["config"]["depth"], 3.0);
    assert_eq!(v["meta"]["config"]["grid_n"], 40);
}

#[test]
fn bad_config_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "depth = 1.0\nmass = \"heavy\"\n").unwrap();
    let o = herbst(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
    std::fs::write(&cfg, "depht = 1.0\n").unwrap();
    assert_eq!(
        herbst(&["spectrum", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

fn write_bump_table(path: &Path) {
    let mut s = String::from("# r V\n");
    for i in 0..=200 {
        let x: f64 = i as f64 / 200.0;
        let v = if x < 1.0 {
            -(1.0 - 1.0 / (1.0 - x * x)).exp()
        } else {
            0.0
        };
        s.push_str(&format!("{x} {v}\n"));
    }
    std::fs::write(path, s).unwrap();
}

#[test]
fn table_potential_from_config_relative_path() {
    let dir = tempfile::tempdir().unwrap();
    write_bump_table(&dir.path().join("bump.dat"));
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "potential = \"table:bump.dat\"\ngrid_n = 60\nformat = \"json\"\n",
    )
    .unwrap();
    let tab = json(&herbst(&["spectrum", "--config", cfg.to_str().unwrap()]));
    let ana = json(&herbst(&["spectrum", "--grid-n", "60", "--format", "json"]));
    let (a, b) = (
        tab["data"]["mu0"].as_f64().unwrap(),
        ana["data"]["mu0"].as_f64().unwrap(),
    );
    assert!((a / b - 1.0).abs() < 1e-4, "{a} vs {b}");
    assert_eq!(
        herbst(&["spectrum", "--potential", "table:/no/such/file"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.csv");
    let o = herbst(&["kernel", "--mu", "0.5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.contains("r,green_function,envelope_bound"));
}

#[test]
fn threshold_branches() {
    let o = herbst(&["threshold", "--grid-n", "80"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(scalar(&out, "branch"), "a_nonzero");
    let a: f64 = scalar(&out, "a").parse().unwrap();
    assert!(a < 0.0);
    let r = rows(&out);
    assert_eq!(r.len(), 20);
    assert!(r.iter().all(|row| row[1].parse::<f64>().unwrap() < 0.0));

    let o = herbst(&["threshold", "--a-zero", "--grid-n", "80"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(scalar(&out, "branch"), "a_zero");
    assert!(scalar(&out, "b").parse::<f64>().unwrap() < 0.0);
}

#[test]
fn threshold_brute_force_column_agrees_near_threshold() {
    let o = herbst(&[
        "threshold",
        "--grid-n",
        "60",
        "--brute-force",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    let first = &v["data"]["rows"][0];
    let (e, eb) = (
        first["energy"].as_f64().unwrap(),
        first["energy_bruteforce"].as_f64().unwrap(),
    );
    assert!((e / eb - 1.0).abs() < 1e-2, "{e} vs {eb}");
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = herbst(&["verify", "appendix_c", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["data"]["passed"], true);
    let root = v["data"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "h3_root")
        .unwrap();
    assert!((root["value"].as_f64().unwrap() - 0.7451315).abs() < 1e-6);
    assert_eq!(herbst(&["verify", "nope"]).status.code(), Some(1));
}

#[test]
fn bound_holds() {
    let o = herbst(&["bound"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(scalar(&out, "holds"), "true");
    assert_eq!(rows(&out).len(), 120);
    assert_eq!(herbst(&["bound", "--mu", "0"]).status.code(), Some(1));
}

#[test]
fn coarse_grid_fails_verification_with_exit_3() {
    let o = herbst(&[
        "verify",
        "continuation",
        "--grid-n",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(3));
    // the report is still written
    assert_eq!(json(&o)["data"]["passed"], false);
}
