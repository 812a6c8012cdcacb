//! Golden invocations of the `nkdet` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn nkdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nkdet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

const BM_FIXED: [&str; 6] = ["--sigma", "1", "--beta", "0.99", "--k", "0.3"];

#[test]
fn analyze_gali_example() {
    let o = nkdet(&["analyze", "gali", "--beta", "0.99", "--sigma", "0.5", "--eta", "1.2", "--k", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("x^3 - 2.7775x^2 + 1.9612x - 0.3712"), "{s}");
    assert!(s.contains("oracle roots: 0.3107, 0.6620, 1.8048"), "{s}");
    assert!(s.contains("verdict: Determinate"));
    assert!(s.contains("agreement: Agree"));
}

#[test]
fn analyze_noninertial_example() {
    let o = nkdet(&["analyze", "bm-noninertial", "--phi-x", "2.4", "--phi-pi", "3.2", "--sigma", "1", "--beta", "0.99", "--k", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stdout(&o).contains("verdict: Determinate"));
}

#[test]
fn analyze_invalid_beta() {
    let o = nkdet(&["analyze", "gali", "--beta", "1.2", "--sigma", "0.5", "--eta", "1.2", "--k", "0.3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("beta"));
}

#[test]
fn analyze_inertial_hypothesis_not_met_exits_three() {
    let o = nkdet(&["analyze", "bm-inertial", "--phi-x", "0", "--phi-pi", "0.1", "--phi-r", "2", "--sigma", "1", "--beta", "0.99", "--k", "0.3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("HypothesisNotMet"));
}

#[test]
fn analyze_boundary_exits_three() {
    let mut args = vec!["analyze", "bm-noninertial", "--phi-x", "0", "--phi-pi", "1"];
    args.extend(BM_FIXED);
    let o = nkdet(&args);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("verdict: Boundary"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("nkdet.conf");
    std::fs::write(&cfg, "# test settings\nsamples = 0\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = nkdet(&["verify", "--families", "gali", "--config", c]);
    assert_eq!(o.status.code(), Some(1));
    let o = nkdet(&["verify", "--families", "gali", "--config", c, "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    let o = nkdet(&["verify", "--config", c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown key"));
}

#[test]
fn verify_usage_and_tallies() {
    let o = nkdet(&["verify", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nkdet(&["verify", "--families", "gali", "--samples", "10000", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let line = s.lines().find(|l| l.starts_with("gali")).unwrap();
    let cols: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(cols[1..4], ["10000", "0", "0"]);
    let o = nkdet(&["verify", "--families", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_blp_necessity() {
    let o = nkdet(&["verify", "--families", "blp", "--samples", "1000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn sweep_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("map.csv");
    let mut args = vec![
        "sweep", "bm-noninertial", "--axis", "phi-pi=0.8:1.2:0.1", "--axis", "phi-x=0:0.1:0.05",
        "--output", out.to_str().unwrap(),
    ];
    args.extend(BM_FIXED);
    let o = nkdet(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let got = std::fs::read(&out).unwrap();
    let want = std::fs::read(golden("bm_noninertial_small.csv")).unwrap();
    assert_eq!(got, want);
}

#[test]
fn full_noninertial_sweep() {
    let mut args = vec!["sweep", "bm-noninertial", "--axis", "phi-pi=0:3:0.1", "--axis", "phi-x=0:3:0.1"];
    args.extend(BM_FIXED);
    let o = nkdet(&args);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(
        lines.next(),
        Some("phi_pi,phi_x,verdict,inside,outside,boundary,condition")
    );
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 31 * 31);
    let (k, beta) = (0.3, 0.99);
    for r in &rows {
        let (pi, x): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        if pi == 0.0 && x == 0.0 {
            assert_eq!(r[2], "invalid");
            continue;
        }
        // boundary rows only appear on the two critical lines
        let taylor = k * (pi - 1.0) + x * (1.0 - beta);
        if r[6] == "disjunct (i)" {
            assert_eq!(r[2], "determinate");
        }
        if r[2] == "boundary" {
            // P(-1) of x^3 - b x^2 + c x + d, the polynomial of B^-1
            let b = 1.0 + 1.0 / beta + k / beta;
            let c = 1.0 / beta - x;
            let d = (x + k * pi) / beta;
            let p_minus_one = -1.0 - b - c + d;
            assert!(taylor.abs() < 1e-6 || p_minus_one.abs() < 1e-6, "{r:?}");
        }
        if taylor > 1e-6 && x < 1.0 {
            assert_eq!(r[2], "determinate", "{r:?}");
        }
        // below the line determinacy needs the other strict disjunct
        if taylor < -1e-6 && r[2] == "determinate" {
            assert_eq!(r[6], "disjunct (iii)", "{r:?}");
        }
    }
    let spot = rows
        .iter()
        .find(|r| r[0] == "1.5" && r[1] == "0.5")
        .unwrap();
    assert_eq!(spot[2], "determinate");
}

#[test]
fn single_point_sweep_has_one_row() {
    let mut args = vec!["sweep", "bm-noninertial", "--axis", "phi-pi=1.5:1.5:0.1", "--phi-x", "0.5"];
    args.extend(BM_FIXED);
    let o = nkdet(&args);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 2);
    assert!(s.starts_with("phi_pi,verdict,inside,outside,boundary,condition\n"));
}

#[test]
fn sweep_spec_errors() {
    let o = nkdet(&["sweep", "bm-noninertial", "--axis", "phi-pi=0:1:0.5", "--sigma", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not assigned"));
    let mut args = vec!["sweep", "bm-noninertial", "--axis", "phi-pi=0:1:0.5", "--phi-pi", "1", "--phi-x", "1"];
    args.extend(BM_FIXED);
    let o = nkdet(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("both fixed and swept"));
    let o = nkdet(&["sweep", "gali", "--axis", "k=1:0:0.5", "--beta", "0.9", "--sigma", "1", "--eta", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let args = ["analyze", "blp", "--beta", "0.99", "--eta", "0.5", "--gamma", "0.2", "--rho-r", "0.5", "--k", "0.3", "--varphi", "1", "--phi-y", "0.25", "--phi-pi", "1.5"];
    let a = nkdet(&args);
    let b = nkdet(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("necessary only"));
}
