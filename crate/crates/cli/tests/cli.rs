use std::process::{Command, Output};

use funk_finsler::curvature::{flag_curvature_origin, flag_curvature_tangential};
use serde_json::Value;

fn funkfin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_funkfin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn num(v: &Value) -> f64 {
    v.to_string().parse().unwrap()
}

#[test]
fn eval_at_origin_is_coth_one() {
    let o = funkfin(&["eval", "--metric", "klein-funk", "--x", "0,0", "--xi", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((num(&v["F"]) - 1.0 / 1.0_f64.tanh()).abs() < 1e-14);
    assert_eq!(num(&v["beta"]), 0.0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["metric", "x", "xi", "F", "alpha", "beta"]);
}

#[test]
fn eval_of_zero_vector_is_zero() {
    let o = funkfin(&["eval", "--x", "0,0", "--xi", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(num(&json(&o)["F"]), 0.0);
}

#[test]
fn eval_outside_domain_exits_2() {
    let o = funkfin(&["eval", "--metric", "klein-funk", "--x", "0.9,0", "--xi", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside the domain"));
}

#[test]
fn numbers_have_fifteen_significant_digits() {
    let o = funkfin(&["eval", "--x", "0.1,-0.2", "--xi", "1,0.5"]);
    let text = stdout(&o);
    let f = text.split("\"F\":").nth(1).unwrap().split(',').next().unwrap();
    let digits = f.chars().filter(char::is_ascii_digit).collect::<String>();
    assert_eq!(digits.trim_start_matches('0').len(), 15, "{f}");
}

#[test]
fn negative_coordinates_parse() {
    let o = funkfin(&["eval", "--x", "-0.3,-0.1", "--xi", "-1,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn distance_recovers_log_ratio() {
    let y = 0.5_f64.tanh().to_string();
    let o = funkfin(&["distance", "--x", "0,0", "--y", &format!("{y},0"), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let exact = (1.0_f64.sinh() / 0.5_f64.sinh()).ln();
    assert!((num(&v["distance"]) - exact).abs() < 1e-12);
    assert!(num(&v["difference"]) <= 1e-6);
}

#[test]
fn distance_to_self_is_zero() {
    for metric in [
        "klein-funk",
        "klein",
        "poincare-funk",
        "poincare",
        "disc-funk:2",
        "euclidean",
    ] {
        let o = funkfin(&["distance", "--metric", metric, "--x", "0.1,0.1", "--y", "0.1,0.1"]);
        assert_eq!(o.status.code(), Some(0), "{metric}");
        assert_eq!(num(&json(&o)["distance"]), 0.0, "{metric}");
    }
}

#[test]
fn verify_agrees_in_curved_charts() {
    for (metric, x, y) in [
        ("poincare-funk", "-0.2,0.1", "0.3,0.25"),
        ("upper-funk", "0.5,2.4", "-0.6,3.5"),
        ("upper-half", "0,1", "3,0.5"),
    ] {
        let o = funkfin(&["distance", "--metric", metric, "--x", x, "--y", y, "--verify"]);
        assert_eq!(o.status.code(), Some(0), "{metric}");
        assert!(num(&json(&o)["difference"]) <= 1e-6, "{metric}");
    }
}

fn summary(text: &str) -> (String, f64) {
    let line = text.lines().last().unwrap();
    assert!(line.starts_with("# "), "{line}");
    let field = |key: &str| {
        line[2..]
            .split(',')
            .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
            .unwrap()
            .to_owned()
    };
    (
        field("terminated_reason"),
        field("collinearity_residual").parse().unwrap(),
    )
}

#[test]
fn radial_geodesic_is_straight() {
    let o = funkfin(&["geodesic", "--x0", "0.1,0.1", "--v0", "1,1", "--t-end", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "t,x1,x2,v1,v2,F");
    let (_, residual) = summary(&text);
    assert!(residual <= 1e-9);
}

#[test]
fn generic_geodesic_is_straight_and_leaves_domain() {
    let o = funkfin(&[
        "geodesic", "--x0", "0.2,-0.3", "--v0", "-0.4,1", "--t-end", "50", "--margin", "1e-3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (reason, residual) = summary(&stdout(&o));
    assert_eq!(reason, "left_domain");
    assert!(residual <= 1e-6);
}

#[test]
fn poincare_geodesic_straightens_in_klein_chart() {
    let o = funkfin(&[
        "geodesic",
        "--metric",
        "poincare-funk",
        "--x0",
        "0.1,0.2",
        "--v0",
        "1,0.3",
        "--t-end",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(summary(&stdout(&o)).1 <= 1e-6);
}

fn grid_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x1,x2,S,Ric,K");
    lines.map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn grid_marks_exterior_cells_as_null() {
    let o = funkfin(&["curvature-grid", "--grid=-0.9:0.9:3,-0.9:0.9:3", "--xi", "radial"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = grid_rows(&stdout(&o));
    assert_eq!(rows.len(), 9);
    for row in &rows {
        let x: f64 = row[0].parse().unwrap();
        let y: f64 = row[1].parse().unwrap();
        if x == 0.0 && y == 0.0 {
            let k: f64 = row[4].parse().unwrap();
            assert!((k - flag_curvature_origin()).abs() < 1e-12);
        } else {
            assert!(row[2..].iter().all(String::is_empty), "{row:?}");
        }
    }
    assert!(!stdout(&o).contains("NaN"));
}

#[test]
fn tangential_grid_reproduces_circle_profile() {
    // nodes (±0.3, 0) and (0, ±0.3) lie on |x| = 0.3
    let o = funkfin(&["curvature-grid", "--grid=-0.3:0.3:3,-0.3:0.3:3", "--xi", "tangential"]);
    let expected = flag_curvature_tangential(0.3);
    let ks: Vec<f64> = grid_rows(&stdout(&o))
        .iter()
        .filter(|r| {
            let (x, y): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
            ((x * x + y * y).sqrt() - 0.3).abs() < 1e-12
        })
        .map(|r| r[4].parse().unwrap())
        .collect();
    assert_eq!(ks.len(), 4);
    for k in ks {
        assert!((k - expected).abs() <= 1e-9);
    }
}

#[test]
fn numeric_grid_matches_closed_grid() {
    let args = ["curvature-grid", "--grid=-0.4:0.4:3,-0.2:0.2:2", "--xi", "fixed:1,0.5"];
    let closed = grid_rows(&stdout(&funkfin(&args)));
    let numeric = grid_rows(&stdout(&funkfin(&[&args[..], &["--numeric"]].concat())));
    for (c, n) in closed.iter().zip(&numeric) {
        let (s, k): (f64, f64) = (c[2].parse().unwrap(), c[4].parse().unwrap());
        let (sn, kn): (f64, f64) = (n[2].parse().unwrap(), n[4].parse().unwrap());
        assert!((s - sn).abs() <= 1e-4 * s.abs().max(1.0));
        assert!((k - kn).abs() <= 1e-3 * k.abs());
    }
}

#[test]
fn grid_is_deterministic() {
    let args = [
        "curvature-grid",
        "--metric",
        "poincare-funk",
        "--grid=-0.4:0.4:5,-0.4:0.4:4",
        "--xi",
        "radial",
    ];
    assert_eq!(funkfin(&args).stdout, funkfin(&args).stdout);
}

#[test]
fn check_pullbacks_passes() {
    let o = funkfin(&["check", "pullbacks", "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.ends_with("PASS")));
}

#[test]
fn check_typo_ledger_is_diagnostic() {
    let o = funkfin(&["check", "typo-ledger", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("wind_norm_sq") && text.contains("upper_funk"));
}

#[test]
fn check_is_reproducible_with_seed() {
    let a = funkfin(&["check", "zermelo", "--seed", "7", "--samples", "100"]);
    let b = funkfin(&["check", "zermelo", "--seed", "7", "--samples", "100"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_suite_exits_2() {
    assert_eq!(funkfin(&["check", "everything"]).status.code(), Some(2));
}

#[test]
fn unknown_metric_exits_2() {
    assert_eq!(
        funkfin(&["eval", "--metric", "hilbert", "--x", "0,0", "--xi", "1,0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn out_writes_file_and_nothing_to_stdout() {
    let dir = std::env::temp_dir().join(format!("funkfin-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eval.json");
    let o = funkfin(&["eval", "--x", "0,0", "--xi", "1,0", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["metric"], "klein-funk");
    std::fs::remove_dir_all(&dir).unwrap();
}
