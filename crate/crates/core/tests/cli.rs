use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy-points")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, idx: usize) -> Vec<f64> {
    csv.lines().skip(1).map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn points_w2_symmetric() {
    let o = run(&["points", "--weight", "w2", "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("index,a"));
    let a = column(&s, 1);
    assert_eq!(a.len(), 9);
    for i in 0..9 {
        assert!((a[i] + a[8 - i]).abs() < 1e-12);
    }
}

#[test]
fn points_w6_asymmetric() {
    let o = run(&["points", "--weight", "w6", "--n", "101"]);
    assert_eq!(o.status.code(), Some(0));
    let a = column(&stdout(&o), 1);
    assert_eq!(a.len(), 101);
    assert!((a[0] + a[100]).abs() > 1.0);
}

#[test]
fn unknown_weight_is_usage_error() {
    let o = run(&["points", "--weight", "nope", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("w1, w2, w3, w4, w5, w6, w7"), "{err}");
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["points", "--weight", "w1", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn errors_table_decreases_and_respects_certificate() {
    let o = run(&["errors", "--weight", "w1", "--n-list", "9,17,33"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("n,err_I,err_II,certificate"));
    let (e1, cert) = (column(&s, 1), column(&s, 3));
    assert!(e1.windows(2).all(|p| p[1] < p[0]));
    assert!(e1.iter().zip(&cert).all(|(e, c)| e <= c));
}

#[test]
fn weight_itself_is_exact_for_formula_two() {
    let o = run(&["errors", "--weight", "w3", "--function", "weight-itself", "--n-list", "9,17"]);
    let e2 = column(&stdout(&o), 2);
    assert!(e2.iter().all(|&e| e < 1e-14));
}

#[test]
fn compare_sinc() {
    let o = run(&["compare-sinc", "--weight", "w5", "--n-list", "3,33"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("n,err_I,err_II,err_sinc"));
    assert_eq!(s.lines().count(), 3);
    let (e1, es) = (column(&s, 1), column(&s, 3));
    assert!(e1[1] < es[1]);
    let bad = run(&["compare-sinc", "--weight", "w5", "--function", "f4", "--n", "9"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(run(&["compare-sinc", "--weight", "w1", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn diag_reports() {
    let o = run(&["diag", "--weight", "w2", "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let get = |k: &str| -> f64 {
        s.lines()
            .find_map(|l| l.strip_prefix(&format!("{k},")))
            .unwrap_or_else(|| panic!("missing {k}"))
            .parse()
            .unwrap()
    };
    assert_eq!(get("lower_bound_pass"), 1.0);
    assert!(get("h_sep") > 0.0);
    let d = std::f64::consts::FRAC_PI_4 - 1e-10;
    let expected = -(std::f64::consts::PI / (4.0 * d)).tanh().ln();
    assert!((get("c_d") - expected).abs() < 1e-15);
    assert!(String::from_utf8_lossy(&o.stderr).contains("pass"));
}

#[test]
fn approx_and_bound_commands() {
    let o = run(&["approx", "--weight", "w2", "--n", "17", "--form", "II", "--grid-count", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("x,f,approx,abs_error"));
    assert_eq!(s.lines().count(), 12);
    assert_eq!(column(&s, 0)[0], -10.0);
    let b = run(&["bound", "--weight", "w4", "--n", "9", "--x1", "-5", "--xlast", "5", "--grid-count", "21"]);
    let s = stdout(&b);
    let (u, bound) = (column(&s, 1), column(&s, 2));
    assert!(u.iter().zip(&bound).all(|(u, b)| *u >= b - 1e-8));
}

#[test]
fn deterministic_output_and_config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# experiment\nweight = w3\nn = 7\nepsilon = 1e-10\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = run(&["points", "--config", cfg]);
    let b = run(&["points", "--config", cfg]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(column(&stdout(&a), 1).len(), 7);
    let c = run(&["points", "--config", cfg, "--n", "5"]);
    assert_eq!(column(&stdout(&c), 1).len(), 5);

    let out = dir.path().join("p.csv");
    let d = run(&["points", "--config", cfg, "--out", out.to_str().unwrap()]);
    assert!(d.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);

    std::fs::write(dir.path().join("bad.cfg"), "colour = red\n").unwrap();
    let e = run(&["points", "--config", dir.path().join("bad.cfg").to_str().unwrap()]);
    assert_eq!(e.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_three_with_trace() {
    // The first full Newton step for this pair overshoots and swaps the points.
    let o = run(&["points", "--weight", "w1", "--n", "2", "--pure-newton"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("ordering"), "{err}");
    assert!(err.contains("iteration,energy,step_inf_norm,damping\n1,NaN,"), "{err}");
    assert!(o.stdout.is_empty());
    assert_eq!(run(&["points", "--weight", "w1", "--n", "2"]).status.code(), Some(0));
}
