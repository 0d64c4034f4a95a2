use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pq-elliptic")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn value_column(line: &str) -> f64 {
    line.split(',').nth(5).unwrap().parse().unwrap()
}

#[test]
fn eval_classical_k() {
    let out = run(&["eval", "K", "2", "2", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = value_column(stdout(&out).trim());
    assert!((v - 1.685_750_354_812_596).abs() < 1e-14);
}

#[test]
fn eval_methods_agree() {
    let values: Vec<f64> = ["quad", "series", "lambda"]
        .iter()
        .map(|m| value_column(stdout(&run(&["--method", m, "eval", "E", "1.5", "2.25", "0.6"])).trim()))
        .collect();
    for v in &values[1..] {
        assert!((v - values[0]).abs() < 1e-12 * values[0]);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "K", "1.5", "2.25", "1"]).status.code(), Some(4));
    assert_eq!(run(&["eval", "K", "2", "2", "1.5"]).status.code(), Some(3));
    assert_eq!(run(&["--method", "agm", "eval", "K", "3", "2", "0.5"]).status.code(), Some(3));
    assert_eq!(run(&["eval", "X", "2", "2", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["table", "K", "2", "2", "0.5:0.1:0.1"]).status.code(), Some(2));
}

#[test]
fn divergent_row_is_marked() {
    let out = run(&["eval", "K", "1.5", "2.25", "1"]);
    assert!(stdout(&out).trim().ends_with("none,DIVERGES,DIVERGES"));
    assert!(!out.stderr.is_empty());
}

#[test]
fn e_at_one_is_one() {
    let out = run(&["eval", "E", "3", "1.25", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(value_column(stdout(&out).trim()), 1.0);
}

#[test]
fn table_shape_and_monotonicity() {
    let out = run(&["table", "K", "2", "2", "0:0.9:0.1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "function,p,q,r,method,value,error_estimate");
    assert_eq!(lines.len(), 11);
    assert!((value_column(lines[1]) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);

    let text = stdout(&run(&["table", "E", "1.5", "2.25", "0:0.99:0.01"]));
    let col: Vec<f64> = text.lines().skip(1).map(value_column).collect();
    assert_eq!(col.len(), 100);
    assert!(col.windows(2).all(|w| w[1] < w[0]));

    let text = stdout(&run(&["table", "K", "1.5", "2.25", "0:0.99:0.01"]));
    let col: Vec<f64> = text.lines().skip(1).map(value_column).collect();
    assert!((col[0] - 1.9937).abs() < 5e-5);
    assert!(col.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn figure_csv() {
    let out = run(&["figure"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let comments: Vec<&str> = text.lines().filter(|l| l.starts_with('#')).collect();
    assert!(comments[0].contains("1.99371"));
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 1000);
    assert_eq!(rows[0][1], rows[0][2]);
    assert_eq!(rows[0][3], rows[0][4]);
    assert!(rows.windows(2).all(|w| w[1][3] > w[0][3]));
    let last = &rows[999];
    assert!((last[0] - 0.999).abs() < 1e-15);
    assert!(last[2] > 1.0 && last[4] > 1.0 && last[2] < 1.1 && last[4] < 1.1);
    assert!(!text.contains('\r'));
}

#[test]
fn verify_reports_errata_and_passes() {
    let out = run(&["verify", "derivatives"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let errata = text.split("== ERRATA ==").nth(1).expect("errata section");
    assert!(errata.contains("(2, 2, 0.5)"));

    let out = run(&["verify", "turan", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.contains("turan-p-K") && l.contains("sign-reversed")));
    assert!(text.lines().any(|l| l.contains("turan-q-K") && l.contains(",holds,")));
}

#[test]
fn verify_grid_overrides() {
    let out = run(&["verify", "r-convexity", "--grid-p", "2:3:1", "--grid-q", "2:2:1", "--grid-r", "0.2:0.8:0.2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[holds] r-K-increasing"));
}

#[test]
fn sequential_flag_gives_identical_output() {
    let a = run(&["verify", "trig"]);
    let b = run(&["--sequential", "verify", "trig"]);
    assert_eq!(a.stdout, b.stdout);
}
