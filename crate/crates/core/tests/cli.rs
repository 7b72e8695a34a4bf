//! End-to-end runs of the `dynamo-lab` binary.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dynamo-lab"));
    c.env_remove("DYNAMO_LAB_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_lists_all_eigenvalues() {
    let o = run(&["spectrum", "--ell", "5", "--alpha", "const:1.0", "--n", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,real,imag");
    assert_eq!(lines.len(), 25);
    let re: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(re.windows(2).all(|w| w[0] >= w[1]));
    assert!(!text.contains('\r'));
}

#[test]
fn shift_table_layout() {
    let o = run(&["shift", "--ell", "1..100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "ell,S_effective,S_solved,ell_times_S_minus_1");
    assert_eq!(lines.len(), 101);
    let row5: Vec<&str> = lines[5].split(',').collect();
    assert_eq!(row5[0], "5");
    assert_eq!(row5[1].parse::<f64>().unwrap(), 1.2);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["shift", "--ell", "1..300"];
    let one = bin().args(args).env("DYNAMO_LAB_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("DYNAMO_LAB_THREADS", "4").output().unwrap();
    let again = run(&args);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small system\nell = 2\nalpha = poly:1,0.5\nn = 3\n").unwrap();
    let o = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = run(&["spectrum", "--config", cfg.to_str().unwrap(), "--n", "5"]);
    assert_eq!(stdout(&o).lines().count(), 11);
}

#[test]
fn dat_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("basis.dat");
    let o = run(&["basis", "--ell", "0..2", "-n", "4", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# ell index tau rho");
    assert_eq!(lines.len(), 13);
    let row: Vec<f64> = lines[1].split(' ').map(|x| x.parse().unwrap()).collect();
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((row[2] - pi2 / 4.0).abs() < 1e-10 && (row[3] - pi2).abs() < 1e-10);
}

#[test]
fn tabulated_alpha_matches_constant() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("alpha.txt");
    std::fs::write(&table, "0.0 1.0\n0.5 1.0\n1.0 1.0\n").unwrap();
    let spec = format!("table:{}", table.display());
    let a = run(&["spectrum", "--ell", "3", "--n", "4", "--alpha", &spec]);
    let b = run(&["spectrum", "--ell", "3", "--n", "4", "--alpha", "const:1.0"]);
    let parse = |o: &Output| -> Vec<f64> {
        stdout(o)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    for (x, y) in parse(&a).iter().zip(parse(&b)) {
        assert!((x - y).abs() < 1e-9 * y.abs());
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["spectrum", "--alpha", "spline:1"]).status.code(), Some(2));
    assert_eq!(
        run(&["spectrum", "--alpha", "table:/nonexistent/alpha.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["shift", "--ell", "0..3"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--config", "/nonexistent.cfg"]).status.code(), Some(2));
    let o = bin().args(["shift"]).env("DYNAMO_LAB_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn validate_reports_per_criterion() {
    let o = run(&["validate", "--criterion", "1,2,6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.starts_with("[PASS] C")));
    // a criterion that does not hold turns the exit code to 1
    assert_eq!(run(&["validate", "--criterion", "9"]).status.code(), Some(1));
    assert_eq!(run(&["validate", "--criterion", "12"]).status.code(), Some(2));
}

#[test]
fn study_commands_run() {
    let o = run(&["expand", "--ell", "20", "--k", "4", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",1")));
    let o = run(&["osculate", "--cubic-u", "0.1", "--offset-d", "0.3", "-n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
    let o = run(&["feshbach", "--ell", "0", "--elimination", "poloidal"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["convergence", "--n-list", "4,8", "--mesh-list", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}
