use std::path::PathBuf;
use std::process::{Command, Output};

fn queig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_queig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("queig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn h2_solve_exits_zero_with_a_converged_row() {
    let o = queig(&["solve", "--hamiltonian", "h2", "--lambda0", "-0.8837"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("trial,initial_state,overlap_p,fidelity_F,measured_eigenvalue,queries")
    );
    let fidelities: Vec<f64> = lines.map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(fidelities.len(), 11);
    assert!(fidelities.iter().any(|&f| f >= 0.99));
}

#[test]
fn empty_window_exits_three() {
    let o = queig(&["solve", "--lambda0", "1e6", "--max-epsilon-doublings", "0", "--mode", "ideal"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_config_exits_one_with_line_number() {
    let path = scratch("bad.toml");
    std::fs::write(&path, "lambda0 = -0.8837\nepsilon = = 0.1\n").unwrap();
    let o = queig(&["solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn usage_errors_exit_one_and_bad_values_exit_two() {
    assert_eq!(queig(&["solve", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(queig(&["reproduce", "--table", "4"]).status.code(), Some(1));
    assert_eq!(queig(&["solve", "--delta", "1.5"]).status.code(), Some(2));
    assert_eq!(queig(&["probcheck", "--shots", "10"]).status.code(), Some(2));
    assert_eq!(queig(&["solve", "--hamiltonian", "/nonexistent/h.txt"]).status.code(), Some(2));
}

#[test]
fn hamiltonian_file_next_to_config() {
    let ham = scratch("diag.txt");
    std::fs::write(&ham, "# two qubits\n0.5 ZI\n-0.25 IZ\n").unwrap();
    let cfg = scratch("diag.toml");
    std::fs::write(&cfg, "hamiltonian = \"diag.txt\"\nlambda0 = -0.75\nepsilon = 0.1\ntrials = 4\nmode = \"ideal\"\n").unwrap();
    let o = queig(&["solve", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn dumped_config_reproduces_the_run() {
    let dump = scratch("effective.toml");
    let first = queig(&[
        "solve",
        "--lambda0",
        "-0.85",
        "--epsilon",
        "0.05",
        "--strategy",
        "random",
        "--seed",
        "17",
        "--mode",
        "ideal",
        "--dump-config",
        dump.to_str().unwrap(),
    ]);
    let second = queig(&["solve", dump.to_str().unwrap()]);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(stdout(&first), stdout(&second));
    assert!(!stdout(&first).is_empty());
}

#[test]
fn reproduce_table_three() {
    let o = queig(&["reproduce", "--table", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 16 + 11);
    let halves: Vec<&Vec<&str>> = rows
        .iter()
        .filter(|r| r[1].starts_with('x') && (r[2].parse::<f64>().unwrap() - 0.5).abs() <= 1e-3)
        .collect();
    assert_eq!(halves.len(), 2);
    for r in halves {
        assert!(r[3].parse::<f64>().unwrap() >= 0.97);
    }
    // Same seed, same bytes.
    assert_eq!(stdout(&queig(&["reproduce", "--table", "3"])), text);
}

#[test]
fn probcheck_small_dimension() {
    let o = queig(&["probcheck", "--dim", "2", "--m", "1", "--shots", "20000", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let empirical: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("empirical "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((empirical - 0.5).abs() < 0.02);
}

#[test]
fn bench_emits_both_methods() {
    let o = queig(&["bench-type2", "--n-min", "2", "--n-max", "4", "--repetitions", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,method,mean_oracle_calls"));
    assert_eq!(text.lines().filter(|l| l.contains(",query,")).count(), 3);
    assert_eq!(text.lines().filter(|l| l.contains(",qpe_sampling,")).count(), 3);
    assert_eq!(queig(&["bench-type2", "--n-max", "11"]).status.code(), Some(2));
}
