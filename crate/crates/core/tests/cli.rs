//! End-to-end runs of the `zeig` binary.

use std::path::Path;
use std::process::{Command, Output};

fn zeig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeig"))
        .args(args)
        .env("ZEIG_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn demo() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data/demo6_flat.txt")
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_ex5_reports_the_uniform_eigenvector() {
    let o = zeig(&["solve", "--builtin", "ex5", "--x0", "random", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("converged: true"), "{s}");
    assert!(s.contains("lambda: 1.000000000000000"), "{s}");
    assert!(
        s.contains("x: [0.333333333333333, 0.333333333333333, 0.333333333333333]"),
        "{s}"
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    let d = demo();
    let cases: [&[&str]; 4] = [
        &["solve", "--builtin", "ex1", "--x0", "random", "--seed", "7"],
        &[
            "multistart",
            "--builtin",
            "ex2",
            "--trials",
            "200",
            "--seed",
            "4",
        ],
        &[
            "multistart",
            "--builtin",
            "ex4",
            "--solver",
            "sshopm",
            "--alpha",
            "1",
            "--trials",
            "20",
        ],
        &["alpha-sweep", "--pagerank", &d],
    ];
    for args in cases {
        let a = zeig(args);
        let b = zeig(args);
        assert!(
            a.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn multistart_with_a_single_trial() {
    let o = zeig(&["multistart", "--builtin", "ex5", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let rows: Vec<&str> = s
        .lines()
        .filter(|l| l.starts_with("1 ") || l.starts_with("2 "))
        .collect();
    assert_eq!(rows.len(), 1, "{s}");
    assert!(rows[0].split_whitespace().nth(3) == Some("1"), "{s}");
}

#[test]
fn sshopm_multistart_has_a_row_pinned_at_max_iter() {
    let o = zeig(&[
        "multistart",
        "--builtin",
        "ex4",
        "--solver",
        "sshopm",
        "--alpha",
        "1",
        "--trials",
        "40",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.lines()
            .any(|l| l.contains("stalled") && l.contains("10000.00")),
        "{s}"
    );
}

#[test]
fn trace_and_table_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    let table = dir.path().join("tab.csv");
    let o = zeig(&[
        "solve",
        "--builtin",
        "ex4",
        "--x0",
        "random",
        "--seed",
        "2",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("k,lambda_lo,lambda_hi,lambda,residual,intervened,err_to_final")
    );
    assert!(lines.count() >= 2);

    let o = zeig(&[
        "multistart",
        "--builtin",
        "ex1",
        "--trials",
        "50",
        "--table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&table).unwrap();
    assert!(text.starts_with("row,status,match,occurrence,a_sign,a_iter,a_err,lambda,x1,x2"));
    assert_eq!(text.lines().count(), 4);

    let sweep = dir.path().join("sweep.csv");
    let o = zeig(&[
        "alpha-sweep",
        "--pagerank",
        &demo(),
        "--alphas",
        "0.1,0.9",
        "--table",
        sweep.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&sweep).unwrap().lines().count(), 3);
}

#[test]
fn pagerank_solve_uses_alpha() {
    let d = demo();
    let o = zeig(&["solve", "--pagerank", &d, "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pagerank"));
    let o = zeig(&["solve", "--pagerank", &d]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_input_errors_exit_one() {
    let d = demo();
    let bad: [&[&str]; 9] = [
        &["solve"],
        &["solve", "--builtin", "ex9"],
        &["solve", "--builtin", "ex1", "--tensor", "x.txt"],
        &["solve", "--tensor", "/nonexistent/tensor.txt"],
        &["solve", "--builtin", "ex1", "--tol", "0"],
        &[
            "solve",
            "--builtin",
            "ex1",
            "--solver",
            "sshopm",
            "--alpha",
            "1",
            "--shift",
            "2",
        ],
        &["multistart", "--builtin", "ex1", "--trials", "0"],
        &["alpha-sweep", "--pagerank", &d, "--alphas="],
        &["alpha-sweep", "--pagerank", &d, "--alphas", "0.5,1.5"],
    ];
    for args in bad {
        let o = zeig(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stdout(&o));
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn non_convergence_exits_two() {
    let o = zeig(&[
        "solve",
        "--builtin",
        "ex3",
        "--x0",
        "random",
        "--seed",
        "1",
        "--max-iter",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("converged: false"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(zeig(&["--help"]).status.code(), Some(0));
    assert_eq!(zeig(&["solve", "--help"]).status.code(), Some(0));
}

#[test]
fn tensor_file_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, "# uniform order-3 tensor\n3 2\ncoo\n1 1 1 0.5\n2 1 1 0.5\n1 1 2 0.5\n2 1 2 0.5\n1 2 1 0.5\n2 2 1 0.5\n1 2 2 0.5\n2 2 2 0.5\n").unwrap();
    let o = zeig(&["solve", "--tensor", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x: [0.500000000000000, 0.500000000000000]"));
}
