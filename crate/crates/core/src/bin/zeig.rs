//! Command-line front end: single solves, multistart occurrence tables and
//! PageRank alpha sweeps.
//!
//! Exit status is 0 on success, 1 on usage or input errors and 2 when a
//! solve does not converge.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zeig::builtin::BuiltinExample;
use zeig::multistart::{initial_vector, multistart_with, ClusterSummary, DEFAULT_CLUSTER_TOL};
use zeig::tensor::read_tensor;
use zeig::{
    load_matrix_set, pagerank_tensor, run_mni, ss_hopm, DenseTensor, MultiStartReport, ProbVector,
    Result, SSHopmOptions, SolveOptions, SolveReport, ZeigError,
};

const DEFAULT_ALPHAS: [f64; 10] = [0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999, 0.9999, 0.99999, 1.0];

#[derive(Parser)]
#[command(
    name = "zeig",
    version,
    about = "Nonnegative Z-eigenpairs of nonnegative tensors"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve once from a single starting vector.
    Solve(SolveArgs),
    /// Solve from many random starts and print an occurrence table.
    Multistart(MultistartArgs),
    /// Solve a PageRank tensor for a list of alpha values.
    AlphaSweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Mni,
    Sshopm,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartKind {
    Uniform,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Teleport {
    Uniform,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in example (ex1..ex5).
    #[arg(long)]
    builtin: Option<BuiltinExample>,
    /// Tensor file (dense or coo text format).
    #[arg(long)]
    tensor: Option<PathBuf>,
    /// Matrix-set file for a PageRank tensor.
    #[arg(long)]
    pagerank: Option<PathBuf>,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "mni")]
    solver: Solver,
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// PageRank alpha with --pagerank; otherwise the SS-HOPM shift.
    #[arg(long)]
    alpha: Option<f64>,
    /// SS-HOPM shift.
    #[arg(long)]
    shift: Option<f64>,
    /// Teleportation vector for --pagerank.
    #[arg(long, value_enum, default_value = "uniform")]
    v: Teleport,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value = "uniform")]
    x0: StartKind,
    /// Write the iteration trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct MultistartArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value_t = 5000)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
    cluster_tol: f64,
    /// Write the table as CSV.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Matrix-set file.
    #[arg(long)]
    pagerank: PathBuf,
    /// Comma-separated alpha values.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    alphas: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "uniform")]
    v: Teleport,
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Write the table as CSV.
    #[arg(long)]
    table: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> ZeigError {
    ZeigError::InvalidArgument(msg.into())
}

fn fmt_vec(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| format!("{v:.15}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Builds the tensor and, for the SS-HOPM solver, its shift.
fn load(source: &Source, s: &SolverArgs) -> Result<(DenseTensor, String, f64)> {
    let pagerank_alpha = s.alpha.filter(|_| source.pagerank.is_some());
    let shift = match (source.pagerank.is_some(), s.alpha, s.shift) {
        (false, Some(_), Some(_)) => {
            return Err(usage(
                "give the SS-HOPM shift as --alpha or --shift, not both",
            ))
        }
        (false, Some(a), None) | (_, _, Some(a)) => a,
        _ => 1.0,
    };
    if !shift.is_finite() {
        return Err(usage("shift must be finite"));
    }
    let (a, label) = if let Some(b) = source.builtin {
        (b.tensor(), format!("builtin {b}"))
    } else if let Some(p) = &source.tensor {
        (read_tensor(p)?, format!("tensor {}", p.display()))
    } else {
        let p = source.pagerank.as_ref().expect("one source");
        let alpha = pagerank_alpha.ok_or_else(|| usage("--pagerank needs --alpha"))?;
        let set = load_matrix_set(p)?;
        let v = ProbVector::uniform(set.dim());
        (
            pagerank_tensor(&set, alpha, &v)?,
            format!("pagerank {} alpha {alpha}", p.display()),
        )
    };
    Ok((a, label, shift))
}

fn solve_from(a: &DenseTensor, x0: &ProbVector, s: &SolverArgs, shift: f64) -> Result<SolveReport> {
    match s.solver {
        Solver::Mni => run_mni(a, x0, &mni_options(s)),
        Solver::Sshopm => ss_hopm(
            a,
            x0,
            &SSHopmOptions {
                alpha: shift,
                tol: s.tol,
                max_iter: s.max_iter,
                rng_seed: s.seed,
                ..Default::default()
            },
        ),
    }
}

fn mni_options(s: &SolverArgs) -> SolveOptions {
    SolveOptions {
        tol: s.tol,
        max_iter: s.max_iter,
        rng_seed: s.seed,
        ..Default::default()
    }
}

fn solver_name(s: Solver) -> &'static str {
    match s {
        Solver::Mni => "mni",
        Solver::Sshopm => "sshopm",
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut impl Write) -> Result<bool> {
    let (a, label, shift) = load(&args.source, &args.solver)?;
    mni_options(&args.solver).validate()?;
    let x0 = match args.x0 {
        StartKind::Uniform => ProbVector::uniform(a.dim()),
        StartKind::Random => initial_vector(args.solver.seed, 0, a.dim()),
    };
    let r = solve_from(&a, &x0, &args.solver, shift)?;
    if let Some(path) = &args.trace {
        r.write_trace_csv(File::create(path)?)?;
    }
    writeln!(out, "source: {label}")?;
    writeln!(out, "solver: {}", solver_name(args.solver.solver))?;
    writeln!(out, "converged: {}", r.converged)?;
    writeln!(out, "termination: {:?}", r.termination)?;
    writeln!(out, "iterations: {}", r.iterations)?;
    writeln!(out, "sign_interventions: {}", r.sign_interventions)?;
    writeln!(out, "lambda: {:.15}", r.eigenpair.lambda)?;
    writeln!(out, "residual: {:.6e}", r.eigenpair.residual)?;
    writeln!(out, "x: {}", fmt_vec(&r.eigenpair.x))?;
    Ok(r.converged)
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ZEIG_THREADS") {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            usage(format!(
                "ZEIG_THREADS must be a positive integer, got `{v}`"
            ))
        })?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| usage(e.to_string()))
}

fn cmd_multistart(args: &MultistartArgs, out: &mut impl Write) -> Result<bool> {
    if args.trials < 1 {
        return Err(usage("--trials must be at least 1"));
    }
    if args.cluster_tol.is_nan() || args.cluster_tol <= 0.0 {
        return Err(usage("--cluster-tol must be positive"));
    }
    let (a, label, shift) = load(&args.source, &args.solver)?;
    mni_options(&args.solver).validate()?;
    let report = thread_pool()?.install(|| {
        multistart_with(
            a.dim(),
            args.trials,
            args.solver.seed,
            args.cluster_tol,
            |x0| solve_from(&a, x0, &args.solver, shift),
        )
    })?;

    writeln!(
        out,
        "# {label}, solver {}, trials {}, seed {}",
        solver_name(args.solver.solver),
        args.trials,
        args.solver.seed
    )?;
    let rows = table_rows(&report, args.source.builtin);
    writeln!(
        out,
        "{:<4} {:<10} {:<6} {:>10} {:>8} {:>9} {:>10}  {:<17}  x",
        "row", "status", "match", "occurrence", "a_sign", "a_iter", "a_err", "lambda"
    )?;
    for (i, row) in rows.iter().enumerate() {
        let c = row.summary;
        writeln!(
            out,
            "{:<4} {:<10} {:<6} {:>10} {:>8.4} {:>9.2} {:>10.2e}  {:<17.15}  {}",
            i + 1,
            row.status,
            row.label,
            c.occurrences,
            c.avg_sign,
            c.avg_iter,
            c.avg_err,
            c.representative.lambda,
            fmt_vec(&c.representative.x)
        )?;
    }
    if let Some(path) = &args.table {
        let mut w = csv::Writer::from_path(path)?;
        let mut header: Vec<String> = [
            "row",
            "status",
            "match",
            "occurrence",
            "a_sign",
            "a_iter",
            "a_err",
            "lambda",
        ]
        .map(String::from)
        .to_vec();
        header.extend((1..=a.dim()).map(|i| format!("x{i}")));
        w.write_record(&header)?;
        for (i, row) in rows.iter().enumerate() {
            let c = row.summary;
            let mut rec = vec![
                (i + 1).to_string(),
                row.status.to_string(),
                row.label.clone(),
                c.occurrences.to_string(),
                format!("{:.6}", c.avg_sign),
                format!("{:.6}", c.avg_iter),
                format!("{:.6e}", c.avg_err),
                format!("{:.15}", c.representative.lambda),
            ];
            rec.extend(c.representative.x.iter().map(|v| format!("{v:.15}")));
            w.write_record(&rec)?;
        }
        w.flush()?;
    }
    Ok(true)
}

struct Row<'a> {
    status: &'static str,
    label: String,
    summary: &'a ClusterSummary,
}

fn table_rows(report: &MultiStartReport, builtin: Option<BuiltinExample>) -> Vec<Row<'_>> {
    let tag = |c: &ClusterSummary| match builtin {
        Some(b) => b
            .identify(&c.representative.x, c.representative.lambda)
            .map_or_else(|| "-".to_string(), |i| format!("x{}", i + 1)),
        None => "-".to_string(),
    };
    let conv = report.clusters.iter().map(|c| Row {
        status: "converged",
        label: tag(c),
        summary: c,
    });
    let stalled = report.stalled.iter().map(|c| Row {
        status: "stalled",
        label: "-".to_string(),
        summary: c,
    });
    conv.chain(stalled).collect()
}

fn cmd_sweep(args: &SweepArgs, out: &mut impl Write) -> Result<bool> {
    let alphas = match &args.alphas {
        None => DEFAULT_ALPHAS.to_vec(),
        Some(v) if v.is_empty() => return Err(usage("--alphas needs at least one value")),
        Some(v) => v.clone(),
    };
    if let Some(bad) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(usage(format!("alpha {bad} outside [0, 1]")));
    }
    let opts = SolveOptions {
        tol: args.tol,
        max_iter: args.max_iter,
        ..Default::default()
    };
    opts.validate()?;
    let set = load_matrix_set(&args.pagerank)?;
    let n = set.dim();
    let v = ProbVector::uniform(n);
    let x0 = ProbVector::uniform(n);

    let mut results = Vec::with_capacity(alphas.len());
    for &alpha in &alphas {
        let a = pagerank_tensor(&set, alpha, &v)?;
        results.push((alpha, run_mni(&a, &x0, &opts)?));
    }

    writeln!(out, "# pagerank {}, x0 uniform", args.pagerank.display())?;
    writeln!(
        out,
        "{:<8} {:>5} {:>6} {:>10} {:<9}  x",
        "alpha", "sign", "iter", "err", "converged"
    )?;
    for (alpha, r) in &results {
        writeln!(
            out,
            "{:<8} {:>5} {:>6} {:>10.2e} {:<9}  {}",
            alpha,
            r.sign_interventions,
            r.iterations,
            r.eigenpair.residual,
            r.converged,
            fmt_vec(&r.eigenpair.x)
        )?;
    }
    if let Some(path) = &args.table {
        let mut w = csv::Writer::from_path(path)?;
        let mut header: Vec<String> = ["alpha", "sign", "iter", "err", "converged", "lambda"]
            .map(String::from)
            .to_vec();
        header.extend((1..=n).map(|i| format!("x{i}")));
        w.write_record(&header)?;
        for (alpha, r) in &results {
            let mut rec = vec![
                alpha.to_string(),
                r.sign_interventions.to_string(),
                r.iterations.to_string(),
                format!("{:.6e}", r.eigenpair.residual),
                r.converged.to_string(),
                format!("{:.15}", r.eigenpair.lambda),
            ];
            rec.extend(r.eigenpair.x.iter().map(|v| format!("{v:.15}")));
            w.write_record(&rec)?;
        }
        w.flush()?;
    }
    Ok(results.iter().all(|(_, r)| r.converged))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let res = match &cli.cmd {
        Command::Solve(a) => cmd_solve(a, &mut out),
        Command::Multistart(a) => cmd_multistart(a, &mut out),
        Command::AlphaSweep(a) => cmd_sweep(a, &mut out),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("zeig: {e}");
            ExitCode::from(1)
        }
    }
}
