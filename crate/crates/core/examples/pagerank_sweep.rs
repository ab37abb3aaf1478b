//! Multilinear PageRank tensors over a range of alpha values.
//!
//!     cargo run --example pagerank_sweep -- [matrix-set-file]
//!
//! Without an argument the synthetic set in `data/demo6_flat.txt` is used.

use zeig::{load_matrix_set, pagerank_tensor, run_mni, ProbVector, SolveOptions};

fn main() -> zeig::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/demo6_flat.txt").into());
    let set = load_matrix_set(&path)?;
    let n = set.dim();
    let v = ProbVector::uniform(n);
    println!(
        "{:<8} {:>5} {:>5} {:>10}  x",
        "alpha", "sign", "iter", "err"
    );
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999, 0.9999, 0.99999, 1.0] {
        let a = pagerank_tensor(&set, alpha, &v)?;
        let r = run_mni(&a, &ProbVector::uniform(n), &SolveOptions::default())?;
        let x: Vec<String> = r.eigenpair.x.iter().map(|c| format!("{c:.6}")).collect();
        println!(
            "{alpha:<8} {:>5} {:>5} {:>10.2e}  [{}]",
            r.sign_interventions,
            r.iterations,
            r.eigenpair.residual,
            x.join(", ")
        );
    }
    Ok(())
}
