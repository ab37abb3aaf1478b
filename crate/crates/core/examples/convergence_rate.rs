//! Linear versus quadratic convergence on `ex4`: one run per eigenpair, with
//! the error-to-final sequence printed and the traces written as CSV.
//!
//!     cargo run --example convergence_rate -- [output-dir]

use std::fs::File;
use std::path::PathBuf;

use zeig::builtin::BuiltinExample;
use zeig::multistart::initial_vector;
use zeig::{estimate_rate, run_mni, SolveOptions};

fn main() -> zeig::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let a = BuiltinExample::Ex4.tensor();
    let targets = [[0.6, 0.4], [0.2, 0.8]];
    let mut found = [false; 2];

    for trial in 0.. {
        let x0 = initial_vector(3, trial, 2);
        let r = run_mni(&a, &x0, &SolveOptions::default())?;
        let Some(which) = targets
            .iter()
            .position(|t| r.eigenpair.x.l1_distance(t) < 1e-4)
        else {
            continue;
        };
        if found[which] || r.iterations < 5 {
            continue;
        }
        found[which] = true;
        let path = dir.join(format!("ex4_trace_{}.csv", which + 1));
        r.write_trace_csv(File::create(&path)?)?;
        println!("x -> {:?}: {:?}", targets[which], estimate_rate(&r));
        for (k, e) in r.errors_to_final().iter().enumerate() {
            println!("  k = {k:>2}  |x_k - x_final|_1 = {e:.3e}");
        }
        println!("  trace written to {}", path.display());
        if found.iter().all(|&f| f) {
            break;
        }
    }
    Ok(())
}
