//! Solves every built-in example from the uniform start and names the
//! listed eigenpair it lands on.
//!
//!     cargo run --example builtin_eigenpairs

use zeig::builtin::BuiltinExample;
use zeig::{run_mni, z1_to_z2, ProbVector, SolveOptions};

fn main() -> zeig::Result<()> {
    let opts = SolveOptions::default();
    for ex in BuiltinExample::ALL {
        let a = ex.tensor();
        let r = run_mni(&a, &ProbVector::uniform(a.dim()), &opts)?;
        let p = &r.eigenpair;
        let label = ex
            .identify(&p.x, p.lambda)
            .map_or("unlisted".to_string(), |i| format!("listed pair {}", i + 1));
        println!(
            "{ex}: lambda = {:.15}, x = {:?}, {} iterations, residual {:.2e} ({label})",
            p.lambda,
            p.x.as_slice(),
            r.iterations,
            p.residual
        );
        let z2 = z1_to_z2(&p.x, p.lambda, a.order())?;
        println!("     2-norm scaling: lambda = {:.15}", z2.lambda);
    }
    Ok(())
}
