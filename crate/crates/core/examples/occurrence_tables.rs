//! Random-restart occurrence tables for the built-in examples.
//!
//!     cargo run --release --example occurrence_tables -- [trials] [seed]

use zeig::builtin::BuiltinExample;
use zeig::multistart::DEFAULT_CLUSTER_TOL;
use zeig::{multistart, SolveOptions};

fn main() -> zeig::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5000);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let opts = SolveOptions {
        rng_seed: seed,
        ..Default::default()
    };

    for ex in BuiltinExample::ALL {
        let a = ex.tensor();
        let rep = multistart(&a, trials, &opts, DEFAULT_CLUSTER_TOL)?;
        println!("{ex} ({trials} trials, {} failed)", rep.failures);
        println!(
            "  {:<8} {:>10} {:>8} {:>8} {:>10}  x",
            "pair", "occurrence", "a_sign", "a_iter", "a_err"
        );
        for c in &rep.clusters {
            let p = &c.representative;
            let name = ex
                .identify(&p.x, p.lambda)
                .map_or("?".into(), |i| format!("x({})", i + 1));
            println!(
                "  {:<8} {:>10} {:>8.3} {:>8.2} {:>10.2e}  {:?}",
                name,
                c.occurrences,
                c.avg_sign,
                c.avg_iter,
                c.avg_err,
                p.x.as_slice()
            );
        }
    }
    Ok(())
}
