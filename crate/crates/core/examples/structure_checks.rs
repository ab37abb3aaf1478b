//! Structural properties of the built-in tensors: transition-probability
//! form, weak irreducibility, reducibility, and irreducibility of `T(x)`.
//!
//!     cargo run --example structure_checks

use zeig::builtin::BuiltinExample;
use zeig::tensor::DEFAULT_STOCHASTIC_TOL;
use zeig::ProbVector;

fn main() -> zeig::Result<()> {
    for ex in BuiltinExample::ALL {
        let a = ex.tensor();
        let x = ProbVector::uniform(a.dim());
        let t = a.jacobian(&x)?;
        println!(
            "{ex}: order {}, dim {}, transition {}, weakly irreducible {}, reducible {}, T(e/n) irreducible {}",
            a.order(),
            a.dim(),
            a.is_transition_probability(DEFAULT_STOCHASTIC_TOL),
            a.is_weakly_irreducible(),
            a.is_reducible()?,
            t.is_irreducible()
        );
        let (lo, hi) = a.rayleigh_bounds(&x, 1e-13)?;
        println!("     Rayleigh bounds at e/n: [{lo:.6}, {hi:.6}]");
    }
    Ok(())
}
