//! Builds a tensor, writes it in both text formats, reads it back, solves.
//!
//!     cargo run --example tensor_files

use zeig::tensor::{read_tensor, write_tensor, TensorFormat};
use zeig::{run_mni, DenseTensor, ProbVector, SolveOptions};

fn main() -> zeig::Result<()> {
    // order 3, dimension 3, entries 1 + i + j*k (0-based)
    let a = DenseTensor::from_fn(3, 3, |idx| 1.0 + (idx[0] + idx[1] * idx[2]) as f64)?;
    let dir = std::env::temp_dir();
    for (name, fmt) in [("dense", TensorFormat::Dense), ("coo", TensorFormat::Coo)] {
        let path = dir.join(format!("zeig_demo_{name}.txt"));
        write_tensor(&path, &a, fmt)?;
        let b = read_tensor(&path)?;
        assert_eq!(a.values(), b.values());
        println!("{name}: round trip ok ({})", path.display());
    }
    println!(
        "{}",
        a.to_text(TensorFormat::Coo)
            .lines()
            .take(6)
            .collect::<Vec<_>>()
            .join("\n")
    );
    let r = run_mni(&a, &ProbVector::uniform(3), &SolveOptions::default())?;
    println!(
        "lambda = {:.15}, x = {:?}, {} iterations",
        r.eigenpair.lambda,
        r.eigenpair.x.as_slice(),
        r.iterations
    );
    Ok(())
}
