//! MNI and SS-HOPM from the same random starts on `ex4`.
//!
//!     cargo run --release --example sshopm_contrast -- [trials]

use zeig::builtin::BuiltinExample;
use zeig::multistart::initial_vector;
use zeig::{run_mni, ss_hopm, SSHopmOptions, SolveOptions};

fn main() -> zeig::Result<()> {
    let trials: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let a = BuiltinExample::Ex4.tensor();
    // [mni iterations, sshopm iterations, sshopm failures, runs] per eigenpair
    let mut stats = [[0.0f64; 4]; 2];
    let mut worst = 0.0f64;

    for t in 0..trials {
        let x0 = initial_vector(1, t, 2);
        let m = run_mni(&a, &x0, &SolveOptions::default())?;
        let s = ss_hopm(&a, &x0, &SSHopmOptions::default())?;
        let which = usize::from(s.eigenpair.x[0] < 0.4);
        let row = &mut stats[which];
        row[0] += m.iterations as f64;
        row[1] += s.iterations as f64;
        row[2] += f64::from(u8::from(!s.converged));
        row[3] += 1.0;
        if !s.converged {
            worst = worst.max(s.eigenpair.residual);
        }
    }
    for (name, row) in ["[0.6, 0.4]", "[0.2, 0.8]"].iter().zip(&stats) {
        let n = row[3].max(1.0);
        println!(
            "SS-HOPM near {name}: {} runs, {} unconverged; mean iterations SS-HOPM {:.1}, MNI {:.1}",
            row[3], row[2], row[1] / n, row[0] / n
        );
    }
    println!("largest final SS-HOPM residual among stalled runs: {worst:.2e}");
    Ok(())
}
