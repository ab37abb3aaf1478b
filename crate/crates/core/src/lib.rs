//! # zeig
//!
//! Nonnegative Z-eigenpairs of nonnegative tensors.
//!
//! For an order-`m`, dimension-`n` tensor `A`, a Z-eigenpair `(x, lambda)`
//! satisfies `A x^{m-1} = lambda x` with `|x| = 1`. This crate works with
//! the 1-norm normalization (`x >= 0`, `sum(x) = 1`) and solves for such
//! pairs with a modified Newton iteration (MNI): each step is one shifted
//! linear solve `(lambda_k I - (m-1) T(x_k)) w = x_k`, a sign clip that keeps
//! the iterate positive, and a renormalization.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`tensor`] | [`DenseTensor`], contraction, `T(x)`, Rayleigh bounds, structure checks, text I/O |
//! | [`newton`] | one Newton step, plus a full bordered-system step for cross-checks |
//! | [`mni`] | the iteration driver, traces, rate classification |
//! | [`multistart`] | random restarts and eigenpair clustering |
//! | [`sshopm`] | SS-HOPM baseline |
//! | [`pagerank`] | multilinear PageRank tensors and matrix-set files |
//! | [`builtin`] | small tensors with known eigenpairs |
//!
//! ```
//! use zeig::{builtin::BuiltinExample, run_mni, ProbVector, SolveOptions};
//!
//! let a = BuiltinExample::Ex5.tensor();
//! let report = run_mni(&a, &ProbVector::uniform(3), &SolveOptions::default()).unwrap();
//! assert!(report.converged);
//! assert!((report.eigenpair.lambda - 1.0).abs() < 1e-12);
//! ```

pub mod builtin;
pub mod error;
pub mod linalg;
pub mod mni;
pub mod multistart;
pub mod newton;
pub mod pagerank;
pub mod sshopm;
pub mod tensor;

pub use error::{Result, ZeigError};
pub use mni::{
    estimate_rate, run_mni, Eigenpair, LambdaPolicy, Rate, SolveOptions, SolveReport, Termination,
};
pub use multistart::{cluster_eigenpairs, multistart, MultiStartReport};
pub use pagerank::{load_matrix_set, pagerank_tensor, StochasticMatrixSet};
pub use sshopm::{ss_hopm, NormMode, SSHopmOptions};
pub use tensor::{z1_to_z2, DenseTensor, JacMatrix, ProbVector};
