//! Shifted symmetric higher-order power method (SS-HOPM), kept as a
//! baseline for the Newton solver.
//!
//! Iterates `x_{k+1} = y / |y|` with `y = A_s x_k^{m-1} + alpha x_k`, where
//! `A_s` is the semisymmetric form. Stopping uses the same residual test as
//! [`run_mni`](crate::mni::run_mni) and the trace has the same layout, so the
//! two solvers can be compared run for run.

use std::time::Instant;

use crate::error::{Result, ZeigError};
use crate::mni::{Eigenpair, SolveReport, Termination, TraceRecord};
use crate::tensor::{
    bounds_from_image, residual_from_image, DenseTensor, ProbVector, DEFAULT_ZERO_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormMode {
    #[default]
    OneNorm,
    TwoNorm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SSHopmOptions {
    /// Shift added to the power step.
    pub alpha: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub zero_tol: f64,
    pub rng_seed: u64,
    pub norm_mode: NormMode,
}

impl Default for SSHopmOptions {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            tol: 1e-13,
            max_iter: 10_000,
            zero_tol: DEFAULT_ZERO_TOL,
            rng_seed: 0,
            norm_mode: NormMode::OneNorm,
        }
    }
}

fn norm(v: &[f64], mode: NormMode) -> f64 {
    match mode {
        NormMode::OneNorm => v.iter().map(|a| a.abs()).sum(),
        NormMode::TwoNorm => v.iter().map(|a| a * a).sum::<f64>().sqrt(),
    }
}

/// Runs SS-HOPM from `x0`, rescaled to unit norm in `opts.norm_mode`.
///
/// The reported eigenpair is the final iterate rescaled to unit 1-norm, with
/// `lambda` the upper Rayleigh bound there.
pub fn ss_hopm(a: &DenseTensor, x0: &ProbVector, opts: &SSHopmOptions) -> Result<SolveReport> {
    if opts.max_iter < 1 || opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(ZeigError::InvalidArgument(
            "need tol > 0 and max_iter >= 1".into(),
        ));
    }
    if x0.len() != a.dim() {
        return Err(ZeigError::DimensionMismatch {
            expected: a.dim(),
            got: x0.len(),
        });
    }
    if !x0.is_positive() {
        return Err(ZeigError::InvalidArgument(
            "initial vector must be strictly positive".into(),
        ));
    }
    let start = Instant::now();
    let s = a.semisymmetric_form();
    let nx = norm(x0, opts.norm_mode);
    let mut x: Vec<f64> = x0.iter().map(|v| v / nx).collect();
    let mut trace = Vec::new();
    let mut k = 0;

    let termination = loop {
        let ax = s.apply(&x)?;
        let (lo, hi) = bounds_from_image(&ax, &x, opts.zero_tol)?;
        let residual = residual_from_image(&ax, &x, hi);
        trace.push(TraceRecord {
            k,
            lambda_lo: lo,
            lambda_hi: hi,
            lambda: hi,
            residual,
            intervened: false,
            singular_retries: 0,
            x: x.clone(),
        });
        if residual < opts.tol {
            break Termination::Converged;
        }
        if k == opts.max_iter {
            break Termination::MaxIterations;
        }
        let y: Vec<f64> = ax.iter().zip(&x).map(|(p, q)| p + opts.alpha * q).collect();
        let ny = norm(&y, opts.norm_mode);
        if ny.is_nan() || ny <= 0.0 || ny.is_infinite() {
            break Termination::Degenerate(format!("power step has norm {ny}"));
        }
        x = y.into_iter().map(|v| v / ny).collect();
        k += 1;
    };

    let x1 = ProbVector::normalize(x)?;
    let lambda = a
        .rayleigh_bounds(&x1, opts.zero_tol)
        .map(|b| b.1)
        .unwrap_or(f64::NAN);
    let eigenpair = Eigenpair::new(a, x1, lambda)?;
    Ok(SolveReport {
        converged: termination == Termination::Converged,
        termination,
        eigenpair,
        iterations: k,
        sign_interventions: 0,
        trace,
        wall_time: start.elapsed(),
    })
}
