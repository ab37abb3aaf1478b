//! The modified Newton iteration (MNI) driver and its iteration trace.

use std::io::Write;
use std::time::{Duration, Instant};

use crate::error::{Result, ZeigError};
use crate::newton::{newton_step, StepInput};
use crate::tensor::{
    bounds_from_image, residual_from_image, DenseTensor, ProbVector, DEFAULT_ZERO_TOL,
};

/// How the shift `lambda_k` is picked from `[lambda_lo, lambda_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LambdaPolicy {
    #[default]
    UpperBound,
    Midpoint,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Stop once `|A x^{m-1} - lambda_hi x|_1 < tol`.
    pub tol: f64,
    pub max_iter: usize,
    /// Components below this are ignored by the Rayleigh bounds.
    pub zero_tol: f64,
    pub rng_seed: u64,
    pub lambda_policy: LambdaPolicy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_iter: 10_000,
            zero_tol: DEFAULT_ZERO_TOL,
            rng_seed: 0,
            lambda_policy: LambdaPolicy::UpperBound,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(ZeigError::InvalidArgument(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter < 1 {
            return Err(ZeigError::InvalidArgument(
                "max_iter must be at least 1".into(),
            ));
        }
        if self.zero_tol.is_nan() || self.zero_tol < 0.0 {
            return Err(ZeigError::InvalidArgument(
                "zero_tol must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// A unit 1-norm eigenpair candidate; the residual is always recomputed
/// from the tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub x: ProbVector,
    pub lambda: f64,
    pub residual: f64,
}

impl Eigenpair {
    pub fn new(a: &DenseTensor, x: ProbVector, lambda: f64) -> Result<Self> {
        let residual = a.residual(&x, lambda)?;
        Ok(Self {
            x,
            lambda,
            residual,
        })
    }
}

/// One row of a solver trace. The last row of a trace records the
/// terminating iterate; no step is taken from it.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub k: usize,
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    /// Shift used for the step from this iterate.
    pub lambda: f64,
    /// `|A x_k^{m-1} - lambda_hi x_k|_1`.
    pub residual: f64,
    pub intervened: bool,
    pub singular_retries: usize,
    pub x: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    Converged,
    MaxIterations,
    /// No admissible shift produced a usable step.
    Degenerate(String),
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub converged: bool,
    pub termination: Termination,
    /// Final iterate with `lambda = lambda_hi` there.
    pub eigenpair: Eigenpair,
    pub iterations: usize,
    pub sign_interventions: usize,
    pub trace: Vec<TraceRecord>,
    pub wall_time: Duration,
}

impl SolveReport {
    /// `|x_k - x_final|_1` for every row of the trace.
    pub fn errors_to_final(&self) -> Vec<f64> {
        let last = &self.trace.last().expect("trace is never empty").x;
        self.trace
            .iter()
            .map(|r| r.x.iter().zip(last).map(|(a, b)| (a - b).abs()).sum())
            .collect()
    }

    /// Writes the trace as CSV with header
    /// `k,lambda_lo,lambda_hi,lambda,residual,intervened,err_to_final`.
    pub fn write_trace_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "k",
            "lambda_lo",
            "lambda_hi",
            "lambda",
            "residual",
            "intervened",
            "err_to_final",
        ])?;
        for (r, err) in self.trace.iter().zip(self.errors_to_final()) {
            w.write_record([
                r.k.to_string(),
                format!("{:.17e}", r.lambda_lo),
                format!("{:.17e}", r.lambda_hi),
                format!("{:.17e}", r.lambda),
                format!("{:.17e}", r.residual),
                u8::from(r.intervened).to_string(),
                format!("{:.17e}", err),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Number of evenly spaced fallback shifts tried below `lambda_hi` when a
/// shift is (nearly) singular or yields a degenerate step.
const SHIFT_SUBDIVISIONS: usize = 16;

/// Relative perturbation of `lambda_hi` tried after the schedule is exhausted.
const LAST_RESORT_PERTURBATION: f64 = 1e-8;

fn shift_candidates(lo: f64, hi: f64, policy: LambdaPolicy) -> Vec<f64> {
    let first = match policy {
        LambdaPolicy::UpperBound => hi,
        LambdaPolicy::Midpoint => 0.5 * (lo + hi),
        LambdaPolicy::LowerBound => lo,
    };
    let gap = hi - lo;
    let mut out = Vec::with_capacity(SHIFT_SUBDIVISIONS + 1);
    out.push(first);
    for j in 1..SHIFT_SUBDIVISIONS {
        out.push(hi - j as f64 * gap / SHIFT_SUBDIVISIONS as f64);
    }
    out.push(hi * (1.0 - LAST_RESORT_PERTURBATION));
    out
}

fn check_start(x0: &ProbVector, n: usize) -> Result<()> {
    if x0.len() != n {
        return Err(ZeigError::DimensionMismatch {
            expected: n,
            got: x0.len(),
        });
    }
    if !x0.is_positive() {
        return Err(ZeigError::InvalidArgument(
            "initial vector must be strictly positive".into(),
        ));
    }
    Ok(())
}

/// Runs the modified Newton iteration from `x0`.
///
/// Each iteration forms the Rayleigh bounds at `x_k`, stops if the residual
/// at `lambda_hi` is below `tol`, and otherwise takes one
/// [`newton_step`](crate::newton::newton_step) with the shift picked by
/// `opts.lambda_policy`, falling back through lower shifts in the bracket
/// when the shifted matrix is nearly singular.
///
/// Non-convergence is reported in the returned [`SolveReport`], not as an
/// error; errors are reserved for invalid arguments.
pub fn run_mni(a: &DenseTensor, x0: &ProbVector, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    check_start(x0, a.dim())?;
    let start = Instant::now();

    let mut x = x0.clone();
    let mut trace = Vec::new();
    let mut sign_interventions = 0;
    let mut k = 0;

    let termination = loop {
        let ax = a.apply(&x)?;
        let (lo, hi) = bounds_from_image(&ax, &x, opts.zero_tol)?;
        let residual = residual_from_image(&ax, &x, hi);
        let mut record = TraceRecord {
            k,
            lambda_lo: lo,
            lambda_hi: hi,
            lambda: hi,
            residual,
            intervened: false,
            singular_retries: 0,
            x: x.as_slice().to_vec(),
        };
        if residual < opts.tol {
            trace.push(record);
            break Termination::Converged;
        }
        if k == opts.max_iter {
            trace.push(record);
            break Termination::MaxIterations;
        }

        let mut accepted = None;
        let mut last_failure = String::new();
        for (retry, lambda) in shift_candidates(lo, hi, opts.lambda_policy)
            .into_iter()
            .enumerate()
        {
            match newton_step(StepInput {
                tensor: a,
                x: &x,
                lambda,
            }) {
                Ok(out) if !out.singular_shift => {
                    accepted = Some((retry, lambda, out));
                    break;
                }
                Ok(_) => last_failure = format!("shift {lambda:e} is nearly singular"),
                Err(ZeigError::DegenerateStep(msg)) => last_failure = msg,
                Err(e) => return Err(e),
            }
        }
        let Some((retries, lambda, out)) = accepted else {
            record.singular_retries = SHIFT_SUBDIVISIONS + 1;
            trace.push(record);
            break Termination::Degenerate(last_failure);
        };
        record.lambda = lambda;
        record.intervened = out.intervened;
        record.singular_retries = retries;
        trace.push(record);
        sign_interventions += usize::from(out.intervened);
        x = out.x_next;
        k += 1;
    };

    let last = trace.last().expect("at least one record");
    let lambda = last.lambda_hi;
    let eigenpair = if lambda.is_finite() {
        Eigenpair::new(a, x, lambda)?
    } else {
        Eigenpair {
            x,
            lambda: f64::NAN,
            residual: f64::NAN,
        }
    };
    Ok(SolveReport {
        converged: termination == Termination::Converged,
        termination,
        eigenpair,
        iterations: k,
        sign_interventions,
        trace,
        wall_time: start.elapsed(),
    })
}

/// Observed convergence rate of a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    /// Carries the fitted order of convergence.
    Quadratic(f64),
    /// Carries the fitted contraction ratio.
    Linear(f64),
    Undetermined,
}

/// Errors at or below this level are treated as rounding noise.
const RATE_NOISE_FLOOR: f64 = 1e-14;

/// Classifies the convergence rate of a converged trace from the tail of
/// `e_k = |x_k - x_final|_1`. Traces with fewer than five iterations are
/// [`Rate::Undetermined`].
pub fn estimate_rate(report: &SolveReport) -> Rate {
    if !report.converged || report.iterations < 5 {
        return Rate::Undetermined;
    }
    let mut errors = report.errors_to_final();
    // the final iterate is the reference point
    errors.pop();
    classify_errors(&errors)
}

/// Classifies a decreasing error sequence.
///
/// Uses the errors above the noise floor and needs at least four. With `p_k = ln(e_{k+1}/e_k) /
/// ln(e_k/e_{k-1})` over the last three usable triples, the sequence is
/// quadratic when the median `p_k` is at least 1.5 and linear when it lies
/// in `[0.75, 1.33]` with every ratio `e_{k+1}/e_k` in `(0, 1)`.
pub fn classify_errors(errors: &[f64]) -> Rate {
    let usable: Vec<f64> = errors
        .iter()
        .copied()
        .take_while(|&e| e > RATE_NOISE_FLOOR)
        .collect();
    if usable.len() < 4 {
        return Rate::Undetermined;
    }
    let ratios: Vec<f64> = usable.windows(2).map(|w| w[1] / w[0]).collect();
    let orders: Vec<f64> = ratios.windows(2).map(|r| r[1].ln() / r[0].ln()).collect();
    let tail = 3.min(orders.len());
    let p = median(&orders[orders.len() - tail..]);
    let tail_ratios = &ratios[ratios.len() - tail - 1..];
    if p >= 1.5 {
        Rate::Quadratic(p)
    } else if (0.75..=1.33).contains(&p) && tail_ratios.iter().all(|&r| r > 0.0 && r < 1.0) {
        Rate::Linear(median(tail_ratios))
    } else {
        Rate::Undetermined
    }
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}
