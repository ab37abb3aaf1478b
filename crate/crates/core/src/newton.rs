//! A single modified Newton step.
//!
//! With `e^T x_k = 1`, block elimination of the bordered Newton system for
//! `A x^{m-1} = lambda x, e^T x = 1` reduces the step to one shifted solve
//!
//! ```text
//! (lambda_k I - (m-1) T(x_k)) w_hat = x_k
//! ```
//!
//! followed by `x_{k+1} ∝ (m-2) x_k + w / (e^T w)`, where `w` is `w_hat`
//! clipped to its dominant sign when `w_hat` has mixed signs. The full
//! bordered system is kept in [`newton_oracle_step`] for cross-checking.

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, ZeigError};
use crate::linalg::Lu;
use crate::tensor::{DenseTensor, JacMatrix, ProbVector};

/// Result of the shifted linear solve.
#[derive(Debug, Clone)]
pub struct ShiftedSolve {
    /// Solution `w_hat`; unspecified when `singular` is set.
    pub w: Vec<f64>,
    pub singular: bool,
    pub rcond: f64,
}

/// Solves `(sigma I - (order-1) T) w = x` by LU with partial pivoting.
///
/// Near-singularity is reported, not raised: see [`Lu::is_nearly_singular`].
pub fn solve_shifted(sigma: f64, t: &JacMatrix, x: &[f64], order: usize) -> Result<ShiftedSolve> {
    let n = t.dim();
    if x.len() != n {
        return Err(ZeigError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let scale = (order - 1) as f64;
    let mut m: Vec<f64> = t.data().iter().map(|v| -scale * v).collect();
    for i in 0..n {
        m[i * n + i] += sigma;
    }
    let lu = Lu::factor(n, &m);
    let rcond = lu.rcond();
    if lu.is_nearly_singular() {
        return Ok(ShiftedSolve {
            w: Vec::new(),
            singular: true,
            rcond,
        });
    }
    let w = lu.solve(x);
    let singular = w.iter().any(|v| !v.is_finite());
    Ok(ShiftedSolve { w, singular, rcond })
}

/// Clips a mixed-sign `w_hat` to its dominant sign.
///
/// With `s = max(w_hat) * min(w_hat) < 0`, keeps the nonnegative part when
/// `|max| > |min|` and the nonpositive part otherwise (ties go to the
/// nonpositive part). Returns the vector and whether clipping happened.
pub fn intervene_sign(w_hat: &[f64]) -> Result<(Vec<f64>, bool)> {
    if w_hat.iter().all(|&v| v == 0.0) {
        return Err(ZeigError::DegenerateStep(
            "shifted solve returned zero".into(),
        ));
    }
    let max = w_hat.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = w_hat.iter().copied().fold(f64::INFINITY, f64::min);
    if max * min >= 0.0 {
        return Ok((w_hat.to_vec(), false));
    }
    let w = if max.abs() > min.abs() {
        w_hat.iter().map(|&v| v.max(0.0)).collect()
    } else {
        w_hat.iter().map(|&v| v.min(0.0)).collect()
    };
    Ok((w, true))
}

/// `x_{k+1} = x~ / |x~|_1` with `x~ = (order-2) x_k + w / (e^T w)`.
pub fn update_x(x: &ProbVector, w: &[f64], order: usize) -> Result<ProbVector> {
    if w.len() != x.len() {
        return Err(ZeigError::DimensionMismatch {
            expected: x.len(),
            got: w.len(),
        });
    }
    let ew: f64 = w.iter().sum();
    if ew == 0.0 || !ew.is_finite() {
        return Err(ZeigError::DegenerateStep(format!("e^T w = {ew}")));
    }
    let c = (order - 2) as f64;
    let tilde: Vec<f64> = x.iter().zip(w).map(|(xi, wi)| c * xi + wi / ew).collect();
    if tilde.iter().any(|v| !v.is_finite()) {
        return Err(ZeigError::DegenerateStep(
            "updated vector is not finite".into(),
        ));
    }
    // uniform-signed w makes every component nonnegative up to rounding
    ProbVector::normalize(tilde.into_iter().map(|v| v.max(0.0)).collect())
        .map_err(|e| ZeigError::DegenerateStep(e.to_string()))
}

/// Inputs of one step.
#[derive(Debug, Clone, Copy)]
pub struct StepInput<'a> {
    pub tensor: &'a DenseTensor,
    pub x: &'a ProbVector,
    pub lambda: f64,
}

#[derive(Debug, Clone)]
pub struct StepOutput {
    /// Next iterate; equals the input iterate when `singular_shift` is set.
    pub x_next: ProbVector,
    pub w_hat: Vec<f64>,
    pub w: Vec<f64>,
    pub intervened: bool,
    pub singular_shift: bool,
}

/// One modified Newton step at shift `lambda`.
pub fn newton_step(input: StepInput<'_>) -> Result<StepOutput> {
    let StepInput { tensor, x, lambda } = input;
    let t = tensor.jacobian(x)?;
    let solve = solve_shifted(lambda, &t, x, tensor.order())?;
    if solve.singular {
        return Ok(StepOutput {
            x_next: x.clone(),
            w_hat: solve.w,
            w: Vec::new(),
            intervened: false,
            singular_shift: true,
        });
    }
    let (w, intervened) = intervene_sign(&solve.w)?;
    let x_next = update_x(x, &w, tensor.order())?;
    Ok(StepOutput {
        x_next,
        w_hat: solve.w,
        w,
        intervened,
        singular_shift: false,
    })
}

/// Plain Newton step on the full `(n+1) x (n+1)` bordered system
///
/// ```text
/// [ lambda I - (m-1) T(x)   x ] [ d     ]   [ lambda x - A x^{m-1} ]
/// [ e^T                     0 ] [ delta ] = [ e^T x - 1            ]
/// ```
///
/// returning `(x - d, lambda - delta)`. Solved independently of the block
/// elimination path; used to cross-check [`newton_step`].
pub fn newton_oracle_step(x: &[f64], lambda: f64, a: &DenseTensor) -> Result<(Vec<f64>, f64)> {
    let n = a.dim();
    let m = a.order() as f64;
    let t = a.jacobian(x)?;
    let ax = a.apply(x)?;

    let mut jac = DMatrix::<f64>::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            jac[(i, j)] = -(m - 1.0) * t.get(i, j);
        }
        jac[(i, i)] += lambda;
        jac[(i, n)] = x[i];
        jac[(n, i)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(n + 1);
    for i in 0..n {
        rhs[i] = lambda * x[i] - ax[i];
    }
    rhs[n] = x.iter().sum::<f64>() - 1.0;

    let sol = jac.lu().solve(&rhs).ok_or(ZeigError::OracleUnavailable)?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(ZeigError::OracleUnavailable);
    }
    let x_hat = (0..n).map(|i| x[i] - sol[i]).collect();
    Ok((x_hat, lambda - sol[n]))
}
