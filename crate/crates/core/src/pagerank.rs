//! Multilinear PageRank tensors built from column-stochastic matrices.
//!
//! Given column-stochastic `S_1, ..., S_n` and a teleportation vector `v`,
//! the order-3 tensor `A(alpha)[i, j, k] = alpha * S_k[i, j] + (1 - alpha) * v[i]`
//! is a transition probability tensor for every `alpha` in `[0, 1]`.
//!
//! Matrix sets are read from text files in one of two layouts, both allowing
//! `#` comment lines:
//!
//! ```text
//! n                        n flat
//! <n x n block S_1>        <n rows of n^2 values: [S_1 | S_2 | ... | S_n]>
//! ...
//! <n x n block S_n>
//! ```
//!
//! Columns are rescaled to sum to one on load.

use std::fs;
use std::path::Path;

use crate::error::{Result, ZeigError};
use crate::tensor::{DenseTensor, ProbVector};

/// Column-sum tolerance for an already stochastic matrix set.
pub const COLUMN_SUM_TOL: f64 = 1e-12;

/// `n` column-stochastic `n x n` matrices, each stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMatrixSet {
    n: usize,
    matrices: Vec<Vec<f64>>,
}

impl StochasticMatrixSet {
    /// Accepts matrices that are already column-stochastic.
    pub fn new(n: usize, matrices: Vec<Vec<f64>>) -> Result<Self> {
        check_shape(n, &matrices)?;
        for (b, s) in matrices.iter().enumerate() {
            check_nonneg_block(n, b, s)?;
            for j in 0..n {
                let sum: f64 = (0..n).map(|i| s[i * n + j]).sum();
                if (sum - 1.0).abs() > COLUMN_SUM_TOL {
                    return Err(ZeigError::InvalidArgument(format!(
                        "block {}, column {} sums to {sum}",
                        b + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { n, matrices })
    }

    /// Rescales every column of every block to sum to one. Zero columns and
    /// negative entries are rejected.
    pub fn from_raw(n: usize, mut matrices: Vec<Vec<f64>>) -> Result<Self> {
        check_shape(n, &matrices)?;
        for (b, s) in matrices.iter_mut().enumerate() {
            check_nonneg_block(n, b, s)?;
            for j in 0..n {
                let sum: f64 = (0..n).map(|i| s[i * n + j]).sum();
                if sum <= 0.0 {
                    return Err(ZeigError::ZeroColumn {
                        block: b + 1,
                        column: j + 1,
                    });
                }
                for i in 0..n {
                    s[i * n + j] /= sum;
                }
            }
        }
        Ok(Self { n, matrices })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major block `S_{k+1}`.
    pub fn matrix(&self, k: usize) -> &[f64] {
        &self.matrices[k]
    }

    pub fn matrices(&self) -> &[Vec<f64>] {
        &self.matrices
    }
}

fn check_shape(n: usize, matrices: &[Vec<f64>]) -> Result<()> {
    if n == 0 {
        return Err(ZeigError::InvalidArgument("empty matrix set".into()));
    }
    if matrices.len() != n {
        return Err(ZeigError::InvalidLength {
            expected: n,
            got: matrices.len(),
        });
    }
    for s in matrices {
        if s.len() != n * n {
            return Err(ZeigError::InvalidLength {
                expected: n * n,
                got: s.len(),
            });
        }
    }
    Ok(())
}

fn check_nonneg_block(n: usize, b: usize, s: &[f64]) -> Result<()> {
    for (k, &v) in s.iter().enumerate() {
        if !v.is_finite() || v < 0.0 {
            return Err(ZeigError::NegativeEntry {
                value: v,
                location: format!("block {}, row {}, column {}", b + 1, k / n + 1, k % n + 1),
            });
        }
    }
    Ok(())
}

/// `A(alpha)[i, j, k] = alpha * S_k[i, j] + (1 - alpha) * v[i]`.
pub fn pagerank_tensor(s: &StochasticMatrixSet, alpha: f64, v: &ProbVector) -> Result<DenseTensor> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(ZeigError::InvalidArgument(format!(
            "alpha = {alpha} outside [0, 1]"
        )));
    }
    let n = s.n;
    if v.len() != n {
        return Err(ZeigError::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    DenseTensor::from_fn(3, n, |idx| {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        alpha * s.matrices[k][i * n + j] + (1.0 - alpha) * v[i]
    })
}

/// Reads a matrix set file, normalizing columns.
pub fn load_matrix_set(path: impl AsRef<Path>) -> Result<StochasticMatrixSet> {
    parse_matrix_set(&fs::read_to_string(path)?)
}

pub fn parse_matrix_set(text: &str) -> Result<StochasticMatrixSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_err = |line: usize, msg: String| ZeigError::Parse { line, msg };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty file".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let n: usize = head
        .first()
        .and_then(|t| t.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| parse_err(hline, format!("bad header `{header}`")))?;
    let flat = match head.get(1..) {
        Some([]) => false,
        Some(["flat"]) => true,
        _ => return Err(parse_err(hline, format!("bad header `{header}`"))),
    };

    let (rows, width) = if flat { (n, n * n) } else { (n * n, n) };
    let mut raw = Vec::with_capacity(rows * width);
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != width {
            return Err(parse_err(
                ln,
                format!("expected {width} values, found {}", toks.len()),
            ));
        }
        let row = raw.len() / width;
        if row == rows {
            return Err(parse_err(ln, format!("more than {rows} rows")));
        }
        for (c, tok) in toks.iter().enumerate() {
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_err(ln, format!("bad value `{tok}`")))?;
            if !v.is_finite() || v < 0.0 {
                let location = if flat {
                    format!("row {}, column {}", row + 1, c + 1)
                } else {
                    format!(
                        "block {}, row {}, column {}",
                        row / n + 1,
                        row % n + 1,
                        c + 1
                    )
                };
                return Err(ZeigError::NegativeEntry { value: v, location });
            }
            raw.push(v);
        }
    }
    if raw.len() != rows * width {
        return Err(parse_err(
            last_line,
            format!("expected {rows} rows, found {}", raw.len() / width),
        ));
    }

    let matrices = if flat {
        (0..n)
            .map(|k| {
                let mut s = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        s[i * n + j] = raw[i * width + k * n + j];
                    }
                }
                s
            })
            .collect()
    } else {
        raw.chunks_exact(n * n).map(<[f64]>::to_vec).collect()
    };
    StochasticMatrixSet::from_raw(n, matrices)
}
