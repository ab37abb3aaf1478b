//! Dense LU factorization with partial pivoting and a 1-norm condition
//! estimate, sized for the small shifted systems solved once per iteration.

/// Reciprocal condition threshold below which a system is treated as nearly
/// singular.
pub const RCOND_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    /// Unit-lower `L` below the diagonal, `U` on and above, row-major.
    lu: Vec<f64>,
    perm: Vec<usize>,
    norm1: f64,
    min_pivot: f64,
}

impl Lu {
    /// Factors the row-major `n x n` matrix `a` as `P A = L U`.
    pub fn factor(n: usize, a: &[f64]) -> Self {
        assert_eq!(a.len(), n * n, "matrix must be n x n");
        let norm1 = (0..n)
            .map(|j| (0..n).map(|i| a[i * n + j].abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot = f64::INFINITY;

        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[i * n + k].abs().total_cmp(&lu[j * n + k].abs()))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let pivot = lu[k * n + k];
            min_pivot = min_pivot.min(pivot.abs());
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }

        Self {
            n,
            lu,
            perm,
            norm1,
            min_pivot,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn norm1(&self) -> f64 {
        self.norm1
    }

    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    pub fn has_zero_pivot(&self) -> bool {
        self.min_pivot == 0.0 || !self.min_pivot.is_finite()
    }

    /// Solves `A x = b`. Meaningless when a pivot is zero.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        x
    }

    /// Solves `A^T x = b`.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        // U^T z = b, L^T y = z, x = P^T y
        let mut z = b.to_vec();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[j * n + i] * z[j]).sum();
            z[i] = (z[i] - s) / self.lu[i * n + i];
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[j * n + i] * z[j]).sum();
            z[i] -= s;
        }
        let mut x = vec![0.0; n];
        for (k, &p) in self.perm.iter().enumerate() {
            x[p] = z[k];
        }
        x
    }

    /// Estimate of `||A^{-1}||_1` (Hager's method with Higham's extra test
    /// vector). A lower bound that is usually within a small factor.
    pub fn inv_norm1_estimate(&self) -> f64 {
        let n = self.n;
        if self.has_zero_pivot() {
            return f64::INFINITY;
        }
        let norm1 = |v: &[f64]| v.iter().map(|a| a.abs()).sum::<f64>();
        let mut x = vec![1.0 / n as f64; n];
        let mut est = 0.0;
        for iter in 0..5 {
            let y = self.solve(&x);
            let ny = norm1(&y);
            if iter > 0 && ny <= est {
                break;
            }
            est = ny;
            let xi: Vec<f64> = y
                .iter()
                .map(|&v| if v >= 0.0 { 1.0 } else { -1.0 })
                .collect();
            let z = self.solve_transpose(&xi);
            let (j, zj) = z
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
                .map(|(j, v)| (j, v.abs()))
                .unwrap();
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if zj <= ztx {
                break;
            }
            x = vec![0.0; n];
            x[j] = 1.0;
        }
        if n > 1 {
            let alt: Vec<f64> = (0..n)
                .map(|i| {
                    let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                    s * (1.0 + i as f64 / (n - 1) as f64)
                })
                .collect();
            let alt_est = 2.0 * norm1(&self.solve(&alt)) / (3.0 * n as f64);
            est = est.max(alt_est);
        }
        est
    }

    /// Reciprocal 1-norm condition estimate; zero for exactly singular input.
    pub fn rcond(&self) -> f64 {
        if self.has_zero_pivot() || self.norm1 == 0.0 {
            return 0.0;
        }
        let inv = self.inv_norm1_estimate();
        if !inv.is_finite() {
            return 0.0;
        }
        1.0 / (self.norm1 * inv)
    }

    /// Near-singularity rule used by the Newton step: the reciprocal
    /// condition estimate is below [`RCOND_THRESHOLD`] or some pivot is
    /// below `n * eps * ||A||_1`.
    pub fn is_nearly_singular(&self) -> bool {
        let pivot_floor = self.n as f64 * f64::EPSILON * self.norm1;
        self.has_zero_pivot() || self.min_pivot < pivot_floor || self.rcond() < RCOND_THRESHOLD
    }
}
