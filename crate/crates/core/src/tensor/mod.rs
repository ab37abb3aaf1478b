//! Dense nonnegative tensors and the contractions the solvers are built on.
//!
//! A [`DenseTensor`] of order `m` and dimension `n` stores its `n^m` entries
//! row-major over the multi-index `(i1, i2, ..., im)`, with `i1` varying
//! slowest. Every contraction in this crate contracts trailing modes against
//! the same vector, so the storage order makes each step a sequence of dot
//! products over contiguous chunks.

mod io;
mod structure;

use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use crate::error::{Result, ZeigError};

pub use io::{read_tensor, write_tensor, TensorFormat};
pub use structure::is_strongly_connected;

/// Default threshold below which an iterate component is treated as zero
/// when forming Rayleigh-type bounds.
pub const DEFAULT_ZERO_TOL: f64 = 1e-13;

/// Default fiber-sum tolerance for [`DenseTensor::is_transition_probability`].
pub const DEFAULT_STOCHASTIC_TOL: f64 = 1e-12;

/// Order-`m`, dimension-`n` nonnegative tensor with flat row-major storage.
#[derive(Clone)]
pub struct DenseTensor {
    order: usize,
    dim: usize,
    values: Vec<f64>,
    semisymmetric: bool,
    semisym: OnceLock<Arc<DenseTensor>>,
}

impl fmt::Debug for DenseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DenseTensor")
            .field("order", &self.order)
            .field("dim", &self.dim)
            .field("semisymmetric", &self.semisymmetric)
            .field("values", &self.values)
            .finish()
    }
}

impl PartialEq for DenseTensor {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.dim == other.dim && self.values == other.values
    }
}

fn checked_len(order: usize, dim: usize) -> Result<usize> {
    if order < 2 || dim < 1 {
        return Err(ZeigError::InvalidShape { order, dim });
    }
    let exp = u32::try_from(order).map_err(|_| ZeigError::InvalidShape { order, dim })?;
    dim.checked_pow(exp)
        .ok_or(ZeigError::InvalidShape { order, dim })
}

impl DenseTensor {
    /// Builds a tensor from its row-major entries, rejecting negative or
    /// non-finite values.
    pub fn new(order: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        let len = checked_len(order, dim)?;
        if values.len() != len {
            return Err(ZeigError::InvalidLength {
                expected: len,
                got: values.len(),
            });
        }
        for (k, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(ZeigError::NonFinite {
                    location: format_index(&unravel(k, order, dim)),
                });
            }
            if v < 0.0 {
                return Err(ZeigError::NegativeEntry {
                    value: v,
                    location: format_index(&unravel(k, order, dim)),
                });
            }
        }
        Ok(Self {
            order,
            dim,
            values,
            semisymmetric: false,
            semisym: OnceLock::new(),
        })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        let len = checked_len(order, dim)?;
        Self::new(order, dim, vec![0.0; len])
    }

    /// Builds a tensor by evaluating `f` at every zero-based multi-index.
    pub fn from_fn<F>(order: usize, dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> f64,
    {
        let len = checked_len(order, dim)?;
        let mut idx = vec![0usize; order];
        let mut values = Vec::with_capacity(len);
        for _ in 0..len {
            values.push(f(&idx));
            increment(&mut idx, dim);
        }
        Self::new(order, dim, values)
    }

    /// Builds a tensor from zero-based `(multi-index, value)` pairs; unlisted
    /// entries are zero and later duplicates overwrite earlier ones.
    pub fn from_entries<I>(order: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        let len = checked_len(order, dim)?;
        let mut values = vec![0.0; len];
        for (idx, v) in entries {
            let k = linear_index(&idx, order, dim)?;
            values[k] = v;
        }
        Self::new(order, dim, values)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_semisymmetric(&self) -> bool {
        self.semisymmetric
    }

    /// Entry at a zero-based multi-index.
    ///
    /// Panics if the index has the wrong length or is out of range.
    pub fn get(&self, idx: &[usize]) -> f64 {
        let k = linear_index(idx, self.order, self.dim).expect("index out of range");
        self.values[k]
    }

    /// Checks the semisymmetry condition entrywise and sets the flag when it
    /// holds within `tol`. Returns whether the flag is now set.
    pub fn verify_semisymmetric(&mut self, tol: f64) -> bool {
        if self.semisymmetric {
            return true;
        }
        let s = self.semisymmetrize();
        let ok = self
            .values
            .iter()
            .zip(&s.values)
            .all(|(a, b)| (a - b).abs() <= tol);
        if ok {
            self.semisymmetric = true;
        }
        ok
    }

    /// Computes `A x^{m-1}`: the vector whose `i`th entry is the sum over
    /// trailing indices of `A[i, i2, ..., im] * x[i2] * ... * x[im]`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vec(x)?;
        Ok(contract_trailing(&self.values, x, self.order - 1))
    }

    /// Averages each entry over all distinct permutations of its trailing
    /// indices. The result is flagged semisymmetric and satisfies
    /// `A_s x^{m-1} = A x^{m-1}` for every `x`.
    pub fn semisymmetrize(&self) -> DenseTensor {
        let n = self.dim;
        let tail = self.order - 1;
        let tail_len = self.values.len() / n;

        // Multi-indices sharing a sorted trailing tuple form one permutation
        // class; `key[t]` is the linear index of the sorted tuple.
        let mut key = vec![0usize; tail_len];
        let mut count = vec![0usize; tail_len];
        let mut digits = vec![0usize; tail];
        let mut sorted = vec![0usize; tail];
        for (t, slot) in key.iter_mut().enumerate() {
            sorted.copy_from_slice(&digits);
            sorted.sort_unstable();
            let k = sorted.iter().fold(0, |acc, &d| acc * n + d);
            *slot = k;
            count[k] += 1;
            if t + 1 < tail_len {
                increment(&mut digits, n);
            }
        }

        let mut out = vec![0.0; self.values.len()];
        let mut sums = vec![0.0; tail_len];
        for (src, dst) in self
            .values
            .chunks_exact(tail_len)
            .zip(out.chunks_exact_mut(tail_len))
        {
            sums.iter_mut().for_each(|s| *s = 0.0);
            for (t, &v) in src.iter().enumerate() {
                sums[key[t]] += v;
            }
            for (t, d) in dst.iter_mut().enumerate() {
                let k = key[t];
                *d = sums[k] / count[k] as f64;
            }
        }

        DenseTensor {
            order: self.order,
            dim: self.dim,
            values: out,
            semisymmetric: true,
            semisym: OnceLock::new(),
        }
    }

    /// The semisymmetric form of this tensor, computed once and cached.
    pub fn semisymmetric_form(&self) -> &DenseTensor {
        if self.semisymmetric {
            self
        } else {
            self.semisym
                .get_or_init(|| Arc::new(self.semisymmetrize()))
                .as_ref()
        }
    }

    /// Forms `T(x)`, the `n x n` matrix with entries
    /// `(1/(m-1)) d(A x^{m-1})_i / d x_j`, by contracting the semisymmetric
    /// form against `x` over its last `m - 2` modes.
    pub fn jacobian(&self, x: &[f64]) -> Result<JacMatrix> {
        self.check_vec(x)?;
        let s = self.semisymmetric_form();
        let data = contract_trailing(&s.values, x, self.order - 2);
        Ok(JacMatrix {
            n: self.dim,
            data,
            point: x.to_vec(),
        })
    }

    /// Minimum and maximum of `(A x^{m-1})_i / x_i` over the components with
    /// `x_i >= zero_tol`.
    pub fn rayleigh_bounds(&self, x: &[f64], zero_tol: f64) -> Result<(f64, f64)> {
        let ax = self.apply(x)?;
        bounds_from_image(&ax, x, zero_tol)
    }

    /// `|| A x^{m-1} - lambda x ||_1`.
    pub fn residual(&self, x: &[f64], lambda: f64) -> Result<f64> {
        let ax = self.apply(x)?;
        Ok(residual_from_image(&ax, x, lambda))
    }

    /// True when every mode-1 fiber sums to one within `tol`.
    pub fn is_transition_probability(&self, tol: f64) -> bool {
        let n = self.dim;
        let tail_len = self.values.len() / n;
        (0..tail_len).all(|t| {
            let s: f64 = (0..n).map(|i| self.values[i * tail_len + t]).sum();
            (s - 1.0).abs() <= tol
        })
    }

    fn check_vec(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(ZeigError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }
}

/// Contracts the last mode of a row-major block against `x`, `times` times.
fn contract_trailing(values: &[f64], x: &[f64], times: usize) -> Vec<f64> {
    if times == 0 {
        return values.to_vec();
    }
    let n = x.len();
    let mut cur: Vec<f64> = values.chunks_exact(n).map(|c| dot(c, x)).collect();
    for _ in 1..times {
        cur = cur.chunks_exact(n).map(|c| dot(c, x)).collect();
    }
    cur
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

pub(crate) fn bounds_from_image(ax: &[f64], x: &[f64], zero_tol: f64) -> Result<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (&a, &xi) in ax.iter().zip(x) {
        if xi >= zero_tol {
            let r = a / xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    if lo > hi {
        return Err(ZeigError::Degenerate(format!(
            "no component is at least {zero_tol:e}"
        )));
    }
    Ok((lo, hi))
}

pub(crate) fn residual_from_image(ax: &[f64], x: &[f64], lambda: f64) -> f64 {
    ax.iter()
        .zip(x)
        .map(|(a, xi)| (a - lambda * xi).abs())
        .sum()
}

fn increment(idx: &mut [usize], dim: usize) {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < dim {
            return;
        }
        *d = 0;
    }
}

fn linear_index(idx: &[usize], order: usize, dim: usize) -> Result<usize> {
    if idx.len() != order {
        return Err(ZeigError::DimensionMismatch {
            expected: order,
            got: idx.len(),
        });
    }
    let mut k = 0usize;
    for &d in idx {
        if d >= dim {
            return Err(ZeigError::InvalidArgument(format!(
                "index {d} out of range for dimension {dim}"
            )));
        }
        k = k * dim + d;
    }
    Ok(k)
}

pub(crate) fn unravel(mut k: usize, order: usize, dim: usize) -> Vec<usize> {
    let mut idx = vec![0; order];
    for d in idx.iter_mut().rev() {
        *d = k % dim;
        k /= dim;
    }
    idx
}

/// One-based display form of a multi-index, e.g. `(1,1,2)`.
fn format_index(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|d| (d + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// Nonnegative vector with unit 1-norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    /// Accepts `entries` as-is if they are nonnegative and sum to one within
    /// `4 n eps`.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_nonneg(&entries)?;
        let s: f64 = entries.iter().sum();
        let tol = 4.0 * entries.len() as f64 * f64::EPSILON;
        if (s - 1.0).abs() > tol {
            return Err(ZeigError::NotProbability(format!("entries sum to {s}")));
        }
        Ok(Self(entries))
    }

    /// Scales a nonnegative, nonzero vector to unit 1-norm.
    pub fn normalize(entries: Vec<f64>) -> Result<Self> {
        check_nonneg(&entries)?;
        let s: f64 = entries.iter().sum();
        if s <= 0.0 {
            return Err(ZeigError::NotProbability("zero vector".into()));
        }
        Ok(Self(entries.into_iter().map(|v| v / s).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&v| v > 0.0)
    }

    pub fn l1_distance(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| (a - b).abs()).sum()
    }
}

fn check_nonneg(entries: &[f64]) -> Result<()> {
    if entries.is_empty() {
        return Err(ZeigError::NotProbability("empty vector".into()));
    }
    for (i, &v) in entries.iter().enumerate() {
        if !v.is_finite() || v < 0.0 {
            return Err(ZeigError::NotProbability(format!("entry {} is {v}", i + 1)));
        }
    }
    Ok(())
}

impl Deref for ProbVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for ProbVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// The matrix `T(x)` together with the point it was formed at.
#[derive(Debug, Clone, PartialEq)]
pub struct JacMatrix {
    n: usize,
    data: Vec<f64>,
    point: Vec<f64>,
}

impl JacMatrix {
    /// Wraps an explicit row-major `n x n` matrix; `point` is informational.
    pub fn from_rows(n: usize, data: Vec<f64>, point: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(ZeigError::InvalidLength {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data, point })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.data.chunks_exact(self.n).map(|r| dot(r, v)).collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n];
        for row in self.data.chunks_exact(self.n) {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums
    }

    /// Irreducibility of the nonzero pattern, decided by strong connectivity.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n;
        let arcs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        let arcs = arcs.filter(|&(i, j)| i != j && self.data[i * n + j] != 0.0);
        is_strongly_connected(n, arcs)
    }
}

/// A Z-eigenpair under the 2-norm normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct Z2Pair {
    pub x: Vec<f64>,
    pub lambda: f64,
}

/// Maps a unit 1-norm pair `(x, lambda)` of an order-`order` tensor to the
/// equivalent unit 2-norm pair `(x / |x|_2, lambda / |x|_2^{order-2})`.
pub fn z1_to_z2(x: &[f64], lambda: f64, order: usize) -> Result<Z2Pair> {
    let norm2 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm2 == 0.0 {
        return Err(ZeigError::Degenerate("zero eigenvector".into()));
    }
    let exp = order as i32 - 2;
    Ok(Z2Pair {
        x: x.iter().map(|v| v / norm2).collect(),
        lambda: lambda / norm2.powi(exp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex63() -> DenseTensor {
        DenseTensor::from_entries(
            4,
            2,
            [
                (vec![0, 0, 0, 0], 1.1),
                (vec![1, 1, 1, 1], 1.2),
                (vec![0, 0, 0, 1], 0.25),
                (vec![0, 1, 1, 1], 0.25),
            ],
        )
        .unwrap()
    }

    #[test]
    fn apply_all_ones() {
        let a = DenseTensor::new(3, 2, vec![1.0; 8]).unwrap();
        assert_eq!(a.apply(&[1.0, 1.0]).unwrap(), vec![4.0, 4.0]);
    }

    #[test]
    fn apply_rejects_wrong_length() {
        let a = DenseTensor::new(3, 2, vec![1.0; 8]).unwrap();
        assert!(matches!(
            a.apply(&[1.0]),
            Err(ZeigError::DimensionMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn constructor_rejects_negatives_and_bad_length() {
        let err = DenseTensor::new(2, 2, vec![1.0, -0.5, 0.0, 1.0]).unwrap_err();
        assert!(matches!(err, ZeigError::NegativeEntry { .. }));
        assert!(err.to_string().contains("(1,2)"));
        assert!(DenseTensor::new(3, 2, vec![0.0; 7]).is_err());
        assert!(DenseTensor::new(1, 2, vec![0.0; 2]).is_err());
    }

    #[test]
    fn semisymmetrize_averages_permutation_class() {
        let s = ex63().semisymmetrize();
        let third = 0.25 / 3.0;
        assert_eq!(s.get(&[0, 0, 0, 1]), third);
        assert_eq!(s.get(&[0, 0, 1, 0]), third);
        assert_eq!(s.get(&[0, 1, 0, 0]), third);
        // (2,2,2) has a single permutation
        assert_eq!(s.get(&[0, 1, 1, 1]), 0.25);
        assert_eq!(s.get(&[0, 0, 0, 0]), 1.1);
        assert!(s.is_semisymmetric());
    }

    #[test]
    fn semisymmetrize_fixed_on_semisymmetric_input() {
        let a = DenseTensor::new(3, 2, vec![1.0, 0.3, 0.3, 2.0, 0.5, 0.7, 0.7, 0.1]).unwrap();
        let s = a.semisymmetrize();
        for (p, q) in a.values().iter().zip(s.values()) {
            assert!((p - q).abs() <= 1e-15 * p.abs());
        }
    }

    #[test]
    fn jacobian_of_matrix_is_matrix() {
        let a = DenseTensor::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let t = a.jacobian(&[0.9, 0.1]).unwrap();
        assert_eq!(t.data(), a.values());
    }

    #[test]
    fn rayleigh_bounds_uniform_stochastic() {
        let n = 3;
        let a = DenseTensor::new(3, n, vec![1.0 / n as f64; 27]).unwrap();
        let x = ProbVector::uniform(n);
        let (lo, hi) = a.rayleigh_bounds(&x, DEFAULT_ZERO_TOL).unwrap();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rayleigh_bounds_skip_small_components() {
        let a = ex63();
        let (lo, hi) = a.rayleigh_bounds(&[1.0, 1e-15], DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(lo, hi);
        assert!(matches!(
            a.rayleigh_bounds(&[1e-14, 1e-14], DEFAULT_ZERO_TOL),
            Err(ZeigError::Degenerate(_))
        ));
    }

    #[test]
    fn residual_is_definitional() {
        let a = ex63();
        let x = [0.3, 0.7];
        let (_, hi) = a.rayleigh_bounds(&x, DEFAULT_ZERO_TOL).unwrap();
        let ax = a.apply(&x).unwrap();
        let direct: f64 = (0..2).map(|i| (ax[i] - hi * x[i]).abs()).sum();
        assert_eq!(a.residual(&x, hi).unwrap(), direct);
    }

    #[test]
    fn transition_uniform() {
        let a = DenseTensor::new(4, 2, vec![0.5; 16]).unwrap();
        assert!(a.is_transition_probability(DEFAULT_STOCHASTIC_TOL));
        assert!(!ex63().is_transition_probability(DEFAULT_STOCHASTIC_TOL));
    }

    #[test]
    fn z1_to_z2_cases() {
        let lam = 1.0 + 1.0 / 3f64.sqrt();
        let p = z1_to_z2(&[0.5, 0.5], lam, 4).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((p.x[0] - h).abs() < 1e-15 && (p.x[1] - h).abs() < 1e-15);
        assert!((p.lambda - 2.0 * lam).abs() < 1e-14);

        let p = z1_to_z2(&[1.0], 3.5, 5).unwrap();
        assert_eq!(
            p,
            Z2Pair {
                x: vec![1.0],
                lambda: 3.5
            }
        );

        let p = z1_to_z2(&[0.25, 0.75], 0.8, 2).unwrap();
        assert_eq!(p.lambda, 0.8);

        assert!(z1_to_z2(&[0.0, 0.0], 1.0, 3).is_err());
    }

    #[test]
    fn prob_vector_checks() {
        assert!(ProbVector::new(vec![0.25, 0.75]).is_ok());
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![-0.5, 1.5]).is_err());
        let v = ProbVector::normalize(vec![1.0, 3.0]).unwrap();
        assert_eq!(v.as_slice(), &[0.25, 0.75]);
        assert!(ProbVector::normalize(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn semisymmetric_cache_is_reused() {
        let a = ex63();
        let p1 = a.semisymmetric_form() as *const DenseTensor;
        let p2 = a.semisymmetric_form() as *const DenseTensor;
        assert_eq!(p1, p2);
    }
}
