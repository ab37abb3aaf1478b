//! Reducibility and weak irreducibility of nonnegative tensors.

use std::collections::BTreeSet;

use super::{unravel, DenseTensor};
use crate::error::{Result, ZeigError};

/// Largest dimension accepted by the exhaustive subset scans.
pub const SUBSET_SCAN_LIMIT: usize = 24;

impl DenseTensor {
    /// Weak irreducibility, decided by strong connectivity of the digraph
    /// with an arc `i1 -> iq` for every nonzero entry `A[i1, i2, ..., im]`
    /// and every trailing index `iq`.
    pub fn is_weakly_irreducible(&self) -> bool {
        let n = self.dim;
        let mut arcs = BTreeSet::new();
        for (k, &v) in self.values.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let idx = unravel(k, self.order, n);
            for &q in &idx[1..] {
                if q != idx[0] {
                    arcs.insert((idx[0], q));
                }
            }
        }
        is_strongly_connected(n, arcs)
    }

    /// Weak irreducibility by scanning every nonempty proper subset `S` for
    /// a nonzero entry with `i1` in `S` and some trailing index outside `S`.
    pub fn is_weakly_irreducible_by_subsets(&self) -> Result<bool> {
        let supports = self.supports()?;
        let n = self.dim;
        let full = (1u32 << n) - 1;
        Ok((1..full).all(|s| {
            supports
                .iter()
                .any(|&(lead, tail)| s & (1 << lead) != 0 && tail & !s != 0)
        }))
    }

    /// Reducibility: some nonempty proper subset `S` has
    /// `A[i1, i2, ..., im] = 0` whenever `i1` is in `S` and every trailing
    /// index lies outside `S`. Exponential in `n`.
    pub fn is_reducible(&self) -> Result<bool> {
        let supports = self.supports()?;
        let n = self.dim;
        let full = (1u32 << n) - 1;
        Ok((1..full).any(|s| {
            !supports
                .iter()
                .any(|&(lead, tail)| s & (1 << lead) != 0 && tail & s == 0)
        }))
    }

    /// Distinct `(i1, bitmask of trailing indices)` over nonzero entries.
    fn supports(&self) -> Result<BTreeSet<(usize, u32)>> {
        let n = self.dim;
        if n > SUBSET_SCAN_LIMIT {
            return Err(ZeigError::UnsupportedSize {
                n,
                limit: SUBSET_SCAN_LIMIT,
            });
        }
        let mut out = BTreeSet::new();
        for (k, &v) in self.values.iter().enumerate() {
            if v != 0.0 {
                let idx = unravel(k, self.order, n);
                let tail = idx[1..].iter().fold(0u32, |m, &q| m | (1 << q));
                out.insert((idx[0], tail));
            }
        }
        Ok(out)
    }
}

/// Whether the digraph on `0..n` with the given arcs is strongly connected.
pub fn is_strongly_connected<I>(n: usize, arcs: I) -> bool
where
    I: IntoIterator<Item = (usize, usize)>,
{
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for (a, b) in arcs {
        fwd[a].push(b);
        bwd[b].push(a);
    }
    reaches_all(&fwd) && reaches_all(&bwd)
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_tensor_is_not_weakly_irreducible() {
        for n in 2..5 {
            let a = DenseTensor::from_fn(3, n, |i| {
                if i.iter().all(|&d| d == i[0]) {
                    1.0
                } else {
                    0.0
                }
            })
            .unwrap();
            assert!(!a.is_weakly_irreducible());
            assert!(a.is_reducible().unwrap());
        }
    }

    #[test]
    fn all_ones_is_irreducible() {
        let a = DenseTensor::new(3, 3, vec![1.0; 27]).unwrap();
        assert!(!a.is_reducible().unwrap());
        assert!(a.is_weakly_irreducible());
    }

    #[test]
    fn subset_scan_rejects_large_n() {
        let a = DenseTensor::new(2, 25, vec![1.0; 625]).unwrap();
        assert!(matches!(
            a.is_reducible(),
            Err(ZeigError::UnsupportedSize { n: 25, .. })
        ));
        assert!(a.is_weakly_irreducible());
    }

    #[test]
    fn one_dimensional() {
        let a = DenseTensor::new(3, 1, vec![2.0]).unwrap();
        assert!(a.is_weakly_irreducible());
        assert!(!a.is_reducible().unwrap());
        assert!(a.is_weakly_irreducible_by_subsets().unwrap());
    }

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(3, [(0, 1), (1, 2), (2, 0)]));
        assert!(!is_strongly_connected(3, [(0, 1), (1, 2)]));
    }
}
