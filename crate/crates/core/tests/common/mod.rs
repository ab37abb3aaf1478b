#![allow(dead_code)]

use proptest::prelude::*;
use zeig::{DenseTensor, ProbVector};

/// Nonnegative tensor with roughly a quarter of its entries zeroed.
pub fn tensor(
    orders: std::ops::RangeInclusive<usize>,
    dims: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = DenseTensor> {
    (orders, dims).prop_flat_map(|(m, n)| {
        let len = n.pow(m as u32);
        prop::collection::vec(prop_oneof![1 => Just(0.0), 3 => 0.0..1.0f64], len)
            .prop_map(move |v| DenseTensor::new(m, n, v).unwrap())
    })
}

/// Strictly positive tensor with every mode-1 fiber summing to one.
pub fn transition_tensor(
    orders: std::ops::RangeInclusive<usize>,
    dims: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = DenseTensor> {
    (orders, dims).prop_flat_map(|(m, n)| {
        let len = n.pow(m as u32);
        prop::collection::vec(0.01..1.0f64, len).prop_map(move |mut v| {
            let stride = len / n;
            for rest in 0..stride {
                let s: f64 = (0..n).map(|i| v[i * stride + rest]).sum();
                for i in 0..n {
                    v[i * stride + rest] /= s;
                }
            }
            DenseTensor::new(m, n, v).unwrap()
        })
    })
}

/// Positive probability vector of length `n`.
pub fn prob_vector(n: usize) -> impl Strategy<Value = ProbVector> {
    prop::collection::vec(0.05..1.0f64, n).prop_map(|v| ProbVector::normalize(v).unwrap())
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).abs()).sum()
}

/// `A x^{m-1}` summed straight from the definition, one multi-index at a time.
pub fn apply_by_definition(a: &DenseTensor, x: &[f64]) -> Vec<f64> {
    let (m, n) = (a.order(), a.dim());
    let mut y = vec![0.0; n];
    let mut idx = vec![0usize; m];
    for &v in a.values() {
        let prod: f64 = idx[1..].iter().map(|&j| x[j]).product();
        y[idx[0]] += v * prod;
        for p in (0..m).rev() {
            idx[p] += 1;
            if idx[p] < n {
                break;
            }
            idx[p] = 0;
        }
    }
    y
}
