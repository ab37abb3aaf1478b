//! Small test tensors with known nonnegative Z-eigenpairs.
//!
//! `Ex1`–`Ex3` are order-4, dimension-2 tensors with several positive
//! eigenpairs (`Ex3` is not weakly irreducible and has an eigenvector with a
//! zero component). `Ex4` and `Ex5` are transition probability tensors.

use std::fmt;
use std::str::FromStr;

use crate::error::ZeigError;
use crate::tensor::DenseTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinExample {
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
}

/// How precisely a listed eigenpair is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// Closed form, evaluated in floating point.
    Exact,
    /// Rounded to four decimal digits.
    FourDigit,
}

impl Tier {
    /// Matching tolerance for eigenvector (1-norm) and eigenvalue.
    pub fn match_tol(self) -> f64 {
        match self {
            Tier::Exact => 1e-8,
            Tier::FourDigit => 5e-4,
        }
    }

    /// Bound on the residual of the listed pair itself.
    pub fn residual_bound(self) -> f64 {
        match self {
            Tier::Exact => 1e-12,
            Tier::FourDigit => 5e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnownEigenpair {
    pub x: Vec<f64>,
    pub lambda: f64,
    pub tier: Tier,
}

impl KnownEigenpair {
    fn exact(x: Vec<f64>, lambda: f64) -> Self {
        Self {
            x,
            lambda,
            tier: Tier::Exact,
        }
    }

    fn rounded(x: Vec<f64>, lambda: f64) -> Self {
        Self {
            x,
            lambda,
            tier: Tier::FourDigit,
        }
    }

    /// Whether `(x, lambda)` agrees with this pair within the tier tolerance.
    pub fn matches(&self, x: &[f64], lambda: f64) -> bool {
        let tol = self.tier.match_tol();
        let dx: f64 = self.x.iter().zip(x).map(|(a, b)| (a - b).abs()).sum();
        dx < tol && (self.lambda - lambda).abs() < tol
    }
}

impl BuiltinExample {
    pub const ALL: [BuiltinExample; 5] = [Self::Ex1, Self::Ex2, Self::Ex3, Self::Ex4, Self::Ex5];

    pub fn tensor(self) -> DenseTensor {
        match self {
            Self::Ex1 => two_by_four(4.0 / 3f64.sqrt(), 4.0 / 3f64.sqrt(), 1.0),
            Self::Ex2 => two_by_four(1.1, 1.2, 0.25),
            Self::Ex3 => DenseTensor::from_entries(
                4,
                2,
                [
                    (vec![0, 0, 0, 0], 1.1),
                    (vec![1, 1, 1, 1], 1.2),
                    (vec![0, 0, 0, 1], 0.25),
                    (vec![0, 1, 1, 1], 0.25),
                ],
            )
            .expect("valid tensor"),
            Self::Ex4 => {
                // rows P_{i j k l}, (i j) fixed, (k l) = 11, 12, 21, 22
                let values = vec![
                    0.872,
                    2.416 / 3.0,
                    2.416 / 3.0,
                    0.616 / 3.0,
                    2.416 / 3.0,
                    0.616 / 3.0,
                    0.616 / 3.0,
                    0.072,
                    0.128,
                    0.584 / 3.0,
                    0.584 / 3.0,
                    2.384 / 3.0,
                    0.584 / 3.0,
                    2.384 / 3.0,
                    2.384 / 3.0,
                    0.928,
                ];
                DenseTensor::new(4, 2, values).expect("valid tensor")
            }
            Self::Ex5 => DenseTensor::from_fn(3, 3, |idx| {
                let (i, j, k) = (idx[0], idx[1], idx[2]);
                if j == k {
                    if i == j {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    1.0 / 3.0
                }
            })
            .expect("valid tensor"),
        }
    }

    /// The nonnegative eigenpairs listed for this example (unit 1-norm).
    pub fn known_eigenpairs(self) -> Vec<KnownEigenpair> {
        let s3 = 3f64.sqrt();
        match self {
            Self::Ex1 => vec![
                KnownEigenpair::exact(vec![0.5, 0.5], 1.0 + 1.0 / s3),
                KnownEigenpair::exact(
                    vec![s3 / (1.0 + s3), 1.0 / (1.0 + s3)],
                    11.0 / (3.0 + 2.0 * s3),
                ),
                KnownEigenpair::exact(
                    vec![1.0 / (1.0 + s3), s3 / (1.0 + s3)],
                    11.0 / (3.0 + 2.0 * s3),
                ),
            ],
            Self::Ex2 => vec![
                KnownEigenpair::rounded(vec![0.1785, 0.8215], 0.9216),
                KnownEigenpair::rounded(vec![0.8052, 0.1948], 0.8331),
                KnownEigenpair::rounded(vec![0.5193, 0.4807], 0.5373),
            ],
            Self::Ex3 => vec![
                KnownEigenpair::rounded(vec![0.1874, 0.8126], 0.7923),
                KnownEigenpair::exact(vec![1.0, 0.0], 1.1),
                KnownEigenpair::rounded(vec![0.4412, 0.5588], 0.3746),
            ],
            Self::Ex4 => vec![
                KnownEigenpair::exact(vec![0.6, 0.4], 1.0),
                KnownEigenpair::exact(vec![0.2, 0.8], 1.0),
            ],
            Self::Ex5 => vec![
                KnownEigenpair::exact(vec![1.0 / 3.0; 3], 1.0),
                KnownEigenpair::exact(vec![1.0, 0.0, 0.0], 1.0),
                KnownEigenpair::exact(vec![0.0, 1.0, 0.0], 1.0),
                KnownEigenpair::exact(vec![0.0, 0.0, 1.0], 1.0),
            ],
        }
    }

    /// Index of the listed pair matching `(x, lambda)`, if any.
    pub fn identify(self, x: &[f64], lambda: f64) -> Option<usize> {
        self.known_eigenpairs()
            .iter()
            .position(|p| p.matches(x, lambda))
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Ex1 => "ex1",
            Self::Ex2 => "ex2",
            Self::Ex3 => "ex3",
            Self::Ex4 => "ex4",
            Self::Ex5 => "ex5",
        }
    }
}

/// Order-4, dimension-2 tensor with `A_1111 = d1`, `A_2222 = d2`, `off` at
/// every index with multiset `{1,1,1,2}` or `{1,2,2,2}`, and zero elsewhere.
fn two_by_four(d1: f64, d2: f64, off: f64) -> DenseTensor {
    let one = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]];
    let two = [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]];
    let entries = one
        .iter()
        .chain(two.iter())
        .map(|i| (i.to_vec(), off))
        .chain([(vec![0, 0, 0, 0], d1), (vec![1, 1, 1, 1], d2)]);
    DenseTensor::from_entries(4, 2, entries).expect("valid tensor")
}

impl fmt::Display for BuiltinExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinExample {
    type Err = ZeigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ex1" => Ok(Self::Ex1),
            "ex2" => Ok(Self::Ex2),
            "ex3" => Ok(Self::Ex3),
            "ex4" => Ok(Self::Ex4),
            "ex5" => Ok(Self::Ex5),
            _ => Err(ZeigError::InvalidArgument(format!(
                "unknown builtin `{s}` (expected ex1..ex5)"
            ))),
        }
    }
}
