//! Consistency checking of pairwise judgments: graded-mean defuzzification of
//! a fuzzy matrix, the column-normalized priority vector, the column-sum
//! estimate of the largest eigenvalue, and the CI/CR verdict against the
//! random-index table.

use crate::matrix::FuzzyComparisonMatrix;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConsistencyError {
    #[error("random-index table covers dimensions 1..=10, got {0}")]
    UnsupportedDimension(usize),
    #[error("weight vector has length {got}, matrix dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Random consistency index by matrix size (1..=10).
pub const RANDOM_INDEX: [f64; 10] = [0.0, 0.0, 0.58, 0.9, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

pub fn random_index(n: usize) -> Result<f64, ConsistencyError> {
    if n == 0 || n > RANDOM_INDEX.len() {
        return Err(ConsistencyError::UnsupportedDimension(n));
    }
    Ok(RANDOM_INDEX[n - 1])
}

/// An `n x n` crisp comparison matrix: positive entries, unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CrispMatrix {
    n: usize,
    cells: Vec<f64>,
}

impl CrispMatrix {
    pub fn new(n: usize, cells: Vec<f64>) -> Self {
        assert_eq!(cells.len(), n * n, "cell grid must be n*n");
        assert!(
            cells.iter().all(|&c| c > 0.0),
            "crisp matrix entries must be positive"
        );
        Self { n, cells }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn cell(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.n + j]
    }

    pub fn column_sum(&self, j: usize) -> f64 {
        (0..self.n).map(|i| self.cell(i, j)).sum()
    }
}

/// Defuzzify every cell with the graded mean `(l + 4m + u) / 6`. The unit
/// diagonal maps to 1 exactly.
pub fn defuzzify_matrix(fuzzy: &FuzzyComparisonMatrix) -> CrispMatrix {
    let n = fuzzy.dimension();
    let cells = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| fuzzy.cell(i, j).defuzzify())
        .collect();
    CrispMatrix::new(n, cells)
}

/// Priority weights: divide each entry by its column sum, then average each
/// row. Non-negative and summing to 1.
pub fn priority_vector(crisp: &CrispMatrix) -> Vec<f64> {
    let n = crisp.n;
    let col_sums: Vec<f64> = (0..n).map(|j| crisp.column_sum(j)).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| crisp.cell(i, j) / col_sums[j])
                .sum::<f64>()
                / n as f64
        })
        .collect()
}

/// Largest-eigenvalue estimate: the inner product of column sums with the
/// priority weights.
pub fn lambda_max(crisp: &CrispMatrix, weights: &[f64]) -> Result<f64, ConsistencyError> {
    if weights.len() != crisp.n {
        return Err(ConsistencyError::DimensionMismatch {
            expected: crisp.n,
            got: weights.len(),
        });
    }
    Ok((0..crisp.n)
        .map(|j| crisp.column_sum(j) * weights[j])
        .sum())
}

/// The consistency verdict for one comparison matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub lambda_max: f64,
    pub ci: f64,
    pub cr: f64,
    pub ri: f64,
    pub consistent: bool,
    pub priority_vector: Vec<f64>,
}

impl ConsistencyReport {
    /// CI and CR from a largest-eigenvalue estimate. For `n <= 2` the random
    /// index is zero and reciprocal matrices are always consistent, so CR is
    /// defined as 0.
    pub fn from_lambda(
        n: usize,
        lambda: f64,
        priority_vector: Vec<f64>,
    ) -> Result<Self, ConsistencyError> {
        let ri = random_index(n)?;
        let ci = if n >= 2 {
            (lambda - n as f64) / (n as f64 - 1.0)
        } else {
            0.0
        };
        let cr = if ri > 0.0 { ci / ri } else { 0.0 };
        Ok(Self {
            lambda_max: lambda,
            ci,
            cr,
            ri,
            consistent: cr < 0.10,
            priority_vector,
        })
    }
}

/// Full consistency check of a fuzzy matrix: defuzzify, derive the priority
/// vector, estimate the largest eigenvalue, and compare CR against 0.10.
pub fn consistency_check(
    fuzzy: &FuzzyComparisonMatrix,
) -> Result<ConsistencyReport, ConsistencyError> {
    consistency_check_crisp(&defuzzify_matrix(fuzzy))
}

/// Same verdict computed from an already-crisp matrix.
pub fn consistency_check_crisp(crisp: &CrispMatrix) -> Result<ConsistencyReport, ConsistencyError> {
    let weights = priority_vector(crisp);
    let lambda = lambda_max(crisp, &weights)?;
    ConsistencyReport::from_lambda(crisp.n, lambda, weights)
}
