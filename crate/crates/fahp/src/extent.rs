//! Extent-analysis weight derivation: fuzzy synthetic extents per criterion,
//! pairwise possibility degrees, the minimum-degree vector, and its
//! normalization into crisp priority weights.
//!
//! A criterion's extent is its row sum scaled by the inverse of the grand
//! total, so extents are comparable across rows. The raw weight of criterion
//! `i` is the smallest degree of possibility that its extent exceeds every
//! other extent; the criterion with the largest middle component always
//! scores 1, and wholly dominated criteria legitimately score 0. No flooring
//! is applied to zero weights.

use crate::matrix::FuzzyComparisonMatrix;
use crate::tfn::TriangularFuzzyNumber;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ExtentError {
    #[error("criterion index {index} out of range for {len} extents")]
    IndexOutOfRange { index: usize, len: usize },
}

/// The fuzzy synthetic extents of a comparison matrix, one per criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtentVector {
    extents: Vec<TriangularFuzzyNumber>,
}

impl ExtentVector {
    pub fn len(&self) -> usize {
        self.extents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extents.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&TriangularFuzzyNumber> {
        self.extents.get(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TriangularFuzzyNumber> {
        self.extents.iter()
    }
}

/// Extent-analysis weights: the raw minimum-possibility vector and its
/// normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
}

/// Synthetic extent per criterion: `row_sum(i) * inverse(total_sum)`.
pub fn synthetic_extents(matrix: &FuzzyComparisonMatrix) -> ExtentVector {
    let inverse_total = matrix
        .total_sum()
        .inverse()
        .expect("matrix entries are positive, so the total is");
    let extents = (0..matrix.dimension())
        .map(|i| {
            matrix
                .row_sum(i)
                .try_mul(inverse_total)
                .expect("row sums of positive entries are positive")
        })
        .collect();
    ExtentVector { extents }
}

/// Minimum over `k != i` of the possibility that extent `i` exceeds extent
/// `k`. Equals 1 exactly when extent `i` carries the largest middle value.
pub fn min_possibility(i: usize, extents: &ExtentVector) -> Result<f64, ExtentError> {
    let target = extents.get(i).ok_or(ExtentError::IndexOutOfRange {
        index: i,
        len: extents.len(),
    })?;
    Ok(extents
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .map(|(_, other)| target.possibility_ge(other))
        .fold(1.0, f64::min))
}

/// The full weight derivation for one matrix.
pub fn extent_weights(matrix: &FuzzyComparisonMatrix) -> WeightVector {
    let extents = synthetic_extents(matrix);
    let raw: Vec<f64> = (0..extents.len())
        .map(|i| min_possibility(i, &extents).expect("index in range"))
        .collect();
    let total: f64 = raw.iter().sum();
    // The max-middle extent scores 1, so the total is at least 1.
    let normalized = raw.iter().map(|d| d / total).collect();
    WeightVector { raw, normalized }
}
