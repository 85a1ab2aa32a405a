//! Reciprocal fuzzy pairwise-comparison matrices and the multi-expert
//! aggregation that produces them.

use crate::scale::{ConversionScale, LinguisticLabel};
use crate::tfn::{self, TriangularFuzzyNumber};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MatrixError {
    #[error("comparison matrix needs at least 2 criteria, got {0}")]
    TooSmall(usize),
    #[error("cell index ({i}, {j}) invalid for dimension {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("no judgment supplied for pair ({i}, {j})")]
    MissingPair { i: usize, j: usize },
    #[error("diagonal cell ({0}, {0}) must be (1, 1, 1)")]
    BadDiagonal(usize),
    #[error("cells ({i}, {j}) and ({j}, {i}) are neither arithmetic inverses nor a published scale pair")]
    NotReciprocal { i: usize, j: usize },
    #[error("matrix entries must be strictly positive, cell ({i}, {j}) is {value}")]
    NonPositiveCell {
        i: usize,
        j: usize,
        value: TriangularFuzzyNumber,
    },
    #[error("cannot aggregate an empty set of judgments")]
    EmptyAggregate,
}

/// One expert's answer to one pairwise question: how much more important is
/// criterion `row` than criterion `col`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpertJudgment {
    pub expert_id: String,
    pub row: usize,
    pub col: usize,
    pub value: LinguisticLabel,
}

/// Componentwise geometric mean of a non-empty set of positive TFNs.
pub fn aggregate_judgments(
    values: &[TriangularFuzzyNumber],
) -> Result<TriangularFuzzyNumber, MatrixError> {
    if values.is_empty() {
        return Err(MatrixError::EmptyAggregate);
    }
    if let [single] = values {
        if !single.is_positive() {
            return Err(MatrixError::NonPositiveCell {
                i: 0,
                j: 0,
                value: *single,
            });
        }
        return Ok(*single);
    }
    let n = values.len() as f64;
    let mut log_sum = [0.0f64; 3];
    for (idx, v) in values.iter().enumerate() {
        if !v.is_positive() {
            return Err(MatrixError::NonPositiveCell {
                i: idx,
                j: idx,
                value: *v,
            });
        }
        log_sum[0] += v.l().ln();
        log_sum[1] += v.m().ln();
        log_sum[2] += v.u().ln();
    }
    TriangularFuzzyNumber::new(
        (log_sum[0] / n).exp(),
        (log_sum[1] / n).exp(),
        (log_sum[2] / n).exp(),
    )
    .map_err(|_| MatrixError::EmptyAggregate)
}

/// An `n x n` reciprocal matrix of triangular fuzzy judgments.
///
/// The diagonal is `(1, 1, 1)`. For every pair the mirrored cells are either
/// exact arithmetic inverses (tolerance 1e-9) or a published forward/reciprocal
/// pair of the conversion scale; published comparison tables mix both conventions.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyComparisonMatrix {
    n: usize,
    cells: Vec<TriangularFuzzyNumber>,
}

impl FuzzyComparisonMatrix {
    /// Build from the upper triangle alone: the diagonal is fixed and the
    /// lower triangle is filled with arithmetic inverses.
    pub fn from_upper_triangle(
        n: usize,
        upper: &BTreeMap<(usize, usize), TriangularFuzzyNumber>,
    ) -> Result<Self, MatrixError> {
        if n < 2 {
            return Err(MatrixError::TooSmall(n));
        }
        let mut cells = vec![TriangularFuzzyNumber::crisp(1.0); n * n];
        for (&(i, j), &value) in upper {
            if i >= n || j >= n || i >= j {
                return Err(MatrixError::IndexOutOfRange { i, j, n });
            }
            cells[i * n + j] = value;
            cells[j * n + i] = value.inverse().map_err(|_| MatrixError::NonPositiveCell {
                i,
                j,
                value,
            })?;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if !upper.contains_key(&(i, j)) {
                    return Err(MatrixError::MissingPair { i, j });
                }
            }
        }
        let matrix = Self { n, cells };
        matrix.validate(&ConversionScale::default())?;
        Ok(matrix)
    }

    /// Build from a full grid of cells, keeping the supplied lower triangle.
    pub fn from_cells(
        n: usize,
        cells: Vec<TriangularFuzzyNumber>,
        scale: &ConversionScale,
    ) -> Result<Self, MatrixError> {
        if n < 2 {
            return Err(MatrixError::TooSmall(n));
        }
        assert_eq!(cells.len(), n * n, "cell grid must be n*n");
        let matrix = Self { n, cells };
        matrix.validate(scale)?;
        Ok(matrix)
    }

    /// Aggregate per-expert judgments into one matrix: normalize every
    /// judgment onto the upper triangle (flipping the label direction when an
    /// expert answered the mirrored question), take the componentwise
    /// geometric mean per pair, and complete the lower triangle with
    /// arithmetic inverses. Pairs nobody answered are an error.
    pub fn from_judgments(
        n: usize,
        judgments: &[ExpertJudgment],
        scale: &ConversionScale,
    ) -> Result<Self, MatrixError> {
        if n < 2 {
            return Err(MatrixError::TooSmall(n));
        }
        let mut per_pair: BTreeMap<(usize, usize), Vec<TriangularFuzzyNumber>> = BTreeMap::new();
        for j in judgments {
            if j.row >= n || j.col >= n || j.row == j.col {
                return Err(MatrixError::IndexOutOfRange {
                    i: j.row,
                    j: j.col,
                    n,
                });
            }
            let (key, judgment) = if j.row < j.col {
                ((j.row, j.col), j.value)
            } else {
                ((j.col, j.row), j.value.flipped())
            };
            per_pair.entry(key).or_default().push(scale.tfn(judgment));
        }
        let mut upper = BTreeMap::new();
        for (pair, values) in per_pair {
            upper.insert(pair, aggregate_judgments(&values)?);
        }
        Self::from_upper_triangle(n, &upper)
    }

    fn validate(&self, scale: &ConversionScale) -> Result<(), MatrixError> {
        let n = self.n;
        for i in 0..n {
            let d = self.cell(i, i);
            if d != TriangularFuzzyNumber::crisp(1.0) {
                return Err(MatrixError::BadDiagonal(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.cell(i, j);
                if !c.is_positive() {
                    return Err(MatrixError::NonPositiveCell { i, j, value: c });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let a = self.cell(i, j);
                let b = self.cell(j, i);
                let inv = a.inverse().expect("positive checked above");
                let reciprocal = (b.l() - inv.l()).abs() <= 1e-9
                    && (b.m() - inv.m()).abs() <= 1e-9
                    && (b.u() - inv.u()).abs() <= 1e-9;
                if !reciprocal && !scale.is_published_pair(a, b) {
                    return Err(MatrixError::NotReciprocal { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn cell(&self, i: usize, j: usize) -> TriangularFuzzyNumber {
        self.cells[i * self.n + j]
    }

    /// Componentwise sum of row `i`.
    pub fn row_sum(&self, i: usize) -> TriangularFuzzyNumber {
        tfn::sum((0..self.n).map(|j| self.cell(i, j)))
    }

    /// Componentwise sum over the whole grid.
    pub fn total_sum(&self) -> TriangularFuzzyNumber {
        tfn::sum(self.cells.iter().copied())
    }

    /// The matrix with rows and columns reordered by `perm`, where `perm[k]`
    /// names the old index that moves to position `k`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut cells = Vec::with_capacity(n * n);
        for &i in perm {
            for &j in perm {
                cells.push(self.cell(i, j));
            }
        }
        Self { n, cells }
    }
}
