//! The three-level decision model (goal, categories, criteria): local weights
//! from each category's matrix, category weights from the category-level
//! matrix, global weights as their product, and rank assignment.

use crate::consistency::{consistency_check, ConsistencyError, ConsistencyReport};
use crate::extent::{extent_weights, WeightVector};
use crate::matrix::FuzzyComparisonMatrix;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HierarchyError {
    #[error("a hierarchy needs at least 2 categories, got {0}")]
    TooFewCategories(usize),
    #[error("duplicate identifier {0:?} in hierarchy")]
    DuplicateId(String),
    #[error("category {id:?} has {criteria} criteria but a matrix of dimension {matrix}")]
    CategoryDimensionMismatch {
        id: String,
        criteria: usize,
        matrix: usize,
    },
    #[error("category {0:?} has more than one criterion and needs a comparison matrix")]
    MissingMatrix(String),
    #[error("category-level matrix has dimension {matrix}, hierarchy has {categories} categories")]
    CategoryMatrixMismatch { matrix: usize, categories: usize },
    #[error("category {id:?}: {source}")]
    Consistency {
        id: String,
        source: ConsistencyError,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: String,
    pub name: String,
}

/// One category: its criteria and the pairwise matrix over them. A category
/// with a single criterion needs no matrix; that criterion's local weight is
/// 1 by definition.
#[derive(Debug, Clone)]
pub struct Category {
    pub id: String,
    pub name: String,
    pub criteria: Vec<Criterion>,
    pub matrix: Option<FuzzyComparisonMatrix>,
}

/// Goal plus ordered categories. Identifiers are unique across the whole
/// tree, and every multi-criterion category carries a matrix of matching
/// dimension.
#[derive(Debug, Clone)]
pub struct DecisionHierarchy {
    pub goal: String,
    categories: Vec<Category>,
}

impl DecisionHierarchy {
    pub fn new(goal: String, categories: Vec<Category>) -> Result<Self, HierarchyError> {
        if categories.len() < 2 {
            return Err(HierarchyError::TooFewCategories(categories.len()));
        }
        let mut seen = HashSet::new();
        for category in &categories {
            if !seen.insert(category.id.clone()) {
                return Err(HierarchyError::DuplicateId(category.id.clone()));
            }
            for criterion in &category.criteria {
                if !seen.insert(criterion.id.clone()) {
                    return Err(HierarchyError::DuplicateId(criterion.id.clone()));
                }
            }
            match &category.matrix {
                Some(matrix) if matrix.dimension() != category.criteria.len() => {
                    return Err(HierarchyError::CategoryDimensionMismatch {
                        id: category.id.clone(),
                        criteria: category.criteria.len(),
                        matrix: matrix.dimension(),
                    });
                }
                None if category.criteria.len() > 1 => {
                    return Err(HierarchyError::MissingMatrix(category.id.clone()));
                }
                _ => {}
            }
        }
        Ok(Self { goal, categories })
    }

    pub fn categories(&self) -> &[Category] {
        &self.categories
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedCriterion {
    pub id: String,
    pub name: String,
    pub local_weight: f64,
    pub local_rank: usize,
    pub global_weight: f64,
    pub global_rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedCategory {
    pub id: String,
    pub name: String,
    pub weight: f64,
    pub rank: usize,
    pub criteria: Vec<RankedCriterion>,
}

/// The evaluated hierarchy: weights and ranks at both levels, plus the
/// consistency verdict and weight vector of every matrix that produced them.
#[derive(Debug, Clone)]
pub struct RankedTaxonomy {
    pub categories: Vec<RankedCategory>,
    /// Consistency report of the category-level matrix.
    pub category_consistency: ConsistencyReport,
    /// Per-category matrix reports, in category order; `None` for
    /// single-criterion categories.
    pub criteria_consistency: Vec<Option<ConsistencyReport>>,
    /// Raw and normalized weight vector of the category-level matrix.
    pub category_weights: WeightVector,
}

impl RankedTaxonomy {
    /// Criteria in descending global-weight order.
    pub fn global_order(&self) -> Vec<&RankedCriterion> {
        let mut all: Vec<&RankedCriterion> = self
            .categories
            .iter()
            .flat_map(|c| c.criteria.iter())
            .collect();
        all.sort_by_key(|c| c.global_rank);
        all
    }
}

/// Descending-weight 1-based ranks with stable tie-breaking by original
/// position: `rank_order(&[0.5, 0.5])` is `[1, 2]`.
pub fn rank_order(weights: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        weights[b]
            .partial_cmp(&weights[a])
            .expect("weights are finite")
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0; weights.len()];
    for (rank, &index) in order.iter().enumerate() {
        ranks[index] = rank + 1;
    }
    ranks
}

/// Evaluate the whole hierarchy against a category-level matrix.
///
/// Weights come from extent analysis at both levels; a criterion's global
/// weight is its local weight times its category's weight. Consistency
/// failures do not abort here: each report carries its own verdict and the
/// caller decides how strict to be.
pub fn evaluate_hierarchy(
    hierarchy: &DecisionHierarchy,
    category_matrix: &FuzzyComparisonMatrix,
) -> Result<RankedTaxonomy, HierarchyError> {
    let categories = hierarchy.categories();
    if category_matrix.dimension() != categories.len() {
        return Err(HierarchyError::CategoryMatrixMismatch {
            matrix: category_matrix.dimension(),
            categories: categories.len(),
        });
    }
    let category_weights = extent_weights(category_matrix);
    let category_consistency =
        consistency_check(category_matrix).map_err(|source| HierarchyError::Consistency {
            id: "categories".to_string(),
            source,
        })?;

    let mut criteria_consistency = Vec::with_capacity(categories.len());
    let mut local: Vec<Vec<f64>> = Vec::with_capacity(categories.len());
    for category in categories {
        match &category.matrix {
            Some(matrix) => {
                criteria_consistency.push(Some(consistency_check(matrix).map_err(|source| {
                    HierarchyError::Consistency {
                        id: category.id.clone(),
                        source,
                    }
                })?));
                local.push(extent_weights(matrix).normalized);
            }
            None => {
                criteria_consistency.push(None);
                local.push(vec![1.0]);
            }
        }
    }

    let global_flat: Vec<f64> = categories
        .iter()
        .enumerate()
        .flat_map(|(c, _)| {
            let weight = category_weights.normalized[c];
            local[c].iter().map(move |l| l * weight).collect::<Vec<_>>()
        })
        .collect();
    let global_ranks = rank_order(&global_flat);
    let category_ranks = rank_order(&category_weights.normalized);

    let mut ranked = Vec::with_capacity(categories.len());
    let mut flat_index = 0;
    for (c, category) in categories.iter().enumerate() {
        let local_ranks = rank_order(&local[c]);
        let criteria = category
            .criteria
            .iter()
            .enumerate()
            .map(|(k, criterion)| {
                let entry = RankedCriterion {
                    id: criterion.id.clone(),
                    name: criterion.name.clone(),
                    local_weight: local[c][k],
                    local_rank: local_ranks[k],
                    global_weight: global_flat[flat_index],
                    global_rank: global_ranks[flat_index],
                };
                flat_index += 1;
                entry
            })
            .collect();
        ranked.push(RankedCategory {
            id: category.id.clone(),
            name: category.name.clone(),
            weight: category_weights.normalized[c],
            rank: category_ranks[c],
            criteria,
        });
    }

    Ok(RankedTaxonomy {
        categories: ranked,
        category_consistency,
        criteria_consistency,
        category_weights,
    })
}
