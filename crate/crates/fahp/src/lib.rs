//! A fuzzy analytic-hierarchy-process decision engine.
//!
//! The pipeline: linguistic pairwise judgments from multiple experts are
//! aggregated by geometric mean into reciprocal matrices of triangular fuzzy
//! numbers; extent analysis turns each matrix into crisp priority weights;
//! graded-mean defuzzification feeds the CI/CR consistency check; and a
//! three-level hierarchy (goal, categories, criteria) combines local and
//! category weights into a globally ranked taxonomy. Companion survey
//! statistics cover Likert frequency analysis and Kendall's coefficient of
//! concordance.

pub mod consistency;
pub mod extent;
pub mod hierarchy;
pub mod matrix;
pub mod report;
pub mod scale;
pub mod study;
pub mod survey;
pub mod tfn;

#[cfg(test)]
pub(crate) mod fixtures;

pub use consistency::{
    consistency_check, defuzzify_matrix, lambda_max, priority_vector, ConsistencyReport,
    CrispMatrix,
};
pub use extent::{extent_weights, min_possibility, synthetic_extents, ExtentVector, WeightVector};
pub use hierarchy::{
    evaluate_hierarchy, rank_order, Category, Criterion, DecisionHierarchy, RankedTaxonomy,
};
pub use matrix::{aggregate_judgments, ExpertJudgment, FuzzyComparisonMatrix};
pub use report::{emit_report, run_rank, run_survey, RankError, ReportBundle, ReportFormat};
pub use scale::{ConversionScale, Direction, Label, LinguisticLabel};
pub use study::{load_ratings_csv, load_survey_csv, StudyError, StudyFile};
pub use survey::{
    concordance, frequency_analysis, kendalls_w, ConcordanceReport, LikertCounts, RaterMatrix,
};
pub use tfn::TriangularFuzzyNumber;
