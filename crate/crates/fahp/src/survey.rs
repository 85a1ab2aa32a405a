//! Survey statistics: Likert frequency analysis of validation responses and
//! Kendall's coefficient of concordance for inter-rater agreement.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SurveyError {
    #[error("item {0:?} has zero responses")]
    ZeroTotal(String),
    #[error("concordance needs at least 2 raters, got {0}")]
    TooFewRaters(usize),
    #[error("concordance needs at least 2 items, got {0}")]
    TooFewItems(usize),
    #[error("rater {rater} ranked {got} items, expected {expected}")]
    RaggedRow {
        rater: usize,
        got: usize,
        expected: usize,
    },
    #[error("rater {rater}: rank {value} outside 1..={n}")]
    RankOutOfRange { rater: usize, value: f64, n: usize },
    #[error("rater {rater}: ranks sum to {got}, a mid-rank ranking of {n} items sums to {want}")]
    NotARanking {
        rater: usize,
        got: f64,
        n: usize,
        want: f64,
    },
}

/// Five-point response counts for one survey item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LikertCounts {
    pub id: String,
    /// Strongly agree.
    pub sa: u32,
    /// Agree.
    pub a: u32,
    /// Neutral.
    pub n: u32,
    /// Disagree.
    pub d: u32,
    /// Strongly disagree.
    pub sd: u32,
}

impl LikertCounts {
    pub fn total(&self) -> u32 {
        self.sa + self.a + self.n + self.d + self.sd
    }
}

/// Integer percentages for one item: positive (SA+A), negative (D+SD), and
/// neutral shares, rounded half-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrequencySummary {
    pub positive: u32,
    pub negative: u32,
    pub neutral: u32,
}

/// Exact half-up rounding of `100 * part / total` in integer arithmetic.
fn percent(part: u32, total: u32) -> u32 {
    let (part, total) = (part as u64, total as u64);
    ((200 * part + total) / (2 * total)) as u32
}

pub fn frequency_analysis(counts: &LikertCounts) -> Result<FrequencySummary, SurveyError> {
    let total = counts.total();
    if total == 0 {
        return Err(SurveyError::ZeroTotal(counts.id.clone()));
    }
    Ok(FrequencySummary {
        positive: percent(counts.sa + counts.a, total),
        negative: percent(counts.d + counts.sd, total),
        neutral: percent(counts.n, total),
    })
}

/// Rankings of `n` items by `m` raters, one row per rater, mid-ranks for
/// ties. Rows are validated to be genuine rankings: every value in `[1, n]`
/// and each row summing to `n(n+1)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RaterMatrix {
    raters: usize,
    items: usize,
    ranks: Vec<Vec<f64>>,
}

impl RaterMatrix {
    pub fn new(ranks: Vec<Vec<f64>>) -> Result<Self, SurveyError> {
        let raters = ranks.len();
        if raters < 2 {
            return Err(SurveyError::TooFewRaters(raters));
        }
        let items = ranks[0].len();
        if items < 2 {
            return Err(SurveyError::TooFewItems(items));
        }
        let expected_sum = (items * (items + 1)) as f64 / 2.0;
        for (rater, row) in ranks.iter().enumerate() {
            if row.len() != items {
                return Err(SurveyError::RaggedRow {
                    rater,
                    got: row.len(),
                    expected: items,
                });
            }
            for &value in row {
                if !(1.0..=items as f64).contains(&value) {
                    return Err(SurveyError::RankOutOfRange {
                        rater,
                        value,
                        n: items,
                    });
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - expected_sum).abs() > 1e-9 {
                return Err(SurveyError::NotARanking {
                    rater,
                    got: sum,
                    n: items,
                    want: expected_sum,
                });
            }
        }
        Ok(Self {
            raters,
            items,
            ranks,
        })
    }

    /// Rank raw scores per rater (lower score = rank 1), assigning mid-ranks
    /// to ties. Accepts repeated values, so integer rank columns with ties
    /// normalize to a proper mid-rank ranking.
    pub fn from_scores(scores: Vec<Vec<f64>>) -> Result<Self, SurveyError> {
        let ranks = scores.into_iter().map(|row| mid_ranks(&row)).collect();
        Self::new(ranks)
    }

    pub fn raters(&self) -> usize {
        self.raters
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn row(&self, rater: usize) -> &[f64] {
        &self.ranks[rater]
    }
}

/// Mid-rank ranking of one score row: ties share the average of the ranks
/// they occupy.
pub fn mid_ranks(scores: &[f64]) -> Vec<f64> {
    let n = scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("finite scores"));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && scores[order[end + 1]] == scores[order[start]] {
            end += 1;
        }
        // Positions start..=end share the mean of ranks start+1..=end+1.
        let shared = (start + end + 2) as f64 / 2.0;
        for &index in &order[start..=end] {
            ranks[index] = shared;
        }
        start = end + 1;
    }
    ranks
}

/// Kendall's W with optional tie correction:
/// `W = 12 S / (m^2 (n^3 - n) - m T)` where `S` is the squared deviation of
/// item rank sums from their mean and `T` sums `t^3 - t` over each rater's
/// tie groups. If every rater ties every item the statistic is vacuous and
/// defined here as 1 (complete, if empty, agreement).
pub fn kendalls_w(matrix: &RaterMatrix, tie_correction: bool) -> f64 {
    let m = matrix.raters as f64;
    let n = matrix.items;
    let rank_sums: Vec<f64> = (0..n)
        .map(|j| (0..matrix.raters).map(|i| matrix.ranks[i][j]).sum())
        .collect();
    let mean = rank_sums.iter().sum::<f64>() / n as f64;
    let s: f64 = rank_sums.iter().map(|r| (r - mean).powi(2)).sum();

    let cube = |x: f64| x * x * x;
    let mut tie_term = 0.0;
    if tie_correction {
        for row in &matrix.ranks {
            let mut sorted = row.clone();
            sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite ranks"));
            let mut start = 0;
            while start < sorted.len() {
                let mut end = start;
                while end + 1 < sorted.len() && sorted[end + 1] == sorted[start] {
                    end += 1;
                }
                let t = (end - start + 1) as f64;
                tie_term += cube(t) - t;
                start = end + 1;
            }
        }
    }

    let denominator = m * m * (cube(n as f64) - n as f64) - m * tie_term;
    if denominator == 0.0 {
        return 1.0;
    }
    (12.0 * s / denominator).clamp(0.0, 1.0)
}

/// Concordance statistic with its chi-square significance approximation
/// (`chi^2 = m (n - 1) W`, `df = n - 1`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcordanceReport {
    pub w: f64,
    pub chi_square: f64,
    pub df: usize,
    pub p_value: f64,
    pub raters: usize,
    pub items: usize,
}

pub fn concordance(matrix: &RaterMatrix, tie_correction: bool) -> ConcordanceReport {
    let w = kendalls_w(matrix, tie_correction);
    let df = matrix.items - 1;
    let chi_square = matrix.raters as f64 * df as f64 * w;
    let dist = ChiSquared::new(df as f64).expect("df >= 1");
    let p_value = dist.sf(chi_square);
    ConcordanceReport {
        w,
        chi_square,
        df,
        p_value,
        raters: matrix.raters,
        items: matrix.items,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn counts(id: &str, sa: u32, a: u32, n: u32, d: u32, sd: u32) -> LikertCounts {
        LikertCounts {
            id: id.into(),
            sa,
            a,
            n,
            d,
            sd,
        }
    }

    #[test]
    fn worked_frequency_rows() {
        // Survey rows with N = 93.
        let c1 = frequency_analysis(&counts("C1", 26, 43, 12, 4, 8)).unwrap();
        assert_eq!((c1.positive, c1.negative, c1.neutral), (74, 13, 13));

        let p4 = frequency_analysis(&counts("P4", 37, 49, 5, 0, 2)).unwrap();
        assert_eq!((p4.positive, p4.negative, p4.neutral), (92, 2, 5));

        // Half-up rounding: 64/93 = 68.8 -> 69 and 63/93 = 67.7 -> 68.
        let c7 = frequency_analysis(&counts("C7", 26, 38, 16, 6, 7)).unwrap();
        assert_eq!(c7.positive, 69);
        let c8 = frequency_analysis(&counts("C8", 23, 40, 15, 4, 11)).unwrap();
        assert_eq!(c8.positive, 68);
    }

    #[test]
    fn unanimous_and_empty_items() {
        let all_sa = frequency_analysis(&counts("x", 93, 0, 0, 0, 0)).unwrap();
        assert_eq!((all_sa.positive, all_sa.negative, all_sa.neutral), (100, 0, 0));
        assert_eq!(
            frequency_analysis(&counts("empty", 0, 0, 0, 0, 0)),
            Err(SurveyError::ZeroTotal("empty".into()))
        );
    }

    #[test]
    fn identical_rankings_agree_completely() {
        let m = RaterMatrix::new(vec![
            vec![1.0, 2.0, 3.0, 4.0, 5.0],
            vec![1.0, 2.0, 3.0, 4.0, 5.0],
            vec![1.0, 2.0, 3.0, 4.0, 5.0],
        ])
        .unwrap();
        assert_eq!(kendalls_w(&m, true), 1.0);
        assert_eq!(kendalls_w(&m, false), 1.0);
    }

    #[test]
    fn reversed_pair_has_zero_concordance() {
        let m = RaterMatrix::new(vec![vec![1.0, 2.0, 3.0], vec![3.0, 2.0, 1.0]]).unwrap();
        assert_eq!(kendalls_w(&m, true), 0.0);
        let report = concordance(&m, true);
        assert_eq!(report.chi_square, 0.0);
        assert_relative_eq!(report.p_value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn three_raters_four_items_fixture() {
        // Independent evaluation with exact integers: rank sums (4, 6, 9, 11),
        // S = 29, W = 12*29/(9*60) = 29/45.
        let m = RaterMatrix::new(vec![
            vec![1.0, 2.0, 3.0, 4.0],
            vec![2.0, 1.0, 4.0, 3.0],
            vec![1.0, 3.0, 2.0, 4.0],
        ])
        .unwrap();
        let w = kendalls_w(&m, true);
        assert_relative_eq!(w, 29.0 / 45.0, epsilon = 1e-12);

        let report = concordance(&m, true);
        assert_relative_eq!(report.chi_square, 5.8, epsilon = 1e-12);
        assert_eq!(report.df, 3);
        assert_relative_eq!(report.p_value, 0.1217566197, epsilon = 1e-9);
    }

    #[test]
    fn tie_correction_modes() {
        // First rater ties items 1 and 2: T = 2^3 - 2 = 6, S = 27.5.
        let m = RaterMatrix::new(vec![
            vec![1.5, 1.5, 3.0, 4.0],
            vec![2.0, 1.0, 4.0, 3.0],
            vec![1.0, 3.0, 2.0, 4.0],
        ])
        .unwrap();
        assert_relative_eq!(kendalls_w(&m, true), 55.0 / 87.0, epsilon = 1e-12);
        assert_relative_eq!(kendalls_w(&m, false), 11.0 / 18.0, epsilon = 1e-12);
        let report = concordance(&m, true);
        assert_relative_eq!(report.p_value, 0.1277250664, epsilon = 1e-9);
    }

    #[test]
    fn all_tied_everywhere_is_vacuous_agreement() {
        let m = RaterMatrix::new(vec![vec![1.5, 1.5], vec![1.5, 1.5]]).unwrap();
        assert_eq!(kendalls_w(&m, true), 1.0);
        assert_eq!(kendalls_w(&m, false), 0.0);
    }

    #[test]
    fn mid_ranks_from_scores() {
        assert_eq!(mid_ranks(&[10.0, 20.0, 30.0]), vec![1.0, 2.0, 3.0]);
        assert_eq!(mid_ranks(&[2.0, 2.0, 1.0]), vec![2.5, 2.5, 1.0]);
        // Integer ranks with a duplicate normalize to mid-ranks.
        let m = RaterMatrix::from_scores(vec![vec![2.0, 2.0, 1.0], vec![1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(m.row(0), &[2.5, 2.5, 1.0]);
    }

    #[test]
    fn rater_matrix_validation() {
        assert_eq!(
            RaterMatrix::new(vec![vec![1.0, 2.0]]),
            Err(SurveyError::TooFewRaters(1))
        );
        assert_eq!(
            RaterMatrix::new(vec![vec![1.0], vec![1.0]]),
            Err(SurveyError::TooFewItems(1))
        );
        assert!(matches!(
            RaterMatrix::new(vec![vec![1.0, 2.0], vec![1.0]]),
            Err(SurveyError::RaggedRow { rater: 1, .. })
        ));
        assert!(matches!(
            RaterMatrix::new(vec![vec![1.0, 3.0], vec![1.0, 2.0]]),
            Err(SurveyError::RankOutOfRange { rater: 0, .. })
        ));
        assert!(matches!(
            RaterMatrix::new(vec![vec![1.0, 1.0], vec![1.0, 2.0]]),
            Err(SurveyError::NotARanking { rater: 0, .. })
        ));
    }

    proptest! {
        #[test]
        fn frequency_percentages_are_consistent(
            sa in 0u32..200, a in 0u32..200, n in 0u32..200, d in 0u32..200, sd in 1u32..200
        ) {
            let item = counts("p", sa, a, n, d, sd);
            let f = frequency_analysis(&item).unwrap();
            prop_assert!(f.positive <= 100 && f.negative <= 100 && f.neutral <= 100);
            // Unrounded fractions sum to exactly 100; the rounded triple can
            // drift by at most 1 either way.
            let total = f.positive + f.negative + f.neutral;
            prop_assert!((99..=101).contains(&total));
        }

        #[test]
        fn w_is_invariant_under_rater_relabeling_and_item_permutation(
            seed_rows in proptest::collection::vec(
                proptest::collection::vec(0.0f64..100.0, 5), 3..6
            ),
            swap in 0usize..5,
            with in 0usize..5,
        ) {
            let matrix = RaterMatrix::from_scores(seed_rows.clone()).unwrap();
            let w = kendalls_w(&matrix, true);
            prop_assert!((0.0..=1.0).contains(&w));

            // Reordering raters leaves W unchanged.
            let mut shuffled = seed_rows.clone();
            shuffled.rotate_left(1);
            let w_shuffled = kendalls_w(&RaterMatrix::from_scores(shuffled).unwrap(), true);
            prop_assert!((w - w_shuffled).abs() <= 1e-12);

            // Applying one permutation of items to every rater leaves W
            // unchanged.
            let permuted: Vec<Vec<f64>> = seed_rows
                .iter()
                .map(|row| {
                    let mut r = row.clone();
                    r.swap(swap, with);
                    r
                })
                .collect();
            let w_permuted = kendalls_w(&RaterMatrix::from_scores(permuted).unwrap(), true);
            prop_assert!((w - w_permuted).abs() <= 1e-12);
        }

        #[test]
        fn identical_rows_reach_one_distinct_scores(row in proptest::collection::vec(0u32..1000, 4..8), m in 2usize..5) {
            // Distinct scores so the ranking has no ties.
            let mut scores: Vec<f64> = row.iter().enumerate().map(|(i, &x)| x as f64 + i as f64 * 1e-3).collect();
            scores.dedup();
            let rows = vec![scores.clone(); m];
            let matrix = RaterMatrix::from_scores(rows).unwrap();
            prop_assert_eq!(kendalls_w(&matrix, true), 1.0);
        }
    }
}
