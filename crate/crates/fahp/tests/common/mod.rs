//! Independent oracles for the acceptance suite: the extent-analysis and
//! consistency arithmetic redone in exact rational arithmetic, and a power
//! iteration for the dominant eigenvalue. Nothing here calls the engine's
//! computation paths beyond reading matrix cells.

use fahp::{FuzzyComparisonMatrix, TriangularFuzzyNumber};
use num::rational::BigRational;
use num::{FromPrimitive, ToPrimitive, Zero};

pub type R = BigRational;

#[derive(Clone)]
pub struct ExactTfn {
    pub l: R,
    pub m: R,
    pub u: R,
}

pub fn exact(t: TriangularFuzzyNumber) -> ExactTfn {
    ExactTfn {
        l: R::from_f64(t.l()).expect("finite"),
        m: R::from_f64(t.m()).expect("finite"),
        u: R::from_f64(t.u()).expect("finite"),
    }
}

pub fn to_f64(r: &R) -> f64 {
    r.to_f64().expect("fits in f64")
}

fn add(a: &ExactTfn, b: &ExactTfn) -> ExactTfn {
    ExactTfn {
        l: &a.l + &b.l,
        m: &a.m + &b.m,
        u: &a.u + &b.u,
    }
}

/// Synthetic extents in exact arithmetic: row sums scaled by the reversed
/// reciprocal of the grand total.
pub fn exact_extents(matrix: &FuzzyComparisonMatrix) -> Vec<ExactTfn> {
    let n = matrix.dimension();
    let zero = || ExactTfn {
        l: R::zero(),
        m: R::zero(),
        u: R::zero(),
    };
    let mut rows = Vec::with_capacity(n);
    let mut total = zero();
    for i in 0..n {
        let mut row = zero();
        for j in 0..n {
            row = add(&row, &exact(matrix.cell(i, j)));
        }
        total = add(&total, &row);
        rows.push(row);
    }
    rows.into_iter()
        .map(|row| ExactTfn {
            l: &row.l / &total.u,
            m: &row.m / &total.m,
            u: &row.u / &total.l,
        })
        .collect()
}

/// Degree of possibility a >= b, exactly.
pub fn exact_possibility(a: &ExactTfn, b: &ExactTfn) -> R {
    if a.m >= b.m {
        R::from_integer(1.into())
    } else if b.l >= a.u {
        R::zero()
    } else {
        (&a.u - &b.l) / ((&a.u - &a.m) + (&b.m - &b.l))
    }
}

/// Raw and normalized extent weights, exactly.
pub fn exact_weights(matrix: &FuzzyComparisonMatrix) -> (Vec<R>, Vec<R>) {
    let extents = exact_extents(matrix);
    let n = extents.len();
    let raw: Vec<R> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&k| k != i)
                .map(|k| exact_possibility(&extents[i], &extents[k]))
                .min()
                .expect("n >= 2")
        })
        .collect();
    let total: R = raw.iter().fold(R::zero(), |acc, d| acc + d);
    let normalized = raw.iter().map(|d| d / &total).collect();
    (raw, normalized)
}

/// Graded-mean defuzzification of every cell, exactly.
pub fn exact_crisp(matrix: &FuzzyComparisonMatrix) -> Vec<Vec<R>> {
    let n = matrix.dimension();
    let six = R::from_integer(6.into());
    let four = R::from_integer(4.into());
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let t = exact(matrix.cell(i, j));
                    (&four * &t.m + &t.l + &t.u) / &six
                })
                .collect()
        })
        .collect()
}

/// Column-normalized row averages, exactly.
pub fn exact_priority(crisp: &[Vec<R>]) -> Vec<R> {
    let n = crisp.len();
    let col_sums: Vec<R> = (0..n)
        .map(|j| (0..n).fold(R::zero(), |acc, i| acc + &crisp[i][j]))
        .collect();
    let n_r = R::from_integer((n as i64).into());
    (0..n)
        .map(|i| {
            (0..n).fold(R::zero(), |acc, j| acc + &crisp[i][j] / &col_sums[j]) / &n_r
        })
        .collect()
}

/// Column-sum inner product estimate of the dominant eigenvalue, exactly.
pub fn exact_lambda(crisp: &[Vec<R>], weights: &[R]) -> R {
    let n = crisp.len();
    (0..n)
        .map(|j| (0..n).fold(R::zero(), |acc, i| acc + &crisp[i][j]) * &weights[j])
        .fold(R::zero(), |acc, term| acc + term)
}

/// Dominant eigenvalue of a positive matrix by power iteration.
pub fn power_iteration_lambda(crisp: &[Vec<f64>]) -> f64 {
    let n = crisp.len();
    let mut v = vec![1.0 / n as f64; n];
    let mut lambda = 0.0;
    for _ in 0..10_000 {
        let mut next = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                next[i] += crisp[i][j] * v[j];
            }
        }
        let norm: f64 = next.iter().sum();
        for x in &mut next {
            *x /= norm;
        }
        // Rayleigh-style estimate from the normalized iterate.
        let mut av = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                av[i] += crisp[i][j] * next[j];
            }
        }
        let new_lambda: f64 = av.iter().sum::<f64>() / next.iter().sum::<f64>();
        if (new_lambda - lambda).abs() < 1e-13 {
            return new_lambda;
        }
        lambda = new_lambda;
        v = next;
    }
    lambda
}

/// Crisp cells of a fuzzy matrix as plain f64 rows.
pub fn crisp_rows(matrix: &FuzzyComparisonMatrix) -> Vec<Vec<f64>> {
    let crisp = fahp::defuzzify_matrix(matrix);
    let n = crisp.dimension();
    (0..n)
        .map(|i| (0..n).map(|j| crisp.cell(i, j)).collect())
        .collect()
}

/// Kendall's W for untied integer rankings, in exact integer arithmetic.
pub fn exact_kendalls_w(ranks: &[Vec<i64>]) -> R {
    let m = ranks.len() as i64;
    let n = ranks[0].len() as i64;
    let sums: Vec<i64> = (0..n as usize)
        .map(|j| ranks.iter().map(|row| row[j]).sum())
        .collect();
    // S in quarters to stay in integers: sum of (n*Rj - total)^2 / n^2.
    let total: i64 = sums.iter().sum();
    let numerator: i64 = sums.iter().map(|&rj| (n * rj - total).pow(2)).sum();
    let s = R::new(numerator.into(), (n * n).into());
    let denom = R::from_integer((m * m * (n * n * n - n)).into());
    R::from_integer(12.into()) * s / denom
}

pub fn study_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/paper_category_study.json")
}
