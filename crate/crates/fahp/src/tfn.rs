//! Triangular fuzzy numbers and the algebra the extent-analysis pipeline needs:
//! componentwise arithmetic, the piecewise-linear membership function, the
//! degree-of-possibility comparison, and graded-mean defuzzification.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TfnError {
    #[error("triangular fuzzy number requires l <= m <= u, got ({0}, {1}, {2})")]
    NotOrdered(f64, f64, f64),
    #[error("operation requires strictly positive components, got ({0}, {1}, {2})")]
    NonPositive(f64, f64, f64),
    #[error("scaling factor must be strictly positive, got {0}")]
    NonPositiveScale(f64),
}

/// A triangular fuzzy number `(l, m, u)`: the lowest possible, most promising,
/// and highest possible value of an uncertain judgment.
///
/// Invariant: `l <= m <= u`, enforced at construction. Judgment-scale values
/// additionally need `l > 0` so reciprocals exist; operations that require
/// positivity check it themselves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct TriangularFuzzyNumber {
    l: f64,
    m: f64,
    u: f64,
}

impl TriangularFuzzyNumber {
    pub fn new(l: f64, m: f64, u: f64) -> Result<Self, TfnError> {
        if !(l <= m && m <= u) {
            return Err(TfnError::NotOrdered(l, m, u));
        }
        Ok(Self { l, m, u })
    }

    /// A crisp number embedded as the degenerate triangle `(x, x, x)`.
    pub fn crisp(x: f64) -> Self {
        Self { l: x, m: x, u: x }
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn is_positive(&self) -> bool {
        self.l > 0.0
    }

    /// Componentwise product. Both operands must be positive for the result
    /// to stay ordered.
    pub fn try_mul(self, other: Self) -> Result<Self, TfnError> {
        if !self.is_positive() {
            return Err(TfnError::NonPositive(self.l, self.m, self.u));
        }
        if !other.is_positive() {
            return Err(TfnError::NonPositive(other.l, other.m, other.u));
        }
        Ok(Self {
            l: self.l * other.l,
            m: self.m * other.m,
            u: self.u * other.u,
        })
    }

    /// Reciprocal `(1/u, 1/m, 1/l)`. The components reverse so the result
    /// stays ordered.
    pub fn inverse(self) -> Result<Self, TfnError> {
        if !self.is_positive() {
            return Err(TfnError::NonPositive(self.l, self.m, self.u));
        }
        Ok(Self {
            l: 1.0 / self.u,
            m: 1.0 / self.m,
            u: 1.0 / self.l,
        })
    }

    /// Scale every component by `k > 0`.
    pub fn scale(self, k: f64) -> Result<Self, TfnError> {
        if k <= 0.0 {
            return Err(TfnError::NonPositiveScale(k));
        }
        Ok(Self {
            l: k * self.l,
            m: k * self.m,
            u: k * self.u,
        })
    }

    /// Membership grade of `x`: linear ascent on `[l, m]`, linear descent on
    /// `[m, u]`, zero outside. Degenerate segments collapse to an indicator,
    /// so membership at the peak is always 1.
    pub fn membership(&self, x: f64) -> f64 {
        if x < self.l || x > self.u {
            0.0
        } else if x == self.m {
            1.0
        } else if x < self.m {
            (x - self.l) / (self.m - self.l)
        } else {
            (self.u - x) / (self.u - self.m)
        }
    }

    /// Degree of possibility that `self >= other`: the height of the highest
    /// intersection of the two membership functions.
    ///
    /// Returns 1 when `self`'s peak dominates, 0 when the supports only touch
    /// or are disjoint (`other.l >= self.u`), and the intersection ordinate
    /// otherwise. The denominator is positive whenever this branch is reached.
    pub fn possibility_ge(&self, other: &Self) -> f64 {
        if self.m >= other.m {
            1.0
        } else if other.l >= self.u {
            0.0
        } else {
            (self.u - other.l) / ((self.u - self.m) + (other.m - other.l))
        }
    }

    /// Graded mean integration: `(l + 4m + u) / 6`.
    pub fn defuzzify(&self) -> f64 {
        (4.0 * self.m + self.l + self.u) / 6.0
    }
}

impl std::ops::Add for TriangularFuzzyNumber {
    type Output = Self;

    /// Componentwise sum.
    fn add(self, other: Self) -> Self {
        Self {
            l: self.l + other.l,
            m: self.m + other.m,
            u: self.u + other.u,
        }
    }
}

impl TryFrom<[f64; 3]> for TriangularFuzzyNumber {
    type Error = TfnError;

    fn try_from(v: [f64; 3]) -> Result<Self, Self::Error> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<TriangularFuzzyNumber> for [f64; 3] {
    fn from(t: TriangularFuzzyNumber) -> Self {
        [t.l, t.m, t.u]
    }
}

impl std::fmt::Display for TriangularFuzzyNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.l, self.m, self.u)
    }
}

/// Componentwise sum of a sequence, starting from `(0, 0, 0)`.
pub fn sum<I: IntoIterator<Item = TriangularFuzzyNumber>>(values: I) -> TriangularFuzzyNumber {
    values
        .into_iter()
        .fold(TriangularFuzzyNumber::crisp(0.0), |acc, t| acc + t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn tfn(l: f64, m: f64, u: f64) -> TriangularFuzzyNumber {
        TriangularFuzzyNumber::new(l, m, u).unwrap()
    }

    #[test]
    fn rejects_unordered_triples() {
        assert_eq!(
            TriangularFuzzyNumber::new(2.0, 0.5, 3.0),
            Err(TfnError::NotOrdered(2.0, 0.5, 3.0))
        );
        assert!(TriangularFuzzyNumber::new(1.0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn add_matches_worked_row_sums() {
        // Row-1 and row-2 sums of the category comparison matrix.
        let row1 = sum([
            tfn(1.0, 1.0, 1.0),
            tfn(2.0, 2.5, 3.0),
            tfn(1.0, 1.5, 2.0),
            tfn(1.5, 2.0, 2.5),
        ]);
        assert_eq!(row1, tfn(5.5, 7.0, 8.5));

        let row2 = sum([
            tfn(0.3, 0.4, 0.5),
            tfn(1.0, 1.0, 1.0),
            tfn(0.3, 0.4, 0.5),
            tfn(0.5, 1.0, 1.5),
        ]);
        assert_relative_eq!(row2.l(), 2.1, max_relative = 1e-12);
        assert_relative_eq!(row2.m(), 2.8, max_relative = 1e-12);
        assert_relative_eq!(row2.u(), 3.5, max_relative = 1e-12);

        let a = tfn(0.7, 1.3, 2.9);
        assert_eq!(TriangularFuzzyNumber::crisp(0.0) + a, a);
    }

    #[test]
    fn multiply_matches_worked_extents() {
        let inv_total = tfn(14.6, 18.5, 23.6).inverse().unwrap();
        assert_relative_eq!(inv_total.l(), 0.042373, epsilon = 1e-6);
        assert_relative_eq!(inv_total.m(), 0.054054, epsilon = 1e-6);
        assert_relative_eq!(inv_total.u(), 0.068493, epsilon = 1e-6);

        let cf1 = tfn(5.5, 7.0, 8.5).try_mul(inv_total).unwrap();
        assert_relative_eq!(cf1.l(), 0.233051, epsilon = 1e-6);
        assert_relative_eq!(cf1.m(), 0.378378, epsilon = 1e-6);
        assert_relative_eq!(cf1.u(), 0.582192, epsilon = 1e-6);

        let cf2 = tfn(2.1, 2.8, 3.5).try_mul(inv_total).unwrap();
        assert_relative_eq!(cf2.l(), 0.088983, epsilon = 1e-6);
        assert_relative_eq!(cf2.m(), 0.151351, epsilon = 1e-6);
        assert_relative_eq!(cf2.u(), 0.239726, epsilon = 1e-6);

        let one = tfn(1.0, 1.0, 1.0);
        let a = tfn(0.4, 0.5, 0.6);
        assert_eq!(one.try_mul(a).unwrap(), a);
        assert!(tfn(0.0, 1.0, 2.0).try_mul(a).is_err());
    }

    #[test]
    fn inverse_of_identity_and_exact_reciprocal() {
        let one = tfn(1.0, 1.0, 1.0);
        assert_eq!(one.inverse().unwrap(), one);

        // (2, 2.5, 3)^-1 by exact reciprocals; the published reciprocal scale
        // rounds this to (0.3, 0.4, 0.5).
        let inv = tfn(2.0, 2.5, 3.0).inverse().unwrap();
        assert_relative_eq!(inv.l(), 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(inv.m(), 0.4, max_relative = 1e-15);
        assert_relative_eq!(inv.u(), 0.5, max_relative = 1e-15);

        assert!(tfn(0.0, 0.5, 1.0).inverse().is_err());
    }

    #[test]
    fn scale_by_positive_reals() {
        assert_eq!(tfn(1.0, 1.5, 2.0).scale(2.0).unwrap(), tfn(2.0, 3.0, 4.0));
        let a = tfn(0.2, 0.3, 0.4);
        assert_eq!(a.scale(1.0).unwrap(), a);
        assert_eq!(
            tfn(5.5, 7.0, 8.5).scale(0.5).unwrap(),
            tfn(2.75, 3.5, 4.25)
        );
        assert_eq!(a.scale(0.0), Err(TfnError::NonPositiveScale(0.0)));
        assert_eq!(a.scale(-2.0), Err(TfnError::NonPositiveScale(-2.0)));
    }

    #[test]
    fn membership_shape() {
        let f = tfn(1.0, 2.0, 3.0);
        assert_eq!(f.membership(2.0), 1.0);
        assert_eq!(f.membership(0.5), 0.0);
        assert_eq!(f.membership(3.5), 0.0);
        assert_relative_eq!(f.membership(1.5), 0.5, max_relative = 1e-15);
        assert_relative_eq!(f.membership(2.5), 0.5, max_relative = 1e-15);
        // Degenerate segments behave as indicators at the shared point.
        let crisp = TriangularFuzzyNumber::crisp(2.0);
        assert_eq!(crisp.membership(2.0), 1.0);
        assert_eq!(crisp.membership(2.0 + 1e-9), 0.0);
        let half = tfn(1.0, 1.0, 2.0);
        assert_eq!(half.membership(1.0), 1.0);
    }

    #[test]
    fn possibility_degree_worked_values() {
        let cf1 = tfn(0.233051, 0.378378, 0.582192);
        let cf2 = tfn(0.088983, 0.151351, 0.239726);
        let cf3 = tfn(0.190678, 0.302703, 0.479452);
        let cf4 = tfn(0.105932, 0.167568, 0.315068);

        assert_relative_eq!(cf2.possibility_ge(&cf1), 0.028563, epsilon = 1e-4);
        assert_relative_eq!(cf2.possibility_ge(&cf3), 0.24475, epsilon = 1e-4);
        assert_relative_eq!(cf4.possibility_ge(&cf1), 0.28007, epsilon = 1e-4);
        assert_eq!(cf1.possibility_ge(&cf1), 1.0);
        assert_eq!(cf1.possibility_ge(&cf2), 1.0);

        // Disjoint supports, including exact tangency.
        let lo = tfn(1.0, 2.0, 3.0);
        let hi = tfn(3.0, 4.0, 5.0);
        assert_eq!(lo.possibility_ge(&hi), 0.0);
        assert_eq!(hi.possibility_ge(&lo), 1.0);
    }

    #[test]
    fn defuzzify_examples() {
        assert_relative_eq!(tfn(2.0, 2.5, 3.0).defuzzify(), 2.5, max_relative = 1e-12);
        assert_relative_eq!(tfn(0.3, 0.4, 0.5).defuzzify(), 0.4, max_relative = 1e-12);
        // Symmetric triangles defuzzify to their peak.
        assert_relative_eq!(tfn(1.7, 2.0, 2.3).defuzzify(), 2.0, max_relative = 1e-12);
    }

    fn positive_tfn() -> impl Strategy<Value = TriangularFuzzyNumber> {
        (0.01f64..10.0, 0.0f64..5.0, 0.0f64..5.0)
            .prop_map(|(l, dm, du)| tfn(l, l + dm, l + dm + du))
    }

    proptest! {
        #[test]
        fn closure_under_algebra(a in positive_tfn(), b in positive_tfn(), k in 0.01f64..100.0) {
            let cases = [a + b, a.try_mul(b).unwrap(), a.inverse().unwrap(), a.scale(k).unwrap()];
            for t in cases {
                prop_assert!(t.l() <= t.m() && t.m() <= t.u());
                prop_assert!(t.l() > 0.0);
            }
        }

        #[test]
        fn inverse_is_involutive(a in positive_tfn()) {
            let back = a.inverse().unwrap().inverse().unwrap();
            prop_assert!((back.l() - a.l()).abs() <= 1e-12 * a.l().max(1.0));
            prop_assert!((back.m() - a.m()).abs() <= 1e-12 * a.m().max(1.0));
            prop_assert!((back.u() - a.u()).abs() <= 1e-12 * a.u().max(1.0));
        }

        #[test]
        fn possibility_is_bounded_and_one_sided(a in positive_tfn(), b in positive_tfn()) {
            let vab = a.possibility_ge(&b);
            let vba = b.possibility_ge(&a);
            prop_assert!((0.0..=1.0).contains(&vab));
            prop_assert!((0.0..=1.0).contains(&vba));
            prop_assert_eq!(vab.max(vba), 1.0);
            // Exactly 1 iff the peak dominates; skip middle gaps within
            // rounding distance of a tie, where the quotient itself can
            // round to 1.
            if (a.m() - b.m()).abs() > 1e-9 {
                prop_assert_eq!(vab == 1.0, a.m() >= b.m());
            }
            if b.l() >= a.u() {
                prop_assert_eq!(vab, 0.0);
            }
        }

        #[test]
        fn defuzzify_is_linear(a in positive_tfn(), b in positive_tfn(), k in 0.01f64..100.0) {
            let scaled = a.scale(k).unwrap();
            prop_assert!((scaled.defuzzify() - k * a.defuzzify()).abs() <= 1e-9 * k.max(1.0));
            let summed = a + b;
            prop_assert!((summed.defuzzify() - (a.defuzzify() + b.defuzzify())).abs() <= 1e-12 * summed.u().max(1.0));
        }

        #[test]
        fn membership_peaks_at_m(a in positive_tfn(), x in -20.0f64..40.0) {
            prop_assert_eq!(a.membership(a.m()), 1.0);
            let grade = a.membership(x);
            prop_assert!((0.0..=1.0).contains(&grade));
            if x < a.l() || x > a.u() {
                prop_assert_eq!(grade, 0.0);
            }
        }
    }
}
