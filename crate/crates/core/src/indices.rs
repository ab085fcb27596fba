//! Approximation quality indices and the bounds on lower/upper approximation
//! sizes that can be read off a rough confusion matrix.
//!
//! Everything is exact. Counts are `u64`, ratios are [`Rational`].

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::approximation::{lower_approximation, upper_approximation};
use crate::classifiers::ValidationReport;
use crate::error::{Error, Result};
use crate::matrices::RoughConfusionMatrix;
use crate::rational::{ratio, Rational};
use crate::system::Partition;

/// 0 for 0, 1 otherwise.
pub fn indicator(b: u64) -> u64 {
    u64::from(b != 0)
}

/// Sizes of one decision class and its approximations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassApproximation {
    /// |Y|
    pub size: u64,
    /// |Low(Y)|
    pub lower: u64,
    /// |Upp(Y)|
    pub upper: u64,
}

impl ClassApproximation {
    /// Lower precision `|Low(Y)| / |Y|`.
    pub fn lower_precision(&self) -> Rational {
        ratio(self.lower, self.size)
    }

    /// Upper precision `|Y| / |Upp(Y)|`.
    pub fn upper_precision(&self) -> Rational {
        ratio(self.size, self.upper)
    }

    /// Accuracy of approximation `|Low(Y)| / |Upp(Y)|`.
    pub fn accuracy(&self) -> Rational {
        ratio(self.lower, self.upper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationSummary {
    pub classes: Vec<ClassApproximation>,
    /// Number of objects.
    pub total: u64,
    /// Quality of approximation: share of objects in some lower approximation.
    pub gamma: Rational,
}

/// Approximates every decision class by the granules and summarizes.
pub fn approximation_summary(granules: &Partition, decisions: &Partition) -> Result<ApproximationSummary> {
    if granules.universe() != decisions.universe() {
        return Err(Error::PartitionMismatch);
    }
    let classes = decisions
        .blocks()
        .iter()
        .map(|y| {
            Ok(ClassApproximation {
                size: y.len() as u64,
                lower: lower_approximation(granules, y)?.len() as u64,
                upper: upper_approximation(granules, y)?.len() as u64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = granules.universe().len() as u64;
    let gamma = classes.iter().map(|c| ratio(c.size, total) * c.lower_precision()).sum();
    Ok(ApproximationSummary { classes, total, gamma })
}

/// Share of diagonal counts, the confusion-matrix estimate of gamma.
pub fn gamma_hat(cm: &RoughConfusionMatrix) -> Rational {
    ratio(cm.trace(), cm.total())
}

/// `n_ii / (n_i• + n_•i − n_ii)` per class; `None` when class `i` is neither
/// predicted nor observed, where the ratio is 0/0.
pub fn alpha_hat_per_class(cm: &RoughConfusionMatrix) -> Vec<Option<Rational>> {
    (0..cm.class_count())
        .map(|i| {
            let den = cm.row_sums()[i] + cm.col_sums()[i] - cm.cell(i, i);
            (den > 0).then(|| ratio(cm.cell(i, i), den))
        })
        .collect()
}

/// `Σ n_ii / Σ (n_i• + n_•i − n_ii)`.
pub fn alpha_hat(cm: &RoughConfusionMatrix) -> Rational {
    let den: u64 = (0..cm.class_count())
        .map(|i| cm.row_sums()[i] + cm.col_sums()[i] - cm.cell(i, i))
        .sum();
    ratio(cm.trace(), den)
}

/// `g / (2 − g)` for `g` in `[0, 1]`.
pub fn alpha_from_gamma(gamma: Rational) -> Result<Rational> {
    if gamma > Rational::one() {
        return Err(Error::OutOfUnitInterval(gamma.to_string()));
    }
    Ok(gamma / (Rational::from_integer(2) - gamma))
}

/// Bounds for one decision class `j`, all computed from the confusion matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassBounds {
    /// Column sum, i.e. |Y_j|.
    pub class_size: u64,
    /// `n_jj`
    pub nl_star: u64,
    /// `n_jj − Ind(Σ_{t≠j} n_jt)`
    pub nl_star2: u64,
    /// `n_jj + Σ_{i≠j} (n_ij + n_ji)`
    pub nu_star: u64,
    /// `nu_star + Σ_{i≠j} Ind(n_ij)`
    pub nu_star2: u64,
    /// `n_jj − max_{t≠j} n_jt`; maximal row classifiers only.
    pub nl_m: Option<u64>,
    /// `n_jj + Σ_{i≠j} (n_ji + 2·n_ij)`; maximal row classifiers only.
    pub nu_m: Option<u64>,
    /// Set when a lower bound came out negative and was clamped to 0.
    pub clamped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub classes: Vec<ClassBounds>,
    /// The classifier was checked and satisfies the overlap rule.
    pub rule_validated: bool,
    /// `nl_m`/`nu_m` are populated.
    pub mrc_classifier: bool,
}

impl BoundsReport {
    /// Checks the inequalities that need nothing beyond the matrix:
    /// `nl** ≤ nl* ≤ |Y_j| ≤ nu* ≤ nu**` for validated classifiers, plus
    /// `nl_m ≤ nl** ≤ nu_m` for maximal row classifiers. Vacuously true
    /// when the classifier was not validated.
    pub fn fragments_hold(&self) -> bool {
        if !self.rule_validated {
            return true;
        }
        self.classes.iter().all(|c| {
            let base = c.nl_star2 <= c.nl_star
                && c.nl_star <= c.class_size
                && c.class_size <= c.nu_star
                && c.nu_star <= c.nu_star2;
            let mrc = match (self.mrc_classifier, c.nl_m, c.nu_m) {
                (true, Some(nl_m), Some(nu_m)) => nl_m <= c.nl_star2 && c.nl_star2 <= nu_m,
                (true, _, _) => false,
                (false, _, _) => true,
            };
            base && mrc
        })
    }
}

/// Computes every bound family for every class. Negative lower bounds,
/// possible only for classifiers that break the overlap rule, are clamped
/// to 0 and flagged.
pub fn confusion_bounds(cm: &RoughConfusionMatrix, validation: &ValidationReport, is_mrc: bool) -> BoundsReport {
    let k = cm.class_count();
    let classes = (0..k)
        .map(|j| {
            let diag = cm.cell(j, j);
            let others = (0..k).filter(|&t| t != j);
            let row_off: u64 = others.clone().map(|t| cm.cell(j, t)).sum();
            let col_off: u64 = others.clone().map(|i| cm.cell(i, j)).sum();
            let col_hits: u64 = others.clone().map(|i| indicator(cm.cell(i, j))).sum();
            let row_max = others.map(|t| cm.cell(j, t)).max().unwrap_or(0);

            let mut clamped = false;
            let mut clamp_sub = |a: u64, b: u64| {
                a.checked_sub(b).unwrap_or_else(|| {
                    clamped = true;
                    0
                })
            };
            let nl_star2 = clamp_sub(diag, indicator(row_off));
            let nl_m = is_mrc.then(|| clamp_sub(diag, row_max));
            let nu_star = diag + col_off + row_off;
            ClassBounds {
                class_size: cm.col_sums()[j],
                nl_star: diag,
                nl_star2,
                nu_star,
                nu_star2: nu_star + col_hits,
                nl_m,
                nu_m: is_mrc.then(|| diag + row_off + 2 * col_off),
                clamped,
            }
        })
        .collect();
    BoundsReport {
        classes,
        rule_validated: validation.satisfies_rule,
        mrc_classifier: is_mrc,
    }
}

impl ApproximationSummary {
    /// True when the summary respects `nl ≤ n ≤ nu`, `α_i = p_i · p^i` and
    /// both indices lie in `[0, 1]`.
    pub fn is_consistent(&self) -> bool {
        let unit = |r: &Rational| *r >= Rational::zero() && *r <= Rational::one();
        self.classes.iter().all(|c| {
            c.lower <= c.size
                && c.size <= c.upper
                && c.accuracy() == c.lower_precision() * c.upper_precision()
                && unit(&c.accuracy())
        }) && unit(&self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::electronics;

    fn table8() -> RoughConfusionMatrix {
        RoughConfusionMatrix::from_counts(vec![vec![3, 1], vec![0, 2]]).unwrap()
    }

    fn validated() -> ValidationReport {
        ValidationReport {
            satisfies_rule: true,
            violations: vec![],
        }
    }

    #[test]
    fn indicator_values() {
        assert_eq!(indicator(0), 0);
        assert_eq!(indicator(1), 1);
        assert_eq!(indicator(17), 1);
    }

    #[test]
    fn summary_of_example() {
        let ds = electronics();
        let x = ds.partition_by(&["Price", "Sound"]).unwrap();
        let s = approximation_summary(&x, &ds.decision_partition()).unwrap();
        assert_eq!(s.gamma, ratio(2, 3));
        let c1 = &s.classes[0];
        assert_eq!((c1.size, c1.lower, c1.upper), (3, 2, 4));
        assert_eq!(c1.accuracy(), ratio(1, 2));
        assert_eq!(c1.lower_precision(), ratio(2, 3));
        assert_eq!(c1.upper_precision(), ratio(3, 4));
        assert_eq!(s.classes[1].accuracy(), ratio(1, 2));
        assert!(s.is_consistent());
    }

    #[test]
    fn summary_of_definable_classes() {
        let d = electronics().decision_partition();
        let s = approximation_summary(&d, &d).unwrap();
        assert_eq!(s.gamma, ratio(1, 1));
        assert!(s.classes.iter().all(|c| c.accuracy() == ratio(1, 1)));
    }

    #[test]
    fn gamma_hat_values() {
        assert_eq!(gamma_hat(&table8()), ratio(5, 6));
        let diag = RoughConfusionMatrix::from_counts(vec![vec![1, 0], vec![0, 4]]).unwrap();
        assert_eq!(gamma_hat(&diag), ratio(1, 1));
        let off = RoughConfusionMatrix::from_counts(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(gamma_hat(&off), ratio(0, 1));
    }

    #[test]
    fn alpha_hats() {
        let cm = table8();
        assert_eq!(alpha_hat_per_class(&cm), vec![Some(ratio(3, 4)), Some(ratio(2, 3))]);
        assert_eq!(alpha_hat(&cm), ratio(5, 7));
        assert_eq!(alpha_from_gamma(gamma_hat(&cm)).unwrap(), ratio(5, 7));

        let diag = RoughConfusionMatrix::from_counts(vec![vec![1, 0], vec![0, 4]]).unwrap();
        assert_eq!(alpha_hat_per_class(&diag), vec![Some(ratio(1, 1)); 2]);

        let unused = RoughConfusionMatrix::from_counts(vec![vec![2, 0, 1], vec![0, 0, 0], vec![0, 0, 3]]).unwrap();
        assert_eq!(alpha_hat_per_class(&unused)[1], None);
    }

    #[test]
    fn alpha_from_gamma_values() {
        assert_eq!(alpha_from_gamma(ratio(2, 3)).unwrap(), ratio(1, 2));
        assert_eq!(alpha_from_gamma(ratio(0, 1)).unwrap(), ratio(0, 1));
        assert_eq!(alpha_from_gamma(ratio(1, 1)).unwrap(), ratio(1, 1));
        assert!(matches!(
            alpha_from_gamma(ratio(4, 3)),
            Err(Error::OutOfUnitInterval(_))
        ));
    }

    #[test]
    fn bounds_of_example() {
        let b = confusion_bounds(&table8(), &validated(), true);
        let c1 = &b.classes[0];
        assert_eq!((c1.nl_star, c1.nl_star2, c1.nu_star, c1.nu_star2), (3, 2, 4, 4));
        assert_eq!((c1.nl_m, c1.nu_m), (Some(2), Some(4)));
        let c2 = &b.classes[1];
        assert_eq!((c2.nl_star, c2.nl_star2, c2.nu_star, c2.nu_star2), (2, 2, 3, 4));
        assert_eq!((c2.nl_m, c2.nu_m), (Some(2), Some(4)));
        assert!(b.fragments_hold());
        assert!(!b.classes.iter().any(|c| c.clamped));

        let plain = confusion_bounds(&table8(), &validated(), false);
        assert!(plain.classes.iter().all(|c| c.nl_m.is_none() && c.nu_m.is_none()));
    }

    #[test]
    fn bounds_of_diagonal() {
        let cm = RoughConfusionMatrix::from_counts(vec![vec![2, 0, 0], vec![0, 5, 0], vec![0, 0, 1]]).unwrap();
        let b = confusion_bounds(&cm, &validated(), true);
        for (c, n) in b.classes.iter().zip([2, 5, 1]) {
            assert_eq!([c.nl_star, c.nl_star2, c.nu_star, c.nu_star2], [n; 4]);
            assert_eq!((c.nl_m, c.nu_m), (Some(n), Some(n)));
        }
    }

    #[test]
    fn negative_bounds_are_clamped() {
        // Row 1 predicts only objects of class 2: impossible under the overlap rule.
        let cm = RoughConfusionMatrix::from_counts(vec![vec![0, 2], vec![1, 1]]).unwrap();
        let b = confusion_bounds(&cm, &ValidationReport::unchecked(), true);
        assert_eq!(b.classes[0].nl_star2, 0);
        assert_eq!(b.classes[0].nl_m, Some(0));
        assert!(b.classes[0].clamped);
        assert!(!b.rule_validated);
        assert!(b.fragments_hold());
    }
}
