//! Rough set analysis of classifiers through rough confusion matrices.
//!
//! A [`DecisionSystem`](system::DecisionSystem) is partitioned into granules
//! by a set of condition attributes. Each decision class is approximated from
//! below and above by unions of granules ([`approximation`]). Cross-classifying
//! granules against decision classes gives a
//! [`GranuleFrequencyMatrix`](matrices::GranuleFrequencyMatrix); a
//! [`RoughClassifier`](classifiers::RoughClassifier) maps every granule to a
//! class and aggregates that matrix into a
//! [`RoughConfusionMatrix`](matrices::RoughConfusionMatrix).
//!
//! From the confusion matrix alone, [`indices`] estimates the approximation
//! quality and bounds the sizes of the lower and upper approximations of each
//! class. The [`oracle`] module recomputes the true sizes by brute force and
//! checks every bound on seeded random systems.
//!
//! ```
//! use rough_confusion::prelude::*;
//!
//! let ds = rough_confusion::fixtures::electronics();
//! let granules = ds.partition_by(&["Price", "Sound"])?;
//! let gfm = GranuleFrequencyMatrix::from_partitions(&granules, &ds.decision_partition())?;
//! let mrc = maximal_row_classifier(&gfm, TieBreak::Lowest);
//! let cm = confusion_matrix(&gfm, &mrc)?;
//! assert_eq!(cm.cells(), &[vec![3, 1], vec![0, 2]]);
//! assert_eq!(success_ratio(&cm), ratio(5, 6));
//! # Ok::<(), rough_confusion::Error>(())
//! ```

pub mod approximation;
pub mod classifiers;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod indices;
pub mod io;
pub mod matrices;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod system;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::approximation::{deterministic_region, is_definable, lower_approximation, upper_approximation};
    pub use crate::classifiers::{
        maximal_row_classifier, success_ratio, validate_overlap, ClassifierKind, RoughClassifier, TieBreak,
        ValidationReport,
    };
    pub use crate::indices::{
        alpha_from_gamma, alpha_hat, alpha_hat_per_class, approximation_summary, confusion_bounds, gamma_hat,
        indicator, ApproximationSummary, BoundsReport,
    };
    pub use crate::matrices::{confusion_matrix, predictor_set, GranuleFrequencyMatrix, RoughConfusionMatrix};
    pub use crate::rational::{ratio, Rational};
    pub use crate::system::{Attribute, DecisionSystem, ObjectSet, Partition};
}
