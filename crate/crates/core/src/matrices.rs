//! Granule frequency matrices and rough confusion matrices.
//!
//! Rows and columns follow the canonical order of the source partitions.
//! Indices are 0-based in this API; reports and mapping files use 1-based
//! numbering.

use serde::{Deserialize, Serialize};

use crate::classifiers::RoughClassifier;
use crate::error::{Error, Result};
use crate::system::{ObjectSet, Partition};

/// Cross-classification of granules (rows) against decision classes
/// (columns): `cells[i][j] = |X_i ∩ Y_j|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GranuleFrequencyMatrix {
    cells: Vec<Vec<u64>>,
    granule_sizes: Vec<u64>,
    class_sizes: Vec<u64>,
    total: u64,
}

impl GranuleFrequencyMatrix {
    pub fn from_partitions(granules: &Partition, decisions: &Partition) -> Result<Self> {
        if granules.universe() != decisions.universe() {
            return Err(Error::PartitionMismatch);
        }
        let cells = granules
            .blocks()
            .iter()
            .map(|x| {
                decisions
                    .blocks()
                    .iter()
                    .map(|y| x.intersection_len(y) as u64)
                    .collect()
            })
            .collect();
        GranuleFrequencyMatrix::from_counts(cells)
    }

    /// Builds a matrix from raw counts. Rows must be nonempty, of equal
    /// length, and each must contain a positive count.
    pub fn from_counts(cells: Vec<Vec<u64>>) -> Result<Self> {
        let k = cells.first().map_or(0, Vec::len);
        if cells.is_empty() || k == 0 {
            return Err(Error::InvalidMatrix(
                "a granule frequency matrix needs at least one row and column".into(),
            ));
        }
        if let Some(i) = cells.iter().position(|row| row.len() != k) {
            return Err(Error::InvalidMatrix(format!(
                "row {} has {} columns, expected {k}",
                i + 1,
                cells[i].len()
            )));
        }
        if let Some(i) = cells.iter().position(|row| row.iter().all(|&c| c == 0)) {
            return Err(Error::InvalidMatrix(format!("granule {} is empty", i + 1)));
        }
        let granule_sizes: Vec<u64> = cells.iter().map(|row| row.iter().sum()).collect();
        let class_sizes = (0..k).map(|j| cells.iter().map(|row| row[j]).sum()).collect();
        let total = granule_sizes.iter().sum();
        Ok(GranuleFrequencyMatrix {
            cells,
            granule_sizes,
            class_sizes,
            total,
        })
    }

    pub fn cells(&self) -> &[Vec<u64>] {
        &self.cells
    }

    pub fn cell(&self, granule: usize, class: usize) -> u64 {
        self.cells[granule][class]
    }

    pub fn row(&self, granule: usize) -> &[u64] {
        &self.cells[granule]
    }

    pub fn granule_count(&self) -> usize {
        self.cells.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn granule_sizes(&self) -> &[u64] {
        &self.granule_sizes
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Whether a granule has exactly one non-zero entry.
    pub fn is_deterministic(&self, granule: usize) -> bool {
        self.cells[granule].iter().filter(|&&c| c > 0).count() == 1
    }
}

/// Square matrix with predicted classes as rows and true classes as columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoughConfusionMatrix {
    cells: Vec<Vec<u64>>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
}

impl RoughConfusionMatrix {
    /// Builds a confusion matrix directly from counts; `cells` must be square.
    pub fn from_counts(cells: Vec<Vec<u64>>) -> Result<Self> {
        let k = cells.len();
        if k == 0 {
            return Err(Error::InvalidMatrix(
                "a confusion matrix needs at least one class".into(),
            ));
        }
        if let Some(i) = cells.iter().position(|row| row.len() != k) {
            return Err(Error::InvalidMatrix(format!(
                "row {} has {} columns, expected {k}",
                i + 1,
                cells[i].len()
            )));
        }
        let row_sums: Vec<u64> = cells.iter().map(|row| row.iter().sum()).collect();
        let col_sums = (0..k).map(|j| cells.iter().map(|row| row[j]).sum()).collect();
        let total = row_sums.iter().sum();
        if total == 0 {
            return Err(Error::InvalidMatrix(
                "a confusion matrix must count at least one object".into(),
            ));
        }
        Ok(RoughConfusionMatrix {
            cells,
            row_sums,
            col_sums,
            total,
        })
    }

    pub fn cells(&self) -> &[Vec<u64>] {
        &self.cells
    }

    /// Count of objects of true class `truth` predicted as `predicted`.
    pub fn cell(&self, predicted: usize, truth: usize) -> u64 {
        self.cells[predicted][truth]
    }

    pub fn class_count(&self) -> usize {
        self.cells.len()
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn diagonal(&self) -> impl Iterator<Item = u64> + '_ {
        self.cells.iter().enumerate().map(|(i, row)| row[i])
    }

    pub fn trace(&self) -> u64 {
        self.diagonal().sum()
    }
}

/// Union of the granules the classifier maps to `class`; empty when no
/// granule is mapped there.
pub fn predictor_set(classifier: &RoughClassifier, class: usize, granules: &Partition) -> Result<ObjectSet> {
    if class >= classifier.class_count() {
        return Err(Error::ClassIndexOutOfRange {
            index: class,
            classes: classifier.class_count(),
        });
    }
    if classifier.granule_count() != granules.len() {
        return Err(Error::ShapeMismatch {
            expected: granules.len(),
            found: classifier.granule_count(),
        });
    }
    let mut out = ObjectSet::new();
    for granule in classifier.preimage(class) {
        out.extend(&granules.blocks()[granule]);
    }
    Ok(out)
}

/// Relabels each granule row with its predicted class and sums rows that
/// share a label. Classes with an empty preimage get a row of zeros.
pub fn confusion_matrix(gfm: &GranuleFrequencyMatrix, classifier: &RoughClassifier) -> Result<RoughConfusionMatrix> {
    if classifier.granule_count() != gfm.granule_count() {
        return Err(Error::ShapeMismatch {
            expected: gfm.granule_count(),
            found: classifier.granule_count(),
        });
    }
    let k = gfm.class_count();
    if classifier.class_count() != k {
        return Err(Error::InvalidMatrix(format!(
            "classifier targets {} classes, matrix has {k}",
            classifier.class_count()
        )));
    }
    let mut cells = vec![vec![0u64; k]; k];
    for (granule, &predicted) in classifier.assignment().iter().enumerate() {
        for (acc, &c) in cells[predicted].iter_mut().zip(gfm.row(granule)) {
            *acc += c;
        }
    }
    RoughConfusionMatrix::from_counts(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::electronics;

    fn example() -> (Partition, Partition, GranuleFrequencyMatrix) {
        let ds = electronics();
        let x = ds.partition_by(&["Price", "Sound"]).unwrap();
        let y = ds.decision_partition();
        let gfm = GranuleFrequencyMatrix::from_partitions(&x, &y).unwrap();
        (x, y, gfm)
    }

    fn example_classifier() -> RoughClassifier {
        RoughClassifier::new(vec![0, 1, 1, 0], 2).unwrap()
    }

    #[test]
    fn granule_frequency_matrix_of_example() {
        let (_, _, gfm) = example();
        assert_eq!(gfm.cells(), &[vec![1, 1], vec![0, 1], vec![0, 1], vec![2, 0]]);
        assert_eq!(gfm.granule_sizes(), &[2, 1, 1, 2]);
        assert_eq!(gfm.class_sizes(), &[3, 3]);
        assert_eq!(gfm.total(), 6);
        assert!(!gfm.is_deterministic(0));
        assert!(gfm.is_deterministic(3));
    }

    #[test]
    fn identical_partitions_give_diagonal() {
        let (_, y, _) = example();
        let gfm = GranuleFrequencyMatrix::from_partitions(&y, &y).unwrap();
        assert_eq!(gfm.cells(), &[vec![3, 0], vec![0, 3]]);
    }

    #[test]
    fn singleton_granules_give_indicator_rows() {
        let ds = electronics();
        let x = ds.partition_by(&ds.condition_names()).unwrap();
        let gfm = GranuleFrequencyMatrix::from_partitions(&x, &ds.decision_partition()).unwrap();
        assert_eq!(gfm.granule_count(), 6);
        assert!(gfm
            .cells()
            .iter()
            .all(|r| r.iter().sum::<u64>() == 1 && r.iter().all(|&c| c <= 1)));
    }

    #[test]
    fn mismatched_universes() {
        let (x, _, _) = example();
        let other = Partition::new(vec![ObjectSet::from([1, 2, 3]), ObjectSet::from([4, 5, 6, 7])]).unwrap();
        assert!(matches!(
            GranuleFrequencyMatrix::from_partitions(&x, &other),
            Err(Error::PartitionMismatch)
        ));
    }

    #[test]
    fn invalid_counts() {
        assert!(GranuleFrequencyMatrix::from_counts(vec![]).is_err());
        assert!(GranuleFrequencyMatrix::from_counts(vec![vec![1, 0], vec![0]]).is_err());
        assert!(GranuleFrequencyMatrix::from_counts(vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(RoughConfusionMatrix::from_counts(vec![vec![1, 0]]).is_err());
        assert!(RoughConfusionMatrix::from_counts(vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn predictor_sets() {
        let (x, _, _) = example();
        let f = example_classifier();
        assert_eq!(predictor_set(&f, 0, &x).unwrap(), ObjectSet::from([1, 4, 5, 6]));
        assert_eq!(predictor_set(&f, 1, &x).unwrap(), ObjectSet::from([2, 3]));
        let constant = RoughClassifier::new(vec![0; 4], 2).unwrap();
        assert_eq!(predictor_set(&constant, 1, &x).unwrap(), ObjectSet::new());
        assert!(matches!(
            predictor_set(&f, 2, &x),
            Err(Error::ClassIndexOutOfRange { index: 2, classes: 2 })
        ));
    }

    #[test]
    fn confusion_matrix_of_example() {
        let (_, _, gfm) = example();
        let cm = confusion_matrix(&gfm, &example_classifier()).unwrap();
        assert_eq!(cm.cells(), &[vec![3, 1], vec![0, 2]]);
        assert_eq!(cm.row_sums(), &[4, 2]);
        assert_eq!(cm.col_sums(), &[3, 3]);
        assert_eq!(cm.total(), 6);
        assert_eq!(cm.trace(), 5);
    }

    #[test]
    fn identity_classifier_gives_diagonal() {
        let (_, y, _) = example();
        let gfm = GranuleFrequencyMatrix::from_partitions(&y, &y).unwrap();
        let cm = confusion_matrix(&gfm, &RoughClassifier::new(vec![0, 1], 2).unwrap()).unwrap();
        assert_eq!(cm.cells(), &[vec![3, 0], vec![0, 3]]);
    }

    #[test]
    fn constant_classifier_fills_empty_rows_with_zeros() {
        let (_, _, gfm) = example();
        let cm = confusion_matrix(&gfm, &RoughClassifier::new(vec![0; 4], 2).unwrap()).unwrap();
        assert_eq!(cm.cells(), &[vec![3, 3], vec![0, 0]]);
    }

    #[test]
    fn wrong_shape() {
        let (_, _, gfm) = example();
        let f = RoughClassifier::new(vec![0, 1, 1], 2).unwrap();
        assert!(matches!(
            confusion_matrix(&gfm, &f),
            Err(Error::ShapeMismatch { expected: 4, found: 3 })
        ));
    }
}
