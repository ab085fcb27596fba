//! Rough classifiers: total maps from granules to decision classes.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::{GranuleFrequencyMatrix, RoughConfusionMatrix};
use crate::rational::{ratio, Rational};

/// Assignment of every granule (0-based) to a decision class (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RoughClassifier {
    assignment: Vec<usize>,
    classes: usize,
}

impl RoughClassifier {
    pub fn new(assignment: Vec<usize>, classes: usize) -> Result<Self> {
        if let Some(&bad) = assignment.iter().find(|&&c| c >= classes) {
            return Err(Error::ClassIndexOutOfRange { index: bad, classes });
        }
        Ok(RoughClassifier { assignment, classes })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Class assigned to `granule`.
    pub fn class_of(&self, granule: usize) -> usize {
        self.assignment[granule]
    }

    pub fn granule_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    /// Granules mapped to `class`, ascending.
    pub fn preimage(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |&(_, &c)| c == class)
            .map(|(g, _)| g)
    }

    /// Parses a mapping file: one `granule class` pair of 1-based indices per
    /// line, `#` starting a comment. Every granule in `1..=granules` must
    /// appear exactly once.
    pub fn parse_mapping(text: &str, granules: usize, classes: usize, path: &Path) -> Result<Self> {
        let err = |line: usize, message: String| Error::ClassifierFile {
            path: path.to_owned(),
            line,
            message,
        };
        let mut assignment: Vec<Option<usize>> = vec![None; granules];
        for (lineno, raw) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(err(
                    lineno,
                    format!("expected `granule class`, found {} fields", fields.len()),
                ));
            }
            let parse = |s: &str, what: &str, max: usize| -> Result<usize> {
                let v: usize = s
                    .parse()
                    .map_err(|_| err(lineno, format!("{what} index `{s}` is not a positive integer")))?;
                if v == 0 || v > max {
                    return Err(err(lineno, format!("{what} index {v} is outside 1..={max}")));
                }
                Ok(v - 1)
            };
            let g = parse(fields[0], "granule", granules)?;
            let c = parse(fields[1], "class", classes)?;
            if assignment[g].replace(c).is_some() {
                return Err(err(lineno, format!("granule {} is assigned more than once", g + 1)));
            }
        }
        let missing: Vec<String> = assignment
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_none())
            .map(|(g, _)| (g + 1).to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::ClassifierFile {
                path: path.to_owned(),
                line: text.lines().count(),
                message: format!("no class assigned to granule(s) {}", missing.join(", ")),
            });
        }
        RoughClassifier::new(assignment.into_iter().flatten().collect(), classes)
    }

    /// Inverse of [`RoughClassifier::parse_mapping`].
    pub fn to_mapping(&self) -> String {
        let mut out = String::from("# granule class\n");
        for (g, c) in self.assignment.iter().enumerate() {
            out.push_str(&format!("{} {}\n", g + 1, c + 1));
        }
        out
    }
}

/// How the maximal row classifier picks among tied maxima.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "kebab-case")]
pub enum TieBreak {
    #[default]
    Lowest,
    Highest,
    /// Uniform choice among the tied classes, driven by ChaCha8 seeded with
    /// `seed`.
    SeededRandom {
        seed: u64,
    },
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieBreak::Lowest => f.write_str("lowest"),
            TieBreak::Highest => f.write_str("highest"),
            TieBreak::SeededRandom { seed } => write!(f, "random(seed={seed})"),
        }
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    /// Accepts `lowest`, `highest`, `random` (seed 0) or `random:SEED`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lowest" => Ok(TieBreak::Lowest),
            "highest" => Ok(TieBreak::Highest),
            "random" => Ok(TieBreak::SeededRandom { seed: 0 }),
            other => other
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(|seed| TieBreak::SeededRandom { seed })
                .ok_or_else(|| Error::Config(format!("unknown tie-break policy `{other}`"))),
        }
    }
}

/// Where a classifier came from, recorded in reports for replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassifierKind {
    /// Maximal row classifier.
    Mrc { tie_break: TieBreak },
    /// Uniform choice among the classes each granule overlaps.
    RandomOverlapping { seed: u64 },
    /// Supplied by the caller, e.g. from a mapping file.
    Explicit { source: String },
}

impl fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifierKind::Mrc { tie_break } => write!(f, "mrc (tie-break {tie_break})"),
            ClassifierKind::RandomOverlapping { seed } => write!(f, "random overlapping (seed {seed})"),
            ClassifierKind::Explicit { source } => write!(f, "explicit ({source})"),
        }
    }
}

/// Maps each granule to a class holding the largest share of it.
pub fn maximal_row_classifier(gfm: &GranuleFrequencyMatrix, tie_break: TieBreak) -> RoughClassifier {
    let mut rng = match tie_break {
        TieBreak::SeededRandom { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let assignment = gfm
        .cells()
        .iter()
        .map(|row| {
            let best = *row.iter().max().expect("rows are nonempty");
            let ties: Vec<usize> = (0..row.len()).filter(|&j| row[j] == best).collect();
            match (&tie_break, rng.as_mut()) {
                (TieBreak::Highest, _) => *ties.last().unwrap(),
                (TieBreak::SeededRandom { .. }, Some(rng)) if ties.len() > 1 => ties[rng.random_range(0..ties.len())],
                _ => ties[0],
            }
        })
        .collect();
    RoughClassifier {
        assignment,
        classes: gfm.class_count(),
    }
}

/// Whether `classifier` picks a row maximum for every granule.
pub fn is_row_maximal(classifier: &RoughClassifier, gfm: &GranuleFrequencyMatrix) -> bool {
    classifier.granule_count() == gfm.granule_count()
        && gfm
            .cells()
            .iter()
            .zip(classifier.assignment())
            .all(|(row, &c)| row.get(c).is_some_and(|v| Some(v) == row.iter().max()))
}

/// Result of checking that every granule overlaps the class it is mapped to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub satisfies_rule: bool,
    /// 0-based indices of granules disjoint from their assigned class.
    pub violations: Vec<usize>,
}

impl ValidationReport {
    /// A report asserting nothing was checked.
    pub fn unchecked() -> Self {
        ValidationReport {
            satisfies_rule: false,
            violations: Vec::new(),
        }
    }
}

/// Checks that each granule shares at least one object with its class.
pub fn validate_overlap(classifier: &RoughClassifier, gfm: &GranuleFrequencyMatrix) -> Result<ValidationReport> {
    if classifier.granule_count() != gfm.granule_count() {
        return Err(Error::ShapeMismatch {
            expected: gfm.granule_count(),
            found: classifier.granule_count(),
        });
    }
    if classifier.class_count() != gfm.class_count() {
        return Err(Error::InvalidMatrix(format!(
            "classifier targets {} classes, matrix has {}",
            classifier.class_count(),
            gfm.class_count()
        )));
    }
    let violations: Vec<usize> = (0..gfm.granule_count())
        .filter(|&g| gfm.cell(g, classifier.class_of(g)) == 0)
        .collect();
    Ok(ValidationReport {
        satisfies_rule: violations.is_empty(),
        violations,
    })
}

/// Fraction of objects on the diagonal.
pub fn success_ratio(cm: &RoughConfusionMatrix) -> Rational {
    ratio(cm.trace(), cm.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::electronics;
    use crate::matrices::confusion_matrix;

    fn example_gfm() -> GranuleFrequencyMatrix {
        let ds = electronics();
        let x = ds.partition_by(&["Price", "Sound"]).unwrap();
        GranuleFrequencyMatrix::from_partitions(&x, &ds.decision_partition()).unwrap()
    }

    #[test]
    fn classifier_construction() {
        assert!(RoughClassifier::new(vec![0, 2], 2).is_err());
        let f = RoughClassifier::new(vec![1, 0, 1], 2).unwrap();
        assert_eq!(f.preimage(1).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(f.preimage(0).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn overlap_on_example() {
        let gfm = example_gfm();
        let f = RoughClassifier::new(vec![0, 1, 1, 0], 2).unwrap();
        let report = validate_overlap(&f, &gfm).unwrap();
        assert!(report.satisfies_rule);
        assert!(report.violations.is_empty());

        let g = RoughClassifier::new(vec![0, 1, 1, 1], 2).unwrap();
        let report = validate_overlap(&g, &gfm).unwrap();
        assert!(!report.satisfies_rule);
        assert_eq!(report.violations, vec![3]);

        let short = RoughClassifier::new(vec![0, 1], 2).unwrap();
        assert!(matches!(
            validate_overlap(&short, &gfm),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn deterministic_system_has_no_violations() {
        let gfm = GranuleFrequencyMatrix::from_counts(vec![vec![2, 0, 0], vec![0, 0, 1], vec![0, 4, 0]]).unwrap();
        let f = RoughClassifier::new(vec![0, 2, 1], 3).unwrap();
        assert!(validate_overlap(&f, &gfm).unwrap().satisfies_rule);
    }

    #[test]
    fn mrc_on_example() {
        let gfm = example_gfm();
        let f = maximal_row_classifier(&gfm, TieBreak::Lowest);
        assert_eq!(f.assignment(), &[0, 1, 1, 0]);
        assert!(is_row_maximal(&f, &gfm));
        let h = maximal_row_classifier(&gfm, TieBreak::Highest);
        assert_eq!(h.assignment(), &[1, 1, 1, 0]);
        assert!(validate_overlap(&h, &gfm).unwrap().satisfies_rule);
    }

    #[test]
    fn mrc_on_diagonal_is_identity() {
        let gfm = GranuleFrequencyMatrix::from_counts(vec![vec![3, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]).unwrap();
        assert_eq!(maximal_row_classifier(&gfm, TieBreak::Lowest).assignment(), &[0, 1, 2]);
    }

    #[test]
    fn tie_break_policies() {
        let gfm = GranuleFrequencyMatrix::from_counts(vec![vec![0, 5, 5]]).unwrap();
        assert_eq!(maximal_row_classifier(&gfm, TieBreak::Highest).assignment(), &[2]);
        assert_eq!(maximal_row_classifier(&gfm, TieBreak::Lowest).assignment(), &[1]);
        for seed in 0..32 {
            let f = maximal_row_classifier(&gfm, TieBreak::SeededRandom { seed });
            assert!(f.class_of(0) == 1 || f.class_of(0) == 2);
            assert_eq!(f, maximal_row_classifier(&gfm, TieBreak::SeededRandom { seed }));
        }
    }

    #[test]
    fn tie_break_parsing() {
        assert_eq!("lowest".parse::<TieBreak>().unwrap(), TieBreak::Lowest);
        assert_eq!("highest".parse::<TieBreak>().unwrap(), TieBreak::Highest);
        assert_eq!(
            "random:7".parse::<TieBreak>().unwrap(),
            TieBreak::SeededRandom { seed: 7 }
        );
        assert!("middle".parse::<TieBreak>().is_err());
    }

    #[test]
    fn success_ratios() {
        let gfm = example_gfm();
        let cm = confusion_matrix(&gfm, &RoughClassifier::new(vec![0, 1, 1, 0], 2).unwrap()).unwrap();
        assert_eq!(success_ratio(&cm), ratio(5, 6));
        let diag = RoughConfusionMatrix::from_counts(vec![vec![2, 0], vec![0, 7]]).unwrap();
        assert_eq!(success_ratio(&diag), ratio(1, 1));
        let off = RoughConfusionMatrix::from_counts(vec![vec![0, 3], vec![4, 0]]).unwrap();
        assert_eq!(success_ratio(&off), ratio(0, 1));
    }

    #[test]
    fn mapping_files() {
        let path = Path::new("f.map");
        let text = "# example\n1 1\n2 2 # comment\n\n4 1\n3 2\n";
        let f = RoughClassifier::parse_mapping(text, 4, 2, path).unwrap();
        assert_eq!(f.assignment(), &[0, 1, 1, 0]);
        assert_eq!(RoughClassifier::parse_mapping(&f.to_mapping(), 4, 2, path).unwrap(), f);

        let line_of = |text: &str| match RoughClassifier::parse_mapping(text, 4, 2, path) {
            Err(Error::ClassifierFile { line, .. }) => line,
            other => panic!("expected a mapping error, got {other:?}"),
        };
        assert_eq!(line_of("1 1\n2 3\n3 1\n4 1\n"), 2);
        assert_eq!(line_of("1 1\n1 2\n"), 2);
        assert_eq!(line_of("1 1 1\n"), 1);
        assert_eq!(line_of("0 1\n"), 1);
        assert_eq!(line_of("x 1\n"), 1);
        assert_eq!(line_of("1 1\n2 1\n"), 2);
    }
}
