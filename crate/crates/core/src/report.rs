//! The analysis pipeline and its serializable report.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::approximation::deterministic_region;
use crate::classifiers::{
    is_row_maximal, maximal_row_classifier, success_ratio, validate_overlap, ClassifierKind, RoughClassifier, TieBreak,
};
use crate::error::Result;
use crate::indices::{
    alpha_from_gamma, alpha_hat, alpha_hat_per_class, approximation_summary, confusion_bounds, gamma_hat, BoundsReport,
};
use crate::io::read_classifier;
use crate::matrices::{confusion_matrix, GranuleFrequencyMatrix, RoughConfusionMatrix};
use crate::oracle::{verify_theorems, Status, TheoremReport};
use crate::rational::{to_decimal_string, RationalRepr};
use crate::system::DecisionSystem;

/// Where the analyzed classifier comes from.
#[derive(Clone, Debug)]
pub enum ClassifierSource {
    Mrc(TieBreak),
    MappingFile(PathBuf),
    Given { classifier: RoughClassifier, label: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub file: String,
    pub objects: usize,
    pub granules: usize,
    pub classes: usize,
    pub attributes: Vec<String>,
    pub decision: String,
    /// Decision value of each class, in class order.
    pub class_labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierReport {
    #[serde(flatten)]
    pub kind: ClassifierKind,
    /// `[granule, class]` pairs, both 1-based.
    pub mapping: Vec<[usize; 2]>,
    pub satisfies_rule: bool,
    /// 1-based granules disjoint from their assigned class.
    pub violations: Vec<usize>,
    pub row_maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassApproximationReport {
    pub class: usize,
    pub size: u64,
    pub lower: u64,
    pub upper: u64,
    pub lower_precision: RationalRepr,
    pub upper_precision: RationalRepr,
    pub accuracy: RationalRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    pub gamma: RationalRepr,
    pub alpha_from_gamma: RationalRepr,
    pub classes: Vec<ClassApproximationReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfusionIndices {
    pub success_ratio: RationalRepr,
    pub gamma_hat: RationalRepr,
    /// `None` marks a class that is neither predicted nor observed.
    pub alpha_hat_per_class: Vec<Option<RationalRepr>>,
    pub alpha_hat: RationalRepr,
    pub alpha_from_gamma_hat: RationalRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputDigest,
    pub granules: Vec<Vec<usize>>,
    pub decision_classes: Vec<Vec<usize>>,
    pub deterministic_region: Vec<usize>,
    pub granule_frequency_matrix: GranuleFrequencyMatrix,
    pub classifier: ClassifierReport,
    pub confusion_matrix: RoughConfusionMatrix,
    pub approximation: ApproximationReport,
    pub indices: ConfusionIndices,
    pub bounds: BoundsReport,
    pub theorems: TheoremReport,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Runs the full pipeline on `ds` with granules induced by `attributes`.
pub fn analyze<S: AsRef<str>>(
    ds: &DecisionSystem,
    file: &str,
    attributes: &[S],
    source: &ClassifierSource,
) -> Result<AnalysisReport> {
    let granules = ds.partition_by(attributes)?;
    let decisions = ds.decision_partition();
    let gfm = GranuleFrequencyMatrix::from_partitions(&granules, &decisions)?;
    let (classifier, kind) = match source {
        ClassifierSource::Mrc(tie_break) => (
            maximal_row_classifier(&gfm, *tie_break),
            ClassifierKind::Mrc { tie_break: *tie_break },
        ),
        ClassifierSource::MappingFile(path) => (
            read_classifier(path, gfm.granule_count(), gfm.class_count())?,
            ClassifierKind::Explicit {
                source: path.display().to_string(),
            },
        ),
        ClassifierSource::Given { classifier, label } => {
            (classifier.clone(), ClassifierKind::Explicit { source: label.clone() })
        }
    };
    let validation = validate_overlap(&classifier, &gfm)?;
    let row_maximal = is_row_maximal(&classifier, &gfm);
    let cm = confusion_matrix(&gfm, &classifier)?;
    let summary = approximation_summary(&granules, &decisions)?;
    let bounds = confusion_bounds(&cm, &validation, row_maximal);
    let theorems = verify_theorems(ds, attributes, &classifier, kind.clone())?;
    let g_hat = gamma_hat(&cm);

    Ok(AnalysisReport {
        input: InputDigest {
            file: file.to_owned(),
            objects: ds.len(),
            granules: granules.len(),
            classes: decisions.len(),
            attributes: attributes.iter().map(|a| a.as_ref().to_owned()).collect(),
            decision: ds.decision().name.clone(),
            class_labels: ds.decision_labels(),
        },
        granules: granules.blocks().iter().map(|b| b.to_vec()).collect(),
        decision_classes: decisions.blocks().iter().map(|b| b.to_vec()).collect(),
        deterministic_region: deterministic_region(&granules, &decisions)?.to_vec(),
        classifier: ClassifierReport {
            kind,
            mapping: classifier
                .assignment()
                .iter()
                .enumerate()
                .map(|(g, &c)| [g + 1, c + 1])
                .collect(),
            satisfies_rule: validation.satisfies_rule,
            violations: validation.violations.iter().map(|g| g + 1).collect(),
            row_maximal,
        },
        approximation: ApproximationReport {
            gamma: summary.gamma.into(),
            alpha_from_gamma: alpha_from_gamma(summary.gamma)?.into(),
            classes: summary
                .classes
                .iter()
                .enumerate()
                .map(|(j, c)| ClassApproximationReport {
                    class: j + 1,
                    size: c.size,
                    lower: c.lower,
                    upper: c.upper,
                    lower_precision: c.lower_precision().into(),
                    upper_precision: c.upper_precision().into(),
                    accuracy: c.accuracy().into(),
                })
                .collect(),
        },
        indices: ConfusionIndices {
            success_ratio: success_ratio(&cm).into(),
            gamma_hat: g_hat.into(),
            alpha_hat_per_class: alpha_hat_per_class(&cm)
                .into_iter()
                .map(|a| a.map(RationalRepr::from))
                .collect(),
            alpha_hat: alpha_hat(&cm).into(),
            alpha_from_gamma_hat: alpha_from_gamma(g_hat)?.into(),
        },
        granule_frequency_matrix: gfm,
        confusion_matrix: cm,
        bounds,
        theorems,
    })
}

fn fmt_rational(r: &RationalRepr) -> String {
    match r.value() {
        Some(v) => format!("{}/{} ({})", r.num, r.den, to_decimal_string(&v)),
        None => format!("{}/{}", r.num, r.den),
    }
}

fn fmt_set(ids: &[usize]) -> String {
    let inner: Vec<String> = ids.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn table(out: &mut String, head: &[String], rows: &[Vec<String>]) {
    let width = head
        .iter()
        .chain(rows.iter().flatten())
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(3);
    let line = |cells: &[String]| -> String {
        cells
            .iter()
            .map(|c| format!("{c:>width$}"))
            .collect::<Vec<_>>()
            .join(" ")
            .trim_end()
            .to_owned()
    };
    let _ = writeln!(out, "  {}", line(head));
    for row in rows {
        let _ = writeln!(out, "  {}", line(row));
    }
}

/// Human-readable rendering of a report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let i = &r.input;
    let k = i.classes;
    let _ = writeln!(out, "input: {}", i.file);
    let _ = writeln!(
        out,
        "objects: {}  granules: {}  classes: {}  attributes: {}  decision: {}",
        i.objects,
        i.granules,
        k,
        i.attributes.join(","),
        i.decision
    );

    let _ = writeln!(out, "\ngranules:");
    for (g, b) in r.granules.iter().enumerate() {
        let _ = writeln!(out, "  X{} = {}", g + 1, fmt_set(b));
    }
    let _ = writeln!(out, "decision classes:");
    for (j, b) in r.decision_classes.iter().enumerate() {
        let _ = writeln!(out, "  Y{} = {}  ({})", j + 1, fmt_set(b), i.class_labels[j]);
    }
    let _ = writeln!(out, "deterministic region: {}", fmt_set(&r.deterministic_region));

    let class_head = |prefix: &str| -> Vec<String> {
        std::iter::once(String::new())
            .chain((1..=k).map(|j| format!("{prefix}{j}")))
            .chain(std::iter::once("Sum".to_owned()))
            .collect()
    };
    let gfm = &r.granule_frequency_matrix;
    let _ = writeln!(out, "\ngranule frequency matrix:");
    let mut rows: Vec<Vec<String>> = gfm
        .cells()
        .iter()
        .enumerate()
        .map(|(g, row)| {
            std::iter::once(format!("X{}", g + 1))
                .chain(row.iter().map(u64::to_string))
                .chain(std::iter::once(gfm.granule_sizes()[g].to_string()))
                .collect()
        })
        .collect();
    rows.push(
        std::iter::once("Sum".to_owned())
            .chain(gfm.class_sizes().iter().map(u64::to_string))
            .chain(std::iter::once(gfm.total().to_string()))
            .collect(),
    );
    table(&mut out, &class_head("Y"), &rows);

    let c = &r.classifier;
    let _ = writeln!(out, "\nclassifier: {}", c.kind);
    let mapping: Vec<String> = c.mapping.iter().map(|[g, j]| format!("X{g}->Y{j}")).collect();
    let _ = writeln!(out, "  mapping: {}", mapping.join(" "));
    let _ = writeln!(
        out,
        "  overlap rule: {}",
        if c.satisfies_rule { "satisfied" } else { "VIOLATED" }
    );
    if !c.violations.is_empty() {
        let v: Vec<String> = c.violations.iter().map(|g| format!("X{g}")).collect();
        let _ = writeln!(out, "  violations: {}", v.join(" "));
    }
    let _ = writeln!(out, "  row maximal: {}", c.row_maximal);

    let cm = &r.confusion_matrix;
    let _ = writeln!(out, "\nconfusion matrix (rows predicted, columns true):");
    let mut rows: Vec<Vec<String>> = cm
        .cells()
        .iter()
        .enumerate()
        .map(|(p, row)| {
            std::iter::once(format!("^Y{}", p + 1))
                .chain(row.iter().map(u64::to_string))
                .chain(std::iter::once(cm.row_sums()[p].to_string()))
                .collect()
        })
        .collect();
    rows.push(
        std::iter::once("Sum".to_owned())
            .chain(cm.col_sums().iter().map(u64::to_string))
            .chain(std::iter::once(cm.total().to_string()))
            .collect(),
    );
    table(&mut out, &class_head("Y"), &rows);

    let a = &r.approximation;
    let _ = writeln!(out, "\napproximation quality:");
    let _ = writeln!(out, "  gamma = {}", fmt_rational(&a.gamma));
    let _ = writeln!(out, "  gamma/(2-gamma) = {}", fmt_rational(&a.alpha_from_gamma));
    for c in &a.classes {
        let _ = writeln!(
            out,
            "  Y{}: |Y|={} |Low|={} |Upp|={} p_low={} p_upp={} alpha={}",
            c.class,
            c.size,
            c.lower,
            c.upper,
            fmt_rational(&c.lower_precision),
            fmt_rational(&c.upper_precision),
            fmt_rational(&c.accuracy)
        );
    }

    let x = &r.indices;
    let _ = writeln!(out, "\nconfusion matrix indices:");
    let _ = writeln!(out, "  success ratio = {}", fmt_rational(&x.success_ratio));
    let _ = writeln!(out, "  gamma_hat = {}", fmt_rational(&x.gamma_hat));
    for (j, a) in x.alpha_hat_per_class.iter().enumerate() {
        let shown = a.as_ref().map_or("undefined".to_owned(), fmt_rational);
        let _ = writeln!(out, "  alpha_hat[Y{}] = {}", j + 1, shown);
    }
    let _ = writeln!(out, "  alpha_hat = {}", fmt_rational(&x.alpha_hat));
    let _ = writeln!(
        out,
        "  gamma_hat/(2-gamma_hat) = {}",
        fmt_rational(&x.alpha_from_gamma_hat)
    );

    let b = &r.bounds;
    let _ = writeln!(
        out,
        "\nbounds (rule validated: {}, mrc: {}):",
        b.rule_validated, b.mrc_classifier
    );
    let opt = |v: Option<u64>| v.map_or("-".to_owned(), |v| v.to_string());
    let head: Vec<String> = ["", "|Y|", "nl*", "nl**", "nl_m", "nu*", "nu**", "nu_m", "clamped"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<String>> = b
        .classes
        .iter()
        .enumerate()
        .map(|(j, c)| {
            vec![
                format!("Y{}", j + 1),
                c.class_size.to_string(),
                c.nl_star.to_string(),
                c.nl_star2.to_string(),
                opt(c.nl_m),
                c.nu_star.to_string(),
                c.nu_star2.to_string(),
                opt(c.nu_m),
                if c.clamped { "yes" } else { "no" }.to_owned(),
            ]
        })
        .collect();
    table(&mut out, &head, &rows);

    let t = &r.theorems;
    let count = |s: Status| t.checks.iter().filter(|c| c.status == s).count();
    let _ = writeln!(
        out,
        "\ntheorem checks: {} ({} passed, {} failed, {} not applicable)",
        if t.pass { "PASS" } else { "FAIL" },
        count(Status::Pass),
        count(Status::Fail),
        count(Status::NotApplicable)
    );
    for c in &t.checks {
        let mut line = format!("  {:?}", c.claim);
        if let Some(j) = c.class {
            let _ = write!(line, " Y{j}");
        }
        if let Some(g) = c.granule {
            let _ = write!(line, " X{g}");
        }
        if !c.values.is_empty() {
            let v: Vec<String> = c.values.iter().map(u64::to_string).collect();
            let _ = write!(line, " [{}]", v.join(", "));
        }
        let _ = write!(line, " {:?}", c.status);
        let _ = writeln!(out, "{line}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::electronics;

    #[test]
    fn example_report() {
        let r = analyze(
            &electronics(),
            "electronics.csv",
            &["Price", "Sound"],
            &ClassifierSource::Mrc(TieBreak::Lowest),
        )
        .unwrap();
        assert_eq!(r.granules, vec![vec![1, 6], vec![2], vec![3], vec![4, 5]]);
        assert_eq!(r.confusion_matrix.cells(), &[vec![3, 1], vec![0, 2]]);
        assert_eq!((r.approximation.gamma.num, r.approximation.gamma.den), (2, 3));
        assert_eq!(r.approximation.gamma.decimal, 0.666667);
        assert_eq!((r.indices.success_ratio.num, r.indices.success_ratio.den), (5, 6));
        assert_eq!(r.deterministic_region, vec![2, 3, 4, 5]);
        assert_eq!(r.input.class_labels, vec!["high", "low"]);
        assert!(r.theorems.pass);
        assert_eq!(AnalysisReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn text_rendering_mentions_key_values() {
        let r = analyze(
            &electronics(),
            "e.csv",
            &["Price", "Sound"],
            &ClassifierSource::Mrc(TieBreak::Lowest),
        )
        .unwrap();
        let text = render_text(&r);
        assert!(text.contains("gamma = 2/3 (0.666667)"));
        assert!(text.contains("success ratio = 5/6 (0.833333)"));
        assert!(text.contains("X1 = {1,6}"));
    }
}
