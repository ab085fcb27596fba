//! Reading decision tables from CSV and classifier mappings from disk.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use crate::classifiers::RoughClassifier;
use crate::error::{Error, Result};
use crate::system::{Attribute, DecisionSystem};

/// Reads a decision table. The first row names the columns; `decision`
/// selects the decision column (default: the last one). Objects are numbered
/// 1..=n in row order.
pub fn ingest_csv(path: &Path, decision: Option<&str>) -> Result<DecisionSystem> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_csv(&text, path, decision)
}

/// Like [`ingest_csv`], for text already in memory. `path` labels errors.
pub fn parse_csv(text: &str, path: &Path, decision: Option<&str>) -> Result<DecisionSystem> {
    let input_err = |message: String| Error::Input {
        path: path.to_owned(),
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| input_err(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if headers.len() < 2 {
        return Err(input_err(format!(
            "need at least one condition column and a decision column, found {} column(s)",
            headers.len()
        )));
    }
    let mut seen = BTreeSet::new();
    for (c, h) in headers.iter().enumerate() {
        if h.is_empty() {
            return Err(input_err(format!("header of column {} is empty", c + 1)));
        }
        if !seen.insert(h.as_str()) {
            return Err(input_err(format!("duplicate column name `{h}`")));
        }
    }
    let decision_col = match decision {
        None => headers.len() - 1,
        Some(name) => headers.iter().position(|h| h == name).ok_or_else(|| {
            input_err(format!(
                "decision column `{name}` not found among {}",
                headers.join(", ")
            ))
        })?,
    };

    let mut columns: Vec<Vec<String>> = vec![Vec::new(); headers.len()];
    for record in reader.records() {
        let record = record.map_err(|e| input_err(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != headers.len() {
            return Err(Error::Csv {
                path: path.to_owned(),
                row: line,
                column: "*".into(),
                message: format!("expected {} fields, found {}", headers.len(), record.len()),
            });
        }
        for (c, field) in record.iter().enumerate() {
            if field.is_empty() {
                return Err(Error::Csv {
                    path: path.to_owned(),
                    row: line,
                    column: headers[c].clone(),
                    message: "empty cell".into(),
                });
            }
            columns[c].push(field.to_owned());
        }
    }
    if columns[0].is_empty() {
        return Err(input_err("no data rows".into()));
    }

    let mut conditions = Vec::with_capacity(headers.len() - 1);
    let mut decision_attr = None;
    for (c, (name, values)) in headers.into_iter().zip(columns).enumerate() {
        let attr = Attribute { name, values };
        if c == decision_col {
            decision_attr = Some(attr);
        } else {
            conditions.push(attr);
        }
    }
    DecisionSystem::from_rows(conditions, decision_attr.expect("decision column exists"))
}

/// Reads a mapping file for a classifier over `granules` granules and
/// `classes` classes.
pub fn read_classifier(path: &Path, granules: usize, classes: usize) -> Result<RoughClassifier> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    RoughClassifier::parse_mapping(&text, granules, classes, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{electronics, ELECTRONICS_CSV};

    fn parse(text: &str, decision: Option<&str>) -> Result<DecisionSystem> {
        parse_csv(text, Path::new("t.csv"), decision)
    }

    #[test]
    fn electronics_table() {
        let ds = parse(ELECTRONICS_CSV, None).unwrap();
        assert_eq!(ds, electronics());
        assert_eq!(ds.len(), 6);
        assert_eq!(ds.class_count(), 2);
        assert_eq!(ds.object_ids(), &[1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn named_decision_column() {
        let ds = parse("d,a\nx,1\ny,1\n", Some("d")).unwrap();
        assert_eq!(ds.decision().name, "d");
        assert_eq!(ds.condition_names(), vec!["a"]);
        assert!(matches!(parse("d,a\nx,1\ny,1\n", Some("z")), Err(Error::Input { .. })));
    }

    #[test]
    fn constant_decision_is_degenerate() {
        assert!(matches!(
            parse("a,d\n1,x\n2,x\n", None),
            Err(Error::DegenerateDecision { .. })
        ));
        assert!(matches!(
            parse("a,d\n1,x\n", None),
            Err(Error::DegenerateDecision { .. })
        ));
    }

    #[test]
    fn malformed_tables() {
        match parse("a,b,d\n1,2,x\n1,y\n", None) {
            Err(Error::Csv { row, .. }) => assert_eq!(row, 3),
            other => panic!("{other:?}"),
        }
        match parse("a,b,d\n1,2,x\n1,,y\n", None) {
            Err(Error::Csv { row, column, .. }) => assert_eq!((row, column.as_str()), (3, "b")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("a,a,d\n1,2,x\n", None), Err(Error::Input { .. })));
        assert!(matches!(parse("d\nx\ny\n", None), Err(Error::Input { .. })));
        assert!(matches!(parse("a,d\n", None), Err(Error::Input { .. })));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            ingest_csv(Path::new("/nonexistent/table.csv"), None),
            Err(Error::Io { .. })
        ));
    }
}
