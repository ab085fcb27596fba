//! Ingest a CSV decision table and print the analysis report.
//!
//! ```bash
//! cargo run -p rough-confusion --example csv_report -- crates/core/examples/data/electronics.csv Price,Sound
//! ```

use std::path::PathBuf;

use rough_confusion::io::ingest_csv;
use rough_confusion::prelude::TieBreak;
use rough_confusion::report::{analyze, render_text, ClassifierSource};

fn main() -> rough_confusion::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/electronics.csv"));
    let ds = ingest_csv(&path, None)?;
    let attributes: Vec<String> = match args.next() {
        Some(list) => list.split(',').map(str::to_owned).collect(),
        None => ds.condition_names().into_iter().map(str::to_owned).collect(),
    };

    let report = analyze(
        &ds,
        &path.display().to_string(),
        &attributes,
        &ClassifierSource::Mrc(TieBreak::Lowest),
    )?;
    print!("{}", render_text(&report));
    Ok(())
}
