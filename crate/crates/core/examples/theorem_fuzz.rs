//! Seeded fuzzing of every bound and lemma on random decision systems.
//!
//! ```bash
//! cargo run -p rough-confusion --release --example theorem_fuzz -- 10000 42
//! ```

use rough_confusion::oracle::{run_fuzz, FuzzClassifier, FuzzConfig, TrialCase};

fn main() -> rough_confusion::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(1000);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(42);

    for classifier in [FuzzClassifier::Mrc, FuzzClassifier::RandomOverlapping] {
        let campaign = FuzzConfig {
            trials,
            seed,
            classifier,
            ..FuzzConfig::default()
        };
        let summary = run_fuzz(&campaign)?;
        println!(
            "{classifier:?}: {}/{} trials passed, {} checks",
            summary.passed, summary.trials, summary.checks
        );
        if let Some(ce) = &summary.first_counterexample {
            println!("  counterexample: {:?}", ce.case);
        }
    }

    // Any single trial can be replayed from the campaign and its index.
    let campaign = FuzzConfig {
        seed,
        ..FuzzConfig::default()
    };
    let case = TrialCase::draw(&campaign, 0);
    let report = case.run(&campaign)?;
    println!(
        "trial 0: {:?} on {:?}, {} applicable checks",
        case.config,
        case.attributes,
        report.applicable()
    );
    Ok(())
}
