//! Command-line front end: `analyze` and `fuzz`.
//!
//! Exit codes: 0 on success, 1 on input or configuration errors, 2 when the
//! analyzed classifier breaks the overlap rule (the report is still printed)
//! or a fuzz campaign finds a counterexample.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::classifiers::TieBreak;
use crate::error::Result;
use crate::io::ingest_csv;
use crate::oracle::{run_fuzz, FuzzClassifier, FuzzConfig, FuzzSummary};
use crate::report::{analyze, render_text, AnalysisReport, ClassifierSource};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rough-confusion",
    version,
    about = "Rough set analysis of classifiers via rough confusion matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a decision table and a classifier over its granules.
    Analyze(AnalyzeArgs),
    /// Check every bound on seeded random decision systems.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TiePolicy {
    Lowest,
    Highest,
    Random,
}

impl TiePolicy {
    fn with_seed(self, seed: u64) -> TieBreak {
        match self {
            TiePolicy::Lowest => TieBreak::Lowest,
            TiePolicy::Highest => TieBreak::Highest,
            TiePolicy::Random => TieBreak::SeededRandom { seed },
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    /// CSV decision table, header row first.
    #[arg(long)]
    pub input: PathBuf,
    /// Decision column (default: the last column).
    #[arg(long)]
    pub decision: Option<String>,
    /// Comma-separated condition attributes (default: all).
    #[arg(long, value_delimiter = ',')]
    pub attributes: Option<Vec<String>>,
    /// `mrc` or a mapping file of `granule class` pairs.
    #[arg(long, default_value = "mrc")]
    pub classifier: String,
    #[arg(long, value_enum, default_value_t = TiePolicy::Lowest)]
    pub tie_break: TiePolicy,
    /// Seed for the random tie-break policy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FuzzKind {
    Mrc,
    Random,
}

#[derive(Debug, clap::Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 30)]
    pub max_objects: usize,
    #[arg(long, default_value_t = 6)]
    pub max_attributes: usize,
    #[arg(long, default_value_t = 6)]
    pub max_values: usize,
    #[arg(long, default_value_t = 5)]
    pub max_classes: usize,
    /// Maximal row classifiers, or random classifiers obeying the overlap rule.
    #[arg(long, value_enum, default_value_t = FuzzKind::Mrc)]
    pub classifier: FuzzKind,
    #[arg(long, value_enum, default_value_t = TiePolicy::Lowest)]
    pub tie_break: TiePolicy,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Output of a successful command: text for stdout and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run_analyze(args: &AnalyzeArgs) -> Result<(AnalysisReport, Outcome)> {
    let ds = ingest_csv(&args.input, args.decision.as_deref())?;
    let attributes: Vec<String> = match &args.attributes {
        Some(list) => list.iter().map(|a| a.trim().to_owned()).collect(),
        None => ds.condition_names().into_iter().map(str::to_owned).collect(),
    };
    let source = if args.classifier == "mrc" {
        ClassifierSource::Mrc(args.tie_break.with_seed(args.seed))
    } else {
        ClassifierSource::MappingFile(PathBuf::from(&args.classifier))
    };
    let file = args.input.file_name().map_or_else(
        || args.input.display().to_string(),
        |f| f.to_string_lossy().into_owned(),
    );
    let report = analyze(&ds, &file, &attributes, &source)?;
    let stdout = match args.format {
        Format::Json => report.to_json(),
        Format::Text => render_text(&report),
    };
    let code = if report.classifier.satisfies_rule {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    Ok((report, Outcome { stdout, code }))
}

pub fn run_fuzz_command(args: &FuzzArgs) -> Result<(FuzzSummary, Outcome)> {
    let campaign = FuzzConfig {
        trials: args.trials,
        seed: args.seed,
        max_objects: args.max_objects,
        max_attributes: args.max_attributes,
        max_values: args.max_values,
        max_classes: args.max_classes,
        classifier: match args.classifier {
            FuzzKind::Mrc => FuzzClassifier::Mrc,
            FuzzKind::Random => FuzzClassifier::RandomOverlapping,
        },
        tie_break: args.tie_break.with_seed(args.seed),
    };
    let summary = run_fuzz(&campaign)?;
    let stdout = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
            s.push('\n');
            s
        }
        Format::Text => render_fuzz_text(&summary),
    };
    let code = if summary.pass() { EXIT_OK } else { EXIT_VIOLATION };
    Ok((summary, Outcome { stdout, code }))
}

fn render_fuzz_text(s: &FuzzSummary) -> String {
    let c = &s.campaign;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fuzz: prng={} seed={} classifier={:?} tie-break={} max-objects={} max-attributes={} max-values={} max-classes={}",
        s.prng, c.seed, c.classifier, c.tie_break, c.max_objects, c.max_attributes, c.max_values, c.max_classes
    );
    let _ = writeln!(out, "trials: {}", s.trials);
    let _ = writeln!(out, "passed: {}/{}", s.passed, s.trials);
    let _ = writeln!(out, "failures: {}", s.failed);
    let _ = writeln!(out, "checks evaluated: {}", s.checks);
    match &s.first_counterexample {
        None => {
            let _ = writeln!(out, "first counterexample: none");
        }
        Some(ce) => {
            let _ = writeln!(
                out,
                "first counterexample: trial {} {:?} attributes {}",
                ce.case.index,
                ce.case.config,
                ce.case.attributes.join(",")
            );
            for f in &ce.failures {
                let _ = writeln!(
                    out,
                    "  {:?} class {:?} granule {:?} values {:?}",
                    f.claim, f.class, f.granule, f.values
                );
            }
        }
    }
    out
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze(args) => run_analyze(args).map(|(_, o)| o),
        Command::Fuzz(args) => run_fuzz_command(args).map(|(_, o)| o),
    }
}

/// Parses `argv` (program name first), runs the command, and writes to the
/// given streams. Returns the process exit code. Nothing is written to
/// `stdout` unless a complete report was produced.
pub fn run<I, T>(argv: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = stdout.write_all(outcome.stdout.as_bytes()) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INPUT;
            }
            if outcome.code == EXIT_VIOLATION {
                let _ = writeln!(stderr, "verification failed; see output");
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}
