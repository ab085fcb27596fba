//! Brute-force cross-checks and a seeded generator of random decision systems.
//!
//! The operators here deliberately avoid the code paths they check: lower and
//! upper approximations are evaluated object by object, and the best
//! classifier is found by enumerating all of them.

use std::collections::BTreeSet;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifiers::{
    is_row_maximal, maximal_row_classifier, validate_overlap, ClassifierKind, RoughClassifier, TieBreak,
};
use crate::error::{Error, Result};
use crate::indices::confusion_bounds;
use crate::matrices::{confusion_matrix, predictor_set, GranuleFrequencyMatrix};
use crate::rational::{ratio, Rational};
use crate::system::{Attribute, DecisionSystem, ObjectSet, Partition};

/// Name of the generator behind every seeded stream in this module.
pub const PRNG: &str = "chacha8";

/// Largest number of classifiers [`exhaustive_best_classifier`] will enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Shape and seed of a random decision system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n_objects: usize,
    pub n_attributes: usize,
    pub values_per_attribute: usize,
    pub n_decision_values: usize,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, v: usize, lo: usize, hi: usize| {
            if (lo..=hi).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} = {v} is outside {lo}..={hi}")))
            }
        };
        check("n_objects", self.n_objects, 2, 100)?;
        check("n_attributes", self.n_attributes, 1, 8)?;
        check("values_per_attribute", self.values_per_attribute, 1, 6)?;
        check("n_decision_values", self.n_decision_values, 2, 8)?;
        if self.n_decision_values > self.n_objects {
            return Err(Error::Config(format!(
                "{} decision values cannot all occur among {} objects",
                self.n_decision_values, self.n_objects
            )));
        }
        Ok(())
    }
}

/// Draws attribute and decision values uniformly. Decision columns are
/// redrawn until at least two distinct values occur.
pub fn random_decision_system(cfg: &GeneratorConfig) -> Result<DecisionSystem> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let conditions = (1..=cfg.n_attributes)
        .map(|a| {
            let values = (0..cfg.n_objects).map(|_| format!("v{}", rng.random_range(0..cfg.values_per_attribute)));
            Attribute::new(format!("a{a}"), values)
        })
        .collect();
    let decision = loop {
        let values: Vec<usize> = (0..cfg.n_objects)
            .map(|_| rng.random_range(0..cfg.n_decision_values))
            .collect();
        if values.iter().any(|&v| v != values[0]) {
            break Attribute::new("d", values.into_iter().map(|v| format!("c{v}")));
        }
    };
    DecisionSystem::from_rows(conditions, decision)
}

fn block_of(granules: &Partition, object: usize) -> &ObjectSet {
    granules
        .blocks()
        .iter()
        .find(|b| b.contains(object))
        .expect("object lies in the universe")
}

/// Objects whose own block lies inside `target`.
pub fn oracle_lower(granules: &Partition, target: &ObjectSet) -> Result<ObjectSet> {
    granules.check_within(target)?;
    Ok(granules
        .universe()
        .iter()
        .filter(|&x| block_of(granules, x).iter().all(|y| target.contains(y)))
        .collect())
}

/// Objects whose own block meets `target`.
pub fn oracle_upper(granules: &Partition, target: &ObjectSet) -> Result<ObjectSet> {
    granules.check_within(target)?;
    Ok(granules
        .universe()
        .iter()
        .filter(|&x| block_of(granules, x).iter().any(|y| target.contains(y)))
        .collect())
}

/// Enumerates all `k^m` classifiers and returns the first one, in
/// lexicographic order of assignments, with the most correct predictions.
pub fn exhaustive_best_classifier(gfm: &GranuleFrequencyMatrix) -> Result<(RoughClassifier, Rational)> {
    let (m, k) = (gfm.granule_count(), gfm.class_count());
    let too_large = Error::InstanceTooLarge {
        classes: k,
        granules: m,
        limit: EXHAUSTIVE_LIMIT,
    };
    let count = u32::try_from(m)
        .ok()
        .and_then(|m| (k as u64).checked_pow(m))
        .filter(|&c| c <= EXHAUSTIVE_LIMIT)
        .ok_or(too_large)?;

    let mut assignment = vec![0usize; m];
    let mut best: Option<(u64, Vec<usize>)> = None;
    for _ in 0..count {
        let correct: u64 = assignment.iter().enumerate().map(|(g, &c)| gfm.cell(g, c)).sum();
        if best.as_ref().is_none_or(|(b, _)| correct > *b) {
            best = Some((correct, assignment.clone()));
        }
        // odometer increment, last granule fastest
        for slot in assignment.iter_mut().rev() {
            *slot += 1;
            if *slot < k {
                break;
            }
            *slot = 0;
        }
    }
    let (correct, assignment) = best.expect("at least one classifier");
    Ok((RoughClassifier::new(assignment, k)?, ratio(correct, gfm.total())))
}

/// Maps each granule to a class drawn uniformly from those it overlaps.
pub fn random_overlapping_classifier(gfm: &GranuleFrequencyMatrix, seed: u64) -> RoughClassifier {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let assignment = gfm
        .cells()
        .iter()
        .map(|row| {
            let hits: Vec<usize> = (0..row.len()).filter(|&j| row[j] > 0).collect();
            hits[rng.random_range(0..hits.len())]
        })
        .collect();
    RoughClassifier::new(assignment, gfm.class_count()).expect("classes drawn from the matrix")
}

/// A claim checked by [`verify_theorems`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `nl ≤ nl** ≤ nl* ≤ |Y|`
    LowerChain,
    /// `|Y| ≤ nu* ≤ nu** ≤ nu`
    UpperChain,
    /// `nl ≤ nl_m ≤ nl**`
    MrcLower,
    /// `nl** ≤ nu_m ≤ nu`
    MrcUpper,
    /// A granule inside one class is mapped to that class.
    DeterministicGranule,
    /// `Low(Y_j) ⊆ Ŷ_j`
    LowerInPredictor,
    /// `n_jj = 0` forces row `j` to be zero.
    EmptyDiagonalRow,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::LowerChain,
        Claim::UpperChain,
        Claim::MrcLower,
        Claim::MrcUpper,
        Claim::DeterministicGranule,
        Claim::LowerInPredictor,
        Claim::EmptyDiagonalRow,
    ];

    fn needs_mrc(self) -> bool {
        matches!(self, Claim::MrcLower | Claim::MrcUpper)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// One checked instance of a claim. Chain claims carry their values left
/// to right; `class` and `granule` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: Claim,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub granule: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub values: Vec<u64>,
    pub status: Status,
}

/// What was verified, for replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremContext {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<GeneratorConfig>,
    pub attributes: Vec<String>,
    pub classifier: ClassifierKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub context: TheoremContext,
    pub rule_validated: bool,
    pub row_maximal: bool,
    pub checks: Vec<Check>,
    /// No applicable check failed.
    pub pass: bool,
}

impl TheoremReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn applicable(&self) -> usize {
        self.checks.iter().filter(|c| c.status != Status::NotApplicable).count()
    }
}

/// Recomputes the true approximation sizes with the per-object oracle and
/// checks every bound and lemma for `classifier`. Claims that need the
/// overlap rule (or a maximal row classifier) are marked not applicable
/// when the classifier lacks that property.
pub fn verify_theorems<S: AsRef<str>>(
    ds: &DecisionSystem,
    attributes: &[S],
    classifier: &RoughClassifier,
    kind: ClassifierKind,
) -> Result<TheoremReport> {
    let granules = ds.partition_by(attributes)?;
    let decisions = ds.decision_partition();
    let gfm = GranuleFrequencyMatrix::from_partitions(&granules, &decisions)?;
    let validation = validate_overlap(classifier, &gfm)?;
    let row_maximal = is_row_maximal(classifier, &gfm);
    let cm = confusion_matrix(&gfm, classifier)?;
    let bounds = confusion_bounds(&cm, &validation, row_maximal);

    let applies = |claim: Claim| validation.satisfies_rule && (!claim.needs_mrc() || row_maximal);
    let status = |claim: Claim, holds: bool| match (applies(claim), holds) {
        (false, _) => Status::NotApplicable,
        (true, true) => Status::Pass,
        (true, false) => Status::Fail,
    };
    let chain = |claim: Claim, class: usize, values: Vec<u64>| Check {
        claim,
        class: Some(class + 1),
        granule: None,
        status: status(claim, values.windows(2).all(|w| w[0] <= w[1])),
        values,
    };

    let mut checks = Vec::new();
    for (j, y) in decisions.blocks().iter().enumerate() {
        let low = oracle_lower(&granules, y)?;
        let upp = oracle_upper(&granules, y)?;
        let (nl, nu, size) = (low.len() as u64, upp.len() as u64, y.len() as u64);
        let b = &bounds.classes[j];

        checks.push(chain(Claim::LowerChain, j, vec![nl, b.nl_star2, b.nl_star, size]));
        checks.push(chain(Claim::UpperChain, j, vec![size, b.nu_star, b.nu_star2, nu]));
        match (b.nl_m, b.nu_m) {
            (Some(nl_m), Some(nu_m)) => {
                checks.push(chain(Claim::MrcLower, j, vec![nl, nl_m, b.nl_star2]));
                checks.push(chain(Claim::MrcUpper, j, vec![b.nl_star2, nu_m, nu]));
            }
            _ => {
                for claim in [Claim::MrcLower, Claim::MrcUpper] {
                    checks.push(Check {
                        claim,
                        class: Some(j + 1),
                        granule: None,
                        values: vec![],
                        status: Status::NotApplicable,
                    });
                }
            }
        }

        let predicted = predictor_set(classifier, j, &granules)?;
        checks.push(Check {
            claim: Claim::LowerInPredictor,
            class: Some(j + 1),
            granule: None,
            values: vec![nl, low.intersection_len(&predicted) as u64],
            status: status(Claim::LowerInPredictor, low.is_subset(&predicted)),
        });

        let row: Vec<u64> = cm.cells()[j].clone();
        checks.push(Check {
            claim: Claim::EmptyDiagonalRow,
            class: Some(j + 1),
            granule: None,
            status: status(Claim::EmptyDiagonalRow, row[j] != 0 || row.iter().all(|&c| c == 0)),
            values: row,
        });
    }

    for (g, x) in granules.blocks().iter().enumerate() {
        if let Some(j) = decisions.blocks().iter().position(|y| x.is_subset(y)) {
            checks.push(Check {
                claim: Claim::DeterministicGranule,
                class: Some(j + 1),
                granule: Some(g + 1),
                values: vec![],
                status: status(Claim::DeterministicGranule, classifier.class_of(g) == j),
            });
        }
    }

    let pass = checks.iter().all(|c| c.status != Status::Fail);
    Ok(TheoremReport {
        context: TheoremContext {
            config: None,
            attributes: attributes.iter().map(|a| a.as_ref().to_owned()).collect(),
            classifier: kind,
        },
        rule_validated: validation.satisfies_rule,
        row_maximal,
        checks,
        pass,
    })
}

/// Which classifiers a fuzz run exercises.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FuzzClassifier {
    #[default]
    Mrc,
    RandomOverlapping,
}

/// Limits of a fuzz campaign. Each trial draws its own shape within them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_objects: usize,
    pub max_attributes: usize,
    pub max_values: usize,
    pub max_classes: usize,
    pub classifier: FuzzClassifier,
    pub tie_break: TieBreak,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 10_000,
            seed: 42,
            max_objects: 30,
            max_attributes: 6,
            max_values: 6,
            max_classes: 5,
            classifier: FuzzClassifier::Mrc,
            tie_break: TieBreak::Lowest,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        let bound = |name: &str, v: usize, lo: usize, hi: usize| {
            if (lo..=hi).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} = {v} is outside {lo}..={hi}")))
            }
        };
        bound("max_objects", self.max_objects, 2, 100)?;
        bound("max_attributes", self.max_attributes, 1, 8)?;
        bound("max_values", self.max_values, 1, 6)?;
        bound("max_classes", self.max_classes, 2, 8)
    }
}

/// Seed of trial `index` in a campaign with base seed `base`: the first
/// word of ChaCha8 stream `index` keyed by `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(index);
    rng.next_u64()
}

/// One generated instance of a fuzz campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialCase {
    pub index: u64,
    pub config: GeneratorConfig,
    pub attributes: Vec<String>,
}

impl TrialCase {
    /// Draws the shape of trial `index` within the campaign limits.
    pub fn draw(campaign: &FuzzConfig, index: u64) -> TrialCase {
        let seed = trial_seed(campaign.seed, index);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(1);
        let n_objects = rng.random_range(2..=campaign.max_objects);
        let n_attributes = rng.random_range(1..=campaign.max_attributes);
        let values_per_attribute = rng.random_range(1..=campaign.max_values);
        let n_decision_values = rng.random_range(2..=campaign.max_classes.min(n_objects));
        let mut attributes = BTreeSet::new();
        attributes.insert(rng.random_range(1..=n_attributes));
        for a in 1..=n_attributes {
            if rng.random_bool(0.5) {
                attributes.insert(a);
            }
        }
        TrialCase {
            index,
            config: GeneratorConfig {
                n_objects,
                n_attributes,
                values_per_attribute,
                n_decision_values,
                seed,
            },
            attributes: attributes.into_iter().map(|a| format!("a{a}")).collect(),
        }
    }

    /// Builds the system and classifier of this trial and checks every claim.
    pub fn run(&self, campaign: &FuzzConfig) -> Result<TheoremReport> {
        let ds = random_decision_system(&self.config)?;
        let granules = ds.partition_by(&self.attributes)?;
        let gfm = GranuleFrequencyMatrix::from_partitions(&granules, &ds.decision_partition())?;
        let (classifier, kind) = match campaign.classifier {
            FuzzClassifier::Mrc => (
                maximal_row_classifier(&gfm, campaign.tie_break),
                ClassifierKind::Mrc {
                    tie_break: campaign.tie_break,
                },
            ),
            FuzzClassifier::RandomOverlapping => {
                let seed = self.config.seed.rotate_left(32);
                (
                    random_overlapping_classifier(&gfm, seed),
                    ClassifierKind::RandomOverlapping { seed },
                )
            }
        };
        let mut report = verify_theorems(&ds, &self.attributes, &classifier, kind)?;
        report.context.config = Some(self.config);
        Ok(report)
    }
}

/// A failing trial, with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: TrialCase,
    pub failures: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub prng: String,
    pub campaign: FuzzConfig,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    /// Applicable checks evaluated across all trials.
    pub checks: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl FuzzSummary {
    pub fn pass(&self) -> bool {
        self.failed == 0
    }
}

/// Runs `campaign.trials` independent trials in index order.
pub fn run_fuzz(campaign: &FuzzConfig) -> Result<FuzzSummary> {
    campaign.validate()?;
    let mut summary = FuzzSummary {
        prng: PRNG.to_owned(),
        campaign: *campaign,
        trials: campaign.trials,
        passed: 0,
        failed: 0,
        checks: 0,
        first_counterexample: None,
    };
    for index in 0..campaign.trials {
        let case = TrialCase::draw(campaign, index);
        let report = case.run(campaign)?;
        summary.checks += report.applicable() as u64;
        if report.pass {
            summary.passed += 1;
        } else {
            summary.failed += 1;
            if summary.first_counterexample.is_none() {
                summary.first_counterexample = Some(Counterexample {
                    failures: report.failures().cloned().collect(),
                    case,
                });
            }
        }
    }
    Ok(summary)
}
