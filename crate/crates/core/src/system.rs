//! Decision systems and the partitions their attributes induce.
//!
//! Objects are identified by `usize` ids. Systems ingested from a table use
//! 1-based row numbers. Attribute values are opaque tokens that are only ever
//! compared for equality.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of object ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectSet(BTreeSet<usize>);

impl ObjectSet {
    pub fn new() -> Self {
        ObjectSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.contains(&id)
    }

    pub fn insert(&mut self, id: usize) -> bool {
        self.0.insert(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &ObjectSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ObjectSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersection_len(&self, other: &ObjectSet) -> usize {
        self.0.intersection(&other.0).count()
    }

    pub fn union(&self, other: &ObjectSet) -> ObjectSet {
        ObjectSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &ObjectSet) -> ObjectSet {
        ObjectSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn extend(&mut self, other: &ObjectSet) {
        self.0.extend(other.iter());
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<usize> for ObjectSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ObjectSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for ObjectSet {
    fn from(ids: [usize; N]) -> Self {
        ids.into_iter().collect()
    }
}

impl fmt::Display for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

/// A named attribute with one value token per object, aligned with
/// [`DecisionSystem::object_ids`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub values: Vec<String>,
}

impl Attribute {
    pub fn new<S: Into<String>>(name: impl Into<String>, values: impl IntoIterator<Item = S>) -> Self {
        Attribute {
            name: name.into(),
            values: values.into_iter().map(Into::into).collect(),
        }
    }
}

/// Objects described by condition attributes and one decision attribute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionSystem {
    object_ids: Vec<usize>,
    conditions: Vec<Attribute>,
    decision: Attribute,
}

impl DecisionSystem {
    /// Builds a system, checking that ids are unique, every attribute is
    /// total, names are distinct, and the decision takes at least two values.
    pub fn new(object_ids: Vec<usize>, conditions: Vec<Attribute>, decision: Attribute) -> Result<Self> {
        if object_ids.is_empty() {
            return Err(Error::InvalidSystem(
                "a decision system needs at least one object".into(),
            ));
        }
        let distinct: BTreeSet<usize> = object_ids.iter().copied().collect();
        if distinct.len() != object_ids.len() {
            return Err(Error::InvalidSystem("object ids are not unique".into()));
        }
        let mut names = BTreeSet::new();
        for attr in conditions.iter().chain(std::iter::once(&decision)) {
            if attr.values.len() != object_ids.len() {
                return Err(Error::InvalidSystem(format!(
                    "attribute `{}` has {} values for {} objects",
                    attr.name,
                    attr.values.len(),
                    object_ids.len()
                )));
            }
            if !names.insert(attr.name.as_str()) {
                return Err(Error::InvalidSystem(format!(
                    "duplicate attribute name `{}`",
                    attr.name
                )));
            }
        }
        let first = &decision.values[0];
        if decision.values.iter().all(|v| v == first) {
            return Err(Error::DegenerateDecision {
                attribute: decision.name.clone(),
                value: first.clone(),
            });
        }
        Ok(DecisionSystem {
            object_ids,
            conditions,
            decision,
        })
    }

    /// Convenience constructor numbering objects `1..=n` in row order.
    pub fn from_rows(conditions: Vec<Attribute>, decision: Attribute) -> Result<Self> {
        let n = decision.values.len();
        DecisionSystem::new((1..=n).collect(), conditions, decision)
    }

    pub fn object_ids(&self) -> &[usize] {
        &self.object_ids
    }

    pub fn len(&self) -> usize {
        self.object_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.object_ids.is_empty()
    }

    pub fn universe(&self) -> ObjectSet {
        self.object_ids.iter().copied().collect()
    }

    pub fn conditions(&self) -> &[Attribute] {
        &self.conditions
    }

    pub fn condition_names(&self) -> Vec<&str> {
        self.conditions.iter().map(|a| a.name.as_str()).collect()
    }

    pub fn condition(&self, name: &str) -> Option<&Attribute> {
        self.conditions.iter().find(|a| a.name == name)
    }

    pub fn decision(&self) -> &Attribute {
        &self.decision
    }

    /// Number of distinct decision values.
    pub fn class_count(&self) -> usize {
        self.decision.values.iter().collect::<BTreeSet<_>>().len()
    }

    /// Partition induced by indiscernibility on `attributes`: two objects
    /// share a block iff they agree on every listed attribute.
    pub fn partition_by<S: AsRef<str>>(&self, attributes: &[S]) -> Result<Partition> {
        if attributes.is_empty() {
            return Err(Error::EmptyAttributeSet);
        }
        let columns = attributes
            .iter()
            .map(|name| {
                self.condition(name.as_ref())
                    .ok_or_else(|| Error::UnknownAttribute(name.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.group_by(|row| columns.iter().map(|c| c.values[row].as_str()).collect::<Vec<_>>()))
    }

    /// Decision classes, in canonical order.
    pub fn decision_partition(&self) -> Partition {
        self.group_by(|row| self.decision.values[row].as_str())
    }

    /// Token of the decision value shared by the objects of each decision
    /// class, aligned with [`DecisionSystem::decision_partition`].
    pub fn decision_labels(&self) -> Vec<String> {
        let index: HashMap<usize, usize> = self.object_ids.iter().enumerate().map(|(r, &id)| (id, r)).collect();
        self.decision_partition()
            .blocks()
            .iter()
            .map(|b| self.decision.values[index[&b.first().expect("nonempty block")]].clone())
            .collect()
    }

    fn group_by<'a, K, F>(&'a self, key: F) -> Partition
    where
        K: std::hash::Hash + Eq + 'a,
        F: Fn(usize) -> K,
    {
        let mut slots: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<ObjectSet> = Vec::new();
        for (row, &id) in self.object_ids.iter().enumerate() {
            let slot = *slots.entry(key(row)).or_insert_with(|| {
                blocks.push(ObjectSet::new());
                blocks.len() - 1
            });
            blocks[slot].insert(id);
        }
        Partition::from_canonical(blocks)
    }
}

/// A partition of a finite object set into nonempty, pairwise disjoint
/// blocks, ordered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<ObjectSet>,
    universe: ObjectSet,
}

impl Partition {
    pub fn new(blocks: Vec<ObjectSet>) -> Result<Self> {
        let mut universe = ObjectSet::new();
        let mut total = 0;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("blocks must be nonempty".into()));
            }
            total += block.len();
            universe.extend(block);
        }
        if total != universe.len() {
            return Err(Error::InvalidPartition("blocks are not pairwise disjoint".into()));
        }
        if universe.is_empty() {
            return Err(Error::InvalidPartition("a partition needs at least one block".into()));
        }
        Ok(Partition::from_canonical(blocks))
    }

    fn from_canonical(mut blocks: Vec<ObjectSet>) -> Self {
        blocks.sort_by_key(|b| b.first());
        let mut universe = ObjectSet::new();
        for block in &blocks {
            universe.extend(block);
        }
        Partition { blocks, universe }
    }

    /// The blocks in canonical order.
    pub fn blocks(&self) -> &[ObjectSet] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> Option<&ObjectSet> {
        self.blocks.get(index)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn universe(&self) -> &ObjectSet {
        &self.universe
    }

    /// Fails with [`Error::UniverseMismatch`] when `set` has members outside
    /// the universe.
    pub fn check_within(&self, set: &ObjectSet) -> Result<()> {
        let foreign = set.difference(&self.universe);
        if foreign.is_empty() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                foreign: foreign.to_vec(),
            })
        }
    }

    /// True when every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.universe == coarser.universe
            && self
                .blocks
                .iter()
                .all(|b| coarser.blocks.iter().any(|c| b.is_subset(c)))
    }
}
