//! Lower and upper approximation of object sets by the blocks of a partition.

use crate::error::{Error, Result};
use crate::system::{ObjectSet, Partition};

/// Union of the blocks contained in `target`.
pub fn lower_approximation(granules: &Partition, target: &ObjectSet) -> Result<ObjectSet> {
    granules.check_within(target)?;
    Ok(union_where(granules, |block| block.is_subset(target)))
}

/// Union of the blocks that meet `target`.
pub fn upper_approximation(granules: &Partition, target: &ObjectSet) -> Result<ObjectSet> {
    granules.check_within(target)?;
    Ok(union_where(granules, |block| !block.is_disjoint(target)))
}

/// Whether `target` is a union of blocks.
pub fn is_definable(granules: &Partition, target: &ObjectSet) -> Result<bool> {
    Ok(lower_approximation(granules, target)? == *target)
}

/// Union of the deterministic granules, i.e. those lying inside a single
/// decision class. Equal to the union of the lower approximations of all
/// decision classes.
pub fn deterministic_region(granules: &Partition, decisions: &Partition) -> Result<ObjectSet> {
    if granules.universe() != decisions.universe() {
        return Err(Error::PartitionMismatch);
    }
    Ok(union_where(granules, |block| {
        decisions.blocks().iter().filter(|y| !block.is_disjoint(y)).count() == 1
    }))
}

fn union_where(granules: &Partition, keep: impl Fn(&ObjectSet) -> bool) -> ObjectSet {
    let mut out = ObjectSet::new();
    for block in granules.blocks().iter().filter(|b| keep(b)) {
        out.extend(block);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::electronics;

    fn granules() -> Partition {
        electronics().partition_by(&["Price", "Sound"]).unwrap()
    }

    #[test]
    fn approximations_of_first_class() {
        let p = granules();
        let y1 = ObjectSet::from([1, 4, 5]);
        assert_eq!(lower_approximation(&p, &y1).unwrap(), ObjectSet::from([4, 5]));
        assert_eq!(upper_approximation(&p, &y1).unwrap(), ObjectSet::from([1, 4, 5, 6]));
    }

    #[test]
    fn empty_and_full_sets() {
        let p = granules();
        let u = p.universe().clone();
        for op in [lower_approximation, upper_approximation] {
            assert_eq!(op(&p, &ObjectSet::new()).unwrap(), ObjectSet::new());
            assert_eq!(op(&p, &u).unwrap(), u);
        }
    }

    #[test]
    fn definability() {
        let p = granules();
        assert!(is_definable(&p, &ObjectSet::from([2, 3])).unwrap());
        assert!(!is_definable(&p, &ObjectSet::from([1, 4, 5])).unwrap());
        assert!(is_definable(&p, &ObjectSet::new()).unwrap());
    }

    #[test]
    fn foreign_objects_are_rejected() {
        let p = granules();
        let err = lower_approximation(&p, &ObjectSet::from([1, 7])).unwrap_err();
        assert!(matches!(err, Error::UniverseMismatch { foreign } if foreign == vec![7]));
        assert!(upper_approximation(&p, &ObjectSet::from([0])).is_err());
        assert!(is_definable(&p, &ObjectSet::from([9])).is_err());
    }

    #[test]
    fn deterministic_regions() {
        let ds = electronics();
        let p = granules();
        let d = ds.decision_partition();
        assert_eq!(deterministic_region(&p, &d).unwrap(), ObjectSet::from([2, 3, 4, 5]));
        assert_eq!(deterministic_region(&d, &d).unwrap(), *d.universe());
        let single = Partition::new(vec![d.universe().clone()]).unwrap();
        assert_eq!(deterministic_region(&single, &d).unwrap(), ObjectSet::new());

        let other = Partition::new(vec![ObjectSet::from([1, 2])]).unwrap();
        assert!(matches!(
            deterministic_region(&other, &d),
            Err(Error::PartitionMismatch)
        ));
    }
}
