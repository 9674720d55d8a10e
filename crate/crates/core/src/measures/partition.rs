use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::error::MeasureError;

/// Equivalence classes over nodes `0..n`.
///
/// Class ids are assigned in order of each class's smallest node, so two
/// partitions with the same classes compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups nodes by equal key.
    pub fn from_keys<K: Eq + Hash>(keys: &[K]) -> Self {
        let mut ids: HashMap<&K, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(keys.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (v, key) in keys.iter().enumerate() {
            let next = classes.len();
            let id = *ids.entry(key).or_insert(next);
            if id == next {
                classes.push(Vec::new());
            }
            classes[id].push(v);
            class_of.push(id);
        }
        Partition { class_of, classes }
    }

    pub fn single_class(n: usize) -> Self {
        Partition::from_keys(&vec![(); n])
    }

    pub fn discrete(n: usize) -> Self {
        Partition::from_keys(&(0..n).collect::<Vec<_>>())
    }

    /// Splits every class by `keys`: nodes stay together only if they shared
    /// a class and have equal keys.
    pub fn refine_by<K: Eq + Hash>(&self, keys: &[K]) -> Self {
        assert_eq!(keys.len(), self.node_count());
        let paired: Vec<(usize, &K)> = self.class_of.iter().copied().zip(keys).collect();
        Partition::from_keys(&paired)
    }

    /// Common refinement of two partitions of the same nodes.
    pub fn meet(&self, other: &Partition) -> Result<Partition, MeasureError> {
        self.check_universe(other)?;
        Ok(self.refine_by(&other.class_of))
    }

    pub fn node_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// `|P(v)|`
    pub fn class_size_of(&self, v: usize) -> usize {
        self.classes[self.class_of[v]].len()
    }

    pub fn is_singleton(&self, v: usize) -> bool {
        self.class_size_of(v) == 1
    }

    fn check_universe(&self, other: &Partition) -> Result<(), MeasureError> {
        if self.node_count() != other.node_count() {
            return Err(MeasureError::UniverseMismatch {
                left: self.node_count(),
                right: other.node_count(),
            });
        }
        Ok(())
    }
}

/// Fraction of nodes alone in their class; 0 for an empty universe.
pub fn uniqueness(p: &Partition) -> f64 {
    let n = p.node_count();
    if n == 0 {
        return 0.0;
    }
    let unique = p.classes().iter().filter(|c| c.len() == 1).count();
    unique as f64 / n as f64
}

/// For each `k` in `1..=|V|`, the fraction of nodes whose class has at least
/// `k` members.
pub fn k_anonymity_histogram(p: &Partition) -> BTreeMap<usize, f64> {
    let n = p.node_count();
    let mut at_size = vec![0usize; n + 1];
    for class in p.classes() {
        at_size[class.len()] += class.len();
    }
    let mut out = BTreeMap::new();
    let mut at_least = 0usize;
    for k in (1..=n).rev() {
        at_least += at_size[k];
        out.insert(k, at_least as f64 / n as f64);
    }
    out
}

/// Whether every class of `finer` lies inside one class of `coarser`, i.e.
/// the measure behind `finer` is at least as strict.
pub fn is_refinement(finer: &Partition, coarser: &Partition) -> Result<bool, MeasureError> {
    finer.check_universe(coarser)?;
    Ok(finer.classes().iter().all(|class| {
        let target = coarser.class_of(class[0]);
        class.iter().all(|&v| coarser.class_of(v) == target)
    }))
}
