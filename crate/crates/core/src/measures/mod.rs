//! The six equivalence measures and the partitions they induce.
//!
//! | spec        | value of node `v` at distance `d`                          |
//! |-------------|------------------------------------------------------------|
//! | `degree`    | degree of `v`                                              |
//! | `count:d`   | node and edge count of the induced `d`-neighborhood        |
//! | `degdist:d` | degrees inside the induced `d`-neighborhood (multiset)     |
//! | `dk:d`      | canonical label of the rooted `d`-neighborhood             |
//! | `vrq:d`     | global degrees of all nodes within distance `d` (multiset) |
//! | `hybrid:d`  | the `dk:d` and `vrq:d` values together                     |
//!
//! Parameterized measures are refinement chains. Two nodes are equivalent
//! at `d` only when their values agree at every level `1..=d`; `vrq`
//! additionally starts from the degree partition (its level 0). `hybrid` is
//! the meet of the `dk` and `vrq` partitions.

mod partition;
pub mod witness;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::canon::{canonical_form_with_limit, CanonicalLabel, DEFAULT_NODE_LIMIT};
use crate::error::{CanonError, MeasureError};
use crate::graph::Graph;

pub use partition::{is_refinement, k_anonymity_histogram, uniqueness, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureTag {
    Degree,
    Count,
    DegDist,
    DkAnon,
    Vrq,
    Hybrid,
}

impl MeasureTag {
    pub const ALL: [MeasureTag; 6] = [
        MeasureTag::Degree,
        MeasureTag::Count,
        MeasureTag::DegDist,
        MeasureTag::DkAnon,
        MeasureTag::Vrq,
        MeasureTag::Hybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureTag::Degree => "degree",
            MeasureTag::Count => "count",
            MeasureTag::DegDist => "degdist",
            MeasureTag::DkAnon => "dk",
            MeasureTag::Vrq => "vrq",
            MeasureTag::Hybrid => "hybrid",
        }
    }
}

/// A measure together with its distance parameter. `degree` carries no
/// distance; its `d` is normalized to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MeasureKind {
    tag: MeasureTag,
    d: usize,
}

impl MeasureKind {
    pub fn new(tag: MeasureTag, d: usize) -> Result<Self, MeasureError> {
        match tag {
            MeasureTag::Degree => Ok(MeasureKind { tag, d: 0 }),
            _ if d >= 1 => Ok(MeasureKind { tag, d }),
            _ => Err(MeasureError::InvalidSpec(format!("{}:{d}", tag.name()))),
        }
    }

    pub const fn degree() -> Self {
        MeasureKind {
            tag: MeasureTag::Degree,
            d: 0,
        }
    }

    fn at(tag: MeasureTag, d: usize) -> Self {
        MeasureKind::new(tag, d).expect("distance must be at least 1")
    }

    pub fn count(d: usize) -> Self {
        Self::at(MeasureTag::Count, d)
    }

    pub fn degdist(d: usize) -> Self {
        Self::at(MeasureTag::DegDist, d)
    }

    pub fn dk(d: usize) -> Self {
        Self::at(MeasureTag::DkAnon, d)
    }

    pub fn vrq(d: usize) -> Self {
        Self::at(MeasureTag::Vrq, d)
    }

    pub fn hybrid(d: usize) -> Self {
        Self::at(MeasureTag::Hybrid, d)
    }

    /// The six measures at distance `d`, in strictness-table order.
    pub fn all(d: usize) -> [MeasureKind; 6] {
        MeasureTag::ALL.map(|t| MeasureKind::at(t, d.max(1)))
    }

    pub fn tag(&self) -> MeasureTag {
        self.tag
    }

    /// Distance parameter; 0 for `degree`.
    pub fn distance(&self) -> usize {
        self.d
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            MeasureTag::Degree => f.write_str("degree"),
            tag => write!(f, "{}:{}", tag.name(), self.d),
        }
    }
}

impl FromStr for MeasureKind {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || MeasureError::InvalidSpec(s.to_owned());
        let trimmed = s.trim();
        let (name, dist) = match trimmed.split_once(':') {
            Some((name, d)) => (name, Some(d.parse::<usize>().map_err(|_| invalid())?)),
            None => (trimmed, None),
        };
        let tag = MeasureTag::ALL
            .into_iter()
            .find(|t| t.name() == name.to_ascii_lowercase())
            .ok_or_else(invalid)?;
        match (tag, dist) {
            (MeasureTag::Degree, None) => Ok(MeasureKind::degree()),
            (MeasureTag::Degree, Some(_)) | (_, None) => Err(invalid()),
            (tag, Some(d)) => MeasureKind::new(tag, d).map_err(|_| invalid()),
        }
    }
}

/// Value of one measure for one node at one distance. Multisets are sorted
/// ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureValue {
    Degree(usize),
    Count { nodes: usize, edges: usize },
    DegDist(Vec<usize>),
    DkAnon(CanonicalLabel),
    Vrq(Vec<usize>),
    Hybrid(CanonicalLabel, Vec<usize>),
}

/// The value of `m` for node `v`, evaluated at `m`'s own distance.
pub fn measure_value(g: &Graph, v: usize, m: MeasureKind) -> Result<MeasureValue, CanonError> {
    level_value(g, v, m.tag, m.d, DEFAULT_NODE_LIMIT)
}

/// Value of measure `tag` for `v` at a single `level`. Level 0 is only
/// meaningful for `degree` and `vrq`, where it is the node's own degree.
pub fn level_value(
    g: &Graph,
    v: usize,
    tag: MeasureTag,
    level: usize,
    canon_limit: usize,
) -> Result<MeasureValue, CanonError> {
    let value = match tag {
        MeasureTag::Degree => MeasureValue::Degree(g.degree(v)),
        MeasureTag::Count => {
            let hood = g.neighborhood(v, level);
            MeasureValue::Count {
                nodes: hood.node_count(),
                edges: hood.edge_count(),
            }
        }
        MeasureTag::DegDist => {
            let hood = g.neighborhood(v, level);
            let mut degrees = hood.graph().degrees();
            degrees.sort_unstable();
            MeasureValue::DegDist(degrees)
        }
        MeasureTag::DkAnon => {
            let hood = g.neighborhood(v, level);
            MeasureValue::DkAnon(canonical_form_with_limit(&hood, canon_limit)?)
        }
        MeasureTag::Vrq => MeasureValue::Vrq(vrq_multiset(g, v, level)),
        MeasureTag::Hybrid => {
            let hood = g.neighborhood(v, level);
            let label = canonical_form_with_limit(&hood, canon_limit)?;
            MeasureValue::Hybrid(label, vrq_multiset(g, v, level))
        }
    };
    Ok(value)
}

fn vrq_multiset(g: &Graph, v: usize, level: usize) -> Vec<usize> {
    let mut degrees: Vec<usize> = g.ball(v, level).iter().map(|&(w, _)| g.degree(w)).collect();
    degrees.sort_unstable();
    degrees
}

/// Values at every level of `m`'s refinement chain. Two nodes are
/// `m`-equivalent exactly when these vectors are equal.
pub fn chain_values(g: &Graph, v: usize, m: MeasureKind) -> Result<Vec<MeasureValue>, CanonError> {
    let levels = match m.tag {
        MeasureTag::Degree => 0..=0,
        MeasureTag::Vrq | MeasureTag::Hybrid => 0..=m.d,
        _ => 1..=m.d,
    };
    levels
        .map(|level| match (m.tag, level) {
            (MeasureTag::Hybrid, 0) => Ok(MeasureValue::Vrq(vec![g.degree(v)])),
            (MeasureTag::Vrq, 0) => Ok(MeasureValue::Vrq(vec![g.degree(v)])),
            _ => level_value(g, v, m.tag, level, DEFAULT_NODE_LIMIT),
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
pub struct PartitionOptions {
    /// Node cap for canonical labeling of a single neighborhood.
    pub canon_limit: usize,
    /// Abort with [`MeasureError::TimedOut`] once this instant has passed.
    pub deadline: Option<Instant>,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions {
            canon_limit: DEFAULT_NODE_LIMIT,
            deadline: None,
        }
    }
}

/// A partition plus the nodes that could not be labeled canonically. Those
/// nodes are placed in singleton classes, so uniqueness is an upper bound
/// whenever the list is non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuredPartition {
    pub partition: Partition,
    pub over_limit: Vec<usize>,
}

impl MeasuredPartition {
    pub fn is_exact(&self) -> bool {
        self.over_limit.is_empty()
    }

    pub fn uniqueness(&self) -> f64 {
        uniqueness(&self.partition)
    }
}

/// `(finer, coarser)` pairs guaranteed by the strictness ordering at
/// distance `d`: the chain degree, count, degdist, dk, hybrid; vrq below
/// hybrid and above degree; and, for `d >= 2`, `vrq(d-1)` below both
/// `dk(d)` and `vrq(d)`.
pub fn strictness_pairs(d: usize) -> Vec<(MeasureKind, MeasureKind)> {
    let mut pairs = vec![
        (MeasureKind::count(d), MeasureKind::degree()),
        (MeasureKind::degdist(d), MeasureKind::count(d)),
        (MeasureKind::dk(d), MeasureKind::degdist(d)),
        (MeasureKind::hybrid(d), MeasureKind::dk(d)),
        (MeasureKind::hybrid(d), MeasureKind::vrq(d)),
        (MeasureKind::vrq(d), MeasureKind::degree()),
    ];
    if d >= 2 {
        pairs.push((MeasureKind::dk(d), MeasureKind::vrq(d - 1)));
        pairs.push((MeasureKind::vrq(d), MeasureKind::vrq(d - 1)));
    }
    pairs
}

pub fn equivalence_partition(g: &Graph, m: MeasureKind) -> MeasuredPartition {
    equivalence_partition_with(g, m, &PartitionOptions::default()).expect("no deadline configured")
}

pub fn equivalence_partition_with(
    g: &Graph,
    m: MeasureKind,
    opts: &PartitionOptions,
) -> Result<MeasuredPartition, MeasureError> {
    check_deadline(opts)?;
    let n = g.node_count();
    match m.tag {
        MeasureTag::Degree => Ok(MeasuredPartition {
            partition: Partition::from_keys(&g.degrees()),
            over_limit: Vec::new(),
        }),
        MeasureTag::Hybrid => {
            let dk = equivalence_partition_with(g, MeasureKind::dk(m.d), opts)?;
            let vrq = equivalence_partition_with(g, MeasureKind::vrq(m.d), opts)?;
            Ok(MeasuredPartition {
                partition: dk.partition.meet(&vrq.partition)?,
                over_limit: dk.over_limit,
            })
        }
        tag => {
            let mut partition = if tag == MeasureTag::Vrq {
                Partition::from_keys(&g.degrees())
            } else {
                Partition::single_class(n)
            };
            let mut over_limit = Vec::new();
            for level in 1..=m.d {
                let keys: Vec<LevelKey> = (0..n)
                    .into_par_iter()
                    .map(|v| {
                        if partition.is_singleton(v) {
                            return Ok(LevelKey::Settled);
                        }
                        check_deadline(opts)?;
                        match level_value(g, v, tag, level, opts.canon_limit) {
                            Ok(value) => Ok(LevelKey::Value(value)),
                            Err(CanonError::TooLarge { .. }) => Ok(LevelKey::OverLimit(v)),
                            Err(e) => Err(MeasureError::Canon(e)),
                        }
                    })
                    .collect::<Result<_, MeasureError>>()?;
                over_limit.extend(keys.iter().filter_map(|k| match k {
                    LevelKey::OverLimit(v) => Some(*v),
                    _ => None,
                }));
                partition = partition.refine_by(&keys);
                if partition.class_count() == n {
                    break;
                }
            }
            Ok(MeasuredPartition {
                partition,
                over_limit,
            })
        }
    }
}

#[derive(PartialEq, Eq, Hash)]
enum LevelKey {
    /// node already alone in its class
    Settled,
    Value(MeasureValue),
    OverLimit(usize),
}

fn check_deadline(opts: &PartitionOptions) -> Result<(), MeasureError> {
    match opts.deadline {
        Some(t) if Instant::now() >= t => Err(MeasureError::TimedOut),
        _ => Ok(()),
    }
}
