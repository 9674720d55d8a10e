//! Anonymity-cascade re-identification.
//!
//! Nodes unique under the initial measure are identified at level 0. At
//! each later level, a node `w` becomes identified when it neighbors an
//! already identified node `v` and no other unidentified neighbor of `v` is
//! equivalent to `w` under the cascade measure. Each level only looks at
//! identifications from earlier levels, so the result does not depend on the
//! order nodes are processed in.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::MeasureError;
use crate::graph::Graph;
use crate::measures::{
    equivalence_partition_with, uniqueness, MeasureKind, MeasuredPartition, Partition,
    PartitionOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CascadeLevels {
    /// Stop after this many cascade levels (at least 1).
    Fixed(usize),
    /// Continue until a level identifies nobody.
    Fixpoint,
}

impl fmt::Display for CascadeLevels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CascadeLevels::Fixed(n) => write!(f, "{n}"),
            CascadeLevels::Fixpoint => f.write_str("fixpoint"),
        }
    }
}

impl FromStr for CascadeLevels {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "fixpoint" | "final" => Ok(CascadeLevels::Fixpoint),
            n => match n.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(CascadeLevels::Fixed(k)),
                _ => Err(format!(
                    "invalid level count {s:?}; expected n >= 1 or 'fixpoint'"
                )),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CascadeConfig {
    pub initial: MeasureKind,
    pub cascading: MeasureKind,
    pub max_levels: CascadeLevels,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CascadeResult {
    /// Level at which each node was identified; `None` if never.
    pub identified_level: Vec<Option<usize>>,
    /// Cumulative fraction identified after each level, starting at level 0.
    pub uniqueness_by_level: Vec<f64>,
    /// Cascade levels that identified at least one node.
    pub levels_run: usize,
    /// False when either measure hit the canonical-labeling node limit.
    pub exact: bool,
}

impl CascadeResult {
    /// Uniqueness under the initial measure alone.
    pub fn initial(&self) -> f64 {
        self.uniqueness_by_level[0]
    }

    /// Uniqueness after one cascade level.
    pub fn one_level(&self) -> f64 {
        let i = 1.min(self.uniqueness_by_level.len() - 1);
        self.uniqueness_by_level[i]
    }

    /// Uniqueness after the last level run.
    pub fn last(&self) -> f64 {
        *self
            .uniqueness_by_level
            .last()
            .expect("level 0 always present")
    }
}

pub fn run_cascade(g: &Graph, cfg: &CascadeConfig) -> Result<CascadeResult, MeasureError> {
    run_cascade_with(g, cfg, &PartitionOptions::default())
}

pub fn run_cascade_with(
    g: &Graph,
    cfg: &CascadeConfig,
    opts: &PartitionOptions,
) -> Result<CascadeResult, MeasureError> {
    let initial = equivalence_partition_with(g, cfg.initial, opts)?;
    let cascading = if cfg.cascading == cfg.initial {
        initial.clone()
    } else {
        equivalence_partition_with(g, cfg.cascading, opts)?
    };
    Ok(cascade_from_partitions(
        g,
        &initial,
        &cascading,
        cfg.max_levels,
    ))
}

/// Cascade over precomputed partitions; equivalence under the cascade
/// measure is class membership in `cascading`.
pub fn cascade_from_partitions(
    g: &Graph,
    initial: &MeasuredPartition,
    cascading: &MeasuredPartition,
    max_levels: CascadeLevels,
) -> CascadeResult {
    let n = g.node_count();
    let p0: &Partition = &initial.partition;
    let classes = cascading.partition.class_ids();
    let mut level: Vec<Option<usize>> = (0..n).map(|v| p0.is_singleton(v).then_some(0)).collect();
    let mut identified = level.iter().filter(|l| l.is_some()).count();
    let fraction = |k: usize| if n == 0 { 0.0 } else { k as f64 / n as f64 };
    let mut by_level = vec![uniqueness(p0)];
    let limit = match max_levels {
        CascadeLevels::Fixed(k) => k,
        CascadeLevels::Fixpoint => usize::MAX,
    };
    let mut levels_run = 0;
    for i in 1..=limit {
        let snapshot = &level;
        let newly: Vec<usize> = (0..n)
            .into_par_iter()
            .filter(|&w| snapshot[w].is_none())
            .filter(|&w| {
                g.neighbors(w).iter().any(|&v| {
                    snapshot[v].is_some()
                        && !g
                            .neighbors(v)
                            .iter()
                            .any(|&u| u != w && snapshot[u].is_none() && classes[u] == classes[w])
                })
            })
            .collect();
        if newly.is_empty() {
            break;
        }
        for &w in &newly {
            level[w] = Some(i);
        }
        identified += newly.len();
        by_level.push(fraction(identified));
        levels_run = i;
    }
    CascadeResult {
        identified_level: level,
        uniqueness_by_level: by_level,
        levels_run,
        exact: initial.is_exact() && cascading.is_exact(),
    }
}

/// One `(initial, cascade)` combination of [`cascade_grid`].
#[derive(Clone, Debug)]
pub struct GridCell {
    pub initial: MeasureKind,
    pub cascading: MeasureKind,
    /// Fixpoint run; one-level uniqueness is read off level 1.
    pub result: Result<CascadeResult, MeasureError>,
}

/// Every ordered pair of `measures`, run to fixpoint. Partitions are
/// computed once per measure; a failing measure fails only its cells.
pub fn cascade_grid(g: &Graph, measures: &[MeasureKind], opts: &PartitionOptions) -> Vec<GridCell> {
    let partitions: Vec<Result<MeasuredPartition, MeasureError>> = measures
        .iter()
        .map(|&m| equivalence_partition_with(g, m, opts))
        .collect();
    let mut cells = Vec::with_capacity(measures.len() * measures.len());
    for (i, &initial) in measures.iter().enumerate() {
        for (j, &cascading) in measures.iter().enumerate() {
            let result = match (&partitions[i], &partitions[j]) {
                (Ok(a), Ok(b)) => Ok(cascade_from_partitions(g, a, b, CascadeLevels::Fixpoint)),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            cells.push(GridCell {
                initial,
                cascading,
                result,
            });
        }
    }
    cells
}
