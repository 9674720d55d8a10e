//! Search for graphs on which one measure separates two nodes that another
//! measure cannot tell apart.

use crate::generate::{all_connected_graphs, gnp};
use crate::graph::{connected_components, Graph};

use super::{chain_values, equivalence_partition, MeasureKind, Partition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub graph: Graph,
    pub nodes: (usize, usize),
}

#[derive(Clone, Copy, Debug)]
pub enum SearchSpace {
    /// Every connected labeled graph with `2..=max_nodes` nodes, smallest
    /// first.
    Exhaustive { max_nodes: usize },
    /// Connected samples of G(n, p) seeded with `seed + i`.
    Random {
        nodes: usize,
        p: f64,
        samples: usize,
        seed: u64,
    },
}

impl SearchSpace {
    fn graphs(self) -> Box<dyn Iterator<Item = Graph>> {
        match self {
            SearchSpace::Exhaustive { max_nodes } => {
                assert!(max_nodes <= 8, "exhaustive search supports at most 8 nodes");
                Box::new((2..=max_nodes).flat_map(all_connected_graphs))
            }
            SearchSpace::Random {
                nodes,
                p,
                samples,
                seed,
            } => Box::new(
                (0..samples as u64)
                    .map(move |i| gnp(nodes, p, seed.wrapping_add(i)))
                    .filter(|g| connected_components(g).count() <= 1),
            ),
        }
    }
}

/// A `(distinguisher, blind)` question: find two nodes that `blind` puts in
/// one class and `distinguisher` separates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparationQuery {
    pub distinguisher: MeasureKind,
    pub blind: MeasureKind,
}

fn separated_pair(dist: &Partition, blind: &Partition) -> Option<(usize, usize)> {
    for class in blind.classes() {
        let first = class[0];
        if let Some(&other) = class
            .iter()
            .find(|&&w| dist.class_of(w) != dist.class_of(first))
        {
            return Some((first, other));
        }
    }
    None
}

/// Answers several queries in one pass over the search space. Entry `i` is
/// the first witness for `queries[i]`, or `None` when the space is exhausted
/// without one.
pub fn find_witnesses(space: SearchSpace, queries: &[SeparationQuery]) -> Vec<Option<Witness>> {
    let mut found: Vec<Option<Witness>> = vec![None; queries.len()];
    for g in space.graphs() {
        if found.iter().all(Option::is_some) {
            break;
        }
        for (slot, q) in found.iter_mut().zip(queries) {
            if slot.is_some() {
                continue;
            }
            let dist = equivalence_partition(&g, q.distinguisher).partition;
            let blind = equivalence_partition(&g, q.blind).partition;
            if let Some(nodes) = separated_pair(&dist, &blind) {
                *slot = Some(Witness {
                    graph: g.clone(),
                    nodes,
                });
            }
        }
    }
    found
}

pub fn find_separating_witness(space: SearchSpace, query: SeparationQuery) -> Option<Witness> {
    find_witnesses(space, &[query]).pop().flatten()
}

/// Witnesses that `vrq` and `count` are incomparable in strictness.
#[derive(Clone, Debug)]
pub struct Incomparability {
    /// `vrq(d)` separates, `count(d)` does not
    pub vrq_not_count: Option<Witness>,
    /// `count(d)` separates, `vrq(d)` does not
    pub count_not_vrq: Option<Witness>,
    /// `vrq(d)` separates, `count(d + 1)` does not
    pub vrq_not_count_next: Option<Witness>,
}

impl Incomparability {
    pub fn queries(d: usize) -> [SeparationQuery; 3] {
        [
            SeparationQuery {
                distinguisher: MeasureKind::vrq(d),
                blind: MeasureKind::count(d),
            },
            SeparationQuery {
                distinguisher: MeasureKind::count(d),
                blind: MeasureKind::vrq(d),
            },
            SeparationQuery {
                distinguisher: MeasureKind::vrq(d),
                blind: MeasureKind::count(d + 1),
            },
        ]
    }

    pub fn is_complete(&self) -> bool {
        self.vrq_not_count.is_some()
            && self.count_not_vrq.is_some()
            && self.vrq_not_count_next.is_some()
    }
}

pub fn find_incomparability_witnesses(space: SearchSpace, d: usize) -> Incomparability {
    let mut found = find_witnesses(space, &Incomparability::queries(d)).into_iter();
    Incomparability {
        vrq_not_count: found.next().flatten(),
        count_not_vrq: found.next().flatten(),
        vrq_not_count_next: found.next().flatten(),
    }
}

/// Re-checks a witness from raw per-level measure values, independent of
/// partition bookkeeping.
pub fn verify_witness(w: &Witness, query: SeparationQuery) -> bool {
    let (a, b) = w.nodes;
    let values = |m| {
        (
            chain_values(&w.graph, a, m).expect("small graph"),
            chain_values(&w.graph, b, m).expect("small graph"),
        )
    };
    let (da, db) = values(query.distinguisher);
    let (ba, bb) = values(query.blind);
    da != db && ba == bb
}
