//! Node anonymity in undirected networks.
//!
//! Six equivalence measures partition the nodes of a graph; the fraction of
//! nodes alone in their class is the graph's uniqueness. On top of that the
//! crate provides cascade re-identification, an edge-sampling anonymization
//! sweep with utility metrics, and the statistics used to relate measure
//! differences to network structure.

pub mod analysis;
pub mod anonymize;
pub mod canon;
pub mod cascade;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod measures;
pub mod stats;

pub use anonymize::{
    edge_sampling_sweep, pareto_front, robustness, ParetoFront, SweepConfig, SweepRecord,
    UtilityMetric,
};
pub use canon::{canonical_form, rooted_isomorphic_bruteforce, CanonicalLabel};
pub use cascade::{run_cascade, CascadeConfig, CascadeLevels, CascadeResult};
pub use error::{CanonError, MeasureError, ParseError};
pub use graph::{connected_components, Components, Graph, RootedSubgraph};
pub use io::{build_graph, load_edge_list, read_edge_list, LoadedGraph};
pub use measures::{
    equivalence_partition, is_refinement, k_anonymity_histogram, measure_value, strictness_pairs,
    uniqueness, MeasureKind, MeasureTag, MeasureValue, MeasuredPartition, Partition,
};
pub use stats::{graph_stats, GraphStats};
