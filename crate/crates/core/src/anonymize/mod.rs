//! Edge-sampling anonymization: delete edges on a fixed schedule, then track
//! uniqueness against utility.
//!
//! Each repetition shuffles the edge list once. Step `t` of `steps` keeps
//! the first `round(|E| * (1 - t/steps))` edges of that order, so deletions
//! are nested and the last step is edge-free.

pub mod centrality;
pub mod community;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::DEFAULT_NODE_LIMIT;
use crate::graph::{connected_components, Graph};
use crate::measures::{equivalence_partition_with, MeasureKind, Partition, PartitionOptions};

pub use centrality::{betweenness, centrality_overlap, top_k};
pub use community::{detect_communities, nmi, CommunityDetector, LeidenConsensus};

/// Fraction of all nodes in the largest component of `perturbed`.
pub fn robustness(original: &Graph, perturbed: &Graph) -> f64 {
    assert_eq!(
        original.node_count(),
        perturbed.node_count(),
        "robustness needs the same node set"
    );
    let n = perturbed.node_count();
    if n == 0 {
        return 1.0;
    }
    connected_components(perturbed).largest() as f64 / n as f64
}

/// Edges kept at step `t`: `m * (steps - t) / steps` rounded half up,
/// computed in integers.
pub fn edges_remaining(m: usize, step: usize, steps: usize) -> usize {
    assert!(
        steps >= 1 && step <= steps,
        "step {step} outside 0..={steps}"
    );
    let (m, t, s) = (m as u128, step as u128, steps as u128);
    ((2 * m * (s - t) + s) / (2 * s)) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UtilityMetric {
    Robustness,
    CommunityNmi,
    CentralityOverlap,
}

impl UtilityMetric {
    pub const ALL: [UtilityMetric; 3] = [
        UtilityMetric::Robustness,
        UtilityMetric::CommunityNmi,
        UtilityMetric::CentralityOverlap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UtilityMetric::Robustness => "robustness",
            UtilityMetric::CommunityNmi => "nmi",
            UtilityMetric::CentralityOverlap => "centrality",
        }
    }
}

impl fmt::Display for UtilityMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UtilityMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "robustness" => Ok(UtilityMetric::Robustness),
            "nmi" | "communities" | "community_nmi" => Ok(UtilityMetric::CommunityNmi),
            "centrality" | "centrality_overlap" => Ok(UtilityMetric::CentralityOverlap),
            other => Err(format!("unknown utility metric {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub measure: MeasureKind,
    pub steps: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub robustness: bool,
    pub communities: bool,
    pub centrality: bool,
    pub top_k: usize,
    /// Leiden runs per consensus clustering.
    pub community_runs: usize,
    /// Wall-clock budget for one uniqueness computation.
    pub time_budget: Option<Duration>,
    pub canon_limit: usize,
}

impl SweepConfig {
    pub fn new(measure: MeasureKind) -> Self {
        SweepConfig {
            measure,
            steps: 100,
            repetitions: 5,
            seed: 0,
            robustness: true,
            communities: true,
            centrality: true,
            top_k: 100,
            community_runs: 10,
            time_budget: None,
            canon_limit: DEFAULT_NODE_LIMIT,
        }
    }

    pub fn enabled(&self, metric: UtilityMetric) -> bool {
        match metric {
            UtilityMetric::Robustness => self.robustness,
            UtilityMetric::CommunityNmi => self.communities,
            UtilityMetric::CentralityOverlap => self.centrality,
        }
    }
}

/// One perturbed graph of one repetition. Disabled metrics and timed-out
/// uniqueness are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub repetition: usize,
    pub step: usize,
    pub edges_remaining: usize,
    pub uniqueness: Option<f64>,
    /// False when some neighborhood exceeded the canonical-labeling limit.
    pub exact: bool,
    pub robustness: Option<f64>,
    pub community_nmi: Option<f64>,
    pub centrality_overlap: Option<f64>,
    pub uniqueness_time: Duration,
    pub utility_time: Duration,
}

impl SweepRecord {
    pub fn utility(&self, metric: UtilityMetric) -> Option<f64> {
        match metric {
            UtilityMetric::Robustness => self.robustness,
            UtilityMetric::CommunityNmi => self.community_nmi,
            UtilityMetric::CentralityOverlap => self.centrality_overlap,
        }
    }
}

pub fn edge_sampling_sweep(g: &Graph, cfg: &SweepConfig) -> Vec<SweepRecord> {
    let detector = LeidenConsensus {
        runs: cfg.community_runs,
        ..Default::default()
    };
    edge_sampling_sweep_with(g, cfg, &detector)
}

/// Records ordered by repetition, then step. Repetition `r` draws its edge
/// order from a generator seeded with `seed + r`; community detection uses
/// `seed` on every graph so step 0 reproduces the original communities.
pub fn edge_sampling_sweep_with(
    g: &Graph,
    cfg: &SweepConfig,
    detector: &dyn CommunityDetector,
) -> Vec<SweepRecord> {
    assert!(cfg.steps >= 1, "steps must be at least 1");
    assert!(cfg.repetitions >= 1, "repetitions must be at least 1");
    let communities = cfg.communities.then(|| detector.detect(g, cfg.seed));
    let scores = cfg.centrality.then(|| betweenness(g));
    let reference = Reference {
        graph: g,
        communities: communities.as_ref(),
        scores: scores.as_deref(),
    };
    (0..cfg.repetitions)
        .into_par_iter()
        .flat_map_iter(|rep| run_repetition(&reference, cfg, detector, rep))
        .collect()
}

/// Deletion order of repetition `rep`: step `t` keeps a prefix of it.
pub fn edge_order(g: &Graph, seed: u64, rep: usize) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(rep as u64));
    edges.shuffle(&mut rng);
    edges
}

struct Reference<'a> {
    graph: &'a Graph,
    communities: Option<&'a Partition>,
    scores: Option<&'a [f64]>,
}

fn run_repetition(
    reference: &Reference<'_>,
    cfg: &SweepConfig,
    detector: &dyn CommunityDetector,
    rep: usize,
) -> Vec<SweepRecord> {
    let g = reference.graph;
    let edges = edge_order(g, cfg.seed, rep);
    (0..=cfg.steps)
        .map(|step| {
            let kept = edges_remaining(edges.len(), step, cfg.steps);
            let h = g.with_edges(edges[..kept].iter().copied());

            let started = Instant::now();
            let opts = PartitionOptions {
                canon_limit: cfg.canon_limit,
                deadline: cfg.time_budget.map(|b| started + b),
            };
            let measured = equivalence_partition_with(&h, cfg.measure, &opts).ok();
            let uniqueness_time = started.elapsed();

            let started = Instant::now();
            let robustness = cfg.robustness.then(|| robustness(g, &h));
            let community_nmi = reference.communities.map(|original| {
                let perturbed = detector.detect(&h, cfg.seed);
                nmi(original, &perturbed).expect("same node set")
            });
            let centrality_overlap = reference.scores.map(|original| {
                centrality::overlap_of_scores(original, &betweenness(&h), cfg.top_k)
            });
            let utility_time = started.elapsed();

            SweepRecord {
                repetition: rep,
                step,
                edges_remaining: kept,
                uniqueness: measured.as_ref().map(|m| m.uniqueness()),
                exact: measured.as_ref().is_none_or(|m| m.is_exact()),
                robustness,
                community_nmi,
                centrality_overlap,
                uniqueness_time,
                utility_time,
            }
        })
        .collect()
}

/// Mean and sample standard deviation of one metric at one step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Option<Self> {
        let n = values.len();
        if n == 0 {
            return None;
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n < 2 {
            0.0
        } else {
            let ss: f64 = values.iter().map(|x| (x - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        };
        Some(MeanStd { mean, std, n })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepSummary {
    pub step: usize,
    pub uniqueness: Option<MeanStd>,
    pub robustness: Option<MeanStd>,
    pub community_nmi: Option<MeanStd>,
    pub centrality_overlap: Option<MeanStd>,
}

/// Per-step aggregates across repetitions, ordered by step.
pub fn summarize(records: &[SweepRecord]) -> Vec<StepSummary> {
    let steps = records.iter().map(|r| r.step).max().map_or(0, |s| s + 1);
    (0..steps)
        .filter_map(|step| {
            let at: Vec<&SweepRecord> = records.iter().filter(|r| r.step == step).collect();
            if at.is_empty() {
                return None;
            }
            let collect = |f: &dyn Fn(&SweepRecord) -> Option<f64>| {
                MeanStd::of(&at.iter().filter_map(|r| f(r)).collect::<Vec<_>>())
            };
            Some(StepSummary {
                step,
                uniqueness: collect(&|r| r.uniqueness),
                robustness: collect(&|r| r.robustness),
                community_nmi: collect(&|r| r.community_nmi),
                centrality_overlap: collect(&|r| r.centrality_overlap),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParetoPoint {
    pub uniqueness: f64,
    pub utility: f64,
}

impl ParetoPoint {
    /// No worse on both axes and strictly better on one.
    pub fn dominates(&self, other: &ParetoPoint) -> bool {
        self.uniqueness <= other.uniqueness
            && self.utility >= other.utility
            && (self.uniqueness < other.uniqueness || self.utility > other.utility)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParetoFront {
    pub metric: UtilityMetric,
    /// Non-dominated points, distinct, by ascending uniqueness.
    pub points: Vec<ParetoPoint>,
}

impl ParetoFront {
    pub fn from_points(metric: UtilityMetric, points: &[ParetoPoint]) -> Self {
        let mut front: Vec<ParetoPoint> = points
            .iter()
            .filter(|p| !p.uniqueness.is_nan() && !p.utility.is_nan())
            .filter(|p| !points.iter().any(|q| q.dominates(p)))
            .copied()
            .collect();
        front.sort_by(|a, b| {
            a.uniqueness
                .total_cmp(&b.uniqueness)
                .then(a.utility.total_cmp(&b.utility))
        });
        front.dedup();
        ParetoFront {
            metric,
            points: front,
        }
    }
}

/// Front of `(uniqueness, utility)` over records where both are known.
pub fn pareto_front(records: &[SweepRecord], metric: UtilityMetric) -> ParetoFront {
    let points: Vec<ParetoPoint> = records
        .iter()
        .filter_map(|r| {
            Some(ParetoPoint {
                uniqueness: r.uniqueness?,
                utility: r.utility(metric)?,
            })
        })
        .collect();
    ParetoFront::from_points(metric, &points)
}
