use std::path::PathBuf;
use std::time::Duration;

use clap::Args;
use graphanon_core::anonymize::{
    edge_sampling_sweep, pareto_front, summarize, MeanStd, SweepConfig, SweepRecord, UtilityMetric,
};
use graphanon_core::canon::DEFAULT_NODE_LIMIT;
use graphanon_core::MeasureKind;

use super::{load, output};
use crate::format::{opt, sig6};
use crate::{usage, DataArgs, Failure, Status};

pub const HEADER: [&str; 9] = [
    "rep",
    "step",
    "edges_remaining",
    "uniqueness",
    "robustness",
    "community_nmi",
    "centrality_overlap",
    "uniq_time_s",
    "util_time_s",
];

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub graph: String,
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, default_value = "degree")]
    pub measure: String,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Utility metrics to compute: robustness, nmi, centrality
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "robustness,nmi,centrality"
    )]
    pub metrics: Vec<String>,
    #[arg(long, default_value_t = 100)]
    pub top_k: usize,
    /// Leiden runs per consensus clustering
    #[arg(long, default_value_t = 10)]
    pub community_runs: usize,
    /// Wall-clock limit in seconds for each uniqueness computation
    #[arg(long)]
    pub timeout: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    pub canon_limit: usize,
    /// Leave the timing columns empty so reruns are byte-identical
    #[arg(long)]
    pub no_timings: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the Pareto fronts of every enabled metric here
    #[arg(long)]
    pub pareto: Option<PathBuf>,
    /// Also write per-step mean and standard deviation here
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

pub fn config(a: &SweepArgs) -> Result<SweepConfig, Failure> {
    let measure: MeasureKind = a.measure.parse().map_err(|e| usage(format!("{e}")))?;
    if a.steps == 0 || a.reps == 0 {
        return Err(usage("--steps and --reps must be at least 1"));
    }
    let mut cfg = SweepConfig::new(measure);
    cfg.steps = a.steps;
    cfg.repetitions = a.reps;
    cfg.seed = a.seed;
    cfg.top_k = a.top_k;
    cfg.community_runs = a.community_runs.max(1);
    cfg.canon_limit = a.canon_limit;
    cfg.time_budget = match a.timeout {
        None => None,
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(usage(format!("invalid timeout {s}"))),
    };
    cfg.robustness = false;
    cfg.communities = false;
    cfg.centrality = false;
    for name in &a.metrics {
        match name.parse::<UtilityMetric>().map_err(usage)? {
            UtilityMetric::Robustness => cfg.robustness = true,
            UtilityMetric::CommunityNmi => cfg.communities = true,
            UtilityMetric::CentralityOverlap => cfg.centrality = true,
        }
    }
    Ok(cfg)
}

pub fn record_row(r: &SweepRecord, timings: bool) -> [String; 9] {
    let time = |d: Duration| {
        if timings {
            sig6(d.as_secs_f64())
        } else {
            String::new()
        }
    };
    [
        r.repetition.to_string(),
        r.step.to_string(),
        r.edges_remaining.to_string(),
        opt(r.uniqueness),
        opt(r.robustness),
        opt(r.community_nmi),
        opt(r.centrality_overlap),
        time(r.uniqueness_time),
        time(r.utility_time),
    ]
}

pub fn run(a: &SweepArgs) -> Result<Status, Failure> {
    let cfg = config(a)?;
    let ds = load(&a.data, &a.graph)?;
    if ds.graph.edge_count() < cfg.steps {
        eprintln!(
            "warning: {} has {} edges, fewer than {} steps; some steps remove nothing",
            ds.name,
            ds.graph.edge_count(),
            cfg.steps
        );
    }
    let records = edge_sampling_sweep(&ds.graph, &cfg);

    let mut w = csv::Writer::from_writer(output(a.out.as_deref())?);
    w.write_record(HEADER)?;
    for r in &records {
        w.write_record(record_row(r, !a.no_timings))?;
    }
    w.flush()?;

    if let Some(path) = &a.pareto {
        let mut w = csv::Writer::from_writer(output(Some(path))?);
        w.write_record(["metric", "uniqueness", "utility"])?;
        for metric in UtilityMetric::ALL.into_iter().filter(|&m| cfg.enabled(m)) {
            for p in pareto_front(&records, metric).points {
                w.write_record([
                    metric.name().to_owned(),
                    sig6(p.uniqueness),
                    sig6(p.utility),
                ])?;
            }
        }
        w.flush()?;
    }

    if let Some(path) = &a.summary {
        let mut w = csv::Writer::from_writer(output(Some(path))?);
        let mut header = vec!["step".to_owned()];
        for name in [
            "uniqueness",
            "robustness",
            "community_nmi",
            "centrality_overlap",
        ] {
            header.push(format!("{name}_mean"));
            header.push(format!("{name}_std"));
        }
        w.write_record(header)?;
        let cells = |m: Option<MeanStd>| match m {
            Some(m) => [sig6(m.mean), sig6(m.std)],
            None => Default::default(),
        };
        for s in summarize(&records) {
            let mut row = vec![s.step.to_string()];
            for m in [
                s.uniqueness,
                s.robustness,
                s.community_nmi,
                s.centrality_overlap,
            ] {
                row.extend(cells(m));
            }
            w.write_record(row)?;
        }
        w.flush()?;
    }

    let flagged = records.iter().any(|r| r.uniqueness.is_none() || !r.exact);
    Ok(Status::partial_if(flagged))
}
