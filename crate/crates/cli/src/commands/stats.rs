use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use graphanon_core::analysis::stat_columns;
use graphanon_core::stats::{graph_stats_with, StatsOptions};
use graphanon_core::GraphStats;
use serde::Serialize;

use super::{load, output};
use crate::format::sig6;
use crate::registry::{passes, Check};
use crate::{DataArgs, Failure, Status};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Edge-list files or registered dataset names
    #[arg(required = true)]
    pub graphs: Vec<String>,
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// BFS from this many random sources on large graphs
    #[arg(long)]
    pub sample_sources: Option<usize>,
    /// Sampling applies only above this node count
    #[arg(long, default_value_t = 20_000)]
    pub sample_above: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub dataset: String,
    pub stats: GraphStats,
    pub checks: Vec<Check>,
}

pub const CSV_EXTRA: [&str; 2] = ["lcc_size", "distances_sampled"];

pub fn csv_header() -> Vec<String> {
    let probe = graphanon_core::graph_stats(&graphanon_core::Graph::empty(0));
    std::iter::once("dataset".to_owned())
        .chain(stat_columns(&probe).into_iter().map(|(k, _)| k.to_owned()))
        .chain(CSV_EXTRA.iter().map(|s| (*s).to_owned()))
        .collect()
}

pub fn csv_row(dataset: &str, s: &GraphStats) -> Vec<String> {
    std::iter::once(dataset.to_owned())
        .chain(stat_columns(s).into_iter().map(|(_, v)| sig6(v)))
        .chain([s.lcc_size.to_string(), s.distances_sampled.to_string()])
        .collect()
}

pub fn run(a: &StatsArgs) -> Result<Status, Failure> {
    let opts = StatsOptions {
        sample_sources: a.sample_sources,
        sample_above: a.sample_above,
        seed: a.seed,
    };
    let mut reports = Vec::new();
    let mut flagged = false;
    for arg in &a.graphs {
        let ds = load(&a.data, arg)?;
        let stats = graph_stats_with(&ds.graph, &opts);
        let checks = ds
            .entry
            .as_ref()
            .map(|e| e.expected.check(&stats))
            .unwrap_or_default();
        for c in checks.iter().filter(|c| !c.ok) {
            eprintln!(
                "{}: {} is {} but {} was published{}",
                ds.name,
                c.field,
                sig6(c.actual),
                sig6(c.expected),
                if c.enforced { "" } else { " (informational)" }
            );
        }
        flagged |= !passes(&checks);
        reports.push(Report {
            dataset: ds.name,
            stats,
            checks,
        });
    }
    let mut out = output(a.out.as_deref())?;
    match a.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &reports).map_err(anyhow::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(csv_header())?;
            for r in &reports {
                w.write_record(csv_row(&r.dataset, &r.stats))?;
            }
            w.flush()?;
        }
    }
    Ok(Status::partial_if(flagged))
}
