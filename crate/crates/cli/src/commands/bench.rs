use std::path::PathBuf;

use clap::Args;
use graphanon_core::anonymize::MeanStd;
use graphanon_core::canon::DEFAULT_NODE_LIMIT;
use graphanon_core::{Graph, MeasureKind};

use super::uniqueness::measure_cell;
use super::{all_measure_names, expand_measures, load, output};
use crate::format::{opt, sig6};
use crate::{usage, DataArgs, Failure, Status};

pub const HEADER: [&str; 8] = [
    "dataset",
    "measure",
    "d",
    "trials",
    "wall_time_s",
    "wall_time_std_s",
    "uniqueness",
    "timed_out",
];

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub graphs: Vec<String>,
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_delimiter = ',', default_values_t = all_measure_names())]
    pub measures: Vec<String>,
    #[arg(long = "d", value_delimiter = ',', default_value = "1,2")]
    pub distances: Vec<usize>,
    /// Per-trial wall-clock limit in seconds
    #[arg(long, default_value_t = 10_800.0)]
    pub timeout: f64,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    pub canon_limit: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Timing of one `(dataset, measure)` cell over repeated trials.
#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub measure: MeasureKind,
    pub trials: usize,
    pub seconds: MeanStd,
    /// Absent when any trial timed out.
    pub uniqueness: Option<f64>,
    pub timed_out: bool,
}

pub fn bench_cell(
    g: &Graph,
    m: MeasureKind,
    trials: usize,
    timeout: f64,
    canon_limit: usize,
) -> Result<BenchRecord, Failure> {
    let mut times = Vec::with_capacity(trials);
    let mut uniqueness = None;
    let mut timed_out = false;
    for _ in 0..trials {
        let c = measure_cell(g, m, Some(timeout), canon_limit)?;
        times.push(c.seconds);
        timed_out |= c.timed_out;
        uniqueness = c.uniqueness;
        if c.timed_out {
            break;
        }
    }
    Ok(BenchRecord {
        measure: m,
        trials: times.len(),
        seconds: MeanStd::of(&times).expect("at least one trial"),
        uniqueness: if timed_out { None } else { uniqueness },
        timed_out,
    })
}

pub fn run(a: &BenchArgs) -> Result<Status, Failure> {
    if a.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let measures = expand_measures(&a.measures, &a.distances)?;
    let mut w = csv::Writer::from_writer(output(a.out.as_deref())?);
    w.write_record(HEADER)?;
    let mut flagged = false;
    for arg in &a.graphs {
        let ds = load(&a.data, arg)?;
        for &m in &measures {
            let r = bench_cell(&ds.graph, m, a.trials, a.timeout, a.canon_limit)?;
            flagged |= r.timed_out;
            w.write_record([
                ds.name.clone(),
                m.tag().name().to_owned(),
                m.distance().to_string(),
                r.trials.to_string(),
                sig6(r.seconds.mean),
                sig6(r.seconds.std),
                opt(r.uniqueness),
                r.timed_out.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(Status::partial_if(flagged))
}
