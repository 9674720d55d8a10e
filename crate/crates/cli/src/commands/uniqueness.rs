use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use graphanon_core::canon::DEFAULT_NODE_LIMIT;
use graphanon_core::measures::{equivalence_partition_with, PartitionOptions};
use graphanon_core::{Graph, MeasureError, MeasureKind};

use super::{all_measure_names, deadline, expand_measures, load, output};
use crate::format::{opt, sig6};
use crate::{DataArgs, Failure, Status};

pub const HEADER: [&str; 7] = [
    "dataset",
    "measure",
    "d",
    "uniqueness",
    "runtime_s",
    "exact",
    "timed_out",
];

#[derive(Debug, Args)]
pub struct UniquenessArgs {
    #[arg(required = true)]
    pub graphs: Vec<String>,
    #[command(flatten)]
    pub data: DataArgs,
    /// Measure names or specs such as `dk:2`
    #[arg(long, value_delimiter = ',', default_values_t = all_measure_names())]
    pub measures: Vec<String>,
    /// Distances for measure names without an explicit `:d`
    #[arg(long = "d", value_delimiter = ',', default_value = "1")]
    pub distances: Vec<usize>,
    /// Per-cell wall-clock limit in seconds
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Largest neighborhood labeled canonically
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    pub canon_limit: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub struct Cell {
    pub measure: MeasureKind,
    pub uniqueness: Option<f64>,
    pub seconds: f64,
    pub exact: bool,
    pub timed_out: bool,
}

pub fn measure_cell(
    g: &Graph,
    m: MeasureKind,
    timeout: Option<f64>,
    canon_limit: usize,
) -> Result<Cell, Failure> {
    let started = Instant::now();
    let opts = PartitionOptions {
        canon_limit,
        deadline: deadline(timeout)?,
    };
    let result = equivalence_partition_with(g, m, &opts);
    let seconds = started.elapsed().as_secs_f64();
    Ok(match result {
        Ok(p) => Cell {
            measure: m,
            uniqueness: Some(p.uniqueness()),
            seconds,
            exact: p.is_exact(),
            timed_out: false,
        },
        Err(MeasureError::TimedOut) => Cell {
            measure: m,
            uniqueness: None,
            seconds,
            exact: false,
            timed_out: true,
        },
        Err(e) => return Err(Failure::Data(e.into())),
    })
}

pub fn run(a: &UniquenessArgs) -> Result<Status, Failure> {
    let measures = expand_measures(&a.measures, &a.distances)?;
    let mut w = csv::Writer::from_writer(output(a.out.as_deref())?);
    w.write_record(HEADER)?;
    let mut flagged = false;
    for arg in &a.graphs {
        let ds = load(&a.data, arg)?;
        for &m in &measures {
            let c = measure_cell(&ds.graph, m, a.timeout, a.canon_limit)?;
            flagged |= !c.exact || c.timed_out;
            w.write_record([
                ds.name.clone(),
                m.tag().name().to_owned(),
                m.distance().to_string(),
                opt(c.uniqueness),
                sig6(c.seconds),
                c.exact.to_string(),
                c.timed_out.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(Status::partial_if(flagged))
}
