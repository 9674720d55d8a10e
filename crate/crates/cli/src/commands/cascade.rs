use std::path::PathBuf;

use clap::Args;
use graphanon_core::canon::DEFAULT_NODE_LIMIT;
use graphanon_core::cascade::{cascade_grid, run_cascade_with, CascadeConfig, CascadeLevels};
use graphanon_core::measures::PartitionOptions;
use graphanon_core::MeasureKind;

use super::{deadline, load, output};
use crate::format::sig6;
use crate::{usage, DataArgs, Failure, Status};

pub const TRACE_HEADER: [&str; 3] = ["level", "identified", "uniqueness"];
pub const GRID_HEADER: [&str; 6] = ["initial", "cascade", "level0", "c1", "cf", "levels_run"];

#[derive(Debug, Args)]
pub struct CascadeArgs {
    pub graph: String,
    #[command(flatten)]
    pub data: DataArgs,
    /// Measure that identifies the seed nodes
    #[arg(long, default_value = "degree")]
    pub initial: String,
    /// Measure used to tell neighbors apart
    #[arg(long = "cascade", default_value = "degree")]
    pub cascading: String,
    /// Number of cascade levels or `fixpoint`
    #[arg(long, default_value = "fixpoint")]
    pub levels: String,
    /// Run every ordered pair of the six measures at distance `--d`
    #[arg(long)]
    pub grid: bool,
    #[arg(long = "d", default_value_t = 1)]
    pub distance: usize,
    #[arg(long)]
    pub timeout: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    pub canon_limit: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(a: &CascadeArgs) -> Result<Status, Failure> {
    let ds = load(&a.data, &a.graph)?;
    let opts = PartitionOptions {
        canon_limit: a.canon_limit,
        deadline: deadline(a.timeout)?,
    };
    let mut w = csv::Writer::from_writer(output(a.out.as_deref())?);
    if a.grid {
        if a.distance == 0 {
            return Err(usage("--d must be at least 1"));
        }
        w.write_record(GRID_HEADER)?;
        let mut flagged = false;
        for cell in cascade_grid(&ds.graph, &MeasureKind::all(a.distance), &opts) {
            let values = match &cell.result {
                Ok(r) => {
                    flagged |= !r.exact;
                    [
                        sig6(r.initial()),
                        sig6(r.one_level()),
                        sig6(r.last()),
                        r.levels_run.to_string(),
                    ]
                }
                Err(_) => {
                    flagged = true;
                    Default::default()
                }
            };
            let mut row = vec![cell.initial.to_string(), cell.cascading.to_string()];
            row.extend(values);
            w.write_record(row)?;
        }
        w.flush()?;
        return Ok(Status::partial_if(flagged));
    }
    let parse = |s: &str| s.parse::<MeasureKind>().map_err(|e| usage(format!("{e}")));
    let cfg = CascadeConfig {
        initial: parse(&a.initial)?,
        cascading: parse(&a.cascading)?,
        max_levels: a.levels.parse::<CascadeLevels>().map_err(usage)?,
    };
    let r = match run_cascade_with(&ds.graph, &cfg, &opts) {
        Ok(r) => r,
        Err(graphanon_core::MeasureError::TimedOut) => {
            eprintln!("{}: timed out", ds.name);
            return Ok(Status::Partial);
        }
        Err(e) => return Err(Failure::Data(e.into())),
    };
    w.write_record(TRACE_HEADER)?;
    for (level, u) in r.uniqueness_by_level.iter().enumerate() {
        let identified = r
            .identified_level
            .iter()
            .filter(|l| **l == Some(level))
            .count();
        w.write_record([level.to_string(), identified.to_string(), sig6(*u)])?;
    }
    w.flush()?;
    Ok(Status::partial_if(!r.exact))
}
