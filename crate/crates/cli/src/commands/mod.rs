pub mod bench;
pub mod cascade;
pub mod correlate;
pub mod fetch;
pub mod stats;
pub mod sweep;
pub mod uniqueness;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::Context;
use graphanon_core::{load_edge_list, Graph, MeasureKind, MeasureTag};

use crate::registry::DatasetEntry;
use crate::{usage, DataArgs, Failure};

pub struct Dataset {
    pub name: String,
    pub graph: Graph,
    pub entry: Option<DatasetEntry>,
}

/// Loads a file path or registered dataset name.
pub fn load(data: &DataArgs, arg: &str) -> Result<Dataset, Failure> {
    let registry = data.registry()?;
    let (name, path, entry) = registry.resolve(arg).map_err(Failure::Data)?;
    let loaded = load_edge_list(&path).with_context(|| format!("loading {}", path.display()))?;
    Ok(Dataset {
        name,
        graph: loaded.graph,
        entry: entry.cloned(),
    })
}

/// File at `path`, or stdout.
pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Expands measure names and explicit specs against a distance list.
/// `degree` appears once; `count` with `--d 1,2` becomes `count:1,count:2`;
/// `dk:3` is taken as given.
pub fn expand_measures(specs: &[String], ds: &[usize]) -> Result<Vec<MeasureKind>, Failure> {
    let mut out: Vec<MeasureKind> = Vec::new();
    let mut push = |m: MeasureKind| {
        if !out.contains(&m) {
            out.push(m);
        }
    };
    for spec in specs {
        let spec = spec.trim();
        if spec.contains(':') || spec.eq_ignore_ascii_case("degree") {
            push(spec.parse().map_err(|e| usage(format!("{e}")))?);
            continue;
        }
        let tag = MeasureTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(spec))
            .ok_or_else(|| usage(format!("unknown measure {spec:?}")))?;
        for &d in ds {
            push(MeasureKind::new(tag, d).map_err(|e| usage(format!("{e}")))?);
        }
    }
    if out.is_empty() {
        return Err(usage("no measures selected"));
    }
    Ok(out)
}

pub fn all_measure_names() -> Vec<String> {
    MeasureTag::ALL
        .iter()
        .map(|t| t.name().to_owned())
        .collect()
}

pub fn deadline(timeout: Option<f64>) -> Result<Option<Instant>, Failure> {
    match timeout {
        None => Ok(None),
        Some(s) if s.is_finite() && s >= 0.0 => {
            Ok(Some(Instant::now() + Duration::from_secs_f64(s)))
        }
        Some(s) => Err(usage(format!("invalid timeout {s}"))),
    }
}
