use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::Args;
use graphanon_core::analysis::{diff_correlations, CorrelationRecord};
use graphanon_core::MeasureTag;

use super::output;
use crate::format::opt;
use crate::{Failure, Status};

pub const HEADER: [&str; 6] = ["property", "pair", "pearson_r", "p_value", "n", "flag"];

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Output of the `uniqueness` command covering all six measures
    #[arg(long)]
    pub uniqueness: PathBuf,
    /// Output of `stats --format csv`
    #[arg(long)]
    pub stats: PathBuf,
    /// Distance whose uniqueness values are compared
    #[arg(long = "d", default_value_t = 1)]
    pub distance: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_table(path: &Path) -> anyhow::Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut r =
        csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    let rows = r
        .records()
        .map(|rec| Ok(rec?.iter().map(str::to_owned).collect()))
        .collect::<anyhow::Result<_>>()
        .with_context(|| format!("reading {}", path.display()))?;
    Ok((header, rows))
}

fn column(header: &[String], name: &str, path: &Path) -> anyhow::Result<usize> {
    header
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| anyhow!("{} has no {name:?} column", path.display()))
}

/// Per-dataset uniqueness indexed like [`MeasureTag::ALL`]. `degree` rows
/// match any distance.
pub fn uniqueness_table(path: &Path, d: usize) -> anyhow::Result<BTreeMap<String, [f64; 6]>> {
    let (header, rows) = read_table(path)?;
    let [ds, m, dist, u] =
        ["dataset", "measure", "d", "uniqueness"].map(|c| column(&header, c, path));
    let (ds, m, dist, u) = (ds?, m?, dist?, u?);
    let mut partial: BTreeMap<String, [Option<f64>; 6]> = BTreeMap::new();
    for row in rows {
        let tag = MeasureTag::ALL
            .iter()
            .position(|t| t.name() == row[m])
            .ok_or_else(|| anyhow!("unknown measure {:?} in {}", row[m], path.display()))?;
        let row_d: usize = row[dist]
            .parse()
            .with_context(|| format!("bad d {:?}", row[dist]))?;
        if MeasureTag::ALL[tag] != MeasureTag::Degree && row_d != d {
            continue;
        }
        if row[u].is_empty() {
            continue;
        }
        let value: f64 = row[u]
            .parse()
            .with_context(|| format!("bad uniqueness {:?}", row[u]))?;
        partial.entry(row[ds].clone()).or_default()[tag] = Some(value);
    }
    Ok(partial
        .into_iter()
        .filter_map(|(k, v)| {
            let full: Option<Vec<f64>> = v.into_iter().collect();
            full.map(|f| (k, f.try_into().expect("six values")))
        })
        .collect())
}

/// Numeric stats columns keyed by dataset.
pub fn stats_table(path: &Path) -> anyhow::Result<(Vec<String>, BTreeMap<String, Vec<f64>>)> {
    let (header, rows) = read_table(path)?;
    let ds = column(&header, "dataset", path)?;
    let keep: Vec<usize> = (0..header.len())
        .filter(|&i| i != ds && header[i] != "distances_sampled")
        .collect();
    let mut out = BTreeMap::new();
    for row in rows {
        let values = keep
            .iter()
            .map(|&i| match row[i].as_str() {
                "nan" | "" => Ok(f64::NAN),
                s => s
                    .parse::<f64>()
                    .with_context(|| format!("bad number {s:?}")),
            })
            .collect::<anyhow::Result<Vec<f64>>>()?;
        out.insert(row[ds].clone(), values);
    }
    Ok((keep.into_iter().map(|i| header[i].clone()).collect(), out))
}

pub fn correlate(uniq: &Path, stats: &Path, d: usize) -> anyhow::Result<Vec<CorrelationRecord>> {
    let u = uniqueness_table(uniq, d)?;
    let (names, s) = stats_table(stats)?;
    let datasets: Vec<&String> = u.keys().filter(|k| s.contains_key(*k)).collect();
    if datasets.len() < 3 {
        bail!(
            "need at least 3 datasets with all six measures at d={d} and stats; found {}",
            datasets.len()
        );
    }
    let rows: Vec<[f64; 6]> = datasets.iter().map(|k| u[*k]).collect();
    let properties: Vec<(String, Vec<f64>)> = names
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), datasets.iter().map(|k| s[*k][i]).collect()))
        .collect();
    Ok(diff_correlations(&rows, &properties))
}

pub fn run(a: &CorrelateArgs) -> Result<Status, Failure> {
    let records = correlate(&a.uniqueness, &a.stats, a.distance)?;
    let mut w = csv::Writer::from_writer(output(a.out.as_deref())?);
    w.write_record(HEADER)?;
    let mut flagged = false;
    for r in &records {
        let flag = if r.r.is_none() { "undefined" } else { "" };
        flagged |= r.r.is_none();
        w.write_record([
            r.property.clone(),
            r.pair.clone(),
            opt(r.r),
            opt(r.p_value),
            r.n.to_string(),
            flag.to_owned(),
        ])?;
    }
    w.flush()?;
    Ok(Status::partial_if(flagged))
}
