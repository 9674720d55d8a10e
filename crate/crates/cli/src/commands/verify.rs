use anyhow::anyhow;
use clap::Args;
use graphanon_core::stats::{graph_stats_with, StatsOptions};
use graphanon_core::{equivalence_partition, is_refinement, strictness_pairs, Graph};

use super::load;
use crate::format::sig6;
use crate::registry::passes;
use crate::{DataArgs, Failure, Status};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(required = true)]
    pub graphs: Vec<String>,
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long = "d", value_delimiter = ',', default_value = "1,2")]
    pub distances: Vec<usize>,
}

/// Violated `(finer, coarser)` pairs of the strictness ordering on `g`.
pub fn ordering_violations(g: &Graph, d: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for (finer, coarser) in strictness_pairs(d) {
        let a = equivalence_partition(g, finer);
        let b = equivalence_partition(g, coarser);
        // over-limit nodes are forced singletons, which can only refine
        let refines = is_refinement(&a.partition, &b.partition).expect("same graph");
        if !refines || a.uniqueness() + 1e-9 < b.uniqueness() {
            bad.push(format!("{finer} does not refine {coarser}"));
        }
    }
    bad
}

pub fn run(a: &VerifyArgs) -> Result<Status, Failure> {
    let mut failed = false;
    for arg in &a.graphs {
        let ds = load(&a.data, arg)?;
        for &d in &a.distances {
            if d == 0 {
                continue;
            }
            let bad = ordering_violations(&ds.graph, d);
            println!(
                "{}\tordering d={d}\t{}",
                ds.name,
                if bad.is_empty() { "ok" } else { "FAILED" }
            );
            for b in &bad {
                println!("  {b}");
            }
            failed |= !bad.is_empty();
        }
        if let Some(entry) = &ds.entry {
            let stats = graph_stats_with(&ds.graph, &StatsOptions::default());
            let checks = entry.expected.check(&stats);
            let ok = passes(&checks);
            println!(
                "{}\tpublished stats\t{}",
                ds.name,
                if ok { "ok" } else { "FAILED" }
            );
            for c in &checks {
                println!(
                    "  {:<14} expected {:<10} got {:<10} {}",
                    c.field,
                    sig6(c.expected),
                    sig6(c.actual),
                    match (c.ok, c.enforced) {
                        (true, _) => "ok",
                        (false, true) => "MISMATCH",
                        (false, false) => "differs (informational)",
                    }
                );
            }
            failed |= !ok;
        }
    }
    if failed {
        return Err(Failure::Data(anyhow!("verification failed")));
    }
    Ok(Status::Complete)
}
