//! Benchmark fixtures shared by the criterion targets.

use graphanon_core::generate::{barabasi_albert, gnp};
use graphanon_core::Graph;

/// Scale-free graph resembling the sparse social networks of the dataset
/// roster.
pub fn social(n: usize) -> Graph {
    barabasi_albert(n, 3, 42)
}

pub fn random(n: usize, avg_degree: f64) -> Graph {
    gnp(n, avg_degree / (n as f64 - 1.0), 42)
}
