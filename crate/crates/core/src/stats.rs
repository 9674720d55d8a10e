//! Descriptive network statistics.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{connected_components, Graph, UNREACHABLE};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub avg_degree: f64,
    pub median_degree: f64,
    pub max_degree: usize,
    pub avg_clustering: f64,
    /// NaN when the endpoint degrees have zero variance.
    pub assortativity: f64,
    pub diameter: usize,
    pub avg_distance: f64,
    pub powerlaw_alpha: f64,
    pub component_count: usize,
    pub lcc_size: usize,
    /// True when diameter and average distance come from sampled sources.
    pub distances_sampled: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StatsOptions {
    /// BFS from this many random sources instead of all of them, but only
    /// when the graph has more than `sample_above` nodes.
    pub sample_sources: Option<usize>,
    pub sample_above: usize,
    pub seed: u64,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    graph_stats_with(g, &StatsOptions::default())
}

pub fn graph_stats_with(g: &Graph, opts: &StatsOptions) -> GraphStats {
    let n = g.node_count();
    let degrees = g.degrees();
    let components = connected_components(g);

    let (sources, sampled): (Vec<usize>, bool) = match opts.sample_sources {
        Some(k) if n > opts.sample_above && k < n => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut picked = sample(&mut rng, n, k).into_vec();
            picked.sort_unstable();
            (picked, true)
        }
        _ => ((0..n).collect(), false),
    };
    let (diameter, distance_sum, pair_count) = sources
        .par_iter()
        .map(|&s| {
            let dist = g.bfs_distances(s);
            let mut ecc = 0;
            let mut sum = 0u64;
            let mut pairs = 0u64;
            for (t, &d) in dist.iter().enumerate() {
                if t != s && d != UNREACHABLE {
                    ecc = ecc.max(d);
                    sum += d as u64;
                    pairs += 1;
                }
            }
            (ecc, sum, pairs)
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0.max(b.0), a.1 + b.1, a.2 + b.2));

    GraphStats {
        node_count: n,
        edge_count: g.edge_count(),
        avg_degree: if n == 0 {
            0.0
        } else {
            2.0 * g.edge_count() as f64 / n as f64
        },
        median_degree: median(&degrees),
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        avg_clustering: average_clustering(g),
        assortativity: degree_assortativity(g),
        diameter,
        avg_distance: if pair_count == 0 {
            0.0
        } else {
            distance_sum as f64 / pair_count as f64
        },
        powerlaw_alpha: powerlaw_alpha(&degrees),
        component_count: components.count(),
        lcc_size: components.largest(),
        distances_sampled: sampled,
    }
}

fn median(values: &[usize]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid] as f64
    } else {
        (sorted[mid - 1] + sorted[mid]) as f64 / 2.0
    }
}

/// Triangles through `v` over the number of neighbor pairs; 0 for degree < 2.
pub fn local_clustering(g: &Graph, v: usize) -> f64 {
    let nbrs = g.neighbors(v);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nbrs.iter().enumerate() {
        let adj = g.neighbors(a);
        // count neighbors of v after a that are also adjacent to a
        links += nbrs[i + 1..]
            .iter()
            .filter(|b| adj.binary_search(b).is_ok())
            .count();
    }
    2.0 * links as f64 / (k * (k - 1)) as f64
}

pub fn average_clustering(g: &Graph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = (0..n).into_par_iter().map(|v| local_clustering(g, v)).sum();
    total / n as f64
}

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge.
pub fn degree_assortativity(g: &Graph) -> f64 {
    let m = g.edge_count();
    if m == 0 {
        return f64::NAN;
    }
    let (mut sx, mut sxx, mut sxy) = (0.0, 0.0, 0.0);
    for (u, v) in g.edges() {
        let (a, b) = (g.degree(u) as f64, g.degree(v) as f64);
        sx += a + b;
        sxx += a * a + b * b;
        sxy += 2.0 * a * b;
    }
    let count = 2.0 * m as f64;
    let mean = sx / count;
    let var = sxx / count - mean * mean;
    let cov = sxy / count - mean * mean;
    if var.abs() < 1e-12 {
        return f64::NAN;
    }
    cov / var
}

/// Discrete maximum-likelihood power-law exponent with `k_min = 1`,
/// ignoring zero-degree nodes.
pub fn powerlaw_alpha(degrees: &[usize]) -> f64 {
    const K_MIN: f64 = 1.0;
    let logs: Vec<f64> = degrees
        .iter()
        .filter(|&&k| k >= 1)
        .map(|&k| (k as f64 / (K_MIN - 0.5)).ln())
        .collect();
    if logs.is_empty() {
        return f64::NAN;
    }
    1.0 + logs.len() as f64 / logs.iter().sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let s = graph_stats(&Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]));
        assert_eq!(s.diameter, 1);
        assert_eq!(s.avg_distance, 1.0);
        assert_eq!(s.avg_clustering, 1.0);
        assert!(s.assortativity.is_nan());
    }

    #[test]
    fn path_of_three() {
        let s = graph_stats(&Graph::from_edges(3, [(0, 1), (1, 2)]));
        assert_eq!(s.diameter, 2);
        assert!((s.avg_distance - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.avg_clustering, 0.0);
        assert_eq!(s.median_degree, 1.0);
        assert_eq!(s.max_degree, 2);
        assert!((s.assortativity + 1.0).abs() < 1e-12);
    }

    #[test]
    fn distances_only_within_components() {
        let s = graph_stats(&Graph::from_edges(5, [(0, 1), (2, 3), (3, 4)]));
        assert_eq!(s.diameter, 2);
        // pairs: (0,1)=1 twice, (2,3),(3,4)=1, (2,4)=2, each twice
        assert!((s.avg_distance - (2.0 + 2.0 * 4.0) / 8.0).abs() < 1e-12);
        assert_eq!(s.component_count, 2);
        assert_eq!(s.lcc_size, 3);
    }

    #[test]
    fn cycle_is_uniform() {
        let n = 7;
        let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)));
        let first = local_clustering(&g, 0);
        for v in 0..n {
            assert_eq!(local_clustering(&g, v), first);
            assert_eq!(g.degree(v), 2);
        }
    }

    #[test]
    fn sampled_distances_are_labeled() {
        let g = Graph::from_edges(50, (1..50).map(|i| (i - 1, i)));
        let opts = StatsOptions {
            sample_sources: Some(10),
            sample_above: 20,
            seed: 3,
        };
        let s = graph_stats_with(&g, &opts);
        assert!(s.distances_sampled);
        assert!(!graph_stats(&g).distances_sampled);
    }
}
