//! Seeded random graphs, small fixtures and exhaustive enumeration.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{connected_components, Graph};

/// Erdős–Rényi G(n, p). Same `(n, p, seed)` gives the same graph on every
/// platform.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Preferential attachment: each new node links to `m` distinct existing
/// nodes chosen proportionally to degree.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Graph {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    // endpoint list doubles as the degree-weighted sampling urn
    let mut urn: Vec<usize> = Vec::new();
    for v in 1..=m {
        edges.push((0, v));
        urn.push(0);
        urn.push(v);
    }
    for v in m + 1..n {
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = urn[rng.gen_range(0..urn.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for t in targets {
            edges.push((v, t));
            urn.push(v);
            urn.push(t);
        }
    }
    Graph::from_edges(n, edges)
}

/// Uniformly random relabeling of `g`, returned with the permutation used
/// (old id `i` becomes `perm[i]`).
pub fn shuffled(g: &Graph, seed: u64) -> (Graph, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.node_count()).collect();
    perm.shuffle(&mut rng);
    let h = Graph::from_edges(g.node_count(), g.edges().map(|(u, v)| (perm[u], perm[v])));
    (h, perm)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `count` cliques of `size` nodes arranged in a ring, consecutive cliques
/// joined by a single edge. Clique `c` holds nodes `c*size..(c+1)*size`.
pub fn ring_of_cliques(count: usize, size: usize) -> Graph {
    let mut edges = Vec::new();
    for c in 0..count {
        let base = c * size;
        for i in 0..size {
            for j in i + 1..size {
                edges.push((base + i, base + j));
            }
        }
        if count > 1 {
            let next = ((c + 1) % count) * size;
            edges.push((base + size - 1, next));
        }
    }
    Graph::from_edges(count * size, edges)
}

/// Every labeled simple graph on `n` nodes (2^(n choose 2) of them).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many graphs to enumerate");
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        Graph::from_edges(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
    })
}

/// Connected labeled graphs on `n` nodes.
pub fn all_connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    all_graphs(n).filter(|g| connected_components(g).count() <= 1)
}
