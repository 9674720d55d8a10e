//! Modularity-based community detection with consensus clustering.
//!
//! [`leiden`] runs the usual three phases until nothing moves: fast local
//! moving, refinement of each community into well-connected sub-communities,
//! and aggregation on the refined partition. [`LeidenConsensus`] repeats it
//! with different seeds. Pairs that co-occur in at least `threshold` of the
//! runs are linked with weight equal to their co-occurrence fraction, and
//! the result is clustered again until every run agrees or the iteration cap
//! is hit.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::measures::Partition;

/// Anything that turns a graph into a node partition. Implementations must
/// be deterministic for a fixed seed.
pub trait CommunityDetector: Sync {
    fn detect(&self, g: &Graph, seed: u64) -> Partition;
}

#[derive(Clone, Copy, Debug)]
pub struct LeidenConsensus {
    pub runs: usize,
    pub threshold: f64,
    pub max_iterations: usize,
}

impl Default for LeidenConsensus {
    fn default() -> Self {
        LeidenConsensus {
            runs: 10,
            threshold: 0.5,
            max_iterations: 5,
        }
    }
}

impl CommunityDetector for LeidenConsensus {
    fn detect(&self, g: &Graph, seed: u64) -> Partition {
        let n = g.node_count();
        if g.edge_count() == 0 {
            return Partition::discrete(n);
        }
        let runs = self.runs.max(1);
        let mut current = WeightedGraph::from_graph(g);
        let mut memberships = run_many(&current, runs, seed, 0);
        for iteration in 1..=self.max_iterations {
            if memberships.windows(2).all(|w| w[0] == w[1]) {
                break;
            }
            let mut edges = Vec::new();
            let mut undecided = false;
            for (u, v, _) in current.edges() {
                let together = memberships.iter().filter(|m| m[u] == m[v]).count();
                let frac = together as f64 / runs as f64;
                if frac > 0.0 && frac < 1.0 {
                    undecided = true;
                }
                if frac >= self.threshold {
                    edges.push((u, v, frac));
                }
            }
            if !undecided {
                break;
            }
            if edges.is_empty() {
                return Partition::discrete(n);
            }
            current = WeightedGraph::from_weighted_edges(n, &edges);
            memberships = run_many(&current, runs, seed, iteration as u64);
        }
        Partition::from_keys(&memberships[0])
    }
}

/// Consensus communities with the default settings and `runs` Leiden runs.
pub fn detect_communities(g: &Graph, runs: usize, seed: u64) -> Partition {
    LeidenConsensus {
        runs,
        ..Default::default()
    }
    .detect(g, seed)
}

fn run_many(g: &WeightedGraph, runs: usize, seed: u64, iteration: u64) -> Vec<Vec<usize>> {
    (0..runs as u64)
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(iteration << 32 | r);
            leiden(g, &mut rng)
        })
        .collect()
}

/// Undirected weighted graph with explicit node strengths, so aggregated
/// nodes keep the strength of everything merged into them.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    strength: Vec<f64>,
    total: f64,
}

impl WeightedGraph {
    pub fn from_graph(g: &Graph) -> Self {
        let edges: Vec<(usize, usize, f64)> = g.edges().map(|(u, v)| (u, v, 1.0)).collect();
        WeightedGraph::from_weighted_edges(g.node_count(), &edges)
    }

    pub fn from_weighted_edges(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        let mut strength = vec![0.0; n];
        for &(u, v, w) in edges {
            if u == v {
                continue;
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
            strength[u] += w;
            strength[v] += w;
        }
        let total = strength.iter().sum();
        WeightedGraph {
            adjacency,
            strength,
            total,
        }
    }

    fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// Collapses each community into one node. Internal edges are dropped
    /// from the adjacency but stay in the strengths.
    fn aggregate(&self, membership: &[usize], communities: usize) -> WeightedGraph {
        let mut strength = vec![0.0; communities];
        for (v, &c) in membership.iter().enumerate() {
            strength[c] += self.strength[v];
        }
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); communities];
        let mut slot = vec![usize::MAX; communities];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); communities];
        for (v, &c) in membership.iter().enumerate() {
            members[c].push(v);
        }
        for (c, nodes) in members.iter().enumerate() {
            let mut row: Vec<(usize, f64)> = Vec::new();
            for &v in nodes {
                for &(w, wt) in &self.adjacency[v] {
                    let d = membership[w];
                    if d == c {
                        continue;
                    }
                    if slot[d] == usize::MAX {
                        slot[d] = row.len();
                        row.push((d, 0.0));
                    }
                    row[slot[d]].1 += wt;
                }
            }
            for &(d, _) in &row {
                slot[d] = usize::MAX;
            }
            adjacency[c] = row;
        }
        WeightedGraph {
            adjacency,
            strength,
            total: self.total,
        }
    }
}

/// Newman modularity of `membership` with resolution 1.
pub fn modularity(g: &WeightedGraph, membership: &[usize]) -> f64 {
    if g.total == 0.0 {
        return 0.0;
    }
    let k = membership.iter().copied().max().map_or(0, |m| m + 1);
    let mut internal = vec![0.0; k];
    let mut tot = vec![0.0; k];
    for (v, &c) in membership.iter().enumerate() {
        tot[c] += g.strength[v];
        for &(w, wt) in &g.adjacency[v] {
            if membership[w] == c {
                internal[c] += wt;
            }
        }
    }
    internal
        .iter()
        .zip(&tot)
        .map(|(i, t)| i / g.total - (t / g.total).powi(2))
        .sum()
}

/// One Leiden run. Returns a community id per node of `g`.
pub fn leiden(g: &WeightedGraph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.node_count();
    if g.total == 0.0 {
        return (0..n).collect();
    }
    // node of the current aggregate level holding each original node
    let mut level_node: Vec<usize> = (0..n).collect();
    let mut graph = g.clone();
    let mut part: Vec<usize> = (0..n).collect();
    loop {
        move_nodes_fast(&graph, &mut part, rng);
        let communities = relabel(&mut part);
        if communities == graph.node_count() {
            break;
        }
        let mut refined = refine(&graph, &part, rng);
        let refined_count = relabel(&mut refined);
        let (coarse, coarse_count) = if refined_count == graph.node_count() {
            (part.clone(), communities)
        } else {
            (refined, refined_count)
        };
        let mut next_part = vec![0; coarse_count];
        for (v, &c) in coarse.iter().enumerate() {
            next_part[c] = part[v];
        }
        for slot in level_node.iter_mut() {
            *slot = coarse[*slot];
        }
        graph = graph.aggregate(&coarse, coarse_count);
        part = next_part;
    }
    let mut membership: Vec<usize> = level_node.iter().map(|&x| part[x]).collect();
    relabel(&mut membership);
    membership
}

/// Renumbers community ids densely by first appearance; returns the count.
fn relabel(membership: &mut [usize]) -> usize {
    let mut map = vec![usize::MAX; membership.len()];
    let mut next = 0;
    for c in membership.iter_mut() {
        if map[*c] == usize::MAX {
            map[*c] = next;
            next += 1;
        }
        *c = map[*c];
    }
    next
}

/// Queue-based local moving: each node joins the neighboring community with
/// the best modularity gain; neighbors of moved nodes are revisited.
fn move_nodes_fast(g: &WeightedGraph, part: &mut [usize], rng: &mut ChaCha8Rng) {
    let n = g.node_count();
    let mut tot = vec![0.0; n];
    let mut size = vec![0usize; n];
    for v in 0..n {
        tot[part[v]] += g.strength[v];
        size[part[v]] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut queue: VecDeque<usize> = order.into_iter().collect();
    let mut queued = vec![true; n];
    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut empty: Vec<usize> = (0..n).filter(|&c| size[c] == 0).collect();
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        let own = part[v];
        let kv = g.strength[v];
        for &(w, wt) in &g.adjacency[v] {
            let c = part[w];
            if link[c] == 0.0 {
                touched.push(c);
            }
            link[c] += wt;
        }
        tot[own] -= kv;
        size[own] -= 1;
        if size[own] == 0 {
            empty.push(own);
        }
        let gain = |c: usize, link_c: f64| link_c - kv * tot[c] / g.total;
        let mut best = own;
        let mut best_gain = gain(own, link[own]);
        for &c in &touched {
            let delta = gain(c, link[c]);
            if delta > best_gain + 1e-12 {
                best = c;
                best_gain = delta;
            }
        }
        if best_gain < -1e-12 {
            // alone is better than any neighbor community
            best = own;
            while size[best] != 0 {
                // stale entries are skipped; some empty id is always present
                best = empty.pop().expect("an empty community exists");
            }
        }
        tot[best] += kv;
        size[best] += 1;
        part[v] = best;
        if best != own {
            for &(w, _) in &g.adjacency[v] {
                if !queued[w] && part[w] != best {
                    queued[w] = true;
                    queue.push_back(w);
                }
            }
        }
        for &c in &touched {
            link[c] = 0.0;
        }
        touched.clear();
    }
}

/// Splits every community into well-connected sub-communities by greedily
/// merging singletons inside it.
fn refine(g: &WeightedGraph, part: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.node_count();
    let mut refined: Vec<usize> = (0..n).collect();
    let communities = part.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); communities];
    let mut comm_tot = vec![0.0; communities];
    for v in 0..n {
        members[part[v]].push(v);
        comm_tot[part[v]] += g.strength[v];
    }
    // weight from each node to the rest of its community
    let mut ext_node = vec![0.0; n];
    for v in 0..n {
        ext_node[v] = g.adjacency[v]
            .iter()
            .filter(|&&(w, _)| part[w] == part[v])
            .map(|&(_, wt)| wt)
            .sum();
    }
    let mut tot = g.strength.clone();
    let mut ext = ext_node.clone();
    let mut singleton = vec![true; n];
    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    for nodes in members.iter_mut() {
        nodes.shuffle(rng);
        for &v in nodes.iter() {
            if !singleton[v] {
                continue;
            }
            let s = part[v];
            let kv = g.strength[v];
            let well_connected = |e: f64, t: f64| e >= t * (comm_tot[s] - t) / g.total - 1e-12;
            if !well_connected(ext_node[v], kv) {
                continue;
            }
            for &(w, wt) in &g.adjacency[v] {
                if part[w] != s {
                    continue;
                }
                let c = refined[w];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += wt;
            }
            let own = refined[v];
            let mut best = own;
            let mut best_gain = 0.0;
            for &c in &touched {
                if c == own || !well_connected(ext[c], tot[c]) {
                    continue;
                }
                let delta = link[c] - kv * tot[c] / g.total;
                if delta > best_gain + 1e-12 {
                    best = c;
                    best_gain = delta;
                }
            }
            if best != own {
                ext[best] = ext[best] + ext_node[v] - 2.0 * link[best];
                tot[best] += kv;
                tot[own] = 0.0;
                ext[own] = 0.0;
                refined[v] = best;
                singleton[v] = false;
                // a non-empty refined community always contains the node
                // whose id it carries
                singleton[best] = false;
            }
            for &c in &touched {
                link[c] = 0.0;
            }
            touched.clear();
        }
    }
    refined
}

/// Normalized mutual information `2 I(X;Y) / (H(X) + H(Y))` with natural
/// logarithms. Two single-class partitions score 1.
pub fn nmi(a: &Partition, b: &Partition) -> Result<f64, crate::error::MeasureError> {
    if a.node_count() != b.node_count() {
        return Err(crate::error::MeasureError::UniverseMismatch {
            left: a.node_count(),
            right: b.node_count(),
        });
    }
    if a.class_ids() == b.class_ids() {
        return Ok(1.0);
    }
    // fixed argument order makes the result exactly symmetric
    if a.class_ids() > b.class_ids() {
        return nmi(b, a);
    }
    let n = a.node_count();
    if n == 0 {
        return Ok(1.0);
    }
    let nf = n as f64;
    let entropy = |sizes: Vec<usize>| -> f64 {
        sizes
            .into_iter()
            .filter(|&s| s > 0)
            .map(|s| {
                let p = s as f64 / nf;
                -p * p.ln()
            })
            .sum()
    };
    let ha = entropy(a.class_sizes());
    let hb = entropy(b.class_sizes());
    if ha + hb == 0.0 {
        return Ok(1.0);
    }
    let mut joint: Vec<(usize, usize)> = (0..n).map(|v| (a.class_of(v), b.class_of(v))).collect();
    joint.sort_unstable();
    let sa = a.class_sizes();
    let sb = b.class_sizes();
    let mut mutual = 0.0;
    let mut i = 0;
    while i < joint.len() {
        let mut j = i;
        while j < joint.len() && joint[j] == joint[i] {
            j += 1;
        }
        let (x, y) = joint[i];
        let nxy = (j - i) as f64;
        mutual += nxy / nf * (nxy * nf / (sa[x] as f64 * sb[y] as f64)).ln();
        i = j;
    }
    Ok((2.0 * mutual / (ha + hb)).clamp(0.0, 1.0))
}
