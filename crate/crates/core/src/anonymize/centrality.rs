use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::Graph;

/// Raw betweenness of every node (Brandes). Each unordered pair of
/// endpoints is counted once, so a star's center scores `C(leaves, 2)`.
///
/// Sources are processed in parallel in fixed chunks and the chunk sums are
/// added in order, so the result is bit-identical across runs.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(32)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut scratch = Scratch::new(n);
            for &s in chunk {
                scratch.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut score = vec![0.0; n];
    for part in partials {
        for (total, x) in score.iter_mut().zip(part) {
            *total += x;
        }
    }
    for x in &mut score {
        *x /= 2.0;
    }
    score
}

struct Scratch {
    stack: Vec<usize>,
    preds: Vec<Vec<usize>>,
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    queue: VecDeque<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            stack: Vec::with_capacity(n),
            preds: vec![Vec::new(); n],
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            queue: VecDeque::new(),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        for &v in &self.stack {
            self.preds[v].clear();
            self.sigma[v] = 0.0;
            self.dist[v] = -1;
            self.delta[v] = 0.0;
        }
        self.stack.clear();
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for &w in g.neighbors(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }
        for i in (0..self.stack.len()).rev() {
            let w = self.stack[i];
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for j in 0..self.preds[w].len() {
                let v = self.preds[w][j];
                self.delta[v] += self.sigma[v] * coeff;
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// Ids of the `k` highest scores, ties broken by ascending id.
pub fn top_k(scores: &[f64], k: usize) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..scores.len()).collect();
    ids.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    ids.truncate(k);
    ids
}

/// Overlap of the betweenness top-`k` of two graphs on the same nodes,
/// divided by `min(k, |V|)`.
pub fn centrality_overlap(g1: &Graph, g2: &Graph, k: usize) -> f64 {
    overlap_of_scores(&betweenness(g1), &betweenness(g2), k)
}

pub fn overlap_of_scores(a: &[f64], b: &[f64], k: usize) -> f64 {
    assert_eq!(a.len(), b.len(), "score vectors cover different node sets");
    let k = k.min(a.len());
    if k == 0 {
        return 1.0;
    }
    let mut in_a = vec![false; a.len()];
    for v in top_k(a, k) {
        in_a[v] = true;
    }
    let shared = top_k(b, k).into_iter().filter(|&v| in_a[v]).count();
    shared as f64 / k as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle, star};

    #[test]
    fn star_scores() {
        assert_eq!(betweenness(&star(3)), vec![3.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn cycle_is_flat() {
        let b = betweenness(&cycle(7));
        assert!(b.iter().all(|&x| (x - b[0]).abs() < 1e-12));
    }

    #[test]
    fn path_middle() {
        // node 2 separates {0, 1} from {3, 4}
        let b = betweenness(&crate::generate::path(5));
        assert_eq!(b, vec![0.0, 3.0, 4.0, 3.0, 0.0]);
    }

    #[test]
    fn overlap_against_empty_graph_uses_tie_break() {
        let s = star(3);
        let empty = Graph::empty(4);
        // all four nodes are the top-4 of both graphs
        assert_eq!(centrality_overlap(&s, &empty, 4), 1.0);
        // top-2: {0, 1} vs {0, 1} by id tie-break
        assert_eq!(centrality_overlap(&s, &empty, 2), 1.0);
        assert_eq!(top_k(&betweenness(&empty), 2), vec![0, 1]);
        assert_eq!(centrality_overlap(&s, &s, 100), 1.0);
    }
}
