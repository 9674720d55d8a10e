//! Canonical labeling of rooted graphs.
//!
//! Two rooted graphs get the same [`CanonicalLabel`] exactly when some
//! isomorphism maps one center onto the other. The label is the smallest
//! sorted edge list over all leaves of an individualization-refinement
//! search tree:
//!
//! 1. Nodes start colored by BFS distance from the center, so the center is
//!    a singleton cell at position 0.
//! 2. The ordered partition is refined to an equitable one. Cells split by
//!    neighbor counts into a splitter cell, with sub-cells ordered by count.
//!    Every decision depends only on cell positions and counts, so refinement
//!    commutes with relabeling.
//! 3. While the partition is not discrete, the first smallest non-singleton
//!    cell is the target. Each of its nodes is individualized in turn and the
//!    partition is refined again.
//! 4. A discrete partition orders the nodes, which fixes one relabeled edge
//!    list. The minimum over all leaves is the label.
//!
//! Automorphisms found along the way (leaves with equal edge lists) prune
//! children lying in the same orbit under automorphisms fixing the current
//! individualization prefix. The search also jumps back to the divergence
//! point when a leaf matches the first leaf through such an automorphism.
//! Pruned subtrees are automorphic images of explored ones, so the minimum
//! is unchanged.

use std::collections::VecDeque;

use crate::error::CanonError;
use crate::graph::{Graph, RootedSubgraph, UNREACHABLE};

/// Default cap on neighborhood size for canonical labeling.
pub const DEFAULT_NODE_LIMIT: usize = 4096;

/// Largest graph [`rooted_isomorphic_bruteforce`] accepts.
pub const BRUTEFORCE_LIMIT: usize = 10;

/// Opaque canonical encoding of a rooted graph.
///
/// Layout (big-endian `u32`s): node count, edge count, then each edge as
/// `(low, high)` canonical positions in ascending order. The center always
/// sits at position 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalLabel(Vec<u8>);

impl CanonicalLabel {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn encode(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut bytes = Vec::with_capacity(8 + edges.len() * 8);
        bytes.extend_from_slice(&(n as u32).to_be_bytes());
        bytes.extend_from_slice(&(edges.len() as u32).to_be_bytes());
        for &(a, b) in edges {
            bytes.extend_from_slice(&a.to_be_bytes());
            bytes.extend_from_slice(&b.to_be_bytes());
        }
        CanonicalLabel(bytes)
    }
}

/// Canonical label with the default node limit.
pub fn canonical_form(s: &RootedSubgraph) -> Result<CanonicalLabel, CanonError> {
    canonical_form_with_limit(s, DEFAULT_NODE_LIMIT)
}

pub fn canonical_form_with_limit(
    s: &RootedSubgraph,
    limit: usize,
) -> Result<CanonicalLabel, CanonError> {
    let n = s.node_count();
    if n > limit {
        return Err(CanonError::TooLarge { nodes: n, limit });
    }
    let g = s.graph();
    let mut root = OrderedPartition::by_color(s.layers());
    root.refine(g, None);
    let mut search = Search {
        graph: g,
        path: Vec::new(),
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    search.explore(root, 0);
    let (_, code) = search.best.expect("search visits at least one leaf");
    Ok(CanonicalLabel::encode(n, &code))
}

/// Ordered partition of the node set into cells.
#[derive(Clone, Debug)]
struct OrderedPartition {
    /// position -> node
    order: Vec<usize>,
    /// node -> position
    position: Vec<usize>,
    /// node -> start position of its cell
    cell_of: Vec<usize>,
    /// cell start -> one past its end; only meaningful at cell starts
    cell_end: Vec<usize>,
    cells: usize,
}

impl OrderedPartition {
    /// Cells are the color classes, ordered by color.
    fn by_color(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (colors[v], v));
        let mut position = vec![0; n];
        let mut cell_of = vec![0; n];
        let mut cell_end = vec![0; n];
        let mut cells = 0;
        let mut start = 0;
        for p in 0..=n {
            if p == n || (p > start && colors[order[p]] != colors[order[start]]) {
                for q in start..p {
                    cell_of[order[q]] = start;
                    position[order[q]] = q;
                }
                if p > start {
                    cell_end[start] = p;
                    cells += 1;
                }
                start = p;
            }
        }
        OrderedPartition {
            order,
            position,
            cell_of,
            cell_end,
            cells,
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.order.len()
    }

    fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.order.len();
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= n {
                return None;
            }
            let current = s;
            s = self.cell_end[s];
            Some(current)
        })
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for s in self.cell_starts() {
            let len = self.cell_end[s] - s;
            if len > 1 && best.is_none_or(|(_, b)| len < b) {
                best = Some((s, len));
            }
        }
        best.map(|(s, _)| s)
    }

    /// Moves `v` to the front of its cell as a new singleton cell and
    /// returns the singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let start = self.cell_of[v];
        let end = self.cell_end[start];
        let p = self.position[v];
        let front = self.order[start];
        self.order.swap(start, p);
        self.position[front] = p;
        self.position[v] = start;
        self.cell_end[start] = start + 1;
        self.cell_end[start + 1] = end;
        for q in start + 1..end {
            self.cell_of[self.order[q]] = start + 1;
        }
        self.cells += 1;
        start
    }

    /// Refines to the coarsest equitable partition below the current one.
    /// With `splitter: None` every cell is used as a splitter.
    fn refine(&mut self, g: &Graph, splitter: Option<usize>) {
        let n = self.order.len();
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        match splitter {
            Some(s) => {
                queued[s] = true;
                queue.push_back(s);
            }
            None => {
                let starts: Vec<usize> = self.cell_starts().collect();
                for s in starts {
                    queued[s] = true;
                    queue.push_back(s);
                }
            }
        }
        let mut count = vec![0usize; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut touched_cells: Vec<usize> = Vec::new();
        while let Some(ws) = queue.pop_front() {
            queued[ws] = false;
            if self.is_discrete() {
                break;
            }
            let we = self.cell_end[ws];
            for p in ws..we {
                for &x in g.neighbors(self.order[p]) {
                    if count[x] == 0 {
                        touched.push(x);
                    }
                    count[x] += 1;
                }
            }
            touched_cells.clear();
            touched_cells.extend(touched.iter().map(|&x| self.cell_of[x]));
            touched_cells.sort_unstable();
            touched_cells.dedup();
            for &cs in &touched_cells {
                let ce = self.cell_end[cs];
                if ce - cs == 1 {
                    continue;
                }
                self.order[cs..ce].sort_unstable_by_key(|&x| count[x]);
                if count[self.order[cs]] == count[self.order[ce - 1]] {
                    continue;
                }
                let parent_queued = queued[cs];
                let mut start = cs;
                for p in cs + 1..=ce {
                    if p < ce && count[self.order[p]] == count[self.order[p - 1]] {
                        continue;
                    }
                    self.cell_end[start] = p;
                    for q in start..p {
                        let x = self.order[q];
                        self.cell_of[x] = start;
                        self.position[x] = q;
                    }
                    if start != cs {
                        self.cells += 1;
                    }
                    // the first sub-cell inherits the parent's queue slot;
                    // when the parent was already processed it may be skipped
                    if (start != cs || parent_queued) && !queued[start] {
                        queued[start] = true;
                        queue.push_back(start);
                    }
                    start = p;
                }
            }
            for &x in &touched {
                count[x] = 0;
            }
            touched.clear();
        }
    }

    /// Relabeled edge list of a discrete partition.
    fn leaf_code(&self, g: &Graph) -> Vec<(u32, u32)> {
        let mut code: Vec<(u32, u32)> = g
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.position[u] as u32, self.position[v] as u32);
                (a.min(b), a.max(b))
            })
            .collect();
        code.sort_unstable();
        code
    }
}

struct Search<'g> {
    graph: &'g Graph,
    /// individualized nodes from the root to the current tree node
    path: Vec<usize>,
    first: Option<(Vec<usize>, Vec<usize>, Vec<(u32, u32)>)>,
    best: Option<(Vec<usize>, Vec<(u32, u32)>)>,
    /// node permutations found to preserve adjacency and the center
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon everything below tree level `level`.
    fn explore(&mut self, part: OrderedPartition, level: usize) -> Option<usize> {
        if part.is_discrete() {
            return self.visit_leaf(&part);
        }
        let ts = part
            .target_cell()
            .expect("non-discrete partition has a target");
        let mut candidates = part.order[ts..part.cell_end[ts]].to_vec();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits = Orbits::new(self.graph.node_count());
        let mut absorbed = 0;
        for &w in &candidates {
            if !explored.is_empty() {
                for gamma in &self.automorphisms[absorbed..] {
                    if self.path.iter().all(|&v| gamma[v] == v) {
                        orbits.absorb(gamma);
                    }
                }
                absorbed = self.automorphisms.len();
                if explored.iter().any(|&e| orbits.same(e, w)) {
                    continue;
                }
            }
            let mut child = part.clone();
            let single = child.individualize(w);
            child.refine(self.graph, Some(single));
            self.path.push(w);
            let jump = self.explore(child, level + 1);
            self.path.pop();
            explored.push(w);
            if let Some(target) = jump {
                if target < level {
                    return Some(target);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, part: &OrderedPartition) -> Option<usize> {
        let code = part.leaf_code(self.graph);
        let Some((first_order, first_path, first_code)) = &self.first else {
            self.first = Some((part.order.clone(), self.path.clone(), code.clone()));
            self.best = Some((part.order.clone(), code));
            return None;
        };
        let mut jump = None;
        if code == *first_code {
            let gamma = map_between(first_order, &part.order);
            // the first tree level where the two paths differ
            let split = first_path
                .iter()
                .zip(&self.path)
                .position(|(a, b)| a != b)
                .unwrap_or(self.path.len().min(first_path.len()));
            let fixes_prefix = self.path[..split].iter().all(|&v| gamma[v] == v);
            if split < self.path.len()
                && split < first_path.len()
                && fixes_prefix
                && gamma[first_path[split]] == self.path[split]
            {
                jump = Some(split);
            }
            self.automorphisms.push(gamma);
        }
        let (best_order, best_code) = self.best.as_ref().expect("best set with first");
        match code.cmp(best_code) {
            std::cmp::Ordering::Less => self.best = Some((part.order.clone(), code)),
            std::cmp::Ordering::Equal if jump.is_none() => {
                let gamma = map_between(best_order, &part.order);
                self.automorphisms.push(gamma);
            }
            _ => {}
        }
        jump
    }
}

/// Union-find over nodes, merged along automorphism cycles.
struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn absorb(&mut self, gamma: &[usize]) {
        for (x, &y) in gamma.iter().enumerate() {
            let (rx, ry) = (self.find(x), self.find(y));
            if rx != ry {
                self.parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Permutation sending the node at each position of `from` to the node at
/// the same position of `to`.
fn map_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

/// Exhaustive check for a center-preserving isomorphism. Refuses graphs
/// above [`BRUTEFORCE_LIMIT`] nodes.
pub fn rooted_isomorphic_bruteforce(
    a: &RootedSubgraph,
    b: &RootedSubgraph,
) -> Result<bool, CanonError> {
    for s in [a, b] {
        if s.node_count() > BRUTEFORCE_LIMIT {
            return Err(CanonError::OracleLimit {
                nodes: s.node_count(),
                limit: BRUTEFORCE_LIMIT,
            });
        }
    }
    let n = a.node_count();
    if n != b.node_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let (ga, gb) = (a.graph(), b.graph());
    let mut mapping = vec![UNREACHABLE; n];
    let mut used = vec![false; n];
    mapping[a.center()] = b.center();
    used[b.center()] = true;
    if ga.degree(a.center()) != gb.degree(b.center()) {
        return Ok(false);
    }
    let rest: Vec<usize> = (0..n).filter(|&v| v != a.center()).collect();
    Ok(extend(ga, gb, &rest, 0, &mut mapping, &mut used))
}

fn extend(
    ga: &Graph,
    gb: &Graph,
    rest: &[usize],
    i: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = rest.get(i) else {
        return true;
    };
    for w in 0..gb.node_count() {
        if used[w] || ga.degree(v) != gb.degree(w) {
            continue;
        }
        // adjacency must agree with every node mapped so far
        let consistent = (0..ga.node_count())
            .filter(|&u| mapping[u] != UNREACHABLE)
            .all(|u| ga.has_edge(u, v) == gb.has_edge(mapping[u], w));
        if !consistent {
            continue;
        }
        mapping[v] = w;
        used[w] = true;
        if extend(ga, gb, rest, i + 1, mapping, used) {
            return true;
        }
        mapping[v] = UNREACHABLE;
        used[w] = false;
    }
    false
}
