//! Simple undirected graphs over dense node ids.
//!
//! A [`Graph`] is immutable once built. Node ids are `0..node_count()`, the
//! adjacency lists are sorted and symmetric, and there are no self-loops or
//! parallel edges.

use std::collections::{HashMap, HashSet, VecDeque};

/// Marker for "not reachable" in distance vectors.
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph on `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph on `n` nodes. Self-loops are dropped and duplicate
    /// edges collapse.
    ///
    /// # Panics
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} nodes");
            if u == v {
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        Graph {
            adjacency,
            edge_count: degree_sum / 2,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Same node set, keeping only the given edges.
    pub fn with_edges<I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_edges(self.node_count(), edges)
    }

    /// Hop distances from `source` to every node; [`UNREACHABLE`] for nodes
    /// in other components.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in self.neighbors(u) {
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Nodes within `max_depth` hops of `source` in BFS order, each with its
    /// distance. The source comes first.
    ///
    /// Memory is proportional to the ball, not to the whole graph.
    pub fn ball(&self, source: usize, max_depth: usize) -> Vec<(usize, usize)> {
        let mut seen = HashSet::new();
        let mut order = vec![(source, 0)];
        seen.insert(source);
        let mut head = 0;
        while head < order.len() {
            let (u, du) = order[head];
            head += 1;
            if du == max_depth {
                continue;
            }
            for &w in self.neighbors(u) {
                if seen.insert(w) {
                    order.push((w, du + 1));
                }
            }
        }
        order
    }

    /// Induced subgraph on `nodes`, relabeled `0..nodes.len()` in the given
    /// order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let local: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &u) in nodes.iter().enumerate() {
            for w in self.neighbors(u) {
                if let Some(&j) = local.get(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::from_edges(nodes.len(), edges)
    }

    /// Induced `depth`-neighborhood of `v`, rooted at `v`.
    ///
    /// Local ids follow BFS order, so the center is local node 0 and layers
    /// are contiguous.
    ///
    /// # Panics
    ///
    /// Panics if `depth == 0` or `v` is out of range.
    pub fn neighborhood(&self, v: usize, depth: usize) -> RootedSubgraph {
        assert!(depth >= 1, "neighborhood depth must be at least 1");
        assert!(v < self.node_count(), "node {v} out of range");
        let ball = self.ball(v, depth);
        let origin: Vec<usize> = ball.iter().map(|&(w, _)| w).collect();
        let layer: Vec<usize> = ball.iter().map(|&(_, d)| d).collect();
        let graph = self.induced_subgraph(&origin);
        RootedSubgraph {
            center: 0,
            graph,
            origin,
            layer,
            depth,
        }
    }
}

/// An induced neighborhood with a distinguished center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedSubgraph {
    center: usize,
    graph: Graph,
    origin: Vec<usize>,
    layer: Vec<usize>,
    depth: usize,
}

impl RootedSubgraph {
    /// Roots an arbitrary graph at `center`. Layers are BFS distances from
    /// the center; nodes outside its component get [`UNREACHABLE`]. The depth
    /// is the largest finite layer.
    pub fn from_graph(graph: Graph, center: usize) -> Self {
        assert!(center < graph.node_count(), "center {center} out of range");
        let layer = graph.bfs_distances(center);
        let depth = layer
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0);
        let origin = (0..graph.node_count()).collect();
        RootedSubgraph {
            center,
            graph,
            origin,
            layer,
            depth,
        }
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Original id of each local node.
    pub fn origin_ids(&self) -> &[usize] {
        &self.origin
    }

    /// Distance of each local node from the center.
    pub fn layers(&self) -> &[usize] {
        &self.layer
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Same rooted graph with local ids permuted: local node `i` becomes
    /// `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> RootedSubgraph {
        let n = self.node_count();
        assert_eq!(perm.len(), n);
        let graph = Graph::from_edges(n, self.graph.edges().map(|(u, v)| (perm[u], perm[v])));
        let mut origin = vec![0; n];
        let mut layer = vec![0; n];
        for i in 0..n {
            origin[perm[i]] = self.origin[i];
            layer[perm[i]] = self.layer[i];
        }
        RootedSubgraph {
            center: perm[self.center],
            graph,
            origin,
            layer,
            depth: self.depth,
        }
    }
}

/// Component id per node plus component sizes. Ids are dense and assigned
/// in order of the smallest node id in each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub component_of: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Size of the largest component, 0 for the empty graph.
    pub fn largest(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }
}

pub fn connected_components(g: &Graph) -> Components {
    let n = g.node_count();
    let mut component_of = vec![UNREACHABLE; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if component_of[s] != UNREACHABLE {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        component_of[s] = id;
        stack.push(s);
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in g.neighbors(u) {
                if component_of[w] == UNREACHABLE {
                    component_of[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    Components {
        component_of,
        sizes,
    }
}
