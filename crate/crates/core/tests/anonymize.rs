use std::collections::HashMap;
use std::time::Duration;

use graphanon_core::anonymize::{
    betweenness, centrality_overlap, detect_communities, edge_order, edge_sampling_sweep,
    edges_remaining, nmi, pareto_front, robustness, top_k, ParetoFront, ParetoPoint, SweepConfig,
    SweepRecord, UtilityMetric,
};
use graphanon_core::generate::{all_graphs, cycle, gnp, ring_of_cliques, star};
use graphanon_core::measures::equivalence_partition;
use graphanon_core::{Graph, MeasureKind, Partition};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Betweenness by listing every shortest path between every pair.
fn path_counting_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let dist: Vec<Vec<usize>> = (0..n).map(|v| g.bfs_distances(v)).collect();
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if dist[s][t] == usize::MAX {
                continue;
            }
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(p) = stack.pop() {
                let last = *p.last().unwrap();
                if last == t {
                    paths.push(p);
                    continue;
                }
                for &w in g.neighbors(last) {
                    if dist[s][w] == p.len() && dist[w][t] + p.len() == dist[s][t] {
                        let mut q = p.clone();
                        q.push(w);
                        stack.push(q);
                    }
                }
            }
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    score[v] += 1.0 / total;
                }
            }
        }
    }
    score
}

#[test]
fn betweenness_matches_path_counting_on_all_graphs_up_to_seven_nodes() {
    for n in 1..=7 {
        let graphs: Vec<Graph> = all_graphs(n).collect();
        graphs.par_iter().for_each(|g| {
            let fast = betweenness(g);
            let slow = path_counting_betweenness(g);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        });
    }
}

#[test]
fn betweenness_closed_forms() {
    for leaves in 1..12 {
        let b = betweenness(&star(leaves));
        assert_eq!(b[0], (leaves * (leaves - 1) / 2) as f64);
        assert!(b[1..].iter().all(|&x| x == 0.0));
    }
    // odd cycles: unique shortest paths, pairs at distance k have k - 1 interior nodes
    for n in [5usize, 7, 9] {
        let h = (n - 1) / 2;
        let want = (h * (h - 1) / 2) as f64;
        assert!(betweenness(&cycle(n))
            .iter()
            .all(|&x| (x - want).abs() < 1e-12));
    }
}

#[test]
fn overlap_matches_recount() {
    let g = gnp(120, 0.05, 4);
    let h = g.with_edges(
        edge_order(&g, 1, 0)
            .into_iter()
            .take(g.edge_count() * 7 / 10),
    );
    let rank = |s: Vec<f64>| {
        let mut ids: Vec<(i64, usize)> = s
            .iter()
            .enumerate()
            .map(|(v, &x)| (-(x * 1e6).round() as i64, v))
            .collect();
        ids.sort();
        ids.into_iter().map(|(_, v)| v).collect::<Vec<_>>()
    };
    let (a, b) = (rank(betweenness(&g)), rank(betweenness(&h)));
    for k in [1, 10, 100, 500] {
        let k2 = k.min(120);
        let shared = a[..k2].iter().filter(|v| b[..k2].contains(v)).count();
        assert_eq!(centrality_overlap(&g, &h, k), shared as f64 / k2 as f64);
    }
    assert_eq!(top_k(&[1.0, 3.0, 3.0, 0.0], 3), vec![1, 2, 0]);
}

fn union_find_lcc(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let next = p[x];
            p[x] = r;
            x = next;
        }
        r
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        *sizes.entry(find(&mut parent, v)).or_default() += 1;
    }
    sizes.into_values().max().unwrap_or(0)
}

#[test]
fn robustness_matches_union_find() {
    for seed in 0..20 {
        let g = gnp(50, 0.1, seed);
        let kept: Vec<_> = edge_order(&g, seed, 0)
            .into_iter()
            .take(edges_remaining(g.edge_count(), 30, 100))
            .collect();
        let h = g.with_edges(kept.iter().copied());
        assert_eq!(robustness(&g, &h), union_find_lcc(50, &kept) as f64 / 50.0);
    }
}

#[test]
fn schedule_is_exact_rounding() {
    for m in [0usize, 1, 7, 10, 50, 99, 101, 333, 1000] {
        for steps in [1usize, 2, 3, 7, 100] {
            let mut prev = usize::MAX;
            for t in 0..=steps {
                let kept = edges_remaining(m, t, steps);
                // exact value as a fraction num / steps
                let num = m * (steps - t);
                let (floor, rem) = (num / steps, num % steps);
                let want = if 2 * rem >= steps { floor + 1 } else { floor };
                assert_eq!(kept, want, "m={m} t={t} steps={steps}");
                let approx = m as f64 * (1.0 - t as f64 / steps as f64);
                assert!((kept as f64 - approx).abs() <= 0.5 + 1e-9);
                assert!(kept <= prev);
                prev = kept;
            }
            assert_eq!(edges_remaining(m, 0, steps), m);
            assert_eq!(edges_remaining(m, steps, steps), 0);
        }
    }
}

fn small_config(measure: MeasureKind) -> SweepConfig {
    let mut cfg = SweepConfig::new(measure);
    cfg.steps = 10;
    cfg.repetitions = 3;
    cfg.seed = 17;
    cfg.community_runs = 3;
    cfg.top_k = 10;
    cfg
}

#[test]
fn sweep_follows_nested_prefixes() {
    let g = gnp(40, 0.12, 8);
    let cfg = small_config(MeasureKind::count(1));
    let records = edge_sampling_sweep(&g, &cfg);
    assert_eq!(records.len(), 3 * 11);
    for r in &records {
        let order = edge_order(&g, cfg.seed, r.repetition);
        assert_eq!(
            r.edges_remaining,
            edges_remaining(g.edge_count(), r.step, cfg.steps)
        );
        let h = g.with_edges(order[..r.edges_remaining].iter().copied());
        assert_eq!(h.edge_count(), r.edges_remaining);
        assert_eq!(
            r.uniqueness,
            Some(equivalence_partition(&h, cfg.measure).uniqueness())
        );
        assert_eq!(r.robustness, Some(robustness(&g, &h)));
    }
    let step0 = records.iter().find(|r| r.step == 0).unwrap();
    assert_eq!(
        step0.uniqueness,
        Some(equivalence_partition(&g, cfg.measure).uniqueness())
    );
    assert_eq!(step0.community_nmi, Some(1.0));
    assert_eq!(step0.centrality_overlap, Some(1.0));
}

#[test]
fn sweep_is_deterministic() {
    let g = gnp(35, 0.15, 2);
    let cfg = small_config(MeasureKind::vrq(1));
    let strip = |rs: Vec<SweepRecord>| {
        rs.into_iter()
            .map(|r| SweepRecord {
                uniqueness_time: Duration::ZERO,
                utility_time: Duration::ZERO,
                ..r
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(
        strip(edge_sampling_sweep(&g, &cfg)),
        strip(edge_sampling_sweep(&g, &cfg))
    );
}

#[test]
fn stricter_measure_is_never_less_unique_along_the_sweep() {
    let g = gnp(45, 0.1, 5);
    let mut lo = small_config(MeasureKind::degree());
    lo.communities = false;
    lo.centrality = false;
    let hi = SweepConfig {
        measure: MeasureKind::hybrid(1),
        ..lo.clone()
    };
    let a = edge_sampling_sweep(&g, &lo);
    let b = edge_sampling_sweep(&g, &hi);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!((x.repetition, x.step), (y.repetition, y.step));
        assert!(y.uniqueness.unwrap() >= x.uniqueness.unwrap());
    }
}

#[test]
fn planted_cliques_are_recovered() {
    let g = ring_of_cliques(4, 5);
    let planted = Partition::from_keys(&(0..20).map(|v| v / 5).collect::<Vec<_>>());
    for seed in 0..5 {
        let found = detect_communities(&g, 10, seed);
        assert_eq!(nmi(&found, &planted).unwrap(), 1.0);
    }
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Partition {
    let k = rng.gen_range(1..=n);
    let keys: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    Partition::from_keys(&keys)
}

/// Mean-entropy NMI straight from the contingency table.
fn nmi_oracle(a: &Partition, b: &Partition) -> f64 {
    let n = a.node_count() as f64;
    let mut joint: HashMap<(usize, usize), f64> = HashMap::new();
    for v in 0..a.node_count() {
        *joint.entry((a.class_of(v), b.class_of(v))).or_default() += 1.0;
    }
    let h = |p: &Partition| -> f64 {
        p.class_sizes()
            .iter()
            .map(|&s| {
                let q = s as f64 / n;
                -q * q.ln()
            })
            .sum()
    };
    let (ha, hb) = (h(a), h(b));
    if ha == 0.0 && hb == 0.0 {
        return 1.0;
    }
    let mi: f64 = joint
        .iter()
        .map(|(&(i, j), &c)| {
            let pa = a.classes()[i].len() as f64 / n;
            let pb = b.classes()[j].len() as f64 / n;
            let p = c / n;
            p * (p / (pa * pb)).ln()
        })
        .sum();
    2.0 * mi / (ha + hb)
}

#[test]
fn nmi_on_random_partition_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let n = rng.gen_range(1..40);
        let a = random_partition(&mut rng, n);
        let b = random_partition(&mut rng, n);
        let ab = nmi(&a, &b).unwrap();
        assert_eq!(ab, nmi(&b, &a).unwrap());
        assert!((0.0..=1.0).contains(&ab));
        assert!((ab - nmi_oracle(&a, &b)).abs() < 1e-9);
        assert_eq!(nmi(&a, &a).unwrap(), 1.0);
    }
}

#[test]
fn nmi_fixed_cases() {
    let p1 = Partition::from_keys(&[0, 0, 1, 1]);
    let p2 = Partition::from_keys(&[0, 1, 0, 1]);
    assert!(nmi(&p1, &p2).unwrap().abs() < 1e-12);
    assert_eq!(
        nmi(&Partition::discrete(5), &Partition::single_class(5)).unwrap(),
        0.0
    );
    assert!(nmi(&Partition::discrete(4), &Partition::discrete(5)).is_err());
}

#[test]
fn pareto_of_sweep_records() {
    let g = gnp(40, 0.12, 21);
    let mut cfg = small_config(MeasureKind::dk(1));
    cfg.communities = false;
    let records = edge_sampling_sweep(&g, &cfg);
    let front = pareto_front(&records, UtilityMetric::Robustness);
    assert!(!front.points.is_empty());
    for r in &records {
        let p = ParetoPoint {
            uniqueness: r.uniqueness.unwrap(),
            utility: r.robustness.unwrap(),
        };
        let on_front = front.points.contains(&p);
        let dominated = front.points.iter().any(|q| q.dominates(&p));
        assert!(on_front != dominated);
    }
}

proptest! {
    #[test]
    fn pareto_front_properties(raw in prop::collection::vec((0u8..20, 0u8..20), 1..40)) {
        let points: Vec<ParetoPoint> = raw
            .iter()
            .map(|&(u, v)| ParetoPoint { uniqueness: u as f64 / 20.0, utility: v as f64 / 20.0 })
            .collect();
        let front = ParetoFront::from_points(UtilityMetric::Robustness, &points);
        prop_assert!(!front.points.is_empty());
        for a in &front.points {
            for b in &front.points {
                prop_assert!(!a.dominates(b));
            }
        }
        for p in &points {
            prop_assert!(front.points.contains(p) || front.points.iter().any(|q| q.dominates(p)));
        }
        prop_assert_eq!(ParetoFront::from_points(UtilityMetric::Robustness, &front.points), front);
    }
}
