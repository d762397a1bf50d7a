use addemu_core::distance::{ball, bfs_distances, dijkstra_distances, shortest_path, DistanceMatrix};
use addemu_core::emulator::{
    find_prefix_frontier, find_prefix_frontier_in, prefix_feasible, EmulatorEdges, Provenance,
};
use addemu_core::verify::{oracle_bfs, oracle_dijkstra, spanner_stretch};
use addemu_core::{
    cluster_decompose, greedy_multiplicative_spanner, verify_clustering, Graph, WeightedGraph,
};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
        })
    })
}

fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = find(p, p[x]);
        }
        p[x]
    }
    edges.iter().all(|&(u, v)| {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
        a != b
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_agrees_with_oracle(g in graph_strategy(40), s in 0usize..40) {
        let s = s % g.n();
        let got: Vec<Option<u64>> = bfs_distances(&g, s).unwrap().iter().map(|d| d.map(u64::from)).collect();
        prop_assert_eq!(got, oracle_bfs(&g, s));
    }

    #[test]
    fn bfs_edges_change_distance_by_at_most_one(g in graph_strategy(40), s in 0usize..40) {
        let d = bfs_distances(&g, s % g.n()).unwrap();
        for (u, v) in g.edges() {
            match (d.get(u), d.get(v)) {
                (Some(a), Some(b)) => prop_assert!(a.abs_diff(b) <= 1),
                (None, None) => {}
                _ => prop_assert!(false, "edge ({u}, {v}) crosses reachability"),
            }
        }
    }

    #[test]
    fn ball_is_bfs_sublevel_set(g in graph_strategy(40), v in 0usize..40, r in 0usize..6) {
        let v = v % g.n();
        let d = oracle_bfs(&g, v);
        let expected: Vec<usize> = (0..g.n()).filter(|&u| d[u].is_some_and(|x| x <= r as u64)).collect();
        prop_assert_eq!(ball(&g, v, r).unwrap(), expected);
    }

    #[test]
    fn induced_distances_dominate(g in graph_strategy(30), mask in prop::collection::vec(any::<bool>(), 30)) {
        let keep: Vec<usize> = (0..g.n()).filter(|&v| mask[v]).collect();
        prop_assume!(!keep.is_empty());
        let (sub, map) = g.induced_subgraph(&keep).unwrap();
        let full = DistanceMatrix::from_graph(&g);
        let part = DistanceMatrix::from_graph(&sub);
        for a in 0..sub.n() {
            for b in 0..sub.n() {
                if let Some(d) = part.get(a, b) {
                    let global = full.get(map.global(a), map.global(b)).unwrap();
                    prop_assert!(d >= global);
                }
            }
        }
    }

    #[test]
    fn spanning_forest_is_acyclic_and_spanning(g in graph_strategy(40)) {
        let forest = g.spanning_forest();
        prop_assert!(acyclic(g.n(), &forest));
        prop_assert_eq!(forest.len() + g.connected_components().len(), g.n());
        prop_assert!(forest.iter().all(|&(u, v)| g.has_edge(u, v)));
    }

    #[test]
    fn shortest_path_is_a_shortest_walk(g in graph_strategy(40), s in 0usize..40, t in 0usize..40) {
        let (s, t) = (s % g.n(), t % g.n());
        let d = oracle_bfs(&g, s)[t];
        match shortest_path(&g, s, t).unwrap() {
            None => prop_assert!(d.is_none()),
            Some(p) => {
                prop_assert_eq!(p.len() as u64 - 1, d.unwrap());
                prop_assert_eq!((p[0], *p.last().unwrap()), (s, t));
                prop_assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
            }
        }
    }

    #[test]
    fn spanner_meets_stretch(g in graph_strategy(40), k in 1usize..4) {
        let t = 2 * k - 1;
        let s = greedy_multiplicative_spanner(&g, t).unwrap();
        prop_assert!(spanner_stretch(&g, &s.edges) <= t as f64);
        prop_assert!(s.edges.iter().all(|&(u, v)| g.has_edge(u, v)));
    }

    #[test]
    fn clustering_covers_every_vertex(g in graph_strategy(60), r in 1usize..5, eps in 0.1f64..0.9) {
        let r = r.min(g.n());
        let dec = cluster_decompose(&g, r, eps).unwrap();
        let check = verify_clustering(&g, &dec, f64::INFINITY).unwrap();
        prop_assert!(check.coverage_ok && check.consistency_ok && check.radius_band_ok, "{:?}", check.failures);
    }

    #[test]
    fn dijkstra_agrees_with_oracle(
        n in 1usize..30,
        raw in prop::collection::vec((0usize..30, 0usize..30, 1u32..9), 0..60),
        s in 0usize..30,
    ) {
        let edges = raw.into_iter().map(|(u, v, w)| (u % n, v % n, w)).filter(|(u, v, _)| u != v);
        let h = WeightedGraph::from_edges(n, edges).unwrap();
        let got: Vec<Option<u64>> = dijkstra_distances(&h, s % n).unwrap().iter().map(|d| d.map(u64::from)).collect();
        prop_assert_eq!(got, oracle_dijkstra(&h, s % n));
    }

    #[test]
    fn incremental_insert_matches_recompute(
        n in 2usize..25,
        raw in prop::collection::vec((0usize..25, 0usize..25, 1u32..6), 0..40),
    ) {
        let edges: Vec<_> = raw.into_iter().map(|(u, v, w)| (u % n, v % n, w)).filter(|(u, v, _)| u != v).collect();
        let mut m = DistanceMatrix::from_weighted(&WeightedGraph::from_edges(n, []).unwrap());
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            m.insert_edge(u, v, w);
            let fresh = DistanceMatrix::from_weighted(&WeightedGraph::from_edges(n, edges[..=i].iter().copied()).unwrap());
            prop_assert_eq!(&m, &fresh);
        }
    }

    #[test]
    fn prefix_feasibility_is_monotone(len in 2usize..30, gaps in prop::collection::vec(0u32..3, 0..30), r_hat in 0u64..4) {
        // H: a path on `len` vertices whose edges are stretched by `gaps`.
        let mut edges = EmulatorEdges::new(len);
        for i in 1..len {
            edges.insert(i - 1, i, 1 + gaps.get(i).copied().unwrap_or(0), Provenance::Spanner);
        }
        let mut h = DistanceMatrix::from_weighted(&edges.graph());
        let path: Vec<usize> = (0..len).collect();
        let flags: Vec<bool> = (0..len).map(|k| prefix_feasible(&path, &mut h, r_hat, k)).collect();
        prop_assert!(flags[0]);
        prop_assert!(flags.windows(2).all(|w| w[0] || !w[1]));
        let frontier = find_prefix_frontier(&path, &mut h, r_hat);
        prop_assert_eq!(frontier, flags.iter().rposition(|&f| f).unwrap());
        let g = Graph::from_edges(len, (1..len).map(|i| (i - 1, i))).unwrap();
        prop_assert_eq!(frontier, find_prefix_frontier_in(&path, &DistanceMatrix::from_graph(&g), &mut h, r_hat));
    }
}
