//! Property suites over random connected graphs.

use proptest::prelude::*;

use resolve_kit::{
    element_universe, greedy_upper_bound, is_generator, mixed_code, Graph, GraphElement,
    LandmarkSet, ResolutionMode, VertexId,
};

/// Random connected graph on 2..=10 vertices.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=10)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_filter_map("disconnected", |(n, bits)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n as VertexId {
                for v in u + 1..n as VertexId {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            let g = Graph::new(n, &edges).ok()?;
            g.is_connected().then_some(g)
        })
}

fn mode() -> impl Strategy<Value = ResolutionMode> {
    prop_oneof![
        Just(ResolutionMode::Vertex),
        Just(ResolutionMode::Edge),
        Just(ResolutionMode::Mixed),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distance_matrix_is_a_metric(g in connected_graph()) {
        let d = g.distances().unwrap();
        let n = g.vertex_count() as VertexId;
        for a in 0..n {
            prop_assert_eq!(d.vertex_distance(a, a), 0);
            for b in 0..n {
                prop_assert_eq!(d.vertex_distance(a, b), d.vertex_distance(b, a));
                for c in 0..n {
                    prop_assert!(
                        d.vertex_distance(a, c)
                            <= d.vertex_distance(a, b) + d.vertex_distance(b, c)
                    );
                }
            }
        }
    }

    #[test]
    fn incident_endpoints_differ_by_at_most_one(g in connected_graph()) {
        let d = g.distances().unwrap();
        for &e in g.edges() {
            for x in g.vertices() {
                let du = d.vertex_distance(x, e.u()) as i64;
                let dv = d.vertex_distance(x, e.v()) as i64;
                prop_assert!((du - dv).abs() <= 1);
                prop_assert_eq!(d.vertex_edge_distance(x, e) == 0, e.has_endpoint(x));
            }
        }
    }

    #[test]
    fn superset_of_generator_generates(
        g in connected_graph(),
        mode in mode(),
        extra_bits in proptest::collection::vec(any::<bool>(), 10),
    ) {
        let d = g.distances().unwrap();
        let base = greedy_upper_bound(&g, &d, mode).unwrap();
        let mut ids = base.ids().to_vec();
        for v in g.vertices() {
            if !ids.contains(&v) && extra_bits[v as usize] {
                ids.push(v);
            }
        }
        if ids.is_empty() {
            ids.push(0);
        }
        ids.sort_unstable();
        let superset = LandmarkSet::new(ids, &g).unwrap();
        prop_assert!(is_generator(&g, &d, &superset, mode).unwrap().is_generator);
    }

    #[test]
    fn landmark_self_code_structure(g in connected_graph(), pick in any::<u64>()) {
        let d = g.distances().unwrap();
        let ids: Vec<VertexId> = g
            .vertices()
            .filter(|&v| (pick >> v) & 1 == 1)
            .collect();
        prop_assume!(!ids.is_empty());
        let set = LandmarkSet::new(ids.clone(), &g).unwrap();
        for (i, &z) in ids.iter().enumerate() {
            let code = mixed_code(&d, GraphElement::vertex(z), &set);
            prop_assert_eq!(code.entries()[i], 0);
        }
        for v in g.vertices() {
            if !set.contains(v) {
                let code = mixed_code(&d, GraphElement::vertex(v), &set);
                prop_assert!(code.entries().iter().all(|&e| e >= 1));
            }
        }
    }

    #[test]
    fn full_vertex_set_generates_every_mode(g in connected_graph()) {
        let d = g.distances().unwrap();
        let all = LandmarkSet::new(g.vertices().collect(), &g).unwrap();
        for mode in ResolutionMode::ALL {
            prop_assert!(is_generator(&g, &d, &all, mode).unwrap().is_generator);
        }
    }

    #[test]
    fn pendant_edge_mirrors_support(g in connected_graph()) {
        // for every leaf, the pendant edge and the support share codes under
        // any landmark set that excludes the leaf
        let d = g.distances().unwrap();
        for leaf in g.vertices() {
            if g.degree(leaf) != 1 {
                continue;
            }
            let support = g.neighbors(leaf)[0];
            let ids: Vec<VertexId> = g.vertices().filter(|&v| v != leaf).collect();
            let set = LandmarkSet::new(ids, &g).unwrap();
            let edge = GraphElement::edge(resolve_kit::Edge::new(leaf, support));
            prop_assert_eq!(
                mixed_code(&d, edge, &set),
                mixed_code(&d, GraphElement::vertex(support), &set)
            );
        }
    }

    #[test]
    fn edge_list_round_trip(g in connected_graph()) {
        let text = resolve_kit::io::render_edge_list(&g);
        let (n, edges) = resolve_kit::io::parse_edge_list(&text, "prop").unwrap();
        let parsed = Graph::new(n, &edges).unwrap();
        prop_assert_eq!(parsed.vertex_count(), g.vertex_count());
        prop_assert_eq!(parsed.edges(), g.edges());
        prop_assert_eq!(resolve_kit::io::render_edge_list(&parsed), text);
    }

    #[test]
    fn greedy_result_always_generates(g in connected_graph(), mode in mode()) {
        let d = g.distances().unwrap();
        let greedy = greedy_upper_bound(&g, &d, mode).unwrap();
        if greedy.is_empty() {
            // only possible when the universe has at most one element
            prop_assert!(element_universe(&g, mode).len() <= 1);
        } else {
            prop_assert!(is_generator(&g, &d, &greedy, mode).unwrap().is_generator);
        }
    }
}
