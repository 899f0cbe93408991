mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use upg_core::cyclic::{order_relation, OrderRelation};
use upg_core::embedder::embed;
use upg_core::mesh::build_mesh;
use upg_core::planar::{euler_validate, glue_on_facial_cycles, trace_faces};
use upg_core::verify::verify_topological_embedding;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_dart_is_on_exactly_one_face(seed in any::<u64>(), n in 3usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_planar(&mut rng, n, 300);
        let faces = trace_faces(&g);
        let total: usize = faces.iter().map(|f| f.len()).sum();
        prop_assert_eq!(total, 2 * g.graph.edge_count());
        let mut darts = std::collections::HashSet::new();
        for f in &faces {
            let w = &f.vertices;
            for i in 0..w.len() {
                prop_assert!(darts.insert((w[i], w[(i + 1) % w.len()])));
            }
        }
        prop_assert!(euler_validate(&g));
    }

    #[test]
    fn gluing_two_meshes_stays_planar(m1 in 3usize..7, m2 in 3usize..7, n in 3usize..9, s in 0usize..9) {
        let a = build_mesh(m1, n).unwrap();
        let b = build_mesh(m2, n).unwrap();
        // relabel b so its names do not clash with a
        let mut bg = upg_core::Graph::new();
        for name in b.graph().names() {
            bg.add_vertex(format!("B{name}")).unwrap();
        }
        let rot: Vec<Vec<usize>> = (0..b.graph().len()).map(|v| b.map.rotation(v).to_vec()).collect();
        let bmap = upg_core::PlanarMap::from_index_rotation(bg, &rot).unwrap();
        let c = &a.c2.vertices;
        let c2 = &b.c2.vertices;
        let phi: Vec<(usize, usize)> = (0..n).map(|i| (c[i], c2[(s + n - i) % n])).collect();
        let glued = glue_on_facial_cycles(&a.map, c, &bmap, c2, &phi).unwrap();
        prop_assert!(euler_validate(&glued));
        prop_assert_eq!(glued.graph.len(), a.graph().len() + b.graph().len() - n);
        prop_assert_eq!(glued.graph.edge_count(), a.graph().edge_count() + b.graph().edge_count() - n);
    }

    #[test]
    fn two_reversals_compose_to_preserving(len in 5usize..12, k in 3usize..5, s1 in 0usize..12, s2 in 0usize..12, mask in any::<u16>()) {
        let k = k.min(len);
        let a: Vec<usize> = (0..len).collect();
        let b: Vec<usize> = (100..100 + len).collect();
        let c: Vec<usize> = (200..200 + len).collect();
        let mut dom: Vec<usize> = (0..len).filter(|i| mask >> i & 1 == 1).take(k).collect();
        for i in 0..len {
            if dom.len() >= k { break; }
            if !dom.contains(&i) { dom.push(i); }
        }
        dom.sort_unstable();
        // reflections i -> s - i are the order reversing bijections of a cycle
        let f = |i: usize| (s1 + len - i % len) % len;
        let g = |j: usize| (s2 + len - j % len) % len;
        let ab: Vec<(usize, usize)> = dom.iter().map(|&i| (a[i], b[f(i)])).collect();
        let bc: Vec<(usize, usize)> = dom.iter().map(|&i| (b[f(i)], c[g(f(i))])).collect();
        let ac: Vec<(usize, usize)> = dom.iter().map(|&i| (a[i], c[g(f(i))])).collect();
        prop_assert_eq!(order_relation(&ab, &a, &b).unwrap(), OrderRelation::Reversing);
        prop_assert_eq!(order_relation(&bc, &b, &c).unwrap(), OrderRelation::Reversing);
        prop_assert_eq!(order_relation(&ac, &a, &c).unwrap(), OrderRelation::Preserving);
    }

    #[test]
    fn verifier_matches_pairwise_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (guest, host, emb) = common::oracle::instance(&mut rng, 12);
        let fast = verify_topological_embedding(&guest, &host, &emb).is_empty();
        prop_assert_eq!(fast, common::oracle::brute_force_valid(&guest, &host, &emb));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_trees_embed(seed in any::<u64>(), n in 2usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = common::tree(&mut rng, n);
        let e = embed(&t).unwrap();
        let host = e.host_map().unwrap();
        prop_assert!(verify_topological_embedding(&t.graph, &host.graph, &e.embedding()).is_empty());
    }
}
