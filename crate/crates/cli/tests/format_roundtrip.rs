use proptest::collection::vec;
use proptest::prelude::*;
use upg::format::{Document, FormatError, Named, PathRecord};
use upg_core::host::build_host;
use upg_core::mesh::build_mesh;
use upg_core::planar::trace_faces;

fn id() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9./~@'_-]{0,6}"
}

fn named() -> impl Strategy<Value = Named> {
    (id(), vec(id(), 0..5)).prop_map(|(name, ids)| Named { name, ids })
}

fn document() -> impl Strategy<Value = Document> {
    (
        proptest::option::of(0usize..50),
        vec(id(), 0..6),
        vec((id(), id()), 0..6),
        vec(named(), 0..4),
        proptest::option::of(0usize..9),
        vec(named(), 0..3),
        vec(named(), 0..3),
        vec((id(), id()), 0..4),
        vec((id(), id(), vec(id(), 0..5)), 0..4),
    )
        .prop_map(|(level, vertices, edges, rotation, outer, cycles, branches, map, paths)| Document {
            level,
            vertices,
            edges,
            rotation,
            outer,
            cycles,
            branches,
            map,
            paths: paths.into_iter().map(|(from, to, ids)| PathRecord { from, to, ids }).collect(),
        })
}

/// Stable merge of the lines of each record kind in a random interleaving.
fn interleave(text: &str, picks: &[usize]) -> String {
    let kind = |l: &str| l.split([' ', ':']).next().unwrap_or("").to_string();
    let mut groups: Vec<(String, Vec<&str>)> = Vec::new();
    for l in text.lines() {
        let k = kind(l);
        match groups.iter_mut().find(|(g, _)| *g == k) {
            Some((_, v)) => v.push(l),
            None => groups.push((k, vec![l])),
        }
    }
    let mut at = vec![0; groups.len()];
    let mut out = String::new();
    let mut i = 0;
    while groups.iter().zip(&at).any(|((_, v), &a)| a < v.len()) {
        let live: Vec<usize> = (0..groups.len()).filter(|&g| at[g] < groups[g].1.len()).collect();
        let g = live[picks.get(i).copied().unwrap_or(0) % live.len()];
        out.push_str(groups[g].1[at[g]]);
        out.push('\n');
        at[g] += 1;
        i += 1;
    }
    out
}

proptest! {
    #[test]
    fn parse_inverts_serialize(doc in document()) {
        let text = doc.serialize();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn record_order_does_not_matter(doc in document(), picks in vec(0usize..16, 0..64)) {
        let text = doc.serialize();
        let shuffled = interleave(&text, &picks);
        let mut sorted_a: Vec<&str> = text.lines().collect();
        let mut sorted_b: Vec<&str> = shuffled.lines().collect();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        prop_assert_eq!(sorted_a, sorted_b);
        prop_assert_eq!(Document::parse(&shuffled).unwrap().serialize(), text);
    }
}

#[test]
fn comments_blank_lines_and_spacing_are_ignored() {
    let text = "# a triangle\n\nv a\n  v b\nv c\ne a b\ne b c\ne c a\nr a:  b , c\nr b: c,a\nr c: a,b\nouter: 1\n";
    let doc = Document::parse(text).unwrap();
    assert_eq!(doc.vertices, ["a", "b", "c"]);
    assert_eq!(doc.rotation[0].ids, ["b", "c"]);
    assert_eq!(doc.outer, Some(1));
    let map = doc.planar_map().unwrap();
    assert_eq!(map.graph.edge_count(), 3);
    assert_eq!(map.outer_face_index(), Some(1));
}

#[test]
fn syntax_errors_carry_line_numbers() {
    let cases = [
        ("v a\nv\n", 2),
        ("e a\n", 1),
        ("v a b\n", 1),
        ("\n\nlevel: x\n", 3),
        ("outer: 1\nouter: 2\n", 2),
        ("path a: b,c\n", 1),
        ("r a: b,,c\n", 1),
        ("q a\n", 1),
        ("map a\n", 1),
    ];
    for (text, line) in cases {
        match Document::parse(text) {
            Err(FormatError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?} gave {other:?}"),
        }
    }
}

#[test]
fn semantic_errors() {
    let bad = ["v a\ne a b\n", "v a\nv a\n", "v a\nv b\ne a b\ne b a\n"];
    for text in bad {
        assert!(Document::parse(text).unwrap().graph().is_err(), "{text:?}");
    }
    let rot = [
        "v a\nv b\nr a: b\n",
        "v a\nv b\nv c\ne a b\nr a: b\nr b: a\nr a: b\n",
        "v a\nv b\nv c\ne a c\nr a: b\nr b: a\n",
        "v a\nv b\nr a: b\nr b: a\nouter: 7\n",
        "v a\nv b\ne a b\n",
    ];
    for text in rot {
        assert!(Document::parse(text).unwrap().planar_map().is_err(), "{text:?}");
    }
}

#[test]
fn rotation_file_alone_defines_the_map() {
    let doc = Document::parse("r a: b,c\nr b: c,a\nr c: a,b\n").unwrap();
    let map = doc.planar_map().unwrap();
    assert_eq!(map.graph.names(), ["a", "b", "c"]);
    assert_eq!(trace_faces(&map).len(), 2);
}

#[test]
fn planar_maps_survive_the_format() {
    let mesh = build_mesh(4, 6).unwrap();
    let mut maps = vec![mesh.map.clone(), build_host(2).unwrap().map.clone()];
    maps[0].set_outer_face(3).unwrap();
    for map in maps {
        let doc = Document::from_map(&map);
        let back = Document::parse(&doc.serialize()).unwrap().planar_map().unwrap();
        assert_eq!(back.graph, map.graph);
        for v in 0..map.graph.len() {
            assert_eq!(back.rotation(v), map.rotation(v));
        }
        assert_eq!(back.outer_face_index(), map.outer_face_index());
        assert_eq!(Document::from_map(&back).serialize(), doc.serialize());
    }
}

#[test]
fn embeddings_survive_the_format() {
    use upg_core::Graph;
    let guest = Graph::from_edges(&["a", "b"], &[("a", "b")]).unwrap();
    let host = Graph::from_edges(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
    let emb = upg_core::verify::TopEmbedding { vmap: vec![0, 2], emap: vec![((0, 1), vec![0, 1, 2])] };
    let mut doc = Document::default();
    doc.add_embedding(&guest, &host, &emb);
    assert_eq!(doc.serialize(), "map a x\nmap b z\npath a b: x,y,z\n");
    let back = Document::parse(&doc.serialize()).unwrap();
    assert_eq!(back.top_embedding(&guest, &host).unwrap(), emb);
    assert_eq!(back.implied_guest().unwrap(), guest);
    let missing = Document::parse("map a x\n").unwrap();
    assert!(missing.top_embedding(&guest, &host).is_err());
    let unknown = Document::parse("map a x\nmap b q\n").unwrap();
    assert_eq!(unknown.top_embedding(&guest, &host).unwrap().vmap[1], usize::MAX);
}
