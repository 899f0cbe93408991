mod common;

use common::mesh::reversing_injections;
use upg_core::mesh::{build_mesh, route_linkage, verify_linkage};

#[test]
fn small_meshes_are_well_linked_both_directions() {
    for (m, n) in [(4, 4), (4, 9), (3, 5)] {
        let mesh = build_mesh(m, n).unwrap();
        for k in 1..=m.min(n) {
            for phi in reversing_injections(&mesh, k) {
                let l = route_linkage(&mesh, &phi).unwrap_or_else(|e| panic!("{m},{n} {phi:?}: {e}"));
                assert!(verify_linkage(&mesh, &phi, &l).is_empty());
                let back: Vec<_> = phi.iter().map(|&(a, b)| (b, a)).collect();
                let l = route_linkage(&mesh, &back).unwrap();
                assert!(verify_linkage(&mesh, &back, &l).is_empty());
            }
        }
    }
}

#[test]
fn routing_is_deterministic() {
    let mesh = build_mesh(6, 9).unwrap();
    let phi: Vec<_> = (0..4).map(|t| (mesh.a(t), mesh.b(2 * t + 1))).collect();
    assert_eq!(route_linkage(&mesh, &phi).unwrap(), route_linkage(&mesh, &phi).unwrap());
}
