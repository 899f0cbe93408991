#![allow(dead_code)]

pub mod mesh;
pub mod oracle;
pub mod triple;
pub mod wedge;

use rand::Rng;
use upg_core::graph::Graph;
use upg_core::PlanarMap;

/// Planar map of a straight-line drawing: neighbours sorted anticlockwise
/// by angle.
pub fn from_drawing(points: &[(f64, f64)], edges: &[(usize, usize)]) -> PlanarMap {
    let mut g = Graph::new();
    for i in 0..points.len() {
        g.add_vertex(format!("v{i:02}")).unwrap();
    }
    let mut nb: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for &(u, v) in edges {
        nb[u].push(v);
        nb[v].push(u);
    }
    let rot: Vec<Vec<usize>> = nb
        .into_iter()
        .enumerate()
        .map(|(v, mut l)| {
            let (x, y) = points[v];
            l.sort_by(|&a, &b| {
                let ta = (points[a].1 - y).atan2(points[a].0 - x);
                let tb = (points[b].1 - y).atan2(points[b].0 - x);
                ta.partial_cmp(&tb).unwrap()
            });
            l
        })
        .collect();
    PlanarMap::from_index_rotation(g, &rot).unwrap()
}

pub fn path(n: usize) -> PlanarMap {
    let pts: Vec<_> = (0..n).map(|i| (i as f64, 0.0)).collect();
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    from_drawing(&pts, &edges)
}

pub fn cycle(n: usize) -> PlanarMap {
    let pts: Vec<_> = (0..n)
        .map(|i| {
            let t = i as f64 * std::f64::consts::TAU / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_drawing(&pts, &edges)
}

pub fn star(leaves: usize) -> PlanarMap {
    let mut pts = vec![(0.0, 0.0)];
    for i in 0..leaves {
        let t = i as f64 * std::f64::consts::TAU / leaves as f64;
        pts.push((t.cos(), t.sin()));
    }
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    from_drawing(&pts, &edges)
}

pub fn grid(w: usize, h: usize) -> PlanarMap {
    let pts: Vec<_> = (0..w * h).map(|i| ((i % w) as f64, (i / w) as f64)).collect();
    let mut edges = Vec::new();
    for i in 0..w * h {
        if i % w + 1 < w {
            edges.push((i, i + 1));
        }
        if i / w + 1 < h {
            edges.push((i, i + w));
        }
    }
    from_drawing(&pts, &edges)
}

pub fn k4() -> PlanarMap {
    let pts = [(0.0, 0.0), (0.0, 3.0), (-3.0, -2.0), (3.0, -2.0)];
    from_drawing(&pts, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
}

pub fn cube() -> PlanarMap {
    let pts = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (-3.0, -3.0), (3.0, -3.0), (3.0, 3.0), (-3.0, 3.0)];
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)];
    from_drawing(&pts, &edges)
}

/// Random recursive tree. Every rotation of a tree is planar, so the
/// drawing coordinates only fix some order.
pub fn tree<R: Rng>(rng: &mut R, n: usize) -> PlanarMap {
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0))).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    from_drawing(&pts, &edges)
}

fn segments_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Random planar straight-line graph on `n` random points: candidate edges
/// in random order, kept when they cross nothing kept so far.
pub fn random_planar<R: Rng>(rng: &mut R, n: usize, tries: usize) -> PlanarMap {
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0))).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..tries {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)) {
            continue;
        }
        let ok = edges
            .iter()
            .all(|&(a, b)| a == u || a == v || b == u || b == v || !segments_cross(pts[u], pts[v], pts[a], pts[b]));
        if ok {
            edges.push((u, v));
        }
    }
    from_drawing(&pts, &edges)
}
