//! Independent checkers: topological-minor embeddings, disjoint path
//! families and complete-minor witnesses. Nothing here depends on how the
//! checked objects were constructed.

use alloc::vec;
use alloc::vec::Vec;
use hashbrown::{HashMap, HashSet};

use crate::graph::{Graph, VertexIx};

/// A topological-minor embedding of a guest graph into a host graph: an
/// injective vertex map and, per guest edge, a host path between the images.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TopEmbedding {
    /// Host image of each guest vertex, indexed by guest vertex.
    pub vmap: Vec<VertexIx>,
    /// Host path of each guest edge `(u, v)`, running from `vmap[u]` to `vmap[v]`.
    pub emap: Vec<((VertexIx, VertexIx), Vec<VertexIx>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `vmap` does not cover the guest exactly.
    VertexMapSize { expected: usize, found: usize },
    /// A vertex image is not a host vertex.
    UnknownHostVertex { guest: VertexIx },
    /// Two guest vertices share an image.
    NonInjective { a: VertexIx, b: VertexIx },
    /// A guest edge has no path.
    MissingPath { edge: (VertexIx, VertexIx) },
    /// A path is given for a pair that is not a guest edge, or twice.
    UnexpectedPath { edge: (VertexIx, VertexIx) },
    /// The path does not start and end at the images of the edge's ends.
    WrongEndpoints { edge: (VertexIx, VertexIx) },
    /// Consecutive path vertices are not adjacent in the host, or the path
    /// repeats a vertex.
    NotAPath { edge: (VertexIx, VertexIx), at: usize },
    /// An interior path vertex is the image of a guest vertex.
    InteriorHitsImage { edge: (VertexIx, VertexIx), vertex: VertexIx, guest: VertexIx },
    /// Two paths share an interior vertex.
    SharedInterior { a: (VertexIx, VertexIx), b: (VertexIx, VertexIx), vertex: VertexIx },
}

fn norm(e: (VertexIx, VertexIx)) -> (VertexIx, VertexIx) {
    if e.0 <= e.1 {
        e
    } else {
        (e.1, e.0)
    }
}

/// Checks `emb` as an embedding of `guest` into `host`; an empty report
/// means it is a valid topological-minor embedding.
pub fn verify_topological_embedding(guest: &Graph, host: &Graph, emb: &TopEmbedding) -> Vec<Violation> {
    let mut out = Vec::new();
    if emb.vmap.len() != guest.len() {
        out.push(Violation::VertexMapSize { expected: guest.len(), found: emb.vmap.len() });
        return out;
    }
    let mut image_of: HashMap<VertexIx, VertexIx> = HashMap::new();
    for (g, &h) in emb.vmap.iter().enumerate() {
        if h >= host.len() {
            out.push(Violation::UnknownHostVertex { guest: g });
            continue;
        }
        if let Some(&prev) = image_of.get(&h) {
            out.push(Violation::NonInjective { a: prev, b: g });
        } else {
            image_of.insert(h, g);
        }
    }
    if !out.is_empty() {
        return out;
    }
    let wanted: HashSet<(VertexIx, VertexIx)> = guest.edges().into_iter().collect();
    let mut seen: HashSet<(VertexIx, VertexIx)> = HashSet::new();
    let mut owner: HashMap<VertexIx, (VertexIx, VertexIx)> = HashMap::new();
    for (edge, path) in &emb.emap {
        let key = norm(*edge);
        if !wanted.contains(&key) || !seen.insert(key) {
            out.push(Violation::UnexpectedPath { edge: *edge });
            continue;
        }
        let (u, v) = *edge;
        if path.len() < 2 || path[0] != emb.vmap[u] || path[path.len() - 1] != emb.vmap[v] {
            out.push(Violation::WrongEndpoints { edge: *edge });
            continue;
        }
        let mut on_path = HashSet::new();
        for (i, &x) in path.iter().enumerate() {
            let bad_vertex = x >= host.len() || !on_path.insert(x);
            if bad_vertex || (i > 0 && !host.has_edge(path[i - 1], x)) {
                out.push(Violation::NotAPath { edge: *edge, at: i });
                break;
            }
        }
        for &x in &path[1..path.len() - 1] {
            if let Some(&g) = image_of.get(&x) {
                out.push(Violation::InteriorHitsImage { edge: *edge, vertex: x, guest: g });
            }
            if let Some(&other) = owner.get(&x) {
                out.push(Violation::SharedInterior { a: other, b: *edge, vertex: x });
            } else {
                owner.insert(x, *edge);
            }
        }
    }
    let mut missing: Vec<_> = wanted.difference(&seen).copied().collect();
    missing.sort_unstable();
    for e in missing {
        out.push(Violation::MissingPath { edge: e });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathViolation {
    Empty { path: usize },
    UnknownVertex { path: usize, at: usize },
    NotAdjacent { path: usize, at: usize },
    Repeats { path: usize, vertex: VertexIx },
    Shared { a: usize, b: usize, vertex: VertexIx },
}

/// Checks that each list is a path in `host` and that the paths are pairwise
/// vertex-disjoint.
pub fn verify_disjoint_paths(host: &Graph, paths: &[Vec<VertexIx>]) -> Vec<PathViolation> {
    let mut out = Vec::new();
    let mut owner: HashMap<VertexIx, usize> = HashMap::new();
    for (p, path) in paths.iter().enumerate() {
        if path.is_empty() {
            out.push(PathViolation::Empty { path: p });
            continue;
        }
        for (i, &x) in path.iter().enumerate() {
            if x >= host.len() {
                out.push(PathViolation::UnknownVertex { path: p, at: i });
                continue;
            }
            if i > 0 && path[i - 1] < host.len() && !host.has_edge(path[i - 1], x) {
                out.push(PathViolation::NotAdjacent { path: p, at: i });
            }
            match owner.get(&x) {
                Some(&q) if q == p => out.push(PathViolation::Repeats { path: p, vertex: x }),
                Some(&q) => out.push(PathViolation::Shared { a: q, b: p, vertex: x }),
                None => {
                    owner.insert(x, p);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinorViolation {
    EmptyBranchSet { set: usize },
    Overlap { a: usize, b: usize, vertex: VertexIx },
    Disconnected { set: usize },
    NotJoined { a: usize, b: usize },
}

/// Checks that `branch_sets` witness a complete minor of order
/// `branch_sets.len()` in `host`: disjoint, each connected, every two joined
/// by an edge.
pub fn verify_complete_minor(host: &Graph, branch_sets: &[Vec<VertexIx>]) -> Vec<MinorViolation> {
    let mut out = Vec::new();
    let mut owner = vec![usize::MAX; host.len()];
    for (s, set) in branch_sets.iter().enumerate() {
        if set.is_empty() {
            out.push(MinorViolation::EmptyBranchSet { set: s });
        }
        for &x in set {
            if owner[x] != usize::MAX && owner[x] != s {
                out.push(MinorViolation::Overlap { a: owner[x], b: s, vertex: x });
            }
            owner[x] = s;
        }
    }
    if !out.is_empty() {
        return out;
    }
    let k = branch_sets.len();
    let mut joined = vec![vec![false; k]; k];
    for (s, set) in branch_sets.iter().enumerate() {
        let mut reached = HashSet::new();
        let mut stack = vec![set[0]];
        reached.insert(set[0]);
        while let Some(x) = stack.pop() {
            for &y in host.neighbors(x) {
                let o = owner[y];
                if o == s && reached.insert(y) {
                    stack.push(y);
                } else if o != usize::MAX && o != s {
                    joined[s][o] = true;
                    joined[o][s] = true;
                }
            }
        }
        if reached.len() != set.iter().collect::<HashSet<_>>().len() {
            out.push(MinorViolation::Disconnected { set: s });
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            if !joined[a][b] {
                out.push(MinorViolation::NotJoined { a, b });
            }
        }
    }
    out
}
