//! Meshes: planar graphs carrying two disjoint well-linked facial cycles,
//! and the router that realizes linkages between them.
//!
//! An `(m, n)`-mesh is a cylinder of `columns` angular positions and `rows`
//! concentric rings. The cycle `c1` of length `m` sits inside the innermost
//! ring and the cycle `c2` of length `n` outside the outermost one; each
//! cycle vertex is joined to a contiguous arc ("fan") of its ring. Columns
//! increase anticlockwise, rows increase outwards.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclic::order_relation;
use crate::error::{bail, Error, Result};
use crate::flow::disjoint_paths;
use crate::graph::{Graph, VertexIx};
use crate::planar::{FacialWalk, PlanarMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mesh {
    pub m: usize,
    pub n: usize,
    pub columns: usize,
    pub rows: usize,
    pub map: PlanarMap,
    /// The face bounded by the length-`m` cycle: `a0, a(m-1), ..., a1`.
    pub c1: FacialWalk,
    /// The face bounded by the length-`n` cycle: `b0, b1, ..., b(n-1)`.
    pub c2: FacialWalk,
}

/// Columns `(lo, hi)` of the fan of vertex `j` on a cycle of length `len`;
/// `hi` may equal `columns` and then means column 0.
fn fan(j: usize, len: usize, columns: usize) -> (usize, usize) {
    (j * columns / len, (j + 1) * columns / len)
}

/// Integer `a / b` rounded to nearest, for `b > 0`.
fn div_round(a: i64, b: i64) -> i64 {
    (2 * a + b).div_euclid(2 * b)
}

/// Builds an `(m, n)`-mesh. Both lengths must be at least 3.
pub fn build_mesh(m: usize, n: usize) -> Result<Mesh> {
    if m < 3 || n < 3 {
        bail!(Rejected, "mesh cycles need length at least 3 (got {m}, {n})");
    }
    build_mesh_sized(m, n, m + n + 2, m.min(n) + 3)
}

fn build_mesh_sized(m: usize, n: usize, columns: usize, rows: usize) -> Result<Mesh> {
    let grid = |r: usize, c: usize| r * columns + (c % columns);
    let a = |j: usize| rows * columns + (j % m);
    let b = |i: usize| rows * columns + m + (i % n);

    let mut g = Graph::with_capacity(rows * columns + m + n);
    for r in 0..rows {
        for c in 0..columns {
            g.add_vertex(format!("g{r}.{c}"))?;
        }
    }
    for j in 0..m {
        g.add_vertex(format!("a{j}"))?;
    }
    for i in 0..n {
        g.add_vertex(format!("b{i}"))?;
    }

    // Fan owners per column: (owner whose hi end is c, owner whose lo end is c).
    let owners = |len: usize| {
        let mut table: Vec<Vec<usize>> = vec![Vec::new(); columns];
        for j in 0..len {
            let (lo, hi) = fan(j, len, columns);
            for c in lo..=hi {
                table[c % columns].push(j);
            }
        }
        table
    };
    let inner_owner = owners(m);
    let outer_owner = owners(n);
    // A column shared by two fans lists (j, j+1) or, at column 0, (0, len-1).
    let ordered = |list: &Vec<usize>, len: usize| -> Vec<usize> {
        let mut l = list.clone();
        l.sort_unstable();
        if l.len() == 2 && l[0] == 0 && l[1] == len - 1 {
            l.swap(0, 1);
        }
        l
    };

    let mut rot: Vec<Vec<VertexIx>> = vec![Vec::new(); g.len()];
    for r in 0..rows {
        for c in 0..columns {
            let mut list = Vec::with_capacity(6);
            if r + 1 < rows {
                list.push(grid(r + 1, c));
            } else {
                // Outward fan vertices, clockwise-most first: hi-end owner then lo-end owner.
                list.extend(ordered(&outer_owner[c], n).into_iter().map(b));
            }
            list.push(grid(r, c + 1));
            if r > 0 {
                list.push(grid(r - 1, c));
            } else {
                // Inward fan vertices: lo-end owner then hi-end owner.
                list.extend(ordered(&inner_owner[c], m).into_iter().rev().map(a));
            }
            list.push(grid(r, c + columns - 1));
            rot[grid(r, c)] = list;
        }
    }
    for j in 0..m {
        let (lo, hi) = fan(j, m, columns);
        let mut list = vec![a(j + m - 1)];
        list.extend((lo..=hi).map(|c| grid(0, c)));
        list.push(a(j + 1));
        rot[a(j)] = list;
    }
    for i in 0..n {
        let (lo, hi) = fan(i, n, columns);
        let mut list = vec![b(i + 1)];
        list.extend((lo..=hi).rev().map(|c| grid(rows - 1, c)));
        list.push(b(i + n - 1));
        rot[b(i)] = list;
    }
    let map = PlanarMap::from_index_rotation(g, &rot)?;
    let c1 = FacialWalk { vertices: (0..m).map(|j| a(m - j)).collect(), outer: false };
    let c2 = FacialWalk { vertices: (0..n).map(b).collect(), outer: true };
    let mut map = map;
    map.outer = Some((b(0), b(1)));
    Ok(Mesh { m, n, columns, rows, map, c1, c2 })
}

impl Mesh {
    pub fn grid(&self, r: usize, c: usize) -> VertexIx {
        r * self.columns + (c % self.columns)
    }

    /// The `j`-th vertex of the length-`m` cycle.
    pub fn a(&self, j: usize) -> VertexIx {
        self.rows * self.columns + (j % self.m)
    }

    /// The `i`-th vertex of the length-`n` cycle.
    pub fn b(&self, i: usize) -> VertexIx {
        self.rows * self.columns + self.m + (i % self.n)
    }

    /// Position of `v` on `c1`, if it lies there.
    pub fn a_index(&self, v: VertexIx) -> Option<usize> {
        let base = self.rows * self.columns;
        (v >= base && v < base + self.m).then(|| v - base)
    }

    pub fn b_index(&self, v: VertexIx) -> Option<usize> {
        let base = self.rows * self.columns + self.m;
        (v >= base && v < base + self.n).then(|| v - base)
    }

    /// Whether `v` lies on `c1` or `c2`.
    pub fn on_cycles(&self, v: VertexIx) -> bool {
        v >= self.rows * self.columns
    }

    pub fn graph(&self) -> &Graph {
        &self.map.graph
    }

    /// Cut vertices for a staircase from column `top` on the inner ring to
    /// column `top + shift` on the outer ring.
    fn cut(&self, top: usize, shift: i64) -> Vec<VertexIx> {
        let (n, h) = (self.columns as i64, self.rows as i64);
        let col = |r: i64| -> i64 {
            if r <= 1 {
                top as i64
            } else if r >= h - 2 {
                top as i64 + shift
            } else {
                top as i64 + div_round(shift * (r - 1), h - 3)
            }
        };
        let at = |r: i64, c: i64| self.grid(r as usize, c.rem_euclid(n) as usize);
        let mut out = vec![at(0, top as i64), at(h - 1, top as i64 + shift)];
        for r in 1..h - 1 {
            let (x, y) = (col(r), col(r + 1));
            for c in x.min(y)..=x.max(y) {
                out.push(at(r, c));
            }
        }
        out
    }
}

/// A set of disjoint paths realizing a prescribed pairing between the two
/// cycles of a mesh.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linkage {
    pub pairs: Vec<(VertexIx, VertexIx)>,
    pub paths: Vec<Vec<VertexIx>>,
}

/// Routes a `phi`-linkage: for every pair `(w, phi(w))` a path from `w` to
/// `phi(w)`, all paths disjoint and meeting `c1`, `c2` only at their ends.
/// The domain may lie on either cycle; `phi` must reverse the cyclic orders
/// of the two faces.
pub fn route_linkage(mesh: &Mesh, phi: &[(VertexIx, VertexIx)]) -> Result<Linkage> {
    if phi.is_empty() {
        return Ok(Linkage { pairs: Vec::new(), paths: Vec::new() });
    }
    let forward = phi.iter().all(|&(w, x)| mesh.a_index(w).is_some() && mesh.b_index(x).is_some());
    let backward = phi.iter().all(|&(w, x)| mesh.b_index(w).is_some() && mesh.a_index(x).is_some());
    let (from, to) = match (forward, backward) {
        (true, _) => (&mesh.c1.vertices, &mesh.c2.vertices),
        (_, true) => (&mesh.c2.vertices, &mesh.c1.vertices),
        _ => bail!(Rejected, "linkage pairs must run between the two cycles"),
    };
    let rel = order_relation(phi, from, to)?;
    if !rel.allows_reversing(phi.len()) {
        bail!(Rejected, "linkage map does not reverse the cyclic order");
    }
    // Normalize to (a-index, b-index), sorted anticlockwise from the first source.
    let mut pairs: Vec<(usize, usize)> = phi
        .iter()
        .map(|&(w, x)| if forward { (w, x) } else { (x, w) })
        .map(|(w, x)| (mesh.a_index(w).unwrap(), mesh.b_index(x).unwrap()))
        .collect();
    pairs.sort_unstable();
    let k = pairs.len();
    let t0 = pairs[0].1;
    for i in 1..k {
        let prev = (pairs[i - 1].1 + mesh.n - t0) % mesh.n;
        let cur = (pairs[i].1 + mesh.n - t0) % mesh.n;
        if cur <= prev {
            bail!(Rejected, "linkage map does not reverse the cyclic order");
        }
    }
    // The cut runs from a gap between consecutive sources to the matching
    // gap between targets; gaps with a small twist are tried first.
    let n = mesh.columns;
    let mid = |lo: usize, hi: usize| -> usize {
        let hi = if hi < lo { hi + n } else { hi };
        ((lo + hi) / 2) % n
    };
    let mut cuts: Vec<(i64, usize, i64)> = Vec::new();
    for i in 0..k {
        let j = (i + k - 1) % k;
        let top = if k == 1 {
            fan(pairs[i].0, mesh.m, n).0
        } else {
            mid(fan(pairs[j].0, mesh.m, n).1, fan(pairs[i].0, mesh.m, n).0)
        };
        let bottom = if k == 1 {
            fan(pairs[i].1, mesh.n, n).0
        } else {
            mid(fan(pairs[j].1, mesh.n, n).1, fan(pairs[i].1, mesh.n, n).0)
        };
        let d0 = ((bottom + n - top) % n) as i64;
        for d in [d0, d0 - n as i64, d0 + n as i64, d0 - 2 * n as i64] {
            cuts.push((d.abs(), top, d));
        }
    }
    cuts.sort_unstable();
    cuts.dedup();

    let sources: Vec<VertexIx> = pairs.iter().map(|p| mesh.a(p.0)).collect();
    let targets: Vec<VertexIx> = pairs.iter().map(|p| mesh.b(p.1)).collect();
    let g = mesh.graph();
    for (_, top, shift) in cuts {
        let mut blocked = vec![false; g.len()];
        for v in mesh.rows * n..g.len() {
            blocked[v] = true;
        }
        for &v in sources.iter().chain(&targets) {
            blocked[v] = false;
        }
        for v in mesh.cut(top, shift) {
            blocked[v] = true;
        }
        let Some(paths) = disjoint_paths(g.adjacency(), &blocked, &sources, &targets) else {
            continue;
        };
        if paths.iter().zip(&targets).any(|(p, &t)| *p.last().unwrap() != t) {
            continue;
        }
        let mut out_pairs = Vec::with_capacity(k);
        let mut out_paths = Vec::with_capacity(k);
        for (mut p, (&s, &t)) in paths.into_iter().zip(sources.iter().zip(&targets)) {
            if forward {
                out_pairs.push((s, t));
            } else {
                p.reverse();
                out_pairs.push((t, s));
            }
            out_paths.push(p);
        }
        return Ok(Linkage { pairs: out_pairs, paths: out_paths });
    }
    Err(Error::Routing(format!("no linkage found in the ({}, {})-mesh for {} pairs", mesh.m, mesh.n, k)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkageViolation {
    /// The number of paths differs from the number of pairs.
    Count { pairs: usize, paths: usize },
    /// Path `path` does not join the ends of its pair.
    WrongPair { path: usize },
    /// Consecutive vertices of the path are not adjacent.
    NotAdjacent { path: usize, at: usize },
    /// Two paths (or one path twice) use the vertex.
    Shared { a: usize, b: usize, vertex: VertexIx },
    /// An interior vertex of the path lies on `c1` or `c2`.
    TouchesCycle { path: usize, vertex: VertexIx },
}

/// Checks `linkage` against `phi` in `mesh`.
pub fn verify_linkage(mesh: &Mesh, phi: &[(VertexIx, VertexIx)], linkage: &Linkage) -> Vec<LinkageViolation> {
    let mut out = Vec::new();
    if linkage.paths.len() != phi.len() {
        out.push(LinkageViolation::Count { pairs: phi.len(), paths: linkage.paths.len() });
        return out;
    }
    let g = mesh.graph();
    let mut owner = vec![usize::MAX; g.len()];
    for (i, (&(w, x), p)) in phi.iter().zip(&linkage.paths).enumerate() {
        if p.first() != Some(&w) || p.last() != Some(&x) {
            out.push(LinkageViolation::WrongPair { path: i });
        }
        for (t, &v) in p.iter().enumerate() {
            if v >= g.len() {
                out.push(LinkageViolation::NotAdjacent { path: i, at: t });
                continue;
            }
            if t > 0 && !g.has_edge(p[t - 1], v) {
                out.push(LinkageViolation::NotAdjacent { path: i, at: t });
            }
            if owner[v] != usize::MAX {
                out.push(LinkageViolation::Shared { a: owner[v], b: i, vertex: v });
            }
            owner[v] = i;
            if t > 0 && t + 1 < p.len() && mesh.on_cycles(v) {
                out.push(LinkageViolation::TouchesCycle { path: i, vertex: v });
            }
        }
    }
    out
}

/// Names of the `c1` and `c2` walks, for headers in serialized meshes.
pub fn cycle_names(mesh: &Mesh) -> (Vec<String>, Vec<String>) {
    let name = |v: &VertexIx| String::from(mesh.graph().name(*v));
    (mesh.c1.vertices.iter().map(name).collect(), mesh.c2.vertices.iter().map(name).collect())
}
