//! Rotation systems, face tracing and gluing along facial cycles.
//!
//! A rotation lists the neighbours of a vertex in anticlockwise order. From
//! the dart `u -> v` the face walk continues with `v -> w`, where `w` follows
//! `u` in the rotation at `v`. Faces therefore lie to the right of their
//! darts: bounded faces are traced clockwise and the outer face anticlockwise.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclic::{order_relation, OrderRelation};
use crate::error::{bail, Result};
use crate::graph::{Graph, VertexIx};

/// One face of a [`PlanarMap`] as the cyclic sequence of vertices met along
/// its boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacialWalk {
    pub vertices: Vec<VertexIx>,
    pub outer: bool,
}

impl FacialWalk {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True if no vertex repeats, i.e. the face is bounded by a cycle.
    pub fn is_cycle(&self) -> bool {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == self.vertices.len() && self.vertices.len() >= 3
    }
}

/// A graph together with a rotation system (the neighbour order of the
/// underlying [`Graph`]) and an optional outer-face designation, stored as a
/// dart on the outer face.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlanarMap {
    pub graph: Graph,
    pub outer: Option<(VertexIx, VertexIx)>,
}

impl PlanarMap {
    pub fn new(graph: Graph) -> Self {
        PlanarMap { graph, outer: None }
    }

    /// Builds a map from names and rotation lists given by name. Every edge
    /// must appear in the rotations of both endpoints.
    pub fn from_rotation(vertices: &[&str], rotation: &[(&str, &[&str])]) -> Result<PlanarMap> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(*v)?;
        }
        let mut rot: Vec<Option<Vec<VertexIx>>> = vec![None; g.len()];
        for (v, list) in rotation {
            let Some(vi) = g.find(v) else { bail!(Structure, "rotation for unknown vertex {v}") };
            let mut ids = Vec::new();
            for w in list.iter() {
                let Some(wi) = g.find(w) else { bail!(Structure, "rotation names unknown vertex {w}") };
                ids.push(wi);
            }
            rot[vi] = Some(ids);
        }
        let rot: Vec<Vec<VertexIx>> = rot.into_iter().map(|r| r.unwrap_or_default()).collect();
        Self::from_index_rotation(g, &rot)
    }

    /// Installs rotation lists (by index) on an edgeless graph.
    pub fn from_index_rotation(mut g: Graph, rot: &[Vec<VertexIx>]) -> Result<PlanarMap> {
        if g.edge_count() != 0 || rot.len() != g.len() {
            bail!(Structure, "rotation table does not match the vertex set");
        }
        for (v, list) in rot.iter().enumerate() {
            for &w in list {
                if w >= rot.len() {
                    bail!(Structure, "rotation names unknown vertex");
                }
                if v < w {
                    if !rot[w].contains(&v) {
                        bail!(Structure, "rotation at {} lacks {}", g.name(w), g.name(v));
                    }
                    g.add_edge(v, w)?;
                } else if w == v || !rot[w].contains(&v) {
                    bail!(Structure, "rotation at {} lacks {}", g.name(w), g.name(v));
                }
            }
        }
        for (v, list) in rot.iter().enumerate() {
            g.reorder_neighbors(v, list.clone())?;
        }
        Ok(PlanarMap { graph: g, outer: None })
    }

    pub fn rotation(&self, v: VertexIx) -> &[VertexIx] {
        self.graph.neighbors(v)
    }

    /// The neighbour following `u` in the rotation at `v`.
    pub fn succ(&self, v: VertexIx, u: VertexIx) -> Option<VertexIx> {
        let rot = self.rotation(v);
        let p = rot.iter().position(|&x| x == u)?;
        Some(rot[(p + 1) % rot.len()])
    }

    /// The neighbour preceding `u` in the rotation at `v`.
    pub fn pred(&self, v: VertexIx, u: VertexIx) -> Option<VertexIx> {
        let rot = self.rotation(v);
        let p = rot.iter().position(|&x| x == u)?;
        Some(rot[(p + rot.len() - 1) % rot.len()])
    }

    /// The face to the right of the dart `u -> v`.
    pub fn face_of_dart(&self, u: VertexIx, v: VertexIx) -> Result<Vec<VertexIx>> {
        if !self.graph.has_edge(u, v) {
            bail!(Structure, "no dart {} -> {}", self.graph.name(u), self.graph.name(v));
        }
        let mut walk = Vec::new();
        let (mut a, mut b) = (u, v);
        loop {
            walk.push(a);
            let c = self.succ(b, a).expect("rotation lists all neighbours");
            a = b;
            b = c;
            if (a, b) == (u, v) {
                return Ok(walk);
            }
            if walk.len() > 2 * self.graph.edge_count() {
                bail!(Structure, "face walk does not close");
            }
        }
    }

    /// Index of the outer face in the order produced by [`trace_faces`].
    pub fn outer_face_index(&self) -> Option<usize> {
        let (u, v) = self.outer?;
        trace_faces(self).iter().position(|f| f.outer && contains_dart(&f.vertices, u, v))
    }

    /// Designates the face with the given index as outer.
    pub fn set_outer_face(&mut self, index: usize) -> Result<()> {
        let faces = trace_faces(self);
        let Some(f) = faces.get(index) else { bail!(Structure, "no face {index}") };
        if f.vertices.len() < 2 {
            bail!(Structure, "face {index} has no dart");
        }
        self.outer = Some((f.vertices[0], f.vertices[1]));
        Ok(())
    }

    /// Whether `walk` is, up to shift, the walk of a face bounded by a cycle.
    pub fn is_facial_cycle(&self, walk: &[VertexIx]) -> bool {
        let n = walk.len();
        if n < 3 {
            return false;
        }
        let mut sorted = walk.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            return false;
        }
        (0..n).all(|i| {
            let (a, b, c) = (walk[i], walk[(i + 1) % n], walk[(i + 2) % n]);
            self.graph.has_edge(a, b) && self.succ(b, a) == Some(c)
        })
    }

    /// Glues `h` into `self` in place, identifying the facial cycle `c2` of
    /// `h` with the facial cycle `c` of `self` so that `c2[(s - i) mod L]`
    /// becomes `c[i]`. New vertices are named by `rename`. Returns the index
    /// in `self` of every vertex of `h`.
    pub fn glue_into(
        &mut self,
        c: &[VertexIx],
        h: &PlanarMap,
        c2: &[VertexIx],
        s: usize,
        rename: impl Fn(&str) -> String,
    ) -> Result<Vec<VertexIx>> {
        let l = c.len();
        if l != c2.len() {
            bail!(Rejected, "cycle lengths differ ({} vs {})", l, c2.len());
        }
        if !self.is_facial_cycle(c) || !h.is_facial_cycle(c2) {
            bail!(Rejected, "gluing needs two facial cycles");
        }
        let mut to_self = vec![usize::MAX; h.graph.len()];
        for i in 0..l {
            to_self[c2[(s + l - i % l) % l]] = c[i];
        }
        let mut merged = Vec::with_capacity(l);
        for i in 0..l {
            let x = c[i];
            let next = c[(i + 1) % l];
            let prev = c[(i + l - 1) % l];
            let g_rot = self.rotation(x);
            let p = g_rot.iter().position(|&y| y == next).unwrap();
            let g_list: Vec<VertexIx> = (0..g_rot.len()).map(|t| g_rot[(p + t) % g_rot.len()]).collect();
            debug_assert_eq!(*g_list.last().unwrap(), prev);
            let xh = c2[(s + l - i % l) % l];
            let h_rot = h.rotation(xh);
            let prev_h = c2[(s + 2 * l - i % l + 1) % l];
            let q = h_rot.iter().position(|&y| y == prev_h).unwrap();
            let mut b_mid = Vec::new();
            for t in 1..h_rot.len() - 1 {
                b_mid.push(h_rot[(q + t) % h_rot.len()]);
            }
            for &y in &b_mid {
                let ys = to_self[y];
                if ys != usize::MAX && g_list.contains(&ys) {
                    bail!(Rejected, "gluing would create a parallel edge at {}", self.graph.name(x));
                }
            }
            merged.push((x, g_list, b_mid));
        }
        for v in 0..h.graph.len() {
            if to_self[v] == usize::MAX {
                to_self[v] = self.graph.add_vertex(rename(h.graph.name(v)))?;
            }
        }
        for v in 0..h.graph.len() {
            if c2.contains(&v) {
                continue;
            }
            let list: Vec<VertexIx> = h.rotation(v).iter().map(|&w| to_self[w]).collect();
            *self.graph.adj_mut(to_self[v]) = list;
        }
        for (x, mut g_list, b_mid) in merged {
            g_list.extend(b_mid.into_iter().map(|w| to_self[w]));
            *self.graph.adj_mut(x) = g_list;
        }
        self.graph.bump_edges(h.graph.edge_count() - l);
        Ok(to_self)
    }
}

fn contains_dart(walk: &[VertexIx], u: VertexIx, v: VertexIx) -> bool {
    let n = walk.len();
    (0..n).any(|i| walk[i] == u && walk[(i + 1) % n] == v)
}

/// All facial walks, in order of their first dart (by tail index, then by
/// rotation position).
pub fn trace_faces(map: &PlanarMap) -> Vec<FacialWalk> {
    let g = &map.graph;
    let mut offset = Vec::with_capacity(g.len() + 1);
    offset.push(0);
    for v in 0..g.len() {
        offset.push(offset[v] + g.degree(v));
    }
    let mut seen = vec![false; offset[g.len()]];
    let mut faces = Vec::new();
    for v in 0..g.len() {
        for p in 0..g.degree(v) {
            if seen[offset[v] + p] {
                continue;
            }
            let mut walk = Vec::new();
            let mut outer = false;
            let (mut a, mut pa) = (v, p);
            while !seen[offset[a] + pa] {
                seen[offset[a] + pa] = true;
                let b = g.neighbors(a)[pa];
                walk.push(a);
                if map.outer == Some((a, b)) {
                    outer = true;
                }
                let rb = g.neighbors(b);
                let q = rb.iter().position(|&x| x == a).unwrap();
                let pb = (q + 1) % rb.len();
                a = b;
                pa = pb;
            }
            faces.push(FacialWalk { vertices: walk, outer });
        }
    }
    faces
}

/// True iff every connected component satisfies `V - E + F = 2`, i.e. the
/// rotation system is planar. An isolated vertex bounds one face.
pub fn euler_validate(map: &PlanarMap) -> bool {
    let g = &map.graph;
    let comps = g.components();
    let mut comp_of = vec![0usize; g.len()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut faces = vec![0isize; comps.len()];
    for f in trace_faces(map) {
        faces[comp_of[f.vertices[0]]] += 1;
    }
    comps.iter().enumerate().all(|(i, c)| {
        let v = c.len() as isize;
        let e = c.iter().map(|&x| g.degree(x)).sum::<usize>() as isize / 2;
        let f = if e == 0 { 1 } else { faces[i] };
        v - e + f == 2
    })
}

/// Glues `h` onto `g` along facial cycles `c` (of `g`) and `c2` (of `h`)
/// through the bijection `phi`, which must reverse the cyclic orders. The
/// vertex ids of `h` off the cycle are kept and must not clash with ids of
/// `g`. The outer-face dart of `g` is kept.
pub fn glue_on_facial_cycles(
    g: &PlanarMap,
    c: &[VertexIx],
    h: &PlanarMap,
    c2: &[VertexIx],
    phi: &[(VertexIx, VertexIx)],
) -> Result<PlanarMap> {
    let l = c.len();
    if l != c2.len() || phi.len() != l {
        bail!(Rejected, "cycle lengths and bijection size disagree");
    }
    if !g.is_facial_cycle(c) || !h.is_facial_cycle(c2) {
        bail!(Rejected, "gluing needs two facial cycles");
    }
    let rel = order_relation(phi, c, c2)?;
    if !rel.allows_reversing(l) || (l >= 3 && rel != OrderRelation::Reversing) {
        bail!(Rejected, "gluing bijection must reverse the cyclic order");
    }
    let image = |x: VertexIx| phi.iter().find(|(a, _)| *a == x).map(|&(_, b)| b);
    let Some(first) = image(c[0]) else { bail!(Rejected, "bijection misses a cycle vertex") };
    let s = c2.iter().position(|&y| y == first).unwrap();
    for i in 0..l {
        if image(c[i]) != Some(c2[(s + l - i) % l]) {
            bail!(Rejected, "bijection is not a reflection of the cycle");
        }
    }
    let mut out = g.clone();
    out.glue_into(c, h, c2, s, |x: &str| String::from(x))?;
    Ok(out)
}

/// Searches all rotation systems of `graph` for a planar one, trying at most
/// `limit` systems. Exponential; meant for guests with a handful of vertices.
pub fn find_planar_rotation(graph: &Graph, limit: u64) -> Option<PlanarMap> {
    let n = graph.len();
    // Rotations at v: first neighbour fixed, the rest permuted.
    let mut perms: Vec<Vec<Vec<VertexIx>>> = Vec::with_capacity(n);
    for v in 0..n {
        let nb = graph.neighbors(v);
        if nb.len() <= 2 {
            perms.push(vec![nb.to_vec()]);
            continue;
        }
        let mut all = Vec::new();
        let mut rest: Vec<VertexIx> = nb[1..].to_vec();
        permutations(&mut rest, 0, &mut |p| {
            let mut r = vec![nb[0]];
            r.extend_from_slice(p);
            all.push(r);
        });
        perms.push(all);
    }
    let mut choice = vec![0usize; n];
    let mut tried = 0u64;
    loop {
        let rot: Vec<Vec<VertexIx>> = (0..n).map(|v| perms[v][choice[v]].clone()).collect();
        let mut g = graph.clone();
        for (v, r) in rot.into_iter().enumerate() {
            g.reorder_neighbors(v, r).ok()?;
        }
        let map = PlanarMap::new(g);
        if euler_validate(&map) {
            return Some(map);
        }
        tried += 1;
        if tried >= limit {
            return None;
        }
        let mut v = 0;
        loop {
            if v == n {
                return None;
            }
            choice[v] += 1;
            if choice[v] < perms[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

fn permutations(items: &mut Vec<VertexIx>, k: usize, f: &mut impl FnMut(&[VertexIx])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}
