//! Embedding a finite planar map into the host as a topological minor.
//!
//! The guest is subdivided once per edge, its vertices enumerated so that
//! every prefix is connected, and the prefix graphs `H_n` are embedded one
//! vertex at a time. Each embedding is *good*: the loose ends of every face
//! of `H_n` land, in face order, on a registry cycle reserved for that face.
//! Raising the level pushes loose ends one block further out; adding a
//! vertex places it at the centre of the block glued into its face.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclic::order_relation;
use crate::error::{bail, Error, Result};
use crate::graph::{Graph, VertexIx};
use crate::host::{build_host_lazy, CycleId, HostGraph, Placement};
use crate::mesh::{route_linkage, Mesh};
use crate::planar::{euler_validate, trace_faces, FacialWalk, PlanarMap};
use crate::verify::{verify_topological_embedding, TopEmbedding, Violation};

/// A guest with every edge subdivided once. Original vertices keep their
/// indices `0..originals`; subdivision vertices follow in edge order.
#[derive(Debug, Clone)]
pub struct SubdividedGuest {
    pub map: PlanarMap,
    pub originals: usize,
    /// Guest edge `(u, v)`, `u < v`, of each subdivision vertex
    /// `originals + i`.
    pub parent: Vec<(VertexIx, VertexIx)>,
    pub of_edge: BTreeMap<(VertexIx, VertexIx), VertexIx>,
}

impl SubdividedGuest {
    pub fn is_original(&self, v: VertexIx) -> bool {
        v < self.originals
    }

    pub fn parent_of(&self, v: VertexIx) -> Option<(VertexIx, VertexIx)> {
        v.checked_sub(self.originals).map(|i| self.parent[i])
    }
}

/// Subdivides every edge of a connected guest, inheriting the rotation.
pub fn subdivide(guest: &PlanarMap) -> Result<SubdividedGuest> {
    let g = &guest.graph;
    if !g.is_connected() {
        bail!(Rejected, "subdivision needs a connected guest");
    }
    if !euler_validate(guest) {
        bail!(Rejected, "guest rotation is not planar");
    }
    let mut h = Graph::with_capacity(g.len() + g.edge_count());
    for name in g.names() {
        h.add_vertex(name.clone())?;
    }
    let mut parent = Vec::new();
    let mut of_edge = BTreeMap::new();
    for (u, v) in g.edges() {
        let e = if u < v { (u, v) } else { (v, u) };
        let mut name = format!("{}~{}", g.name(e.0), g.name(e.1));
        while h.find(&name).is_some() {
            name.push('\'');
        }
        let s = h.add_vertex(name)?;
        parent.push(e);
        of_edge.insert(e, s);
    }
    let sub = |u: VertexIx, v: VertexIx| of_edge[&if u < v { (u, v) } else { (v, u) }];
    let mut rot: Vec<Vec<VertexIx>> =
        (0..g.len()).map(|v| guest.rotation(v).iter().map(|&w| sub(v, w)).collect()).collect();
    for &(u, v) in &parent {
        rot.push(vec![u, v]);
    }
    let mut map = PlanarMap::from_index_rotation(h, &rot)?;
    map.outer = guest.outer.map(|(u, v)| (u, sub(u, v)));
    Ok(SubdividedGuest { map, originals: g.len(), parent, of_edge })
}

/// Breadth-first order from the vertex with the least name, neighbours
/// visited by name. Every prefix induces a connected subgraph.
pub fn connected_enumeration(guest: &Graph) -> Result<Vec<VertexIx>> {
    if guest.is_empty() {
        return Ok(Vec::new());
    }
    let start = (0..guest.len()).min_by_key(|&v| guest.name(v)).unwrap();
    let mut seen = vec![false; guest.len()];
    let mut order = Vec::with_capacity(guest.len());
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let mut nb: Vec<VertexIx> = guest.neighbors(v).iter().copied().filter(|&w| !seen[w]).collect();
        nb.sort_by_key(|&w| guest.name(w));
        for w in nb {
            seen[w] = true;
            queue.push_back(w);
        }
    }
    if order.len() != guest.len() {
        bail!(Rejected, "enumeration needs a connected guest");
    }
    Ok(order)
}

/// The prefix graph `H_n`: the first `n` enumerated originals and all their
/// neighbours, with the restricted rotation. Vertex indices are those of
/// the subdivided guest.
#[derive(Debug, Clone)]
pub struct Stage {
    pub n: usize,
    pub prefix: Vec<VertexIx>,
    /// Vertices of `H_n`, ascending; position `i` is vertex `i` of `map`.
    pub vertices: Vec<VertexIx>,
    pub map: PlanarMap,
    /// Subdivision vertices with only one neighbour in the prefix.
    pub loose: BTreeSet<VertexIx>,
    pub faces: Vec<FacialWalk>,
    /// Loose ends of each face in walk order.
    pub face_loose: Vec<Vec<VertexIx>>,
}

impl Stage {
    pub fn local(&self, v: VertexIx) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains(&self, v: VertexIx) -> bool {
        self.local(v).is_some()
    }

    /// Vertices of `H_n'`, the graph induced by the prefix.
    pub fn core_vertices(&self) -> impl Iterator<Item = VertexIx> + '_ {
        self.vertices.iter().copied().filter(|v| !self.loose.contains(v))
    }

    /// Edges of `H_n` as pairs of subdivided-guest vertices, `u < v`.
    pub fn edges(&self) -> Vec<(VertexIx, VertexIx)> {
        self.map
            .graph
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (u, v) = (self.vertices[a], self.vertices[b]);
                if u < v {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect()
    }

    pub fn loose_count(&self) -> usize {
        self.loose.len()
    }

    /// Index of the face whose walk contains the dart `u -> v`.
    pub fn face_with_dart(&self, u: VertexIx, v: VertexIx) -> Option<usize> {
        self.faces.iter().position(|f| {
            let w = &f.vertices;
            (0..w.len()).any(|i| w[i] == u && w[(i + 1) % w.len()] == v)
        })
    }

    /// The neighbour of loose end `l` inside the prefix.
    pub fn anchor(&self, l: VertexIx) -> VertexIx {
        self.vertices[self.map.graph.neighbors(self.local(l).unwrap())[0]]
    }
}

/// `H_n` for the first `n` vertices of `order`.
pub fn stage(sub: &SubdividedGuest, order: &[VertexIx], n: usize) -> Result<Stage> {
    if n == 0 || n > order.len() {
        bail!(Contract, "stage {n} out of range 1..={}", order.len());
    }
    let h = &sub.map.graph;
    let prefix = order[..n].to_vec();
    let mut in_prefix = vec![false; h.len()];
    for &v in &prefix {
        in_prefix[v] = true;
    }
    let mut members: BTreeSet<VertexIx> = prefix.iter().copied().collect();
    for &v in &prefix {
        members.extend(h.neighbors(v).iter().copied());
    }
    let vertices: Vec<VertexIx> = members.into_iter().collect();
    let loose: BTreeSet<VertexIx> = vertices
        .iter()
        .copied()
        .filter(|&v| !sub.is_original(v) && !h.neighbors(v).iter().all(|&w| in_prefix[w]))
        .collect();
    let mut map = PlanarMap::new(h.induced(&vertices));
    map.outer = None;
    let faces: Vec<FacialWalk> = trace_faces(&map)
        .into_iter()
        .map(|f| FacialWalk { vertices: f.vertices.iter().map(|&i| vertices[i]).collect(), outer: f.outer })
        .collect();
    let face_loose: Vec<Vec<VertexIx>> =
        faces.iter().map(|f| f.vertices.iter().copied().filter(|v| loose.contains(v)).collect()).collect();
    Ok(Stage { n, prefix, vertices, map, loose, faces, face_loose })
}

/// A good embedding of `H_n` into the level-`m` host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodEmbedding {
    pub m: usize,
    pub vmap: BTreeMap<VertexIx, VertexIx>,
    /// Path of each edge `(u, v)`, `u < v`, from the image of `u` to the
    /// image of `v`.
    pub paths: BTreeMap<(VertexIx, VertexIx), Vec<VertexIx>>,
    /// Registry cycle of each face of the stage, aligned with
    /// `Stage::faces`. Cycles of faces without loose ends are never
    /// materialized.
    pub face_map: Vec<CycleId>,
}

impl GoodEmbedding {
    /// The path of edge `{a, b}` running from the image of `a`.
    pub fn path_from(&self, a: VertexIx, b: VertexIx) -> Option<Vec<VertexIx>> {
        if a < b {
            self.paths.get(&(a, b)).cloned()
        } else {
            self.paths.get(&(b, a)).map(|p| p.iter().rev().copied().collect())
        }
    }

    fn set_path(&mut self, a: VertexIx, b: VertexIx, mut path: Vec<VertexIx>) {
        if a < b {
            self.paths.insert((a, b), path);
        } else {
            path.reverse();
            self.paths.insert((b, a), path);
        }
    }

    /// The embedding in verifier form, with the stage's local indices.
    pub fn to_top(&self, stage: &Stage) -> TopEmbedding {
        let vmap = stage.vertices.iter().map(|v| self.vmap.get(v).copied().unwrap_or(usize::MAX)).collect();
        let emap = stage
            .edges()
            .into_iter()
            .filter_map(|(u, v)| {
                let p = self.paths.get(&(u, v))?.clone();
                Some(((stage.local(u).unwrap(), stage.local(v).unwrap()), p))
            })
            .collect();
        TopEmbedding { vmap, emap }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodnessViolation {
    Embedding(Violation),
    FaceMapSize {
        faces: usize,
        found: usize,
    },
    FaceMapNotInjective {
        a: usize,
        b: usize,
    },
    WrongLevel {
        face: usize,
    },
    /// A face with loose ends maps to a cycle that is not in the host.
    MissingCycle {
        face: usize,
    },
    LooseEndOffCycle {
        face: usize,
        vertex: VertexIx,
    },
    OrderNotPreserved {
        face: usize,
    },
}

/// Checks goodness of `g` for `stage` in `host`: a valid embedding, an
/// injective face map into cycles of level `g.m`, and loose ends of every
/// face mapped order-preservingly onto its cycle.
pub fn check_goodness(host: &HostGraph, stage: &Stage, g: &GoodEmbedding) -> Vec<GoodnessViolation> {
    let mut out: Vec<GoodnessViolation> =
        verify_topological_embedding(&stage.map.graph, host.graph(), &g.to_top(stage))
            .into_iter()
            .map(GoodnessViolation::Embedding)
            .collect();
    if g.face_map.len() != stage.faces.len() {
        out.push(GoodnessViolation::FaceMapSize { faces: stage.faces.len(), found: g.face_map.len() });
        return out;
    }
    let mut first: BTreeMap<CycleId, usize> = BTreeMap::new();
    for (f, &c) in g.face_map.iter().enumerate() {
        if let Some(&a) = first.get(&c) {
            out.push(GoodnessViolation::FaceMapNotInjective { a, b: f });
        }
        first.entry(c).or_insert(f);
        if c.level != g.m {
            out.push(GoodnessViolation::WrongLevel { face: f });
        }
    }
    for (f, loose) in stage.face_loose.iter().enumerate() {
        if loose.is_empty() {
            continue;
        }
        let Some(walk) = host.cycle(g.face_map[f]) else {
            out.push(GoodnessViolation::MissingCycle { face: f });
            continue;
        };
        let mut pairs = Vec::with_capacity(loose.len());
        for &l in loose {
            match g.vmap.get(&l) {
                Some(&x) if walk.contains(&x) => pairs.push((l, x)),
                _ => out.push(GoodnessViolation::LooseEndOffCycle { face: f, vertex: l }),
            }
        }
        if pairs.len() == loose.len() {
            let ok = order_relation(&pairs, &stage.faces[f].vertices, walk)
                .map(|r| r.allows_preserving(pairs.len()))
                .unwrap_or(false);
            if !ok {
                out.push(GoodnessViolation::OrderNotPreserved { face: f });
            }
        }
    }
    out
}

/// True iff `next` agrees with `prev` on `H_n'` of `prev_stage`: the same
/// image for each of its vertices and the same path for each of its edges.
pub fn agrees_on_core(prev_stage: &Stage, prev: &GoodEmbedding, next: &GoodEmbedding) -> bool {
    let core: BTreeSet<VertexIx> = prev_stage.core_vertices().collect();
    core.iter().all(|v| prev.vmap.contains_key(v) && prev.vmap.get(v) == next.vmap.get(v))
        && prev_stage
            .edges()
            .into_iter()
            .filter(|(u, v)| core.contains(u) && core.contains(v))
            .all(|e| prev.paths.contains_key(&e) && prev.paths.get(&e) == next.paths.get(&e))
}

fn explain(e: Error, mesh: &Mesh, pairs: &[(VertexIx, VertexIx)]) -> Error {
    let idx: Vec<(Option<usize>, Option<usize>)> =
        pairs.iter().map(|&(a, b)| (mesh.a_index(a), mesh.b_index(b))).collect();
    Error::Routing(format!("{e}; pairs (c1, c2) {idx:?}"))
}

fn child(c: CycleId, t: usize) -> CycleId {
    c.children().nth(t).expect("child index below level + 1")
}

fn placed(host: &mut HostGraph, c: CycleId) -> Result<Placement> {
    host.materialize(c).cloned()
}

/// Routes the loose ends `loose` of one face from the boundary of the
/// block at `p` through its outer mesh to the outer perimeter indices
/// `slots`, extending their edge paths in `next`.
fn push_outward(
    p: &Placement,
    stage: &Stage,
    g: &GoodEmbedding,
    loose: &[VertexIx],
    slots: &[usize],
    next: &mut GoodEmbedding,
) -> Result<()> {
    let block = &p.block;
    let ni = block.inner.graph().len();
    let mut pairs = Vec::with_capacity(loose.len());
    for (&l, &s) in loose.iter().zip(slots) {
        let x = g.vmap[&l];
        let Some(&local) = block.boundary.vertices.iter().find(|&&b| p.host_of_local[b] == x) else {
            bail!(Contract, "loose end image is not on the boundary of {}", p.cycle);
        };
        pairs.push((local - ni, block.outer.b(s)));
    }
    let link = route_linkage(&block.outer, &pairs).map_err(|e| explain(e, &block.outer, &pairs))?;
    let by_source: BTreeMap<VertexIx, &Vec<VertexIx>> = link.pairs.iter().map(|pr| pr.0).zip(&link.paths).collect();
    for (&l, pr) in loose.iter().zip(&pairs) {
        let u = stage.anchor(l);
        let mut full = g.path_from(u, l).expect("loose end has a path");
        full.extend(by_source[&pr.0][1..].iter().map(|&v| p.outer(v)));
        next.vmap.insert(l, *full.last().unwrap());
        next.set_path(u, l, full);
    }
    Ok(())
}

/// Lifts face `f`, not touched by a new vertex, one level: its loose ends
/// move to the outer arc of attachment cycle 0 of the block on its cycle.
fn lift_face(
    host: &mut HostGraph,
    stage: &Stage,
    g: &GoodEmbedding,
    f: usize,
    next: &mut GoodEmbedding,
) -> Result<CycleId> {
    let c = g.face_map[f];
    let target = child(c, 0);
    let loose = &stage.face_loose[f];
    if loose.is_empty() {
        return Ok(target);
    }
    let p = placed(host, c)?;
    let walk = host.cycle(c).expect("materialized cycle").to_vec();
    let mut ordered: Vec<(usize, VertexIx)> =
        loose.iter().map(|&l| (walk.iter().position(|&x| x == g.vmap[&l]).unwrap_or(usize::MAX), l)).collect();
    ordered.sort_unstable();
    let ordered: Vec<VertexIx> = ordered.into_iter().map(|(_, l)| l).collect();
    let nb = p.block.n;
    let slots: Vec<usize> = (0..ordered.len()).map(|j| nb * nb - nb + j).collect();
    push_outward(&p, stage, g, &ordered, &slots, next)?;
    Ok(target)
}

/// A good embedding of `H_1` in a fresh lazy host: `v_1` at the centre of
/// a block `M(m0)`, `m0 = max(2, d)`, its `d` loose ends on the inner arc of
/// attachment cycle 0 in face order.
pub fn base_embed(stage: &Stage) -> Result<(HostGraph, GoodEmbedding)> {
    if stage.n != 1 || stage.faces.len() != 1 {
        bail!(Contract, "base_embed takes the first stage of a vertex with neighbours");
    }
    let v = stage.prefix[0];
    let loose = &stage.face_loose[0];
    let d = loose.len();
    let m0 = d.max(2);
    let mut host = build_host_lazy(m0)?;
    let mut id = CycleId::BASE;
    while id.level + 1 < m0 {
        host.materialize(id)?;
        id = child(id, 0);
    }
    let p = placed(&mut host, id)?;
    let inner = &p.block.inner;
    let pairs: Vec<(VertexIx, VertexIx)> = (0..d).map(|s| (inner.a(s), inner.b(s))).collect();
    let link = route_linkage(inner, &pairs).map_err(|e| explain(e, inner, &pairs))?;
    let z = p.centre();
    let mut g = GoodEmbedding { m: m0, vmap: BTreeMap::new(), paths: BTreeMap::new(), face_map: vec![child(id, 0)] };
    g.vmap.insert(v, z);
    let by_source: BTreeMap<VertexIx, &Vec<VertexIx>> = link.pairs.iter().map(|pr| pr.0).zip(&link.paths).collect();
    for (&l, pr) in loose.iter().zip(&pairs) {
        let mut path = vec![z];
        path.extend(by_source[&pr.0].iter().map(|&x| p.inner(x)));
        g.vmap.insert(l, *path.last().unwrap());
        g.set_path(v, l, path);
    }
    Ok((host, g))
}

/// Raises a good embedding of `stage` from level `m` to `m + 1`, keeping
/// `H_n'` fixed.
pub fn level_up(host: &mut HostGraph, stage: &Stage, g: &GoodEmbedding) -> Result<GoodEmbedding> {
    if stage.loose_count() > g.m {
        bail!(Contract, "{} loose ends exceed level {}", stage.loose_count(), g.m);
    }
    if host.level() != g.m {
        bail!(Contract, "host level {} differs from embedding level {}", host.level(), g.m);
    }
    host.extend()?;
    let mut next = g.clone();
    next.m += 1;
    for f in 0..stage.faces.len() {
        next.face_map[f] = lift_face(host, stage, g, f, &mut next)?;
    }
    Ok(next)
}

/// Embeds `H_{n+1}` at level `m + 1`, agreeing with `g` on `H_n'`. The new
/// vertex goes to the centre of the block on the cycle of its face `F_0`.
///
/// Incident loose end number `q` (in face order) is pushed to the outer end
/// of spoke `-q mod n` and continues across it; the loose ends of `F_0`
/// following it land on the outer arc of attachment cycle `n - q - 1`. The
/// new loose ends that follow it in the rotation at the new vertex land on
/// the inner arc of the attachment cycle that receives the face they
/// border.
pub fn add_vertex(host: &mut HostGraph, prev: &Stage, next_stage: &Stage, g: &GoodEmbedding) -> Result<GoodEmbedding> {
    if next_stage.n != prev.n + 1 || next_stage.prefix[..prev.n] != prev.prefix[..] {
        bail!(Contract, "stages are not consecutive");
    }
    if host.level() != g.m {
        bail!(Contract, "host level {} differs from embedding level {}", host.level(), g.m);
    }
    let m = g.m;
    let v = next_stage.prefix[prev.n];
    let around: Vec<VertexIx> =
        next_stage.map.rotation(next_stage.local(v).unwrap()).iter().map(|&i| next_stage.vertices[i]).collect();
    let incident: BTreeSet<VertexIx> = around.iter().copied().filter(|x| prev.loose.contains(x)).collect();
    let Some(&first) = incident.iter().next() else {
        bail!(Contract, "the new vertex has no loose end in the previous stage");
    };
    let f0 = prev.face_loose.iter().position(|l| l.contains(&first)).expect("loose end has a face");
    if !incident.iter().all(|l| prev.face_loose[f0].contains(l)) {
        bail!(Contract, "loose ends of the new vertex lie in different faces");
    }
    if prev.face_loose[f0].len() > m || next_stage.loose_count() > m || around.len() > 2 * m {
        bail!(Contract, "capacity exceeded at level {m}; raise the level first");
    }
    host.extend()?;
    let mut next = GoodEmbedding { m: m + 1, vmap: g.vmap.clone(), paths: g.paths.clone(), face_map: Vec::new() };
    let mut face_map: Vec<Option<CycleId>> = vec![None; next_stage.faces.len()];
    for f in 0..prev.faces.len() {
        if f == f0 {
            continue;
        }
        let c = lift_face(host, prev, g, f, &mut next)?;
        let w = &prev.faces[f].vertices;
        let Some(nf) = next_stage.face_with_dart(w[0], w[1 % w.len()]) else {
            bail!(Structure, "face {f} vanished when adding a vertex outside it");
        };
        face_map[nf] = Some(c);
    }

    let c0 = g.face_map[f0];
    let p = placed(host, c0)?;
    let block = p.block.clone();
    let nb = block.n;
    let mut lf = prev.face_loose[f0].clone();
    let s = lf.iter().position(|l| incident.contains(l)).unwrap();
    lf.rotate_left(s);
    let mut q_of: BTreeMap<VertexIx, usize> = BTreeMap::new();
    let mut slots = Vec::with_capacity(lf.len());
    let mut offset = 0;
    for &l in &lf {
        if incident.contains(&l) {
            offset = 0;
            let q = q_of.len();
            q_of.insert(l, q);
            slots.push(q * nb);
        } else {
            offset += 1;
            slots.push((q_of.len() - 1) * nb + offset);
        }
    }
    let r = q_of.len();
    push_outward(&p, prev, g, &lf, &slots, &mut next)?;
    let spoke_of = |q: usize| (nb - q) % nb;
    for (&l, &q) in &q_of {
        let (foot, end) = block.spokes[spoke_of(q)];
        let u = prev.anchor(l);
        let mut path = next.path_from(u, l).unwrap();
        if *path.last().unwrap() != p.host_of_local[end] {
            bail!(Structure, "incident loose end missed its spoke");
        }
        path.push(p.host_of_local[foot]);
        next.vmap.insert(l, p.host_of_local[foot]);
        next.set_path(u, l, path);
    }

    let mut ring = around.clone();
    let start = ring.iter().position(|x| q_of.get(x) == Some(&0)).unwrap();
    ring.rotate_left(start);
    let mut eta: Vec<(usize, VertexIx)> = Vec::with_capacity(ring.len());
    let (mut cur, mut offset) = (0, 0);
    for &x in &ring {
        if let Some(&q) = q_of.get(&x) {
            cur = q;
            offset = 0;
            eta.push((spoke_of(q) * nb, x));
        } else {
            offset += 1;
            let t = if cur == 0 { nb - r } else { nb - cur };
            if offset >= nb {
                bail!(Contract, "too many new loose ends between two incident ones");
            }
            eta.push((t * nb + offset, x));
        }
    }
    eta.sort_unstable();
    let inner = &block.inner;
    let pairs: Vec<(VertexIx, VertexIx)> =
        eta.iter().enumerate().map(|(i, &(b, _))| (inner.a(i), inner.b(b))).collect();
    let link = route_linkage(inner, &pairs).map_err(|e| explain(e, inner, &pairs))?;
    let by_source: BTreeMap<VertexIx, &Vec<VertexIx>> = link.pairs.iter().map(|pr| pr.0).zip(&link.paths).collect();
    let z = p.centre();
    next.vmap.insert(v, z);
    for (&(_, x), pr) in eta.iter().zip(&pairs) {
        let mut path = vec![z];
        path.extend(by_source[&pr.0].iter().map(|&y| p.inner(y)));
        let end = *path.last().unwrap();
        if q_of.contains_key(&x) && next.vmap[&x] != end {
            bail!(Structure, "inner linkage missed a spoke foot");
        }
        next.vmap.insert(x, end);
        next.set_path(v, x, path);
    }

    for (&l, &q) in &q_of {
        let Some(nf) = next_stage.face_with_dart(v, l) else {
            bail!(Structure, "no face follows the new vertex into a loose end");
        };
        if face_map[nf].replace(child(c0, (nb - q - 1) % nb)).is_some() {
            bail!(Structure, "face {nf} of the new stage assigned twice");
        }
    }
    next.face_map = face_map
        .into_iter()
        .enumerate()
        .map(|(f, c)| c.ok_or_else(|| Error::Structure(format!("face {f} of the new stage has no cycle"))))
        .collect::<Result<_>>()?;
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Base,
    LevelUp,
    AddVertex,
}

/// One pipeline step, with the goodness report taken right after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub kind: StepKind,
    /// Prefix length of the stage embedded after the step.
    pub n: usize,
    pub level: usize,
    pub loose_ends: usize,
    pub violations: Vec<GoodnessViolation>,
    /// Agreement with the previous embedding on the previous `H_n'`.
    pub agrees: bool,
}

/// A connected guest embedded into its own lazy host.
#[derive(Debug, Clone)]
pub struct ComponentEmbedding {
    /// Guest vertices of the component, ascending; position `i` is vertex
    /// `i` of `embedding`.
    pub vertices: Vec<VertexIx>,
    pub host: HostGraph,
    pub embedding: TopEmbedding,
    pub steps: Vec<StepRecord>,
}

fn record(
    kind: StepKind,
    host: &HostGraph,
    prev: Option<(&Stage, &GoodEmbedding)>,
    stage: &Stage,
    g: &GoodEmbedding,
    check: bool,
) -> Result<StepRecord> {
    let (violations, agrees) = if check {
        (check_goodness(host, stage, g), prev.is_none_or(|(s, pg)| agrees_on_core(s, pg, g)))
    } else {
        (Vec::new(), true)
    };
    if let Some(v) = violations.first() {
        return Err(Error::Routing(format!("goodness lost after {kind:?} at n = {}: {v:?}", stage.n)));
    }
    if !agrees {
        return Err(Error::Routing(format!("{kind:?} at n = {} moved part of the earlier embedding", stage.n)));
    }
    Ok(StepRecord { kind, n: stage.n, level: g.m, loose_ends: stage.loose_count(), violations, agrees })
}

/// Embeds a connected guest. With `check`, goodness and agreement are
/// verified after every step and a failure aborts with an error.
pub fn embed_connected(guest: &PlanarMap, check: bool) -> Result<ComponentEmbedding> {
    let vertices: Vec<VertexIx> = (0..guest.graph.len()).collect();
    if guest.graph.len() == 1 {
        let host = build_host_lazy(1)?;
        let embedding = TopEmbedding { vmap: vec![0], emap: Vec::new() };
        return Ok(ComponentEmbedding { vertices, host, embedding, steps: Vec::new() });
    }
    let sub = subdivide(guest)?;
    let order = connected_enumeration(&guest.graph)?;
    let mut st = stage(&sub, &order, 1)?;
    let (mut host, mut g) = base_embed(&st)?;
    let mut steps = vec![record(StepKind::Base, &host, None, &st, &g, check)?];
    for n in 1..order.len() {
        let nxt = stage(&sub, &order, n + 1)?;
        let deg = guest.graph.degree(order[n]);
        while g.m < st.loose_count().max(nxt.loose_count()).max(deg.div_ceil(2)) {
            let up = level_up(&mut host, &st, &g)?;
            steps.push(record(StepKind::LevelUp, &host, Some((&st, &g)), &st, &up, check)?);
            g = up;
        }
        let added = add_vertex(&mut host, &st, &nxt, &g)?;
        steps.push(record(StepKind::AddVertex, &host, Some((&st, &g)), &nxt, &added, check)?);
        g = added;
        st = nxt;
    }
    let vmap: Vec<VertexIx> = vertices.iter().map(|v| g.vmap[v]).collect();
    let mut emap = Vec::with_capacity(guest.graph.edge_count());
    for (u, w) in guest.graph.edges() {
        let s = sub.of_edge[&if u < w { (u, w) } else { (w, u) }];
        let mut path = g.path_from(u, s).expect("edge half embedded");
        path.extend(g.path_from(s, w).expect("edge half embedded").into_iter().skip(1));
        emap.push(((u, w), path));
    }
    Ok(ComponentEmbedding { vertices, host, embedding: TopEmbedding { vmap, emap }, steps })
}

/// A guest embedded component by component, each into its own host copy.
#[derive(Debug, Clone)]
pub struct GuestEmbedding {
    pub components: Vec<ComponentEmbedding>,
    pub guest_len: usize,
}

impl GuestEmbedding {
    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        for c in &self.components {
            out.push(acc);
            acc += c.host.graph().len();
        }
        out
    }

    /// The disjoint union of the component hosts. With more than one
    /// component, addresses get the prefix `<component>@`.
    pub fn host_map(&self) -> Result<PlanarMap> {
        if let [only] = &self.components[..] {
            return Ok(only.host.map.clone());
        }
        let offsets = self.offsets();
        let total = offsets.last().copied().unwrap_or(0) + self.components.last().map_or(0, |c| c.host.graph().len());
        let mut g = Graph::with_capacity(total);
        let mut rot = Vec::with_capacity(total);
        for (i, (c, &off)) in self.components.iter().zip(&offsets).enumerate() {
            for (v, name) in c.host.graph().names().iter().enumerate() {
                g.add_vertex(format!("{i}@{name}"))?;
                rot.push(c.host.map.rotation(v).iter().map(|&w| w + off).collect::<Vec<_>>());
            }
        }
        PlanarMap::from_index_rotation(g, &rot)
    }

    /// The guest embedding into [`GuestEmbedding::host_map`].
    pub fn embedding(&self) -> TopEmbedding {
        let offsets = self.offsets();
        let mut vmap = vec![usize::MAX; self.guest_len];
        let mut emap = Vec::new();
        for (c, &off) in self.components.iter().zip(&offsets) {
            for (i, &v) in c.vertices.iter().enumerate() {
                vmap[v] = c.embedding.vmap[i] + off;
            }
            for ((a, b), p) in &c.embedding.emap {
                emap.push(((c.vertices[*a], c.vertices[*b]), p.iter().map(|&x| x + off).collect()));
            }
        }
        TopEmbedding { vmap, emap }
    }

    /// Host level reached by each component.
    pub fn levels(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.host.level()).collect()
    }

    pub fn steps(&self) -> impl Iterator<Item = &StepRecord> {
        self.components.iter().flat_map(|c| c.steps.iter())
    }
}

/// Embeds a planar guest, one host copy per connected component.
pub fn embed(guest: &PlanarMap) -> Result<GuestEmbedding> {
    embed_with(guest, false)
}

/// [`embed`] with goodness and agreement checked after every step.
pub fn embed_with(guest: &PlanarMap, check: bool) -> Result<GuestEmbedding> {
    if !euler_validate(guest) {
        bail!(Rejected, "guest rotation is not planar");
    }
    let mut comps = guest.graph.components();
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort_unstable();
    let mut components = Vec::with_capacity(comps.len());
    for comp in comps {
        let map = PlanarMap::new(guest.graph.induced(&comp));
        let mut e = embed_connected(&map, check)?;
        e.vertices = comp;
        components.push(e);
    }
    Ok(GuestEmbedding { components, guest_len: guest.graph.len() })
}
