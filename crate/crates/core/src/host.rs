//! Blocks made of two meshes, a centre and spokes, and the recursive host
//! graph obtained by gluing blocks into attachment cycles level by level.
//!
//! Host vertices are named by address. The base 4-cycle is `base/0` to
//! `base/3`. A block glued into registry cycle `c<k>.<i>` names its new
//! vertices `c<k>.<i>/inner/<mesh vertex>`, `c<k>.<i>/outer/<mesh vertex>`
//! and `c<k>.<i>/centre`; its boundary is identified with the cycle and
//! keeps the cycle's names.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Result};
use crate::graph::{Graph, VertexIx};
use crate::mesh::{build_mesh, Mesh};
use crate::planar::{FacialWalk, PlanarMap};

/// The block `M(n)`: an inner and an outer `(2n, n^2)`-mesh, a centre joined
/// to the length-`2n` cycle of the inner mesh, and `n` spokes between the
/// two perimeters.
///
/// Local indices: inner mesh vertices first, then outer mesh vertices
/// (shifted by the inner mesh size), then the centre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshBlock {
    pub n: usize,
    pub map: PlanarMap,
    pub inner: Mesh,
    pub outer: Mesh,
    pub centre: VertexIx,
    /// `(inner perimeter end, outer perimeter end)`, spoke `k` at inner
    /// perimeter index `k n`.
    pub spokes: Vec<(VertexIx, VertexIx)>,
    /// The length-`2n` cycle of the outer mesh, as the face the block is
    /// glued along.
    pub boundary: FacialWalk,
    pub inner_perimeter: Vec<VertexIx>,
    pub outer_perimeter: Vec<VertexIx>,
    /// Attachment cycle `t` lies between spokes `t` and `t+1`. Its walk
    /// starts with the `n+1` outer perimeter vertices, followed by the
    /// `n+1` inner perimeter vertices.
    pub attachment: Vec<FacialWalk>,
}

impl MeshBlock {
    /// Local index of inner mesh vertex `v`.
    pub fn inner_local(&self, v: VertexIx) -> VertexIx {
        v
    }

    /// Local index of outer mesh vertex `v`.
    pub fn outer_local(&self, v: VertexIx) -> VertexIx {
        self.inner.graph().len() + v
    }

    /// Number of vertices on the outer arc (and on the inner arc) of an
    /// attachment cycle.
    pub fn arc_len(&self) -> usize {
        self.n + 1
    }
}

/// Builds `M(n)` for `n >= 2`.
pub fn build_block(n: usize) -> Result<MeshBlock> {
    if n < 2 {
        bail!(Rejected, "blocks need n >= 2 (got {n})");
    }
    let inner = build_mesh(2 * n, n * n)?;
    let outer = build_mesh(2 * n, n * n)?;
    let ni = inner.graph().len();
    let no = outer.graph().len();
    let centre = ni + no;
    let sq = n * n;

    let mut g = Graph::with_capacity(centre + 1);
    for name in inner.graph().names() {
        g.add_vertex(format!("inner/{name}"))?;
    }
    for name in outer.graph().names() {
        g.add_vertex(format!("outer/{name}"))?;
    }
    g.add_vertex("centre")?;

    let mut rot: Vec<Vec<VertexIx>> = Vec::with_capacity(centre + 1);
    for v in 0..ni {
        rot.push(inner.map.rotation(v).to_vec());
    }
    for v in 0..no {
        rot.push(outer.map.rotation(v).iter().map(|&w| w + ni).collect());
    }
    rot.push((0..2 * n).map(|j| inner.a(j)).collect());
    // The hole of the inner mesh follows the last entry of each cycle
    // vertex's rotation, and so does the outer face of either mesh.
    for j in 0..2 * n {
        rot[inner.a(j)].push(centre);
    }
    let mut spokes = Vec::with_capacity(n);
    for k in 0..n {
        let i_end = inner.b(k * n);
        let o_end = ni + outer.b((sq - k * n) % sq);
        rot[i_end].push(o_end);
        rot[o_end].push(i_end);
        spokes.push((i_end, o_end));
    }
    let map = PlanarMap::from_index_rotation(g, &rot)?;
    let boundary = FacialWalk { vertices: outer.c1.vertices.iter().map(|&v| v + ni).collect(), outer: true };
    let inner_perimeter: Vec<VertexIx> = (0..sq).map(|i| inner.b(i)).collect();
    let outer_perimeter: Vec<VertexIx> = (0..sq).map(|i| ni + outer.b(i)).collect();

    let mut attachment = Vec::with_capacity(n);
    for t in 0..n {
        let k = (t + 1) % n;
        let (i_end, o_end) = spokes[k];
        let mut walk = map.face_of_dart(i_end, o_end)?;
        walk.rotate_left(1);
        if walk.len() != 2 * n + 2 || walk[n + 1] != spokes[t].0 {
            bail!(Structure, "attachment cycle {t} of M({n}) has an unexpected shape");
        }
        attachment.push(FacialWalk { vertices: walk, outer: false });
    }
    let mut map = map;
    map.outer = Some((boundary.vertices[0], boundary.vertices[1]));
    Ok(MeshBlock { n, map, inner, outer, centre, spokes, boundary, inner_perimeter, outer_perimeter, attachment })
}

/// A registry cycle `c<level>.<index>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleId {
    pub level: usize,
    pub index: u128,
}

impl CycleId {
    pub const BASE: CycleId = CycleId { level: 1, index: 0 };

    /// The attachment cycles of the block glued into this cycle.
    pub fn children(self) -> impl Iterator<Item = CycleId> {
        let n = self.level + 1;
        (0..n).map(move |t| CycleId { level: n, index: self.index * n as u128 + t as u128 })
    }

    /// The cycle whose block carries this one, and the attachment index.
    pub fn parent(self) -> Option<(CycleId, usize)> {
        if self.level <= 1 {
            return None;
        }
        let n = self.level as u128;
        Some((CycleId { level: self.level - 1, index: self.index / n }, (self.index % n) as usize))
    }

    /// `|C_level|`, the number of cycles on this level.
    pub fn count(level: usize) -> Option<u128> {
        (1..=level as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
    }
}

impl fmt::Display for CycleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}.{}", self.level, self.index)
    }
}

impl core::str::FromStr for CycleId {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed = s
            .strip_prefix('c')
            .and_then(|r| r.split_once('.'))
            .and_then(|(l, i)| Some(CycleId { level: l.parse().ok()?, index: i.parse().ok()? }));
        match parsed {
            Some(id) if id.level >= 1 => Ok(id),
            _ => Err(crate::Error::Structure(format!("bad cycle name {s:?}"))),
        }
    }
}

/// A block glued into the host: its local structure and where every local
/// vertex landed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub cycle: CycleId,
    pub block: Arc<MeshBlock>,
    pub host_of_local: Vec<VertexIx>,
}

impl Placement {
    pub fn inner(&self, v: VertexIx) -> VertexIx {
        self.host_of_local[self.block.inner_local(v)]
    }

    pub fn outer(&self, v: VertexIx) -> VertexIx {
        self.host_of_local[self.block.outer_local(v)]
    }

    pub fn centre(&self) -> VertexIx {
        self.host_of_local[self.block.centre]
    }
}

/// A truncation of the recursive host. Blocks sit on registry cycles of
/// levels below `level`; every cycle of `level` whose carrying block exists
/// is registered.
///
/// A full host has every block. A lazy host only has the blocks requested
/// through [`HostGraph::materialize`], which keeps large levels tractable.
#[derive(Debug, Clone)]
pub struct HostGraph {
    level: usize,
    lazy: bool,
    pub map: PlanarMap,
    cycles: BTreeMap<CycleId, Vec<VertexIx>>,
    placements: BTreeMap<CycleId, Placement>,
    blocks: BTreeMap<usize, Arc<MeshBlock>>,
}

impl HostGraph {
    /// `G(1)`: a 4-cycle whose one face is `c1.0`.
    pub fn base(lazy: bool) -> Self {
        let names = ["base/0", "base/1", "base/2", "base/3"];
        let rot: Vec<(&str, &[&str])> = vec![
            ("base/0", &["base/3", "base/1"][..]),
            ("base/1", &["base/0", "base/2"][..]),
            ("base/2", &["base/1", "base/3"][..]),
            ("base/3", &["base/2", "base/0"][..]),
        ];
        let mut map = PlanarMap::from_rotation(&names, &rot).expect("fixed 4-cycle");
        map.outer = Some((0, 3));
        let mut cycles = BTreeMap::new();
        cycles.insert(CycleId::BASE, vec![0, 1, 2, 3]);
        HostGraph { level: 1, lazy, map, cycles, placements: BTreeMap::new(), blocks: BTreeMap::new() }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_lazy(&self) -> bool {
        self.lazy
    }

    pub fn graph(&self) -> &Graph {
        &self.map.graph
    }

    /// The registered walk of a cycle, if its carrying block exists.
    pub fn cycle(&self, id: CycleId) -> Option<&[VertexIx]> {
        self.cycles.get(&id).map(|v| v.as_slice())
    }

    pub fn placement(&self, id: CycleId) -> Option<&Placement> {
        self.placements.get(&id)
    }

    pub fn placements(&self) -> impl Iterator<Item = &Placement> {
        self.placements.values()
    }

    /// The block `M(n)`, built once per host and shared.
    pub fn block(&mut self, n: usize) -> Result<Arc<MeshBlock>> {
        if let Some(b) = self.blocks.get(&n) {
            return Ok(b.clone());
        }
        let b = Arc::new(build_block(n)?);
        self.blocks.insert(n, b.clone());
        Ok(b)
    }

    /// Glues the block `M(k+1)` into cycle `id` of level `k < level`, unless
    /// it is there already, and registers its attachment cycles.
    pub fn materialize(&mut self, id: CycleId) -> Result<&Placement> {
        if id.level >= self.level {
            bail!(Contract, "{id} is on the top level {} and carries no block yet", self.level);
        }
        if !self.placements.contains_key(&id) {
            let Some(walk) = self.cycles.get(&id).cloned() else {
                bail!(Contract, "{id} is not present; materialize its parent first");
            };
            let block = self.block(id.level + 1)?;
            let prefix = id.to_string();
            let host_of_local = self
                .map
                .glue_into(&walk, &block.map, &block.boundary.vertices, 0, |name: &str| format!("{prefix}/{name}"))?;
            for (child, att) in id.children().zip(&block.attachment) {
                self.cycles.insert(child, att.vertices.iter().map(|&v| host_of_local[v]).collect());
            }
            self.placements.insert(id, Placement { cycle: id, block, host_of_local });
        }
        Ok(&self.placements[&id])
    }

    /// Moves to the next level. A full host glues a block into every cycle
    /// of the old top level; a lazy one only raises the level.
    pub fn extend(&mut self) -> Result<()> {
        let top: Vec<CycleId> = self.cycles.keys().copied().filter(|c| c.level == self.level).collect();
        self.level += 1;
        if !self.lazy {
            for id in top {
                self.materialize(id)?;
            }
        }
        Ok(())
    }

    /// The registered cycles of level `k` in index order. Cycles of
    /// different blocks are checked to be disjoint; neighbouring attachment
    /// cycles of one block share exactly the ends of their common spoke.
    pub fn attachment_cycles(&self, k: usize) -> Result<Vec<(CycleId, FacialWalk)>> {
        if k == 0 || k > self.level {
            bail!(Contract, "level {k} out of range 1..={}", self.level);
        }
        let mut owner: Vec<Option<CycleId>> = vec![None; self.graph().len()];
        let mut out = Vec::new();
        for (&id, walk) in self.cycles.range(CycleId { level: k, index: 0 }..CycleId { level: k + 1, index: 0 }) {
            for &v in walk {
                match owner[v].replace(id) {
                    Some(other) if !neighbouring_siblings(other, id) => {
                        bail!(Structure, "registry cycles {other} and {id} share {}", self.graph().name(v));
                    }
                    _ => {}
                }
            }
            out.push((id, FacialWalk { vertices: walk.clone(), outer: false }));
        }
        Ok(out)
    }

    /// Host vertex by address.
    pub fn find(&self, address: &str) -> Option<VertexIx> {
        self.graph().find(address)
    }

    pub fn address(&self, v: VertexIx) -> &str {
        self.graph().name(v)
    }
}

/// Attachment cycles `t` and `t+1 mod n` of the same block.
fn neighbouring_siblings(a: CycleId, b: CycleId) -> bool {
    match (a.parent(), b.parent()) {
        (Some((pa, ta)), Some((pb, tb))) if pa == pb => {
            let n = a.level;
            (ta + 1) % n == tb || (tb + 1) % n == ta
        }
        _ => false,
    }
}

/// Largest level [`build_host`] materializes in full.
pub const FULL_HOST_MAX_LEVEL: usize = 5;

/// `G(level)` with every block.
pub fn build_host(level: usize) -> Result<HostGraph> {
    if level == 0 {
        bail!(Contract, "host levels start at 1");
    }
    if level > FULL_HOST_MAX_LEVEL {
        bail!(Contract, "full hosts are limited to level {FULL_HOST_MAX_LEVEL}; use a lazy host");
    }
    let mut h = HostGraph::base(false);
    while h.level < level {
        h.extend()?;
    }
    Ok(h)
}

/// `G(level)` without blocks; see [`HostGraph::materialize`].
pub fn build_host_lazy(level: usize) -> Result<HostGraph> {
    if level == 0 {
        bail!(Contract, "host levels start at 1");
    }
    let mut h = HostGraph::base(true);
    h.level = level;
    Ok(h)
}

/// The host one level up, leaving `host` untouched.
pub fn extend_host(host: &HostGraph) -> Result<HostGraph> {
    let mut h = host.clone();
    h.extend()?;
    Ok(h)
}
