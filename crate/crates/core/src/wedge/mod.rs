//! Triangular wedges, strips between two layers, bypasses and the routing
//! calculus built on them.
//!
//! The wedge has vertex set `N0 x N0` and edges between points differing by
//! `(1,0)`, `(0,1)` or `(1,-1)`. Layer `k` is the path `w(k,0), ..., w(k,k)`
//! with `w(k,i) = (i, k-i)`. A strip keeps the layers `m..=n`.

mod routing;
mod triple;

pub use routing::{
    pairwise_adjacent_paths, route_identity, route_involution, route_permutation, route_shift, route_swap_ends,
    verify_routing, AdjacentPaths, Routing, RoutingViolation,
};
pub use triple::{crossing_from_chord, crossing_from_diagonals, Part, TripleWedge, TwVertex, ZBypass};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use hashbrown::HashMap;

use crate::error::{bail, Result};
use crate::graph::{Graph, VertexIx};

/// A vertex of an augmented strip: a wedge point or an interior vertex of a
/// bypass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WVertex {
    Grid { layer: usize, index: usize },
    Bypass { id: usize, step: usize },
}

pub type WPath = Vec<WVertex>;

/// `w(k, i)`.
pub fn w(layer: usize, index: usize) -> WVertex {
    WVertex::Grid { layer, index }
}

/// The wedge restricted to layers `m..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WedgeStrip {
    pub m: usize,
    pub n: usize,
}

impl WedgeStrip {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m >= n {
            bail!(Contract, "strip needs m < n (got {m}, {n})");
        }
        Ok(WedgeStrip { m, n })
    }

    pub fn contains(&self, v: WVertex) -> bool {
        matches!(v, WVertex::Grid { layer, index } if layer >= self.m && layer <= self.n && index <= layer)
    }

    /// Coordinates of `w(k, i)`.
    pub fn coords(layer: usize, index: usize) -> (usize, usize) {
        (index, layer - index)
    }

    /// Neighbours of `w(k, i)` inside the strip.
    pub fn neighbors(&self, layer: usize, index: usize) -> Vec<WVertex> {
        let mut out = Vec::with_capacity(6);
        if index > 0 {
            out.push(w(layer, index - 1));
        }
        if index < layer {
            out.push(w(layer, index + 1));
        }
        if layer < self.n {
            out.push(w(layer + 1, index));
            out.push(w(layer + 1, index + 1));
        }
        if layer > self.m {
            if index < layer {
                out.push(w(layer - 1, index));
            }
            if index > 0 {
                out.push(w(layer - 1, index - 1));
            }
        }
        out
    }
}

/// A `w(a,0)`--`w(b,b)` path meeting the wedge only at its ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bypass {
    pub a: usize,
    pub b: usize,
    pub internal: Vec<WVertex>,
}

impl Bypass {
    /// The whole path from `w(a,0)` to `w(b,b)`.
    pub fn path(&self) -> WPath {
        let mut p = vec![w(self.a, 0)];
        p.extend_from_slice(&self.internal);
        p.push(w(self.b, self.b));
        p
    }

    /// Whether this is a bypass for the strip, i.e. both ends strictly
    /// between its bounding layers.
    pub fn spans(&self, strip: &WedgeStrip) -> bool {
        strip.m < self.a && self.a < strip.n && strip.m < self.b && self.b < strip.n
    }
}

/// The crossing predicate on endpoint layers.
pub fn crossing(p: (usize, usize), q: (usize, usize)) -> bool {
    (p.0 < q.0 && q.1 < p.1) || (p.0 > q.0 && q.1 > p.1)
}

/// A strip together with disjoint bypasses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedStrip {
    pub strip: WedgeStrip,
    pub bypasses: Vec<Bypass>,
}

impl AugmentedStrip {
    pub fn bare(strip: WedgeStrip) -> Self {
        AugmentedStrip { strip, bypasses: Vec::new() }
    }

    fn push_bypass(&mut self, a: usize, b: usize) -> usize {
        let id = self.bypasses.len();
        let internal = (0..3).map(|step| WVertex::Bypass { id, step }).collect();
        self.bypasses.push(Bypass { a, b, internal });
        self.strip.n = self.strip.n.max(a.max(b) + 1);
        id
    }

    /// Adds the crossing pair occupying layers `base+1, base+2`, unless an
    /// existing pair already does. Returns the two bypass indices.
    pub(crate) fn pair_at(&mut self, base: usize) -> Result<(usize, usize)> {
        let (lo, hi) = (base + 1, base + 2);
        let find = |s: &Self, a: usize, b: usize| s.bypasses.iter().position(|p| p.a == a && p.b == b);
        if let (Some(p), Some(q)) = (find(self, lo, hi), find(self, hi, lo)) {
            return Ok((p, q));
        }
        if self.bypasses.iter().any(|p| [lo, hi].contains(&p.a) || [lo, hi].contains(&p.b)) {
            bail!(Contract, "existing bypasses block the window at layer {base}");
        }
        let p = self.push_bypass(lo, hi);
        let q = self.push_bypass(hi, lo);
        self.strip.n = self.strip.n.max(base + 3);
        Ok((p, q))
    }

    /// Whether `v` is a vertex of the augmented strip.
    pub fn contains(&self, v: WVertex) -> bool {
        match v {
            WVertex::Grid { .. } => self.strip.contains(v),
            WVertex::Bypass { id, step } => id < self.bypasses.len() && step < self.bypasses[id].internal.len(),
        }
    }

    /// The augmented strip as a [`Graph`], with the index of every vertex.
    pub fn graph(&self) -> (Graph, HashMap<WVertex, VertexIx>) {
        let mut g = Graph::new();
        let mut ix = HashMap::new();
        for k in self.strip.m..=self.strip.n {
            for i in 0..=k {
                let v = g.add_vertex(format!("w{k}.{i}")).unwrap();
                ix.insert(w(k, i), v);
            }
        }
        for (id, p) in self.bypasses.iter().enumerate() {
            for step in 0..p.internal.len() {
                let v = g.add_vertex(format!("p{id}.{step}")).unwrap();
                ix.insert(WVertex::Bypass { id, step }, v);
            }
        }
        for k in self.strip.m..=self.strip.n {
            for i in 0..=k {
                let u = ix[&w(k, i)];
                for x in self.strip.neighbors(k, i) {
                    let v = ix[&x];
                    if u < v {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
        }
        for p in &self.bypasses {
            let path = p.path();
            for e in path.windows(2) {
                g.add_edge(ix[&e[0]], ix[&e[1]]).unwrap();
            }
        }
        (g, ix)
    }
}

/// Places `t` crossing pairs of bypasses in consecutive windows of three
/// layers starting at `strip.m`, growing the strip as needed. Pair `j` uses
/// layers `m+3j+1` and `m+3j+2`.
pub fn make_bypass_family(strip: WedgeStrip, t: usize) -> AugmentedStrip {
    let mut aug = AugmentedStrip::bare(strip);
    for j in 0..t {
        aug.pair_at(strip.m + 3 * j).expect("fresh strip has free windows");
    }
    aug
}
