//! Simple undirected graphs over opaque string identifiers.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use hashbrown::HashMap;

use crate::error::{bail, Result};

/// Dense vertex index into a [`Graph`].
pub type VertexIx = usize;

/// A finite simple graph. Vertex ids are unique strings; neighbours are kept
/// in insertion order, which [`crate::PlanarMap`] reinterprets as a rotation.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexIx>,
    adj: Vec<Vec<VertexIx>>,
    edges: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Graph { names: Vec::with_capacity(n), index: HashMap::with_capacity(n), adj: Vec::with_capacity(n), edges: 0 }
    }

    /// Adds a vertex, failing if the id is already taken.
    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexIx> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',' || c == ':') {
            bail!(Structure, "invalid vertex id {name:?}");
        }
        if self.index.contains_key(&name) {
            bail!(Structure, "duplicate vertex {name}");
        }
        let ix = self.names.len();
        self.index.insert(name.clone(), ix);
        self.names.push(name);
        self.adj.push(Vec::new());
        Ok(ix)
    }

    /// Adds the edge `uv`. Loops and parallel edges are rejected.
    pub fn add_edge(&mut self, u: VertexIx, v: VertexIx) -> Result<()> {
        if u >= self.len() || v >= self.len() {
            bail!(Structure, "edge endpoint out of range");
        }
        if u == v {
            bail!(Structure, "loop at {}", self.names[u]);
        }
        if self.has_edge(u, v) {
            bail!(Structure, "parallel edge {} {}", self.names[u], self.names[v]);
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges += 1;
        Ok(())
    }

    pub fn add_edge_by_name(&mut self, u: &str, v: &str) -> Result<()> {
        let (Some(a), Some(b)) = (self.find(u), self.find(v)) else {
            bail!(Structure, "edge {u} {v} names an unknown vertex");
        };
        self.add_edge(a, b)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn name(&self, v: VertexIx) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<VertexIx> {
        self.index.get(name).copied()
    }

    pub fn neighbors(&self, v: VertexIx) -> &[VertexIx] {
        &self.adj[v]
    }

    /// All neighbour lists, indexed by vertex.
    pub fn adjacency(&self) -> &[Vec<VertexIx>] {
        &self.adj
    }

    pub fn degree(&self, v: VertexIx) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexIx, v: VertexIx) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].contains(&b)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexIx, VertexIx)> {
        let mut out = Vec::with_capacity(self.edges);
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Replaces the neighbour order of `v`. The new list must be a permutation
    /// of the old one.
    pub fn reorder_neighbors(&mut self, v: VertexIx, order: Vec<VertexIx>) -> Result<()> {
        let mut a = order.clone();
        let mut b = self.adj[v].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            bail!(Structure, "rotation at {} does not list its neighbours", self.names[v]);
        }
        self.adj[v] = order;
        Ok(())
    }

    pub(crate) fn adj_mut(&mut self, v: VertexIx) -> &mut Vec<VertexIx> {
        &mut self.adj[v]
    }

    pub(crate) fn bump_edges(&mut self, by: usize) {
        self.edges += by;
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexIx>> {
        let mut comp = alloc::vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = alloc::vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `keep`, vertices in the order given. Neighbour
    /// order is inherited, so rotations restrict correctly.
    pub fn induced(&self, keep: &[VertexIx]) -> Graph {
        let mut pos = HashMap::with_capacity(keep.len());
        let mut g = Graph::with_capacity(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            pos.insert(v, i);
            g.names.push(self.names[v].clone());
            g.index.insert(self.names[v].clone(), i);
        }
        for &v in keep {
            let nb: Vec<VertexIx> = self.adj[v].iter().filter_map(|w| pos.get(w).copied()).collect();
            g.edges += nb.len();
            g.adj.push(nb);
        }
        g.edges /= 2;
        g
    }

    /// Builds a graph from names and edges given by name.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Graph> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v.to_string())?;
        }
        for (u, v) in edges {
            g.add_edge_by_name(u, v)?;
        }
        Ok(g)
    }
}
