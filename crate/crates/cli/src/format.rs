//! The line-based text format shared by every object the tools read or write.
//!
//! ```text
//! # comment
//! level: <L>                     host level
//! v <id>                         vertex
//! e <id> <id>                    edge
//! r <id>: <id>,<id>,...          anticlockwise rotation at a vertex
//! outer: <face-index>            outer face, in face-tracing order
//! cycle <name>: <id>,<id>,...    named vertex cycle (c1/c2 of a mesh, registry cycles of a host)
//! branch <name>: <id>,<id>,...   branch set of a minor witness
//! map <guest> <host>             image of a guest vertex
//! path <a> <b>: <id>,<id>,...    path from a to b (guest edge or routed pair)
//! ```
//!
//! Ids are non-empty and contain no whitespace, `,`, `:` or `#`. Records may
//! appear in any order; records of one kind keep their relative order, and
//! [`Document::serialize`] writes the kinds in the order listed above.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use upg_core::graph::VertexIx;
use upg_core::planar::PlanarMap;
use upg_core::verify::TopEmbedding;
use upg_core::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, FormatError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Invalid(msg.into()))
}

/// A named vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Named {
    pub name: String,
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRecord {
    pub from: String,
    pub to: String,
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub level: Option<usize>,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub rotation: Vec<Named>,
    pub outer: Option<usize>,
    pub cycles: Vec<Named>,
    pub branches: Vec<Named>,
    pub map: Vec<(String, String)>,
    pub paths: Vec<PathRecord>,
}

pub fn is_id(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, ',' | ':' | '#'))
}

fn id(line: usize, s: &str) -> Result<String> {
    if is_id(s) {
        Ok(s.to_string())
    } else {
        Err(FormatError::Syntax { line, msg: format!("bad id {s:?}") })
    }
}

fn list(line: usize, s: &str) -> Result<Vec<String>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| id(line, x.trim())).collect()
}

fn number(line: usize, s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| FormatError::Syntax { line, msg: format!("bad number {:?}", s.trim()) })
}

fn write_list(out: &mut String, ids: &[String]) {
    out.push_str(&ids.join(","));
    out.push('\n');
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let mut doc = Document::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let syntax = |msg: &str| FormatError::Syntax { line, msg: format!("{msg}: {t:?}") };
            let (head, tail) = match t.split_once(':') {
                Some((h, rest)) => (h.trim(), Some(rest)),
                None => (t, None),
            };
            let words: Vec<&str> = head.split_whitespace().collect();
            match (words.as_slice(), tail) {
                (["level"], Some(rest)) => set_once(&mut doc.level, number(line, rest)?, line, "level")?,
                (["outer"], Some(rest)) => set_once(&mut doc.outer, number(line, rest)?, line, "outer")?,
                (["v", a], None) => doc.vertices.push(id(line, a)?),
                (["e", a, b], None) => doc.edges.push((id(line, a)?, id(line, b)?)),
                (["map", a, b], None) => doc.map.push((id(line, a)?, id(line, b)?)),
                (["r", a], Some(rest)) => doc.rotation.push(Named { name: id(line, a)?, ids: list(line, rest)? }),
                (["cycle", a], Some(rest)) => doc.cycles.push(Named { name: id(line, a)?, ids: list(line, rest)? }),
                (["branch", a], Some(rest)) => doc.branches.push(Named { name: id(line, a)?, ids: list(line, rest)? }),
                (["path", a, b], Some(rest)) => {
                    doc.paths.push(PathRecord { from: id(line, a)?, to: id(line, b)?, ids: list(line, rest)? })
                }
                _ => return Err(syntax("unrecognised record")),
            }
        }
        Ok(doc)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if let Some(l) = self.level {
            writeln!(out, "level: {l}").unwrap();
        }
        for v in &self.vertices {
            writeln!(out, "v {v}").unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(out, "e {a} {b}").unwrap();
        }
        for r in &self.rotation {
            write!(out, "r {}: ", r.name).unwrap();
            write_list(&mut out, &r.ids);
        }
        if let Some(o) = self.outer {
            writeln!(out, "outer: {o}").unwrap();
        }
        for c in &self.cycles {
            write!(out, "cycle {}: ", c.name).unwrap();
            write_list(&mut out, &c.ids);
        }
        for b in &self.branches {
            write!(out, "branch {}: ", b.name).unwrap();
            write_list(&mut out, &b.ids);
        }
        for (g, h) in &self.map {
            writeln!(out, "map {g} {h}").unwrap();
        }
        for p in &self.paths {
            write!(out, "path {} {}: ", p.from, p.to).unwrap();
            write_list(&mut out, &p.ids);
        }
        out
    }
}

fn set_once(slot: &mut Option<usize>, value: usize, line: usize, what: &str) -> Result<()> {
    if slot.replace(value).is_some() {
        return Err(FormatError::Syntax { line, msg: format!("second {what} record") });
    }
    Ok(())
}

/// Index of `name` in `g`, or `usize::MAX` so that the checkers report it.
pub fn index_or_unknown(g: &Graph, name: &str) -> VertexIx {
    g.find(name).unwrap_or(usize::MAX)
}

fn names(g: &Graph, ids: &[VertexIx]) -> Vec<String> {
    ids.iter().map(|&v| g.name(v).to_string()).collect()
}

impl Document {
    pub fn from_graph(g: &Graph) -> Document {
        Document {
            vertices: g.names().to_vec(),
            edges: g.edges().into_iter().map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string())).collect(),
            ..Document::default()
        }
    }

    /// Vertices, edges, the rotation of every non-isolated vertex and the
    /// outer face if one is designated.
    pub fn from_map(map: &PlanarMap) -> Document {
        let g = &map.graph;
        let mut doc = Document::from_graph(g);
        doc.rotation = (0..g.len())
            .filter(|&v| g.degree(v) > 0)
            .map(|v| Named { name: g.name(v).to_string(), ids: names(g, map.rotation(v)) })
            .collect();
        doc.outer = map.outer_face_index();
        doc
    }

    pub fn has_graph(&self) -> bool {
        !self.vertices.is_empty()
    }

    pub fn graph(&self) -> Result<Graph> {
        let mut g = Graph::with_capacity(self.vertices.len());
        for v in &self.vertices {
            g.add_vertex(v.as_str()).or_else(|e| invalid(format!("vertex {v}: {e}")))?;
        }
        for (a, b) in &self.edges {
            g.add_edge_by_name(a, b).or_else(|e| invalid(format!("edge {a} {b}: {e}")))?;
        }
        Ok(g)
    }

    /// The planar map given by the `r` records. Vertices come from the `v`
    /// records, or from the `r` records when there are none; `e` records, if
    /// present, must list exactly the edges of the rotation system.
    pub fn planar_map(&self) -> Result<PlanarMap> {
        if self.rotation.is_empty() && !self.edges.is_empty() {
            return invalid("no rotation records");
        }
        let mut seen = HashSet::new();
        for r in &self.rotation {
            if !seen.insert(r.name.as_str()) {
                return invalid(format!("second rotation for {}", r.name));
            }
        }
        let vertices: Vec<&str> = if self.vertices.is_empty() {
            self.rotation.iter().map(|r| r.name.as_str()).collect()
        } else {
            self.vertices.iter().map(String::as_str).collect()
        };
        let lists: Vec<Vec<&str>> = self.rotation.iter().map(|r| r.ids.iter().map(String::as_str).collect()).collect();
        let rot: Vec<(&str, &[&str])> =
            self.rotation.iter().zip(&lists).map(|(r, l)| (r.name.as_str(), l.as_slice())).collect();
        let mut map = PlanarMap::from_rotation(&vertices, &rot).or_else(|e| invalid(e.to_string()))?;
        if !self.edges.is_empty() {
            let given = self.graph()?;
            let norm = |g: &Graph| -> HashSet<(String, String)> {
                g.edges()
                    .into_iter()
                    .map(|(u, v)| {
                        let (a, b) = (g.name(u).to_string(), g.name(v).to_string());
                        if a < b {
                            (a, b)
                        } else {
                            (b, a)
                        }
                    })
                    .collect()
            };
            if norm(&given) != norm(&map.graph) {
                return invalid("rotation records do not match the edge records");
            }
        }
        if let Some(o) = self.outer {
            map.set_outer_face(o).or_else(|e| invalid(e.to_string()))?;
        }
        Ok(map)
    }

    /// Takes the rotation and outer face of `rot`, keeping everything else.
    pub fn with_rotation(mut self, rot: &Document) -> Document {
        self.rotation = rot.rotation.clone();
        self.outer = rot.outer;
        self
    }

    /// `map` and `path` records of an embedding of `guest` into `host`.
    pub fn add_embedding(&mut self, guest: &Graph, host: &Graph, emb: &TopEmbedding) {
        for (g, &h) in emb.vmap.iter().enumerate() {
            self.map.push((guest.name(g).to_string(), host.name(h).to_string()));
        }
        for ((u, v), path) in &emb.emap {
            self.paths.push(PathRecord {
                from: guest.name(*u).to_string(),
                to: guest.name(*v).to_string(),
                ids: names(host, path),
            });
        }
    }

    /// Reads the `map` and `path` records back. Unknown host ids become
    /// `usize::MAX` and are left to the verifier; every guest vertex needs
    /// exactly one `map` record.
    pub fn top_embedding(&self, guest: &Graph, host: &Graph) -> Result<TopEmbedding> {
        let mut vmap = vec![usize::MAX; guest.len()];
        for (g, h) in &self.map {
            let Some(gi) = guest.find(g) else { return invalid(format!("map names unknown guest vertex {g}")) };
            if vmap[gi] != usize::MAX {
                return invalid(format!("second map record for {g}"));
            }
            vmap[gi] = host.find(h).unwrap_or(usize::MAX - 1);
        }
        if let Some(g) = vmap.iter().position(|&h| h == usize::MAX) {
            return invalid(format!("no map record for guest vertex {}", guest.name(g)));
        }
        for h in &mut vmap {
            if *h == usize::MAX - 1 {
                *h = usize::MAX;
            }
        }
        let mut emap = Vec::with_capacity(self.paths.len());
        for p in &self.paths {
            let (Some(u), Some(v)) = (guest.find(&p.from), guest.find(&p.to)) else {
                return invalid(format!("path names unknown guest edge {} {}", p.from, p.to));
            };
            emap.push(((u, v), p.ids.iter().map(|x| index_or_unknown(host, x)).collect()));
        }
        Ok(TopEmbedding { vmap, emap })
    }

    /// The guest implied by the `map` and `path` records.
    pub fn implied_guest(&self) -> Result<Graph> {
        let mut g = Graph::with_capacity(self.map.len());
        for (v, _) in &self.map {
            g.add_vertex(v.as_str()).or_else(|e| invalid(format!("map {v}: {e}")))?;
        }
        for p in &self.paths {
            g.add_edge_by_name(&p.from, &p.to).or_else(|e| invalid(format!("path {} {}: {e}", p.from, p.to)))?;
        }
        Ok(g)
    }

    /// Vertex lists of the named records resolved against `g`.
    pub fn resolve(g: &Graph, records: &[Named]) -> Vec<Vec<VertexIx>> {
        records.iter().map(|r| r.ids.iter().map(|x| index_or_unknown(g, x)).collect()).collect()
    }

    pub fn positions(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
    }
}
