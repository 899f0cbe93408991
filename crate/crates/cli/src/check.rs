//! Re-checks serialized objects. Uses only the text format and the core
//! graph, planar-map and verifier modules, never the code that built them.

use anyhow::{bail, Result};
use upg_core::planar::euler_validate;
use upg_core::verify::{
    verify_complete_minor, verify_disjoint_paths, verify_topological_embedding, MinorViolation, PathViolation,
    Violation,
};
use upg_core::Graph;

use crate::format::Document;

/// What was checked and every problem found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub kind: &'static str,
    pub problems: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

fn name(g: &Graph, v: usize) -> String {
    if v < g.len() {
        g.name(v).to_string()
    } else {
        "<unknown>".to_string()
    }
}

fn describe(v: &Violation, guest: &Graph, host: &Graph) -> String {
    let e = |(a, b): (usize, usize)| format!("{}-{}", name(guest, a), name(guest, b));
    match *v {
        Violation::VertexMapSize { expected, found } => format!("{found} vertex images for {expected} guest vertices"),
        Violation::UnknownHostVertex { guest: g } => format!("image of {} is not a host vertex", name(guest, g)),
        Violation::NonInjective { a, b } => format!("{} and {} share an image", name(guest, a), name(guest, b)),
        Violation::MissingPath { edge } => format!("no path for edge {}", e(edge)),
        Violation::UnexpectedPath { edge } => format!("path {} is not for a guest edge or is repeated", e(edge)),
        Violation::WrongEndpoints { edge } => format!("path {} does not join the images of its ends", e(edge)),
        Violation::NotAPath { edge, at } => format!("path {} breaks at position {at}", e(edge)),
        Violation::InteriorHitsImage { edge, vertex, guest: g } => {
            format!("path {} passes through {} (image of {})", e(edge), name(host, vertex), name(guest, g))
        }
        Violation::SharedInterior { a, b, vertex } => {
            format!("paths {} and {} share {}", e(a), e(b), name(host, vertex))
        }
    }
}

fn describe_path(v: &PathViolation, host: &Graph) -> String {
    match *v {
        PathViolation::Empty { path } => format!("path {path} is empty"),
        PathViolation::UnknownVertex { path, at } => format!("path {path}: unknown vertex at position {at}"),
        PathViolation::NotAdjacent { path, at } => format!("path {path}: no edge into position {at}"),
        PathViolation::Repeats { path, vertex } => format!("path {path} repeats {}", name(host, vertex)),
        PathViolation::Shared { a, b, vertex } => format!("paths {a} and {b} share {}", name(host, vertex)),
    }
}

fn describe_minor(v: &MinorViolation, host: &Graph) -> String {
    match *v {
        MinorViolation::EmptyBranchSet { set } => format!("branch set {set} is empty"),
        MinorViolation::Overlap { a, b, vertex } => format!("branch sets {a} and {b} share {}", name(host, vertex)),
        MinorViolation::Disconnected { set } => format!("branch set {set} is not connected"),
        MinorViolation::NotJoined { a, b } => format!("branch sets {a} and {b} are not joined by an edge"),
    }
}

/// Whether `ids` lists a cycle of `g` (length at least 3, distinct, closed).
fn is_cycle(g: &Graph, ids: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    ids.len() >= 3
        && ids.iter().all(|&v| v < g.len() && seen.insert(v))
        && (0..ids.len()).all(|i| g.has_edge(ids[i], ids[(i + 1) % ids.len()]))
}

/// Checks `doc`. Embeddings (`map` records) are checked against `guest`
/// (or the guest implied by the records) and `host` (or the document's own
/// graph); `branch` records as a complete-minor witness; `path` records as
/// disjoint paths with the named ends; anything else as a graph whose
/// rotation system, if given, must be planar and whose `cycle` records must
/// be cycles, facial where they bound a face.
pub fn check(doc: &Document, guest: Option<&Document>, host: Option<&Document>) -> Result<Report> {
    let host_doc = host.unwrap_or(doc);
    if !host_doc.has_graph() && (!doc.map.is_empty() || !doc.paths.is_empty() || !doc.branches.is_empty()) {
        bail!("no host graph: pass one or use a file that carries its graph records");
    }
    let h = host_doc.graph()?;
    let mut problems = Vec::new();
    let kind = if !doc.map.is_empty() {
        let g = match guest {
            Some(d) => d.graph()?,
            None => doc.implied_guest()?,
        };
        let emb = doc.top_embedding(&g, &h)?;
        problems.extend(verify_topological_embedding(&g, &h, &emb).iter().map(|v| describe(v, &g, &h)));
        "embedding"
    } else if !doc.branches.is_empty() {
        let sets = Document::resolve(&h, &doc.branches);
        if let Some(b) = doc.branches.iter().zip(&sets).find(|(_, s)| s.iter().any(|&v| v >= h.len())) {
            problems.push(format!("branch set {} names an unknown vertex", b.0.name));
        } else {
            problems.extend(verify_complete_minor(&h, &sets).iter().map(|v| describe_minor(v, &h)));
        }
        "minor witness"
    } else if !doc.paths.is_empty() {
        let paths: Vec<Vec<usize>> =
            doc.paths.iter().map(|p| p.ids.iter().map(|x| h.find(x).unwrap_or(usize::MAX)).collect()).collect();
        problems.extend(verify_disjoint_paths(&h, &paths).iter().map(|v| describe_path(v, &h)));
        for (i, p) in doc.paths.iter().enumerate() {
            if p.ids.first() != Some(&p.from) || p.ids.last() != Some(&p.to) {
                problems.push(format!("path {i} does not run from {} to {}", p.from, p.to));
            }
        }
        "path family"
    } else {
        let map = if doc.rotation.is_empty() { None } else { Some(doc.planar_map()?) };
        if let Some(m) = &map {
            if !euler_validate(m) {
                problems.push("rotation system is not planar".to_string());
            }
        }
        let facial_prefix = doc.level.map(|l| format!("c{l}."));
        for (c, ids) in doc.cycles.iter().zip(Document::resolve(&h, &doc.cycles)) {
            if !is_cycle(&h, &ids) {
                problems.push(format!("cycle {} is not a cycle of the graph", c.name));
                continue;
            }
            let bounds_face = match &facial_prefix {
                Some(p) => c.name.starts_with(p.as_str()),
                None => true,
            };
            if let Some(m) = &map {
                if bounds_face && !m.is_facial_cycle(&ids) {
                    problems.push(format!("cycle {} does not bound a face", c.name));
                }
            }
        }
        "graph"
    };
    Ok(Report { kind, problems })
}
