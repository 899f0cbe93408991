//! DOT export. Output depends only on the document, so it is byte-stable.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use crate::format::Document;

const PALETTE: [&str; 8] = ["red", "blue", "forestgreen", "darkorange", "purple", "brown", "deeppink", "teal"];

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

fn numbered(s: &str, prefix: char) -> bool {
    s.strip_prefix(prefix).is_some_and(digits)
}

/// `<letter><layer>.<index>`, as in wedge strips and triple wedges.
fn layered(s: &str, letters: &[char]) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| letters.contains(&c))
        && chars.as_str().split_once('.').is_some_and(|(a, b)| digits(a) && digits(b))
}

/// Node class from a host, mesh or strip address.
pub fn node_class(id: &str) -> &'static str {
    let last = id.rsplit('/').next().unwrap_or(id);
    let in_block = id.contains("inner/") || id.contains("outer/");
    if last == "centre" {
        "centre"
    } else if id.starts_with("base/") || id.contains("@base/") {
        "base"
    } else if numbered(last, 'b') {
        if in_block {
            "perimeter"
        } else {
            "c2"
        }
    } else if numbered(last, 'a') {
        if id.contains("inner/") {
            "hub"
        } else if in_block {
            "boundary"
        } else {
            "c1"
        }
    } else if layered(last, &['w']) {
        "strip"
    } else if layered(last, &['x', 'y', 'z']) {
        "triple"
    } else if last.starts_with('g') {
        "grid"
    } else if last.starts_with('p') && last.contains('.') {
        "bypass"
    } else {
        "vertex"
    }
}

/// The block prefix of a perimeter address and whether it is on the inner mesh.
fn perimeter_side(id: &str) -> Option<(&str, bool)> {
    if node_class(id) != "perimeter" {
        return None;
    }
    if let Some(i) = id.rfind("inner/") {
        return Some((&id[..i], true));
    }
    id.rfind("outer/").map(|i| (&id[..i], false))
}

fn is_spoke(a: &str, b: &str) -> bool {
    matches!((perimeter_side(a), perimeter_side(b)), (Some((p, x)), Some((q, y))) if p == q && x != y)
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

pub fn export_dot(doc: &Document) -> String {
    let mut nodes: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
    let mut known: HashSet<&str> = nodes.iter().copied().collect();
    for p in &doc.paths {
        for x in &p.ids {
            if known.insert(x.as_str()) {
                nodes.push(x.as_str());
            }
        }
    }
    let images: BTreeMap<&str, &str> = doc.map.iter().map(|(g, h)| (h.as_str(), g.as_str())).collect();
    let mut colour: HashMap<(String, String), usize> = HashMap::new();
    let mut extra: Vec<(String, String)> = Vec::new();
    let edge_set: HashSet<(String, String)> = doc.edges.iter().map(|(a, b)| key(a, b)).collect();
    for (i, p) in doc.paths.iter().enumerate() {
        for w in p.ids.windows(2) {
            let k = key(&w[0], &w[1]);
            if !edge_set.contains(&k) && !colour.contains_key(&k) {
                extra.push((w[0].clone(), w[1].clone()));
            }
            colour.entry(k).or_insert(i);
        }
    }

    let mut out = String::from("graph upg {\n  node [shape=point];\n");
    for v in &nodes {
        write!(out, "  {} [class={}", quote(v), quote(node_class(v))).unwrap();
        if let Some(g) = images.get(v) {
            write!(out, ", shape=circle, label={}", quote(g)).unwrap();
        }
        out.push_str("];\n");
    }
    for (a, b) in doc.edges.iter().chain(&extra) {
        write!(out, "  {} -- {}", quote(a), quote(b)).unwrap();
        let mut attrs = Vec::new();
        if is_spoke(a, b) {
            attrs.push("class=\"spoke\"".to_string());
        }
        if let Some(&i) = colour.get(&key(a, b)) {
            attrs.push(format!("color={}, penwidth=2", quote(PALETTE[i % PALETTE.len()])));
        }
        if !attrs.is_empty() {
            write!(out, " [{}]", attrs.join(", ")).unwrap();
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}
