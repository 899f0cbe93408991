//! Definitional topological-minor check by exhaustive pairwise comparison,
//! and a generator of near-miss embeddings to feed it.

use rand::seq::SliceRandom;
use rand::Rng;
use upg_core::graph::Graph;
use upg_core::verify::TopEmbedding;

fn adjacent(host: &Graph, a: usize, b: usize) -> bool {
    host.neighbors(a).contains(&b)
}

pub fn brute_force_valid(guest: &Graph, host: &Graph, emb: &TopEmbedding) -> bool {
    let n = guest.len();
    if emb.vmap.len() != n || emb.vmap.iter().any(|&x| x >= host.len()) {
        return false;
    }
    for i in 0..n {
        for j in 0..i {
            if emb.vmap[i] == emb.vmap[j] {
                return false;
            }
        }
    }
    let edges = guest.edges();
    if emb.emap.len() != edges.len() {
        return false;
    }
    for &(u, v) in &edges {
        let count = emb.emap.iter().filter(|((a, b), _)| (*a, *b) == (u, v) || (*a, *b) == (v, u)).count();
        if count != 1 {
            return false;
        }
    }
    for ((u, v), p) in &emb.emap {
        if p.len() < 2 || p[0] != emb.vmap[*u] || p[p.len() - 1] != emb.vmap[*v] {
            return false;
        }
        if p.iter().any(|&x| x >= host.len()) {
            return false;
        }
        for i in 1..p.len() {
            if !adjacent(host, p[i - 1], p[i]) {
                return false;
            }
        }
        for i in 0..p.len() {
            for j in 0..i {
                if p[i] == p[j] {
                    return false;
                }
            }
        }
        for &x in &p[1..p.len() - 1] {
            if emb.vmap.contains(&x) {
                return false;
            }
        }
    }
    for (i, (_, p)) in emb.emap.iter().enumerate() {
        for (_, q) in &emb.emap[..i] {
            for &x in &p[1..p.len() - 1] {
                if q[1..q.len() - 1].contains(&x) {
                    return false;
                }
            }
        }
    }
    true
}

/// A random guest with at most `max_edges` edges, a host containing a
/// subdivision of it plus noise, the embedding of that subdivision, and
/// with probability 2/3 one random corruption of it.
pub fn instance<R: Rng>(rng: &mut R, max_edges: usize) -> (Graph, Graph, TopEmbedding) {
    let n = rng.gen_range(2..=7);
    let mut guest = Graph::new();
    for i in 0..n {
        guest.add_vertex(format!("g{i}")).unwrap();
    }
    let target = rng.gen_range(1..=max_edges);
    for _ in 0..4 * target {
        if guest.edge_count() >= target {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !guest.has_edge(u, v) {
            guest.add_edge(u, v).unwrap();
        }
    }
    let mut host = Graph::new();
    let mut vmap = Vec::new();
    for i in 0..n {
        vmap.push(host.add_vertex(format!("h{i}")).unwrap());
    }
    let mut emap = Vec::new();
    for (u, v) in guest.edges() {
        let mut path = vec![vmap[u]];
        for _ in 0..rng.gen_range(0..3) {
            let x = host.add_vertex(format!("s{}", host.len())).unwrap();
            host.add_edge(*path.last().unwrap(), x).unwrap();
            path.push(x);
        }
        host.add_edge(*path.last().unwrap(), vmap[v]).unwrap();
        path.push(vmap[v]);
        emap.push(((u, v), path));
    }
    for _ in 0..rng.gen_range(0..4) {
        host.add_vertex(format!("x{}", host.len())).unwrap();
    }
    for _ in 0..rng.gen_range(0..6) {
        let (a, b) = (rng.gen_range(0..host.len()), rng.gen_range(0..host.len()));
        if a != b && !host.has_edge(a, b) {
            host.add_edge(a, b).unwrap();
        }
    }
    let mut emb = TopEmbedding { vmap, emap };
    if rng.gen_range(0..3) > 0 {
        corrupt(rng, &host, &mut emb);
    }
    (guest, host, emb)
}

fn corrupt<R: Rng>(rng: &mut R, host: &Graph, emb: &mut TopEmbedding) {
    let hn = host.len();
    match rng.gen_range(0..9) {
        0 => {
            let i = rng.gen_range(0..emb.vmap.len());
            emb.vmap[i] = rng.gen_range(0..hn);
        }
        1 if !emb.emap.is_empty() => {
            let i = rng.gen_range(0..emb.emap.len());
            emb.emap.remove(i);
        }
        2 if !emb.emap.is_empty() => {
            let i = rng.gen_range(0..emb.emap.len());
            emb.emap[i].1.reverse();
        }
        3 if !emb.emap.is_empty() => {
            let i = rng.gen_range(0..emb.emap.len());
            let p = &mut emb.emap[i].1;
            let at = rng.gen_range(0..p.len());
            p.insert(at, rng.gen_range(0..hn));
        }
        4 if !emb.emap.is_empty() => {
            let i = rng.gen_range(0..emb.emap.len());
            let e = emb.emap[i].clone();
            emb.emap.push(e);
        }
        5 if emb.emap.len() >= 2 => {
            let i = rng.gen_range(0..emb.emap.len());
            let j = rng.gen_range(0..emb.emap.len());
            let x = emb.emap[j].1[emb.emap[j].1.len() / 2];
            let p = &mut emb.emap[i].1;
            let mid = p.len() / 2;
            if p.len() > 2 {
                p[mid] = x;
            }
        }
        6 => {
            emb.vmap.shuffle(rng);
        }
        7 if !emb.emap.is_empty() => {
            let i = rng.gen_range(0..emb.emap.len());
            let (u, v) = emb.emap[i].0;
            emb.emap[i].0 = (v, u);
        }
        _ => {
            if let Some(x) = emb.vmap.pop() {
                emb.vmap.push(x);
                emb.vmap.push(x);
            }
        }
    }
}
