//! Oracles for wedge routings recomputed from coordinates.

use std::collections::HashSet;

use upg_core::wedge::{AugmentedStrip, WPath, WVertex};

/// Adjacency recomputed from coordinates and the bypass vertex lists.
pub fn adjacent(aug: &AugmentedStrip, u: WVertex, v: WVertex) -> bool {
    if let (WVertex::Grid { layer: k1, index: i1 }, WVertex::Grid { layer: k2, index: i2 }) = (u, v) {
        let (x1, y1) = (i1 as i64, (k1 - i1) as i64);
        let (x2, y2) = (i2 as i64, (k2 - i2) as i64);
        let d = (x2 - x1, y2 - y1);
        return [(1, 0), (0, 1), (1, -1), (-1, 0), (0, -1), (-1, 1)].contains(&d);
    }
    aug.bypasses.iter().any(|b| b.path().windows(2).any(|e| (e[0], e[1]) == (u, v) || (e[0], e[1]) == (v, u)))
}

pub fn layer_of(v: WVertex) -> Option<usize> {
    match v {
        WVertex::Grid { layer, .. } => Some(layer),
        WVertex::Bypass { .. } => None,
    }
}

/// A routing between layers `m` and `n`: paths, disjointness, ends,
/// confinement and the boundary restriction.
pub fn check_routing(
    aug: &AugmentedStrip,
    m: usize,
    n: usize,
    paths: &[WPath],
    ends: &[(WVertex, WVertex)],
) -> Result<(), String> {
    if paths.len() != ends.len() {
        return Err(format!("{} paths for {} pairs", paths.len(), ends.len()));
    }
    let mut used = HashSet::new();
    for (p, &(s, t)) in paths.iter().zip(ends) {
        if p.is_empty() || (p[0], *p.last().unwrap()) != (s, t) {
            return Err(format!("path does not join {s:?} and {t:?}"));
        }
        for (pos, &v) in p.iter().enumerate() {
            if !used.insert(v) {
                return Err(format!("vertex {v:?} used twice"));
            }
            match v {
                WVertex::Grid { layer, index } => {
                    if layer < m || layer > n || index > layer {
                        return Err(format!("{v:?} outside the strip"));
                    }
                    if pos != 0 && pos + 1 != p.len() && (layer == m || layer == n) {
                        return Err(format!("interior vertex {v:?} on a boundary layer"));
                    }
                }
                WVertex::Bypass { id, .. } => {
                    if id >= aug.bypasses.len() {
                        return Err(format!("unknown bypass {id}"));
                    }
                }
            }
        }
        if let Some(e) = p.windows(2).find(|e| !adjacent(aug, e[0], e[1])) {
            return Err(format!("{:?} and {:?} are not adjacent", e[0], e[1]));
        }
    }
    Ok(())
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// All fixed-point-free involutions of `0..n`.
pub fn perfect_matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(phi: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = phi.iter().position(|&x| x == usize::MAX) else {
            out.push(phi.clone());
            return;
        };
        for j in i + 1..phi.len() {
            if phi[j] == usize::MAX {
                phi[i] = j;
                phi[j] = i;
                go(phi, out);
                phi[i] = usize::MAX;
                phi[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        go(&mut vec![usize::MAX; n], &mut out);
    }
    out
}
