//! Disjoint path systems through strips: identity, cyclic shift, the
//! transposition of the two extreme columns, arbitrary permutations,
//! involutions and pairwise adjacent families.

use alloc::vec;
use alloc::vec::Vec;

use super::{w, AugmentedStrip, Bypass, WPath, WVertex, WedgeStrip};
use crate::error::{bail, Result};
use crate::verify::{verify_disjoint_paths, PathViolation};

/// Paths `w(m,i) -> w(n,pi(i))` through an augmented strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Routing {
    pub aug: AugmentedStrip,
    pub m: usize,
    pub n: usize,
    pub paths: Vec<WPath>,
}

fn column(i: usize, from: usize, to: usize) -> impl Iterator<Item = WVertex> {
    (from..=to).map(move |k| w(k, i))
}

fn identity_paths(m: usize, n: usize, k: usize) -> Vec<WPath> {
    (0..=k).map(|i| column(i, m, n).collect()).collect()
}

/// Path `i` goes to position `i+1 mod k+1`; the last one wraps through `bp`.
fn shift_paths(m: usize, n: usize, k: usize, bp: &Bypass) -> Vec<WPath> {
    if k == 0 {
        return identity_paths(m, n, 0);
    }
    let mut out: Vec<WPath> = (0..k)
        .map(|i| {
            let mut p = vec![w(m, i)];
            p.extend(column(i + 1, m + 1, n));
            p
        })
        .collect();
    let (a, b) = (bp.a, bp.b);
    let mut wrap: WPath = (0..=b - m).map(|t| w(m + t, k + t)).collect();
    wrap.extend((k + b - m + 1..=b).map(|c| w(b, c)));
    wrap.extend(bp.internal.iter().rev().copied());
    wrap.extend(column(0, a, n));
    out.push(wrap);
    out
}

/// Swaps the extreme positions `0` and `k` using bypasses `q1`, `q2` with
/// `q1.a < q2.a` and `q2.b < q1.b`.
fn swap_paths(m: usize, n: usize, k: usize, q1: &Bypass, q2: &Bypass) -> Vec<WPath> {
    if k == 0 {
        return identity_paths(m, n, 0);
    }
    let mut first: WPath = column(0, m, q1.a).collect();
    first.extend(q1.internal.iter().copied());
    first.extend(column(q1.b, q1.b, n - 1));
    first.extend((k..q1.b).rev().map(|c| w(n - 1, c)));
    first.push(w(n, k));

    let mut last: WPath = column(k, m, q2.b).collect();
    last.extend((k + 1..=q2.b).map(|c| w(q2.b, c)));
    last.extend(q2.internal.iter().rev().copied());
    last.extend(column(0, q2.a, n));

    let mut out = vec![first];
    out.extend((1..k).map(|i| column(i, m, n).collect::<WPath>()));
    out.push(last);
    out
}

/// `k+1` disjoint column paths `w(m,i) -> w(n,i)`.
pub fn route_identity(strip: &WedgeStrip, k: usize) -> Result<Vec<WPath>> {
    if k > strip.m {
        bail!(Contract, "identity routing needs k <= m (k = {k}, m = {})", strip.m);
    }
    Ok(identity_paths(strip.m, strip.n, k))
}

/// The cyclic shift `i -> i+1 mod k+1` across the strip of `aug`, using the
/// bypass with index `bypass_index` for the wrap-around path.
pub fn route_shift(aug: &AugmentedStrip, k: usize, bypass_index: usize) -> Result<Vec<WPath>> {
    let s = aug.strip;
    if k > s.m {
        bail!(Contract, "shift routing needs k <= m");
    }
    let Some(bp) = aug.bypasses.get(bypass_index) else { bail!(Contract, "no bypass {bypass_index}") };
    if !bp.spans(&s) {
        bail!(Contract, "bypass {bypass_index} does not span the strip");
    }
    Ok(shift_paths(s.m, s.n, k, bp))
}

/// The transposition `(0 k)` across the strip of `aug`, using the crossing
/// pair of bypasses `pair`.
pub fn route_swap_ends(aug: &AugmentedStrip, k: usize, pair: (usize, usize)) -> Result<Vec<WPath>> {
    let s = aug.strip;
    if k > s.m {
        bail!(Contract, "swap routing needs k <= m");
    }
    let (Some(p), Some(q)) = (aug.bypasses.get(pair.0), aug.bypasses.get(pair.1)) else {
        bail!(Contract, "bypass pair {pair:?} not present");
    };
    if pair.0 == pair.1 || !p.spans(&s) || !q.spans(&s) || !super::crossing((p.a, p.b), (q.a, q.b)) {
        bail!(Contract, "bypasses {pair:?} are not a crossing pair spanning the strip");
    }
    let (q1, q2) = if p.a < q.a { (p, q) } else { (q, p) };
    Ok(swap_paths(s.m, s.n, k, q1, q2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stage {
    Shift(usize),
    Swap,
}

/// Adjacent position swaps turning the identity arrangement into `pi`.
fn bubble_swaps(pi: &[usize]) -> Vec<usize> {
    let mut arr: Vec<usize> = (0..pi.len()).collect();
    let mut swaps = Vec::new();
    loop {
        let mut done = true;
        for q in 0..pi.len().saturating_sub(1) {
            if pi[arr[q]] > pi[arr[q + 1]] {
                arr.swap(q, q + 1);
                swaps.push(q);
                done = false;
            }
        }
        if done {
            return swaps;
        }
    }
}

/// Stage word realizing `pi` on positions `0..=k`; each swap of positions
/// `q, q+1` is a swap of the ends conjugated by shifts.
fn stages(pi: &[usize]) -> Vec<Stage> {
    let size = pi.len();
    let mut word = Vec::new();
    let mut pending = 0;
    for q in bubble_swaps(pi) {
        pending = (pending + size - (q + 1)) % size;
        if pending != 0 {
            word.push(Stage::Shift(pending));
        }
        word.push(Stage::Swap);
        pending = (q + 1) % size;
    }
    if pending != 0 {
        word.push(Stage::Shift(pending));
    }
    word
}

fn check_permutation(pi: &[usize], k: usize) -> Result<()> {
    let mut seen = vec![false; k + 1];
    if pi.len() != k + 1 {
        bail!(Contract, "permutation must have k+1 = {} entries", k + 1);
    }
    for &x in pi {
        if x > k || seen[x] {
            bail!(Contract, "not a permutation of 0..={k}");
        }
        seen[x] = true;
    }
    Ok(())
}

/// Disjoint paths `w(m,i) -> w(n,pi(i))` for a permutation `pi` of `0..=k`.
/// Each stage of the generator word uses one crossing pair of bypasses in
/// a window of three layers; missing pairs are added to a copy of `aug`,
/// which is returned with the paths.
pub fn route_permutation(aug: &AugmentedStrip, m: usize, k: usize, pi: &[usize]) -> Result<Routing> {
    check_permutation(pi, k)?;
    if k >= m {
        bail!(Contract, "permutation routing needs k < m (k = {k}, m = {m})");
    }
    if m < aug.strip.m {
        bail!(Contract, "start layer {m} lies below the strip");
    }
    let mut aug = aug.clone();
    let mut paths: Vec<WPath> = (0..=k).map(|i| vec![w(m, i)]).collect();
    // at[p] = path currently ending at position p
    let mut at: Vec<usize> = (0..=k).collect();
    let mut layer = m;
    let unit_steps = stages(pi).into_iter().flat_map(|st| match st {
        Stage::Shift(t) => vec![Stage::Shift(1); t],
        Stage::Swap => vec![Stage::Swap],
    });
    for stage in unit_steps {
        let (p, q) = aug.pair_at(layer)?;
        let top = layer + 3;
        let mut perm: Vec<usize> = (0..=k).collect();
        let step = if stage == Stage::Swap {
            let (b1, b2) = (&aug.bypasses[p], &aug.bypasses[q]);
            let (q1, q2) = if b1.a < b2.a { (b1, b2) } else { (b2, b1) };
            perm.swap(0, k);
            swap_paths(layer, top, k, q1, q2)
        } else {
            perm.rotate_left(1);
            shift_paths(layer, top, k, &aug.bypasses[p])
        };
        let mut next = vec![0; k + 1];
        for pos in 0..=k {
            let id = at[pos];
            paths[id].extend_from_slice(&step[pos][1..]);
            next[perm[pos]] = id;
        }
        at = next;
        layer = top;
    }
    aug.strip.n = aug.strip.n.max(layer);
    Ok(Routing { aug, m, n: layer, paths })
}

/// For a fixed-point-free involution `phi` of `0..=k`, disjoint paths from
/// `w(m,i)` to `w(m,phi(i))`, one per pair `i < phi(i)`, in order of `i`.
pub fn route_involution(aug: &AugmentedStrip, m: usize, k: usize, phi: &[usize]) -> Result<Routing> {
    check_permutation(phi, k)?;
    for (i, &j) in phi.iter().enumerate() {
        if j == i {
            bail!(Contract, "involution has a fixed point at {i}");
        }
        if phi[j] != i {
            bail!(Contract, "map is not an involution");
        }
    }
    let mut pi = vec![0; k + 1];
    let mut t = 0;
    for i in 0..=k {
        if i < phi[i] {
            pi[i] = 2 * t;
            pi[phi[i]] = 2 * t + 1;
            t += 1;
        }
    }
    let r = route_permutation(aug, m, k, &pi)?;
    let mut joined = Vec::new();
    for i in 0..=k {
        if i < phi[i] {
            let mut p = r.paths[i].clone();
            p.extend(r.paths[phi[i]].iter().rev().copied());
            joined.push(p);
        }
    }
    Ok(Routing { paths: joined, ..r })
}

/// Paths whose union contains a complete minor: `paths[x]` and `paths[y]`
/// are joined by the edge `edges[..] = ((x, y), (u, v))` with `u` on the
/// first and `v` on the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacentPaths {
    pub aug: AugmentedStrip,
    pub paths: Vec<WPath>,
    pub edges: Vec<((usize, usize), (WVertex, WVertex))>,
}

/// `p` disjoint paths, every two joined by an edge of the augmented strip.
/// Starts from one single-vertex path; each new path starts next to the
/// others and is moved past all of them by adjacent transpositions.
pub fn pairwise_adjacent_paths(aug: &AugmentedStrip, p: usize) -> Result<AdjacentPaths> {
    if p == 0 {
        bail!(Contract, "need at least one path");
    }
    let base = aug.strip.m;
    let need = p.max(base);
    let mut layer = base + (need - base).div_ceil(3) * 3;
    let mut aug = aug.clone();
    aug.strip.n = aug.strip.n.max(layer);
    let mut paths: Vec<WPath> = vec![vec![w(layer, 0)]];
    let mut at: Vec<usize> = vec![0];
    let mut edges = Vec::new();
    for j in 1..p {
        paths.push(vec![w(layer, j)]);
        at.push(j);
        edges.push(((at[j - 1], j), (w(layer, j - 1), w(layer, j))));
        for q in (1..=j).rev() {
            let mut pi: Vec<usize> = (0..=j).collect();
            pi.swap(q - 1, q);
            let r = route_permutation(&aug, layer, j, &pi)?;
            for pos in 0..=j {
                paths[at[pos]].extend_from_slice(&r.paths[pos][1..]);
            }
            at.swap(q - 1, q);
            aug = r.aug;
            layer = r.n;
            if q >= 2 {
                edges.push(((at[q - 2], j), (w(layer, q - 2), w(layer, q - 1))));
            }
        }
    }
    aug.strip.n = aug.strip.n.max(layer);
    Ok(AdjacentPaths { aug, paths, edges })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoutingViolation {
    Path(PathViolation),
    /// A vertex of the path is not in the augmented strip.
    Outside {
        path: usize,
    },
    /// The path does not run between the expected ends.
    WrongEnds {
        path: usize,
    },
    /// An interior vertex of the path lies on a layer reserved for ends.
    TouchesBoundary {
        path: usize,
        layer: usize,
    },
}

/// Checks `paths` against the expected `ends`, using only the graph of the
/// augmented strip: each must be a path there, they must be disjoint, and
/// none may meet a layer in `boundary` except at its ends.
pub fn verify_routing(
    aug: &AugmentedStrip,
    paths: &[WPath],
    ends: &[(WVertex, WVertex)],
    boundary: &[usize],
) -> Vec<RoutingViolation> {
    let mut out = Vec::new();
    let (g, ix) = aug.graph();
    let mut indexed = Vec::with_capacity(paths.len());
    for (i, p) in paths.iter().enumerate() {
        if p.iter().any(|v| !ix.contains_key(v)) {
            out.push(RoutingViolation::Outside { path: i });
            indexed.push(Vec::new());
            continue;
        }
        indexed.push(p.iter().map(|v| ix[v]).collect());
        if ends.get(i).map(|&(s, t)| (Some(s), Some(t))) != Some((p.first().copied(), p.last().copied())) {
            out.push(RoutingViolation::WrongEnds { path: i });
        }
        for v in p.iter().skip(1).take(p.len().saturating_sub(2)) {
            if let WVertex::Grid { layer, .. } = v {
                if boundary.contains(layer) {
                    out.push(RoutingViolation::TouchesBoundary { path: i, layer: *layer });
                }
            }
        }
    }
    if ends.len() != paths.len() {
        out.push(RoutingViolation::WrongEnds { path: paths.len().min(ends.len()) });
    }
    out.extend(verify_disjoint_paths(&g, &indexed).into_iter().map(RoutingViolation::Path));
    out
}
