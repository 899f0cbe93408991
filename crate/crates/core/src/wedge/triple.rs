//! Three wedges glued along their boundary rays, optional diagonals of the
//! quadrilaterals between `X` and `Y`, and crossing bypass pairs for `Z`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use hashbrown::{HashMap, HashSet};

use super::{crossing, WVertex, WedgeStrip};
use crate::error::{bail, Result};
use crate::graph::{Graph, VertexIx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    X,
    Y,
    Z,
}

impl Part {
    fn letter(self) -> char {
        match self {
            Part::X => 'x',
            Part::Y => 'y',
            Part::Z => 'z',
        }
    }
}

/// The vertex `index` of layer `layer` in one of the three wedges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwVertex {
    pub part: Part,
    pub layer: usize,
    pub index: usize,
}

impl TwVertex {
    pub fn new(part: Part, layer: usize, index: usize) -> Self {
        TwVertex { part, layer, index }
    }

    /// `x<layer>.<index>` and likewise for `y`, `z`.
    pub fn name(&self) -> String {
        format!("{}{}.{}", self.part.letter(), self.layer, self.index)
    }

    /// The mirror image exchanging `X` and `Y` and reversing every layer.
    pub fn reflect(self) -> Self {
        let part = match self.part {
            Part::X => Part::Y,
            Part::Y => Part::X,
            Part::Z => Part::Z,
        };
        TwVertex { part, layer: self.layer, index: self.layer - self.index }
    }
}

fn x(k: usize, i: usize) -> TwVertex {
    TwVertex::new(Part::X, k, i)
}

fn y(k: usize, i: usize) -> TwVertex {
    TwVertex::new(Part::Y, k, i)
}

fn z(k: usize, i: usize) -> TwVertex {
    TwVertex::new(Part::Z, k, i)
}

/// The triple wedge up to layer `layers`. `diagonals[k]` records the two
/// diagonals of the quadrilateral `x_k^k, y_k^0, y_{k+1}^0, x_{k+1}^{k+1}`:
/// the first is `x_k^k y_{k+1}^0`, the second `x_{k+1}^{k+1} y_k^0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleWedge {
    layers: usize,
    diagonals: Vec<(bool, bool)>,
}

impl TripleWedge {
    pub fn new(layers: usize) -> Self {
        TripleWedge { layers, diagonals: vec![(false, false); layers] }
    }

    /// One diagonal per quadrilateral `k < alpha.len()`: the second one
    /// where `alpha[k]` is set, the first otherwise.
    pub fn with_alpha(layers: usize, alpha: &[bool]) -> Result<Self> {
        if alpha.len() > layers {
            bail!(Contract, "alpha has {} entries but only {layers} quadrilaterals exist", alpha.len());
        }
        let mut tw = Self::new(layers);
        for (k, &bit) in alpha.iter().enumerate() {
            tw.add_diagonal(k, bit)?;
        }
        Ok(tw)
    }

    pub fn add_diagonal(&mut self, k: usize, second: bool) -> Result<()> {
        let Some(d) = self.diagonals.get_mut(k) else {
            bail!(Contract, "no quadrilateral {k} below layer {}", self.layers);
        };
        if second {
            d.1 = true;
        } else {
            d.0 = true;
        }
        Ok(())
    }

    pub fn diagonals(&self, k: usize) -> (bool, bool) {
        self.diagonals.get(k).copied().unwrap_or((false, false))
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn contains(&self, v: TwVertex) -> bool {
        v.layer <= self.layers && v.index <= v.layer
    }

    /// The mirror image, see [`TwVertex::reflect`].
    pub fn reflect(&self) -> Self {
        let diagonals = self.diagonals.iter().map(|&(a, b)| (b, a)).collect();
        TripleWedge { layers: self.layers, diagonals }
    }

    /// Whether the whole neighbourhood of `v` lies in its own wedge.
    pub fn is_enclosed(&self, v: TwVertex) -> bool {
        self.contains(v) && 0 < v.index && v.index < v.layer
    }

    pub fn neighbors(&self, v: TwVertex) -> Vec<TwVertex> {
        let (k, i) = (v.layer, v.index);
        let strip = WedgeStrip { m: 0, n: self.layers };
        let mut out: Vec<TwVertex> = strip
            .neighbors(k, i)
            .into_iter()
            .map(|wv| match wv {
                WVertex::Grid { layer, index } => TwVertex::new(v.part, layer, index),
                WVertex::Bypass { .. } => unreachable!(),
            })
            .collect();
        let (right, left) = match v.part {
            Part::X => (y(k, 0), z(k, k)),
            Part::Y => (z(k, 0), x(k, k)),
            Part::Z => (x(k, 0), y(k, k)),
        };
        if i == k {
            out.push(right);
        }
        if i == 0 {
            out.push(left);
        }
        match v.part {
            Part::X if i == k => {
                if self.diagonals(k).0 {
                    out.push(y(k + 1, 0));
                }
                if k > 0 && self.diagonals(k - 1).1 {
                    out.push(y(k - 1, 0));
                }
            }
            Part::Y if i == 0 => {
                if k > 0 && self.diagonals(k - 1).0 {
                    out.push(x(k - 1, k - 1));
                }
                if self.diagonals(k).1 {
                    out.push(x(k + 1, k + 1));
                }
            }
            _ => {}
        }
        out
    }

    pub fn vertices(&self) -> Vec<TwVertex> {
        let mut out = Vec::new();
        for part in [Part::X, Part::Y, Part::Z] {
            for k in 0..=self.layers {
                for i in 0..=k {
                    out.push(TwVertex::new(part, k, i));
                }
            }
        }
        out
    }

    /// The triple wedge as a [`Graph`] with the index of every vertex.
    pub fn graph(&self) -> (Graph, HashMap<TwVertex, VertexIx>) {
        let mut g = Graph::new();
        let mut ix = HashMap::new();
        let vs = self.vertices();
        for &v in &vs {
            ix.insert(v, g.add_vertex(v.name()).unwrap());
        }
        for &v in &vs {
            for u in self.neighbors(v) {
                if ix[&v] < ix[&u] {
                    g.add_edge(ix[&v], ix[&u]).unwrap();
                }
            }
        }
        (g, ix)
    }
}

/// A bypass for `Z`: a path from `z_b^b` to `z_a^0` meeting `Z` only at its
/// ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZBypass {
    pub a: usize,
    pub b: usize,
    pub path: Vec<TwVertex>,
}

impl ZBypass {
    pub fn crosses(&self, other: &ZBypass) -> bool {
        crossing((self.a, self.b), (other.a, other.b))
    }

    fn reflect(self) -> Self {
        let mut path: Vec<TwVertex> = self.path.into_iter().map(TwVertex::reflect).collect();
        path.reverse();
        ZBypass { a: self.b, b: self.a, path }
    }
}

fn row(part: Part, k: usize, from: usize, to: usize) -> impl Iterator<Item = TwVertex> {
    (from..=to).map(move |i| TwVertex::new(part, k, i))
}

fn column_x(i: usize, from: usize, to: usize) -> impl Iterator<Item = TwVertex> {
    (from..=to).map(move |k| x(k, i))
}

/// Checks that `p` and `q` are disjoint crossing bypasses for `Z` inside
/// the annulus between layers `m` and `n`, with `chord` as the only edge
/// beyond those of `tw`.
fn check_pair(
    tw: &TripleWedge,
    chord: Option<(TwVertex, TwVertex)>,
    m: usize,
    n: usize,
    p: &ZBypass,
    q: &ZBypass,
) -> Result<()> {
    let adjacent = |s: TwVertex, t: TwVertex| {
        chord.is_some_and(|(u, v)| (s, t) == (u, v) || (s, t) == (v, u)) || tw.neighbors(s).contains(&t)
    };
    let mut seen = HashSet::new();
    for bp in [p, q] {
        let path = &bp.path;
        if path.first() != Some(&z(bp.b, bp.b)) || path.last() != Some(&z(bp.a, 0)) {
            bail!(Routing, "bypass does not run from z{}.{} to z{}.0", bp.b, bp.b, bp.a);
        }
        for (t, &v) in path.iter().enumerate() {
            if !tw.contains(v) || v.layer < m || v.layer > n {
                bail!(Routing, "bypass leaves the annulus at {}", v.name());
            }
            if v.part == Part::Z && t != 0 && t + 1 != path.len() {
                bail!(Routing, "bypass meets Z at {}", v.name());
            }
            if !seen.insert(v) {
                bail!(Routing, "vertex {} used twice", v.name());
            }
        }
        if let Some(e) = path.windows(2).find(|e| !adjacent(e[0], e[1])) {
            bail!(Routing, "{} and {} are not adjacent", e[0].name(), e[1].name());
        }
    }
    if !p.crosses(q) {
        bail!(Routing, "bypasses do not cross");
    }
    Ok(())
}

/// Both ends in `X`, `u = x_k^i` enclosed, `v = x_l^j`, `i <= j`.
fn same_wedge_detour(m: usize, n: usize, k: usize, i: usize) -> Vec<TwVertex> {
    let mut p = vec![z(m, m)];
    if i - 1 <= m {
        p.extend(row(Part::X, m, 0, i - 1));
        p.extend(column_x(i - 1, m + 1, k - 1));
    } else {
        p.extend(row(Part::X, m, 0, m));
        p.extend((m + 1..i).map(|t| x(t, t)));
        p.extend(column_x(i - 1, i, k - 1));
    }
    p.extend([x(k - 1, i), x(k, i + 1), x(k + 1, i + 1)]);
    if k + 1 == n {
        p.extend(row(Part::X, n, i + 2, n));
    } else {
        p.extend([x(k + 1, i), x(k + 1, i - 1)]);
        p.extend(column_x(i - 1, k + 2, n));
        p.extend(row(Part::X, n, i, n));
    }
    p.extend(row(Part::Y, n, 0, n));
    p.push(z(n, 0));
    p
}

/// A path from `z_m^m` through `X` and `Y` to layer `n`, then along layer
/// `n` to `z_n^0`, avoiding `used`. Breadth-first, so deterministic.
fn detour_by_search(tw: &TripleWedge, m: usize, n: usize, used: &HashSet<TwVertex>) -> Option<Vec<TwVertex>> {
    let start = x(m, 0);
    let mut parent: HashMap<TwVertex, TwVertex> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    parent.insert(start, start);
    let mut end = None;
    'search: while let Some(v) = queue.pop_front() {
        for u in tw.neighbors(v) {
            if u.part == Part::Z || u.layer < m || used.contains(&u) || parent.contains_key(&u) {
                continue;
            }
            parent.insert(u, v);
            if u.layer == n {
                end = Some(u);
                break 'search;
            }
            queue.push_back(u);
        }
    }
    let end = end?;
    let mut back = vec![end];
    let mut v = end;
    while v != start {
        v = parent[&v];
        back.push(v);
    }
    let mut p = vec![z(m, m)];
    p.extend(back.into_iter().rev());
    p.extend(row(end.part, n, end.index + 1, n));
    if end.part == Part::X {
        p.extend(row(Part::Y, n, 0, n));
    }
    p.push(z(n, 0));
    Some(p)
}

/// Core construction with `u = x_k^i` enclosed and `v` in `X` or `Y`.
fn chord_pair_from_x(tw: &TripleWedge, m: usize, n: usize, u: TwVertex, v: TwVertex) -> Result<(ZBypass, ZBypass)> {
    let (k, i) = (u.layer, u.index);
    let (l, j) = (v.layer, v.index);
    let diagonal_detour = || {
        let mut p = vec![z(m, m)];
        p.extend(row(Part::X, m, 0, m));
        p.extend((m + 1..=n).map(|t| x(t, t)));
        p.extend(row(Part::Y, n, 0, n));
        p.push(z(n, 0));
        ZBypass { a: n, b: m, path: p }
    };
    if v.part == Part::Y {
        let mut p = vec![z(k, k)];
        p.extend(row(Part::X, k, 0, i));
        p.extend(row(Part::Y, l, j, l));
        p.push(z(l, 0));
        return Ok((ZBypass { a: l, b: k, path: p }, diagonal_detour()));
    }
    if i <= j {
        let mut p = vec![z(k, k)];
        p.extend(row(Part::X, k, 0, i));
        p.extend(row(Part::X, l, j, l));
        p.extend(row(Part::Y, l, 0, l));
        p.push(z(l, 0));
        let q = same_wedge_detour(m, n, k, i);
        return Ok((ZBypass { a: l, b: k, path: p }, ZBypass { a: n, b: m, path: q }));
    }
    let mut p = vec![z(l, l)];
    p.extend(row(Part::X, l, 0, j));
    p.extend(row(Part::X, k, i, k));
    p.extend(row(Part::Y, k, 0, k));
    p.push(z(k, 0));
    let used: HashSet<TwVertex> = p.iter().copied().collect();
    let Some(q) = detour_by_search(tw, m, n, &used) else {
        bail!(Routing, "no detour around the chord {} {}", u.name(), v.name());
    };
    Ok((ZBypass { a: k, b: l, path: p }, ZBypass { a: n, b: m, path: q }))
}

/// Two disjoint crossing bypasses for `Z` in the annulus between layers `m`
/// and `n` of `tw` with the chord `uv` added. Both ends lie in `X` or `Y`
/// strictly between the layers `m` and `n`; `u` must be enclosed and `u`,
/// `v` non-adjacent. The second bypass returned has its ends on layers `m`
/// and `n`.
pub fn crossing_from_chord(
    tw: &TripleWedge,
    m: usize,
    n: usize,
    u: TwVertex,
    v: TwVertex,
) -> Result<(ZBypass, ZBypass)> {
    if n > tw.layers() || m + 1 >= n {
        bail!(Contract, "annulus {m}..{n} does not fit a triple wedge with {} layers", tw.layers());
    }
    for t in [u, v] {
        if !tw.contains(t) {
            bail!(Contract, "{} is not a vertex", t.name());
        }
        if t.part == Part::Z {
            bail!(Rejected, "{} lies in Z", t.name());
        }
        if t.layer <= m || t.layer >= n {
            bail!(Rejected, "{} is not strictly inside the annulus {m}..{n}", t.name());
        }
    }
    if !tw.is_enclosed(u) {
        bail!(Rejected, "{} is not enclosed", u.name());
    }
    if u == v || tw.neighbors(u).contains(&v) {
        bail!(Rejected, "{} and {} are adjacent", u.name(), v.name());
    }
    let (p, q) = if u.part == Part::X {
        chord_pair_from_x(tw, m, n, u, v)?
    } else {
        let (p, q) = chord_pair_from_x(&tw.reflect(), m, n, u.reflect(), v.reflect())?;
        (p.reflect(), q.reflect())
    };
    check_pair(tw, Some((u, v)), m, n, &p, &q)?;
    Ok((p, q))
}

/// The two crossing bypasses through `X_k`, `Y_{k+1}` and `X_{k+1}`, `Y_k`
/// that exist when both diagonals of quadrilateral `k` are present.
pub fn crossing_from_diagonals(tw: &TripleWedge, k: usize) -> Result<(ZBypass, ZBypass)> {
    if k == 0 || k + 1 > tw.layers() {
        bail!(Contract, "quadrilateral {k} must lie strictly between layer 0 and layer {}", tw.layers());
    }
    if tw.diagonals(k) != (true, true) {
        bail!(Rejected, "quadrilateral {k} lacks a diagonal");
    }
    let mut p = vec![z(k, k)];
    p.extend(row(Part::X, k, 0, k));
    p.extend(row(Part::Y, k + 1, 0, k + 1));
    p.push(z(k + 1, 0));
    let mut q = vec![z(k + 1, k + 1)];
    q.extend(row(Part::X, k + 1, 0, k + 1));
    q.extend(row(Part::Y, k, 0, k));
    q.push(z(k, 0));
    let p = ZBypass { a: k + 1, b: k, path: p };
    let q = ZBypass { a: k, b: k + 1, path: q };
    check_pair(tw, None, k, k + 1, &p, &q)?;
    Ok((p, q))
}
