//! Oracle for bypass pairs in a triple wedge.

use std::collections::HashSet;

use upg_core::wedge::{Part, TripleWedge, TwVertex, ZBypass};

/// Checks paths, disjointness, Z only at the ends, and crossing, on the
/// graph of `tw` plus the optional chord.
pub fn check_pair(
    tw: &TripleWedge,
    chord: Option<(TwVertex, TwVertex)>,
    p: &ZBypass,
    q: &ZBypass,
) -> Result<(), String> {
    let (mut g, ix) = tw.graph();
    if let Some((a, b)) = chord {
        g.add_edge(ix[&a], ix[&b]).map_err(|e| e.to_string())?;
    }
    let mut used = HashSet::new();
    for bp in [p, q] {
        if bp.path.first() != Some(&TwVertex::new(Part::Z, bp.b, bp.b))
            || bp.path.last() != Some(&TwVertex::new(Part::Z, bp.a, 0))
        {
            return Err(format!("bypass ({}, {}) has wrong ends", bp.a, bp.b));
        }
        for (t, x) in bp.path.iter().enumerate() {
            if !used.insert(*x) {
                return Err(format!("{} used twice", x.name()));
            }
            if t != 0 && t + 1 != bp.path.len() && x.part == Part::Z {
                return Err(format!("interior vertex {} in Z", x.name()));
            }
        }
        for e in bp.path.windows(2) {
            if !g.has_edge(ix[&e[0]], ix[&e[1]]) {
                return Err(format!("{} {} not adjacent", e[0].name(), e[1].name()));
            }
        }
    }
    let ((a, b), (a2, b2)) = ((p.a, p.b), (q.a, q.b));
    if (a < a2 && b2 < b) || (a > a2 && b2 > b) {
        Ok(())
    } else {
        Err(format!("({a}, {b}) and ({a2}, {b2}) do not cross"))
    }
}
