//! Cyclic sequences and the order relations between them.

use alloc::vec::Vec;

use crate::error::{bail, Result};

/// A finite sequence considered up to cyclic shift.
#[derive(Debug, Clone)]
pub struct CyclicSeq<T>(pub Vec<T>);

impl<T: PartialEq> PartialEq for CyclicSeq<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.0, &other.0);
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
    }
}

impl<T: Eq> Eq for CyclicSeq<T> {}

impl<T> CyclicSeq<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }
}

impl<T: Clone> CyclicSeq<T> {
    /// The shift starting at position `s`.
    pub fn shifted(&self, s: usize) -> Vec<T> {
        let n = self.0.len();
        (0..n).map(|i| self.0[(s + i) % n].clone()).collect()
    }
}

/// Whether some cyclic shift of `whole` contains `sub` as a (not necessarily
/// contiguous) subsequence.
pub fn cyclically_ordered<T: PartialEq>(sub: &[T], whole: &[T]) -> bool {
    if sub.is_empty() {
        return true;
    }
    let n = whole.len();
    if sub.len() > n {
        return false;
    }
    (0..n).any(|s| {
        let mut k = 0;
        for i in 0..n {
            if whole[(s + i) % n] == sub[k] {
                k += 1;
                if k == sub.len() {
                    return true;
                }
            }
        }
        false
    })
}

/// Outcome of [`order_relation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderRelation {
    Preserving,
    Reversing,
    Neither,
}

impl OrderRelation {
    /// True for `Reversing`, and for maps too small to tell the two apart.
    pub fn allows_reversing(self, domain_len: usize) -> bool {
        self == OrderRelation::Reversing || domain_len <= 2
    }

    pub fn allows_preserving(self, domain_len: usize) -> bool {
        self == OrderRelation::Preserving || domain_len <= 2
    }
}

/// Classifies the partial injection `phi` (given as pairs) from the cyclic
/// sequence `from` to the cyclic sequence `to`.
///
/// Maps with at most two points are reported as preserving.
pub fn order_relation<T: PartialEq>(phi: &[(T, T)], from: &[T], to: &[T]) -> Result<OrderRelation> {
    for (i, (a, b)) in phi.iter().enumerate() {
        for (c, d) in &phi[..i] {
            if a == c || b == d {
                bail!(Contract, "map is not an injective function");
            }
        }
    }
    let mut located = Vec::with_capacity(phi.len());
    for (a, b) in phi {
        let Some(p) = from.iter().position(|x| x == a) else {
            bail!(Contract, "domain point missing from its sequence");
        };
        if !to.contains(b) {
            bail!(Contract, "image point missing from its sequence");
        }
        located.push((p, b));
    }
    if phi.len() <= 2 {
        return Ok(OrderRelation::Preserving);
    }
    located.sort_by_key(|&(p, _)| p);
    let mut images: Vec<&T> = located.iter().map(|&(_, b)| b).collect();
    let to_refs: Vec<&T> = to.iter().collect();
    if cyclically_ordered(&images, &to_refs) {
        return Ok(OrderRelation::Preserving);
    }
    images.reverse();
    if cyclically_ordered(&images, &to_refs) {
        return Ok(OrderRelation::Reversing);
    }
    Ok(OrderRelation::Neither)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn subsequence_under_shift() {
        let w = ['a', 'b', 'c', 'd'];
        assert!(cyclically_ordered(&['a', 'c'], &w));
        assert!(cyclically_ordered(&['c', 'a'], &w));
        assert!(!cyclically_ordered(&['b', 'a', 'c'], &w));
        assert!(cyclically_ordered(&['d', 'a', 'b'], &w));
    }

    #[test]
    fn relation_examples() {
        let id = [('a', 'a'), ('b', 'b'), ('c', 'c')];
        assert_eq!(order_relation(&id, &['a', 'b', 'c'], &['a', 'b', 'c']).unwrap(), OrderRelation::Preserving);
        let rev = [('a', 'x'), ('b', 'z'), ('c', 'y')];
        assert_eq!(order_relation(&rev, &['a', 'b', 'c'], &['x', 'y', 'z']).unwrap(), OrderRelation::Reversing);
        let mixed = [(0, 0), (1, 2), (2, 1), (3, 3)];
        assert_eq!(order_relation(&mixed, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap(), OrderRelation::Neither);
        assert!(order_relation(&[(0, 1), (1, 1)], &[0, 1], &[1]).is_err());
    }

    #[test]
    fn cyclic_equality() {
        assert_eq!(CyclicSeq(vec![1, 2, 3]), CyclicSeq(vec![3, 1, 2]));
        assert_ne!(CyclicSeq(vec![1, 2, 3]), CyclicSeq(vec![3, 2, 1]));
    }
}
