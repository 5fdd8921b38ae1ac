//! Permutations in one-line notation, inversion sets, and the weak order
//! lattice.

use std::collections::HashMap;

use thiserror::Error;

use crate::lattice::{FiniteLattice, LatticeError};

/// Points and values are 1-based and bounded so that inversion sets fit in
/// machine words.
pub const MAX_PERM_N: usize = 16;

/// Guard for materializing the full weak order lattice (n! elements).
pub const MAX_WEAK_ORDER_N: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("one-line sequence {0:?} is not a permutation of 1..=n")]
    NotAPermutation(Vec<u8>),
    #[error("size {size} exceeds guard {limit}")]
    SizeGuard { size: usize, limit: usize },
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<u8>,
}

/// Triangular index of a value pair `u < v` into an inversion bitmask.
#[inline]
pub(crate) fn pair_index(u: u8, v: u8) -> u32 {
    debug_assert!(u < v);
    let (u, v) = (u as u32, v as u32);
    (v - 1) * (v - 2) / 2 + (u - 1)
}

pub(crate) fn all_pairs_mask(n: usize) -> u128 {
    let bits = n * (n - 1) / 2;
    if bits == 0 {
        0
    } else {
        (!0u128) >> (128 - bits)
    }
}

/// Closes an inversion mask under `(u,v),(v,w) -> (u,w)` for `u < v < w`.
pub(crate) fn close_inversions(mut mask: u128, n: usize) -> u128 {
    loop {
        let mut changed = false;
        for v in 2..=(n as u8).saturating_sub(1) {
            for u in 1..v {
                if mask >> pair_index(u, v) & 1 == 0 {
                    continue;
                }
                for w in (v + 1)..=(n as u8) {
                    if mask >> pair_index(v, w) & 1 == 1 && mask >> pair_index(u, w) & 1 == 0 {
                        mask |= 1 << pair_index(u, w);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return mask;
        }
    }
}

impl Permutation {
    pub fn new(one_line: Vec<u8>) -> Result<Self, PermError> {
        let n = one_line.len();
        if n > MAX_PERM_N {
            return Err(PermError::SizeGuard {
                size: n,
                limit: MAX_PERM_N,
            });
        }
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(PermError::NotAPermutation(one_line.clone()));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            one_line: (1..=n as u8).collect(),
        }
    }

    pub fn reversed(n: usize) -> Self {
        Permutation {
            one_line: (1..=n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.one_line
    }

    /// 1-based position of each value.
    pub fn positions(&self) -> Vec<u8> {
        let mut pos = vec![0u8; self.n() + 1];
        for (i, &v) in self.one_line.iter().enumerate() {
            pos[v as usize] = (i + 1) as u8;
        }
        pos
    }

    /// Value pairs `(u, v)` with `u < v` and `u` appearing after `v`.
    pub fn inversions(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        let n = self.n() as u8;
        let mask = self.inversion_mask();
        for v in 2..=n {
            for u in 1..v {
                if mask >> pair_index(u, v) & 1 == 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn inversion_mask(&self) -> u128 {
        let mut mask = 0u128;
        for (i, &a) in self.one_line.iter().enumerate() {
            for &b in &self.one_line[i + 1..] {
                if b < a {
                    mask |= 1 << pair_index(b, a);
                }
            }
        }
        mask
    }

    pub fn noninversion_mask(&self) -> u128 {
        all_pairs_mask(self.n()) ^ self.inversion_mask()
    }

    /// Weak order comparison: containment of inversion sets.
    pub fn weak_le(&self, other: &Permutation) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.inversion_mask() & !other.inversion_mask() == 0
    }

    /// 1-based positions `i` with `p_i > p_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.one_line[i - 1] > self.one_line[i])
            .collect()
    }

    /// 1-based positions `i` with `p_i < p_{i+1}`.
    pub fn ascents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.one_line[i - 1] < self.one_line[i])
            .collect()
    }

    /// Swaps the entries at 1-based positions `i`, `i+1`.
    pub fn swap_at(&self, i: usize) -> Permutation {
        let mut v = self.one_line.clone();
        v.swap(i - 1, i);
        Permutation { one_line: v }
    }

    pub fn parse(text: &str) -> Result<Self, PermError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(PermError::Parse(text.to_string()));
        }
        let vals: Result<Vec<u8>, _> = trimmed.split(',').map(|t| t.trim().parse::<u8>()).collect();
        match vals {
            Ok(v) => Permutation::new(v),
            Err(_) => Err(PermError::Parse(text.to_string())),
        }
    }
}

/// The permutation whose inversion set is exactly `mask`, when `mask` is a
/// valid inversion set. Each value's position is the number of values
/// preceding it under the mask; collisions or a mismatched inversion set
/// yield `None`.
pub(crate) fn permutation_from_inversions(n: usize, mask: u128) -> Option<Permutation> {
    let mut one_line = vec![0u8; n];
    for v in 1..=n as u8 {
        let mut before = 0usize;
        for u in 1..v {
            if mask >> pair_index(u, v) & 1 == 0 {
                before += 1;
            }
        }
        for w in (v + 1)..=(n as u8) {
            if mask >> pair_index(v, w) & 1 == 1 {
                before += 1;
            }
        }
        if one_line[before] != 0 {
            return None;
        }
        one_line[before] = v;
    }
    let p = Permutation { one_line };
    (p.inversion_mask() == mask).then_some(p)
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// The weak order on all permutations of `1..=n` as a finite lattice, with
/// the permutations attached as element labels.
pub struct WeakOrder {
    pub lattice: FiniteLattice,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl WeakOrder {
    pub fn n(&self) -> usize {
        if self.perms.is_empty() {
            0
        } else {
            self.perms[0].n()
        }
    }

    pub fn permutation(&self, id: usize) -> &Permutation {
        &self.perms[id]
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn id_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// Builds the weak order lattice: covers swap an ascent; the order agrees
/// with inversion-set containment.
pub fn weak_order_lattice(n: usize) -> Result<WeakOrder, LatticeError> {
    if n == 0 || n > MAX_WEAK_ORDER_N {
        return Err(LatticeError::SizeGuard {
            size: n,
            limit: MAX_WEAK_ORDER_N,
        });
    }
    let mut perms = vec![Permutation::identity(n)];
    // Lexicographic generation.
    loop {
        let last = perms.last().unwrap().one_line.clone();
        let mut v = last;
        // next_permutation
        let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
            break;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        perms.push(Permutation { one_line: v });
    }
    let index: HashMap<Permutation, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut covers = Vec::new();
    for (i, p) in perms.iter().enumerate() {
        for a in p.ascents() {
            let q = p.swap_at(a);
            covers.push((i, index[&q]));
        }
    }
    let labels: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
    let lattice = FiniteLattice::build_labeled(perms.len(), &covers, Some(labels))?;
    Ok(WeakOrder {
        lattice,
        perms,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(vals: &[u8]) -> Permutation {
        Permutation::new(vals.to_vec()).unwrap()
    }

    #[test]
    fn inversions_basic() {
        assert!(perm(&[1, 2, 3]).inversions().is_empty());
        assert_eq!(perm(&[2, 3, 1]).inversions(), vec![(1, 2), (1, 3)]);
        let n = 5;
        let rev = Permutation::reversed(n);
        assert_eq!(rev.inversions().len(), n * (n - 1) / 2);
    }

    #[test]
    fn parse_display_round_trip() {
        let p = Permutation::parse("2,5,3,7,1,4,6").unwrap();
        assert_eq!(p.to_string(), "2,5,3,7,1,4,6");
        assert!(Permutation::parse("2,2,1").is_err());
        assert!(Permutation::parse("").is_err());
    }

    #[test]
    fn weak_order_small_sizes() {
        let w2 = weak_order_lattice(2).unwrap();
        assert_eq!(w2.lattice.size(), 2);
        assert_eq!(w2.lattice.covers().len(), 1);

        let w3 = weak_order_lattice(3).unwrap();
        assert_eq!(w3.lattice.size(), 6);
        assert_eq!(w3.lattice.covers().len(), 6);
        assert!(w3.lattice.is_semidistributive());
    }

    #[test]
    fn lattice_order_is_inversion_containment() {
        let w = weak_order_lattice(4).unwrap();
        let n = w.lattice.size();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(
                    w.lattice.leq(x, y),
                    w.permutation(x).weak_le(w.permutation(y)),
                    "{} vs {}",
                    w.permutation(x),
                    w.permutation(y)
                );
            }
        }
    }

    #[test]
    fn s3_join_of_231_and_312_is_321() {
        let w = weak_order_lattice(3).unwrap();
        let a = w.id_of(&perm(&[2, 3, 1])).unwrap();
        let b = w.id_of(&perm(&[3, 1, 2])).unwrap();
        let j = w.lattice.join(a, b);
        assert_eq!(w.permutation(j), &perm(&[3, 2, 1]));
    }

    #[test]
    fn s3_cover_joinands() {
        let w = weak_order_lattice(3).unwrap();
        let id = |v: &[u8]| w.id_of(&perm(v)).unwrap();
        assert_eq!(
            w.lattice.cover_joinand(id(&[3, 1, 2]), id(&[3, 2, 1])).unwrap(),
            id(&[2, 1, 3])
        );
        assert_eq!(
            w.lattice.cover_joinand(id(&[2, 3, 1]), id(&[3, 2, 1])).unwrap(),
            id(&[1, 3, 2])
        );
        // cjr(321) = {213, 132}
        let r = w.lattice.cjr(id(&[3, 2, 1])).unwrap();
        let want: std::collections::BTreeSet<usize> =
            [id(&[2, 1, 3]), id(&[1, 3, 2])].into_iter().collect();
        assert_eq!(r.members(), &want);
    }

    #[test]
    fn s3_kappa_examples() {
        let w = weak_order_lattice(3).unwrap();
        let id = |v: &[u8]| w.id_of(&perm(v)).unwrap();
        assert_eq!(w.lattice.kappa_meet(id(&[2, 1, 3])).unwrap(), id(&[3, 1, 2]));
        assert_eq!(w.lattice.kappa_join(id(&[3, 1, 2])).unwrap(), id(&[2, 1, 3]));
    }

    #[test]
    fn inversion_reconstruction_round_trip() {
        let w = weak_order_lattice(4).unwrap();
        for p in w.permutations() {
            let q = permutation_from_inversions(4, p.inversion_mask()).unwrap();
            assert_eq!(&q, p);
        }
        // An invalid inversion set: (1,3) alone is not closed downward.
        let bogus = 1u128 << pair_index(1, 3);
        assert!(permutation_from_inversions(3, bogus).is_none());
    }

    #[test]
    fn join_via_inversion_closure_matches_lattice() {
        let w = weak_order_lattice(4).unwrap();
        for x in 0..w.lattice.size() {
            for y in 0..w.lattice.size() {
                let mask = close_inversions(
                    w.permutation(x).inversion_mask() | w.permutation(y).inversion_mask(),
                    4,
                );
                let j = permutation_from_inversions(4, mask).unwrap();
                assert_eq!(w.permutation(w.lattice.join(x, y)), &j);
            }
        }
    }
}
