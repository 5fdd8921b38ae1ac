//! Weak order interval posets: posets on the values `1..=n` whose linear
//! extensions form a weak order interval, and the explicit bijections with
//! semi-crossing arc bidiagrams.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arc::{join_irreducible_inversions, meet_irreducible_noninversions, Arc};
use crate::diagram::{Ncad, Scab};
use crate::perm::{
    all_pairs_mask, close_inversions, pair_index, permutation_from_inversions, Permutation,
    MAX_PERM_N,
};

/// Guard for explicit linear extension enumeration.
pub const MAX_EXTENSION_N: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WoipError {
    #[error("relation pair ({0}, {1}) must satisfy 1 <= u < v <= n")]
    PairOutOfRange(u8, u8),
    #[error("not a weak order interval poset: {0}")]
    NotAWoip(String),
    #[error("{0} is not below {1} in the weak order")]
    NotAnInterval(Permutation, Permutation),
    #[error("size {size} exceeds guard {limit}")]
    SizeGuard { size: usize, limit: usize },
}

/// JSON shape: `{"n": n, "inc": [[u,v],...], "dec": [[u,v],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WoipJson {
    pub n: usize,
    pub inc: Vec<(u8, u8)>,
    pub dec: Vec<(u8, u8)>,
}

/// A weak order interval poset on values `1..=n`. Both relation sets store
/// pairs `(u, v)` with `u < v` numerically: an increasing relation puts `u`
/// before `v`, a decreasing relation puts `v` before `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Woip {
    n: u8,
    inc: BTreeSet<(u8, u8)>,
    dec: BTreeSet<(u8, u8)>,
}

impl Woip {
    /// Validates the defining conditions: the combined relation is a
    /// partial order, and for all `a < b < c` a relation between the
    /// extremes forces one on a side (`a < c` implies `a < b` or `b < c`,
    /// and dually for decreasing relations).
    pub fn new(
        n: usize,
        inc: impl IntoIterator<Item = (u8, u8)>,
        dec: impl IntoIterator<Item = (u8, u8)>,
    ) -> Result<Self, WoipError> {
        if n > MAX_PERM_N {
            return Err(WoipError::SizeGuard {
                size: n,
                limit: MAX_PERM_N,
            });
        }
        let inc: BTreeSet<(u8, u8)> = inc.into_iter().collect();
        let dec: BTreeSet<(u8, u8)> = dec.into_iter().collect();
        for &(u, v) in inc.iter().chain(&dec) {
            if u == 0 || u >= v || v as usize > n {
                return Err(WoipError::PairOutOfRange(u, v));
            }
        }
        if let Some(&(u, v)) = inc.intersection(&dec).next() {
            return Err(WoipError::NotAWoip(format!(
                "({u}, {v}) is both increasing and decreasing"
            )));
        }
        let w = Woip {
            n: n as u8,
            inc,
            dec,
        };
        // Transitivity of the combined precedence relation.
        let prec = w.precedence();
        for x in 1..=n {
            for y in 1..=n {
                if !prec[x][y] {
                    continue;
                }
                for (z, &related) in prec[x].iter().enumerate() {
                    if prec[y][z] && !related {
                        return Err(WoipError::NotAWoip(format!(
                            "missing transitive relation {x} before {z}"
                        )));
                    }
                }
            }
        }
        // The interval condition on triples a < b < c.
        for c in 3..=(n as u8) {
            for b in 2..c {
                for a in 1..b {
                    if w.inc.contains(&(a, c))
                        && !w.inc.contains(&(a, b))
                        && !w.inc.contains(&(b, c))
                    {
                        return Err(WoipError::NotAWoip(format!(
                            "increasing ({a}, {c}) lacks a side relation through {b}"
                        )));
                    }
                    if w.dec.contains(&(a, c))
                        && !w.dec.contains(&(a, b))
                        && !w.dec.contains(&(b, c))
                    {
                        return Err(WoipError::NotAWoip(format!(
                            "decreasing ({a}, {c}) lacks a side relation through {b}"
                        )));
                    }
                }
            }
        }
        Ok(w)
    }

    pub fn is_woip(
        n: usize,
        inc: impl IntoIterator<Item = (u8, u8)>,
        dec: impl IntoIterator<Item = (u8, u8)>,
    ) -> bool {
        Self::new(n, inc, dec).is_ok()
    }

    /// `prec[u][v]` iff `u` comes before `v` in every linear extension.
    fn precedence(&self) -> Vec<Vec<bool>> {
        let n = self.n as usize;
        let mut prec = vec![vec![false; n + 1]; n + 1];
        for &(u, v) in &self.inc {
            prec[u as usize][v as usize] = true;
        }
        for &(u, v) in &self.dec {
            prec[v as usize][u as usize] = true;
        }
        prec
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn inc(&self) -> &BTreeSet<(u8, u8)> {
        &self.inc
    }

    pub fn dec(&self) -> &BTreeSet<(u8, u8)> {
        &self.dec
    }

    /// Increasing relations are the non-inversions of the top, decreasing
    /// relations the inversions of the bottom.
    pub fn of_interval(x: &Permutation, y: &Permutation) -> Result<Self, WoipError> {
        if !x.weak_le(y) {
            return Err(WoipError::NotAnInterval(x.clone(), y.clone()));
        }
        let n = x.n();
        let inc = mask_to_pairs(y.noninversion_mask(), n);
        let dec = mask_to_pairs(x.inversion_mask(), n);
        Woip::new(n, inc, dec)
    }

    /// The interval bounds: the bottom has the decreasing relations as its
    /// inversions, the top has the increasing relations as its
    /// non-inversions.
    pub fn bounds(&self) -> (Permutation, Permutation) {
        let n = self.n();
        let dec_mask = pairs_to_mask(&self.dec);
        let inc_mask = pairs_to_mask(&self.inc);
        let bottom = permutation_from_inversions(n, dec_mask)
            .expect("decreasing relations of a WOIP form an inversion set");
        let top = permutation_from_inversions(n, all_pairs_mask(n) ^ inc_mask)
            .expect("increasing relations of a WOIP form a non-inversion set");
        (bottom, top)
    }

    /// Decreasing relations from the join arcs, increasing relations from
    /// the meet arcs, each closed transitively.
    pub fn from_scab(scab: &Scab) -> Woip {
        let n = scab.n();
        let dec_mask = close_inversions(
            scab.join_diagram()
                .arcs()
                .fold(0u128, |m, a| m | join_irreducible_inversions(a)),
            n,
        );
        let inc_mask = close_inversions(
            scab.meet_diagram()
                .arcs()
                .fold(0u128, |m, a| m | meet_irreducible_noninversions(a)),
            n,
        );
        Woip::new(n, mask_to_pairs(inc_mask, n), mask_to_pairs(dec_mask, n))
            .expect("a semi-crossing bidiagram induces an interval poset")
    }

    /// The inverse map: one join arc per maximal decreasing cover relation,
    /// one meet arc per maximal increasing cover relation, with the
    /// above/below sets read off the ideals of the poset.
    pub fn to_scab(&self) -> Scab {
        let n = self.n();
        let prec = self.precedence();
        let is_cover = |u: usize, v: usize| {
            prec[u][v] && !(1..=n).any(|z| prec[u][z] && prec[z][v])
        };
        // Ideals of the full interval poset.
        let below = |x: u8, p: u8| prec[p as usize][x as usize];
        let above = |x: u8, p: u8| prec[x as usize][p as usize];

        let mut join_arcs = Vec::new();
        let dec_covers: Vec<(u8, u8)> = self
            .dec
            .iter()
            .copied()
            .filter(|&(a, b)| is_cover(b as usize, a as usize))
            .collect();
        for &(a, b) in &dec_covers {
            let maximal = !dec_covers.iter().any(|&(a2, b2)| {
                (b2 == b && a2 < a) || (a2 == a && b2 > b)
            });
            if !maximal {
                continue;
            }
            let above_set: Vec<u8> = ((a + 1)..b).filter(|&p| below(a, p)).collect();
            let below_set: Vec<u8> = ((a + 1)..b).filter(|&p| above(b, p)).collect();
            join_arcs.push(
                Arc::new(a, b, above_set, below_set)
                    .expect("ideals split the span of a maximal cover"),
            );
        }

        let mut meet_arcs = Vec::new();
        let inc_covers: Vec<(u8, u8)> = self
            .inc
            .iter()
            .copied()
            .filter(|&(a, b)| is_cover(a as usize, b as usize))
            .collect();
        for &(a, b) in &inc_covers {
            let maximal = !inc_covers.iter().any(|&(a2, b2)| {
                (b2 == b && a2 < a) || (a2 == a && b2 > b)
            });
            if !maximal {
                continue;
            }
            let above_set: Vec<u8> = ((a + 1)..b).filter(|&p| below(b, p)).collect();
            let below_set: Vec<u8> = ((a + 1)..b).filter(|&p| above(a, p)).collect();
            meet_arcs.push(
                Arc::new(a, b, above_set, below_set)
                    .expect("ideals split the span of a maximal cover"),
            );
        }

        let join_diagram = Ncad::new(n, join_arcs).expect("maximal covers give a join diagram");
        let meet_diagram = Ncad::new(n, meet_arcs).expect("maximal covers give a meet diagram");
        Scab::new(join_diagram, meet_diagram).expect("diagram pair of one poset semi-crosses")
    }

    /// All linear extensions, as permutations in one-line notation.
    pub fn linear_extensions(&self) -> Result<Vec<Permutation>, WoipError> {
        let n = self.n();
        if n > MAX_EXTENSION_N {
            return Err(WoipError::SizeGuard {
                size: n,
                limit: MAX_EXTENSION_N,
            });
        }
        let prec = self.precedence();
        let mut out = Vec::new();
        let mut used = vec![false; n + 1];
        let mut current = Vec::with_capacity(n);
        extend(&prec, n, &mut used, &mut current, &mut out);
        Ok(out)
    }

    pub fn to_json(&self) -> WoipJson {
        WoipJson {
            n: self.n(),
            inc: self.inc.iter().copied().collect(),
            dec: self.dec.iter().copied().collect(),
        }
    }

    pub fn from_json(json: &WoipJson) -> Result<Self, WoipError> {
        Woip::new(json.n, json.inc.iter().copied(), json.dec.iter().copied())
    }
}

fn extend(
    prec: &[Vec<bool>],
    n: usize,
    used: &mut Vec<bool>,
    current: &mut Vec<u8>,
    out: &mut Vec<Permutation>,
) {
    if current.len() == n {
        out.push(Permutation::new(current.clone()).unwrap());
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        // v is placeable if every value that must precede it is placed.
        if (1..=n).all(|u| used[u] || !prec[u][v]) {
            used[v] = true;
            current.push(v as u8);
            extend(prec, n, used, current, out);
            current.pop();
            used[v] = false;
        }
    }
}

fn mask_to_pairs(mask: u128, n: usize) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for v in 2..=(n as u8) {
        for u in 1..v {
            if mask >> pair_index(u, v) & 1 == 1 {
                out.push((u, v));
            }
        }
    }
    out
}

fn pairs_to_mask(pairs: &BTreeSet<(u8, u8)>) -> u128 {
    pairs
        .iter()
        .fold(0u128, |m, &(u, v)| m | (1 << pair_index(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::weak_order_lattice;

    fn perm(v: &[u8]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn empty_relations_are_a_woip() {
        let w = Woip::new(3, [], []).unwrap();
        let exts = w.linear_extensions().unwrap();
        assert_eq!(exts.len(), 6);
        let (lo, hi) = w.bounds();
        assert_eq!(lo, Permutation::identity(3));
        assert_eq!(hi, Permutation::reversed(3));
    }

    #[test]
    fn lone_long_increasing_relation_is_rejected() {
        assert!(!Woip::is_woip(3, [(1, 3)], []));
        assert!(Woip::is_woip(3, [(2, 3)], [(1, 2)]));
    }

    #[test]
    fn interval_213_231() {
        let w = Woip::of_interval(&perm(&[2, 1, 3]), &perm(&[2, 3, 1])).unwrap();
        assert_eq!(w.inc(), &[(2, 3)].into());
        assert_eq!(w.dec(), &[(1, 2)].into());
        let exts: BTreeSet<Permutation> =
            w.linear_extensions().unwrap().into_iter().collect();
        assert_eq!(exts, [perm(&[2, 1, 3]), perm(&[2, 3, 1])].into());
    }

    #[test]
    fn singleton_interval_is_total_order() {
        let p = perm(&[2, 1, 3]);
        let w = Woip::of_interval(&p, &p).unwrap();
        assert_eq!(w.linear_extensions().unwrap(), vec![p]);
        assert_eq!(w.inc(), &[(1, 3), (2, 3)].into());
        assert_eq!(w.dec(), &[(1, 2)].into());
    }

    #[test]
    fn scab_to_woip_of_singleton_213() {
        let p = perm(&[2, 1, 3]);
        let s = Scab::of_interval(&p, &p).unwrap();
        let w = Woip::from_scab(&s);
        assert_eq!(w.dec(), &[(1, 2)].into());
        assert_eq!(w.inc(), &[(1, 3), (2, 3)].into());
    }

    #[test]
    fn woip_to_scab_of_interval_213_231() {
        let w = Woip::new(3, [(2, 3)], [(1, 2)]).unwrap();
        let s = w.to_scab();
        assert_eq!(s.join_diagram().to_json(), vec!["1-2||"]);
        assert_eq!(s.meet_diagram().to_json(), vec!["2-3||"]);
    }

    #[test]
    fn round_trips_s4_exhaustive() {
        let w = weak_order_lattice(4).unwrap();
        for x in 0..w.lattice.size() {
            for y in w.lattice.up_set(x) {
                let (px, py) = (w.permutation(x), w.permutation(y));
                let scab = Scab::of_interval(px, py).unwrap();
                let woip = Woip::from_scab(&scab);
                // scab_to_woip agrees with woip_of_interval.
                assert_eq!(woip, Woip::of_interval(px, py).unwrap());
                // Bounds recover the interval.
                assert_eq!(woip.bounds(), (px.clone(), py.clone()));
                // Inverse bijection.
                assert_eq!(woip.to_scab(), scab);
                // Linear extensions are exactly the interval.
                let exts: BTreeSet<Permutation> =
                    woip.linear_extensions().unwrap().into_iter().collect();
                let want: BTreeSet<Permutation> = (0..w.lattice.size())
                    .filter(|&z| w.lattice.leq(x, z) && w.lattice.leq(z, y))
                    .map(|z| w.permutation(z).clone())
                    .collect();
                assert_eq!(exts, want);
            }
        }
    }

    #[test]
    fn woips_of_s4_all_validate() {
        // Every poset passing Woip::new has linear extensions forming an
        // interval, and vice versa intervals validate.
        let w = weak_order_lattice(4).unwrap();
        for x in 0..w.lattice.size() {
            for y in w.lattice.up_set(x) {
                assert!(Woip::of_interval(w.permutation(x), w.permutation(y)).is_ok());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let w = Woip::new(3, [(2, 3)], [(1, 2)]).unwrap();
        let j = w.to_json();
        assert_eq!(Woip::from_json(&j).unwrap(), w);
    }

    /// For transitively closed relation assignments, validation is
    /// equivalent to the linear extensions forming a weak order interval;
    /// non-closed assignments are always rejected.
    #[test]
    fn validation_is_equivalent_to_extensions_forming_an_interval() {
        for n in 2..=4usize {
            let pairs: Vec<(u8, u8)> = (1..=n as u8)
                .flat_map(|u| ((u + 1)..=n as u8).map(move |v| (u, v)))
                .collect();
            let mut assignment = vec![0u8; pairs.len()];
            'assignments: loop {
                let inc: Vec<(u8, u8)> = pairs
                    .iter()
                    .zip(&assignment)
                    .filter(|(_, &c)| c == 1)
                    .map(|(&p, _)| p)
                    .collect();
                let dec: Vec<(u8, u8)> = pairs
                    .iter()
                    .zip(&assignment)
                    .filter(|(_, &c)| c == 2)
                    .map(|(&p, _)| p)
                    .collect();
                let is_woip = Woip::is_woip(n, inc.iter().copied(), dec.iter().copied());
                // Combined precedence digraph and its transitive closure.
                let mut prec = vec![vec![false; n + 1]; n + 1];
                for &(u, v) in &inc {
                    prec[u as usize][v as usize] = true;
                }
                for &(u, v) in &dec {
                    prec[v as usize][u as usize] = true;
                }
                let mut closed = prec.clone();
                for z in 1..=n {
                    for x in 1..=n {
                        for y in 1..=n {
                            if closed[x][z] && closed[z][y] {
                                closed[x][y] = true;
                            }
                        }
                    }
                }
                if closed != prec {
                    assert!(!is_woip, "non-closed relation accepted: {inc:?} {dec:?}");
                } else {
                    // Independent route: orderings consistent with the
                    // relations, tested for interval-ness directly.
                    let consistent: Vec<Permutation> = all_perms(n)
                        .into_iter()
                        .filter(|p| {
                            let pos = p.positions();
                            inc.iter().all(|&(u, v)| pos[u as usize] < pos[v as usize])
                                && dec.iter().all(|&(u, v)| pos[v as usize] < pos[u as usize])
                        })
                        .collect();
                    let is_interval = !consistent.is_empty() && {
                        let lo = consistent
                            .iter()
                            .find(|p| consistent.iter().all(|q| p.weak_le(q)));
                        let hi = consistent
                            .iter()
                            .find(|p| consistent.iter().all(|q| q.weak_le(p)));
                        match (lo, hi) {
                            (Some(lo), Some(hi)) => {
                                let inside = all_perms(n)
                                    .into_iter()
                                    .filter(|z| lo.weak_le(z) && z.weak_le(hi))
                                    .count();
                                inside == consistent.len()
                            }
                            _ => false,
                        }
                    };
                    assert_eq!(is_woip, is_interval, "n={n} inc={inc:?} dec={dec:?}");
                }
                // Next assignment in base 3.
                let mut k = 0;
                loop {
                    if k == assignment.len() {
                        break 'assignments;
                    }
                    assignment[k] += 1;
                    if assignment[k] < 3 {
                        break;
                    }
                    assignment[k] = 0;
                    k += 1;
                }
            }
        }
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(n)];
        loop {
            let mut v = out.last().unwrap().one_line().to_vec();
            let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
                break;
            };
            let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
            v.swap(i, j);
            v[i + 1..].reverse();
            out.push(Permutation::new(v).unwrap());
        }
        out
    }
}
