//! Distributive lattices of lower sets of a poset, and rowmotion on
//! antichains. This is the reference family where the kappa and Kreweras
//! maps have closed combinatorial descriptions.

use std::collections::HashMap;

use crate::lattice::{ElementId, FiniteLattice, LatticeError};
use crate::poset::{Poset, PosetError};
use crate::Side;

/// A distributive lattice realized as the lower sets of a poset, ordered by
/// inclusion. Lower sets are stored as point bitmasks; element ids follow
/// the (cardinality, mask) order.
pub struct DistributiveLattice {
    pub lattice: FiniteLattice,
    pub poset: Poset,
    lower_sets: Vec<u32>,
    index: HashMap<u32, usize>,
}

impl DistributiveLattice {
    pub fn lower_sets(&self) -> &[u32] {
        &self.lower_sets
    }

    pub fn lower_set(&self, id: ElementId) -> u32 {
        self.lower_sets[id]
    }

    pub fn id_of(&self, mask: u32) -> Option<ElementId> {
        self.index.get(&mask).copied()
    }

    /// The principal lower set of `y` — the join irreducible attached to `y`.
    pub fn principal_id(&self, y: usize) -> ElementId {
        let mask: u32 = (0..self.poset.size())
            .filter(|&x| self.poset.le(x, y))
            .fold(0, |m, x| m | (1 << x));
        self.index[&mask]
    }

    /// The lower set of points not above `y` — the meet irreducible
    /// attached to `y`.
    pub fn complement_id(&self, y: usize) -> ElementId {
        let mask: u32 = (0..self.poset.size())
            .filter(|&x| !self.poset.le(y, x))
            .fold(0, |m, x| m | (1 << x));
        self.index[&mask]
    }

    /// Lower set generated by an antichain.
    pub fn generated_id(&self, antichain: &[usize]) -> ElementId {
        let mask: u32 = (0..self.poset.size())
            .filter(|&x| antichain.iter().any(|&y| self.poset.le(x, y)))
            .fold(0, |m, x| m | (1 << x));
        self.index[&mask]
    }

    /// Lower set of points above no member of the antichain.
    pub fn avoiding_id(&self, antichain: &[usize]) -> ElementId {
        let mask: u32 = (0..self.poset.size())
            .filter(|&x| antichain.iter().all(|&y| !self.poset.le(y, x)))
            .fold(0, |m, x| m | (1 << x));
        self.index[&mask]
    }
}

const MAX_POSET_POINTS: usize = 20;

/// The lattice of lower sets of `poset`, with join = union and
/// meet = intersection.
pub fn distributive_from_poset(poset: &Poset) -> Result<DistributiveLattice, LatticeError> {
    let k = poset.size();
    if k > MAX_POSET_POINTS {
        return Err(LatticeError::SizeGuard {
            size: k,
            limit: MAX_POSET_POINTS,
        });
    }
    let mut strict_down = vec![0u32; k];
    for (x, down) in strict_down.iter_mut().enumerate() {
        for y in 0..k {
            if poset.lt(y, x) {
                *down |= 1 << y;
            }
        }
    }
    let mut lower_sets = Vec::new();
    for mask in 0u32..(1 << k) {
        let closed = (0..k)
            .filter(|&x| mask & (1 << x) != 0)
            .all(|x| strict_down[x] & !mask == 0);
        if closed {
            lower_sets.push(mask);
        }
    }
    if lower_sets.len() > crate::lattice::MAX_LATTICE_SIZE {
        return Err(LatticeError::SizeGuard {
            size: lower_sets.len(),
            limit: crate::lattice::MAX_LATTICE_SIZE,
        });
    }
    lower_sets.sort_unstable_by_key(|&m| (m.count_ones(), m));
    let index: HashMap<u32, usize> = lower_sets
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    // Covers add exactly one point.
    let mut covers = Vec::new();
    for (i, &s) in lower_sets.iter().enumerate() {
        for x in 0..k {
            if s & (1 << x) == 0 {
                if let Some(&j) = index.get(&(s | (1 << x))) {
                    covers.push((i, j));
                }
            }
        }
    }
    let labels: Vec<String> = lower_sets.iter().map(|&m| mask_label(m, k)).collect();
    let lattice = FiniteLattice::build_labeled(lower_sets.len(), &covers, Some(labels))?;
    Ok(DistributiveLattice {
        lattice,
        poset: poset.clone(),
        lower_sets,
        index,
    })
}

fn mask_label(mask: u32, k: usize) -> String {
    let pts: Vec<String> = (0..k)
        .filter(|&x| mask & (1 << x) != 0)
        .map(|x| (x + 1).to_string())
        .collect();
    format!("{{{}}}", pts.join(","))
}

/// Rowmotion on antichains of a poset.
///
/// - `Side::Join`: maximal elements of the lower set of points above no
///   member of `antichain`.
/// - `Side::Meet`: minimal elements of the complement of the lower set
///   generated by `antichain`.
pub fn rowmotion(
    poset: &Poset,
    antichain: &[usize],
    direction: Side,
) -> Result<Vec<usize>, PosetError> {
    for &x in antichain {
        if x >= poset.size() {
            return Err(PosetError::PointOutOfRange(x, poset.size()));
        }
    }
    if !poset.is_antichain(antichain) {
        return Err(PosetError::NotAnAntichain(antichain.to_vec()));
    }
    match direction {
        Side::Join => {
            let m_a: Vec<usize> = (0..poset.size())
                .filter(|&x| antichain.iter().all(|&y| !poset.le(y, x)))
                .collect();
            Ok(poset.maximal_of(&m_a))
        }
        Side::Meet => {
            let j_a = poset.lower_set_of(antichain);
            let rest: Vec<usize> = (0..poset.size()).filter(|x| !j_a.contains(x)).collect();
            Ok(poset.minimal_of(&rest))
        }
    }
}
