//! Lattice congruences: generation by closure, principal congruences,
//! the forcing preorder on join irreducibles, and quotient lattices.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitMatrix;
use crate::lattice::{ElementId, FiniteLattice, LatticeError, LatticeJson, Representation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("element {0} out of range for lattice of size {1}")]
    ElementOutOfRange(usize, usize),
    #[error("element {0} is not join irreducible")]
    NotIrreducible(ElementId),
    #[error("not an upper set of the forcing preorder: {forcer} forces {forced}, {forced} is kept but {forcer} is not")]
    NotAnUpperSet { forcer: ElementId, forced: ElementId },
    #[error("classes do not partition the lattice elements")]
    NotAPartition,
    #[error("class {0:?} is not an interval")]
    ClassNotInterval(Vec<ElementId>),
    #[error("class projections are not order preserving")]
    ProjectionNotMonotone,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// JSON shape for congruences: explicit classes over an inline lattice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub lattice: LatticeJson,
    pub classes: Vec<Vec<usize>>,
}

/// A lattice congruence, stored as the class partition together with the
/// order-preserving projections onto class minima and maxima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<ElementId>>,
    proj_down: Vec<ElementId>,
    proj_up: Vec<ElementId>,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // Keep the smaller id as representative for determinism.
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

impl Congruence {
    /// The smallest congruence identifying the given pairs: a union-find
    /// fixpoint over the obligations x = y  =>  x v z = y v z and
    /// x ^ z = y ^ z. Merges only shrink the class count, so it terminates.
    pub fn generated_by(
        lattice: &FiniteLattice,
        pairs: &[(ElementId, ElementId)],
    ) -> Result<Self, CongruenceError> {
        let n = lattice.size();
        for &(x, y) in pairs {
            if x >= n {
                return Err(CongruenceError::ElementOutOfRange(x, n));
            }
            if y >= n {
                return Err(CongruenceError::ElementOutOfRange(y, n));
            }
        }
        let mut dsu = Dsu::new(n);
        let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
        while let Some((x, y)) = queue.pop_front() {
            if !dsu.union(x, y) {
                continue;
            }
            for z in 0..n {
                let (a, b) = (lattice.join(x, z), lattice.join(y, z));
                if dsu.find(a) != dsu.find(b) {
                    queue.push_back((a, b));
                }
                let (c, d) = (lattice.meet(x, z), lattice.meet(y, z));
                if dsu.find(c) != dsu.find(d) {
                    queue.push_back((c, d));
                }
            }
        }
        let c = Self::from_dsu(lattice, &mut dsu);
        debug_assert!(c.validate(lattice).is_ok());
        Ok(c)
    }

    fn from_dsu(lattice: &FiniteLattice, dsu: &mut Dsu) -> Self {
        let n = lattice.size();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = dsu.find(x);
            members[r].push(x);
        }
        let classes: Vec<Vec<usize>> = members.into_iter().filter(|c| !c.is_empty()).collect();
        Self::from_partition(lattice, classes)
    }

    fn from_partition(lattice: &FiniteLattice, classes: Vec<Vec<ElementId>>) -> Self {
        let n = lattice.size();
        let mut class_of = vec![usize::MAX; n];
        let mut proj_down = vec![0; n];
        let mut proj_up = vec![0; n];
        for (i, class) in classes.iter().enumerate() {
            let lo = class
                .iter()
                .copied()
                .reduce(|a, b| lattice.meet(a, b))
                .expect("nonempty class");
            let hi = class
                .iter()
                .copied()
                .reduce(|a, b| lattice.join(a, b))
                .expect("nonempty class");
            for &x in class {
                class_of[x] = i;
                proj_down[x] = lo;
                proj_up[x] = hi;
            }
        }
        Congruence {
            class_of,
            classes,
            proj_down,
            proj_up,
        }
    }

    /// The minimal congruence contracting a join irreducible `j`,
    /// generated by `(j_star, j)`.
    pub fn principal(lattice: &FiniteLattice, j: ElementId) -> Result<Self, CongruenceError> {
        if j >= lattice.size() {
            return Err(CongruenceError::ElementOutOfRange(j, lattice.size()));
        }
        let lo = lattice
            .irreducibles()
            .lower_cover_of_ji(j)
            .ok_or(CongruenceError::NotIrreducible(j))?;
        Self::generated_by(lattice, &[(lo, j)])
    }

    pub fn trivial(lattice: &FiniteLattice) -> Self {
        Self::from_partition(lattice, (0..lattice.size()).map(|x| vec![x]).collect())
    }

    pub fn full(lattice: &FiniteLattice) -> Self {
        Self::from_partition(lattice, vec![(0..lattice.size()).collect()])
    }

    /// Validates explicit classes: a partition into lattice intervals with
    /// order-preserving projections (the definitional characterization).
    pub fn from_classes(
        lattice: &FiniteLattice,
        classes: Vec<Vec<ElementId>>,
    ) -> Result<Self, CongruenceError> {
        let n = lattice.size();
        let mut seen = vec![false; n];
        for class in &classes {
            if class.is_empty() {
                return Err(CongruenceError::NotAPartition);
            }
            for &x in class {
                if x >= n {
                    return Err(CongruenceError::ElementOutOfRange(x, n));
                }
                if seen[x] {
                    return Err(CongruenceError::NotAPartition);
                }
                seen[x] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(CongruenceError::NotAPartition);
        }
        let mut classes = classes;
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort_unstable_by_key(|c| c[0]);
        let cong = Self::from_partition(lattice, classes);
        cong.validate(lattice)?;
        Ok(cong)
    }

    /// Interval classes + monotone projections.
    fn validate(&self, lattice: &FiniteLattice) -> Result<(), CongruenceError> {
        for class in &self.classes {
            let lo = self.proj_down[class[0]];
            let hi = self.proj_up[class[0]];
            let interval: Vec<usize> = lattice
                .up_set(lo)
                .filter(|&z| lattice.leq(z, hi))
                .collect();
            let sorted: Vec<usize> = class.clone();
            if interval != sorted {
                return Err(CongruenceError::ClassNotInterval(class.clone()));
            }
        }
        for &(lo, hi) in lattice.covers() {
            if !lattice.leq(self.proj_down[lo], self.proj_down[hi])
                || !lattice.leq(self.proj_up[lo], self.proj_up[hi])
            {
                return Err(CongruenceError::ProjectionNotMonotone);
            }
        }
        Ok(())
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<ElementId>] {
        &self.classes
    }

    pub fn class_of(&self, x: ElementId) -> usize {
        self.class_of[x]
    }

    pub fn equivalent(&self, x: ElementId, y: ElementId) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn proj_down(&self, x: ElementId) -> ElementId {
        self.proj_down[x]
    }

    pub fn proj_up(&self, x: ElementId) -> ElementId {
        self.proj_up[x]
    }

    /// Whether this congruence contracts the join irreducible `j`
    /// (identifies it with its unique lower cover).
    pub fn contracts_ji(&self, lattice: &FiniteLattice, j: ElementId) -> bool {
        match lattice.irreducibles().lower_cover_of_ji(j) {
            Some(lo) => self.equivalent(j, lo),
            None => false,
        }
    }

    pub fn contracts_mi(&self, lattice: &FiniteLattice, m: ElementId) -> bool {
        match lattice.irreducibles().upper_cover_of_mi(m) {
            Some(hi) => self.equivalent(m, hi),
            None => false,
        }
    }

    pub fn uncontracted_ji(&self, lattice: &FiniteLattice) -> Vec<ElementId> {
        lattice
            .irreducibles()
            .join_irreducibles
            .iter()
            .copied()
            .filter(|&j| !self.contracts_ji(lattice, j))
            .collect()
    }

    pub fn uncontracted_mi(&self, lattice: &FiniteLattice) -> Vec<ElementId> {
        lattice
            .irreducibles()
            .meet_irreducibles
            .iter()
            .copied()
            .filter(|&m| !self.contracts_mi(lattice, m))
            .collect()
    }

    /// Refinement order on congruences: every class of `self` is contained
    /// in a class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| other.equivalent(c[0], x)))
    }

    pub fn to_json(&self, lattice: &FiniteLattice) -> CongruenceJson {
        CongruenceJson {
            lattice: lattice.to_json(),
            classes: self.classes.clone(),
        }
    }
}

/// The forcing preorder on join irreducibles: `j` forces `j'` when the
/// principal congruence of `j` contracts `j'`.
pub struct ForcingPreorder {
    ji: Vec<ElementId>,
    position: Vec<Option<usize>>,
    forces: BitMatrix,
}

impl ForcingPreorder {
    pub fn join_irreducibles(&self) -> &[ElementId] {
        &self.ji
    }

    pub fn forces(&self, j: ElementId, jp: ElementId) -> bool {
        match (self.position[j], self.position[jp]) {
            (Some(a), Some(b)) => self.forces.get(a, b),
            _ => false,
        }
    }

    /// Checks the defining condition of an uncontracted set: whenever `j`
    /// forces `j'` and `j'` is kept, `j` must be kept too. Returns a
    /// violating pair otherwise.
    pub fn upper_set_violation(&self, kept: &BTreeSet<ElementId>) -> Option<(ElementId, ElementId)> {
        for (a, &j) in self.ji.iter().enumerate() {
            if kept.contains(&j) {
                continue;
            }
            for (b, &jp) in self.ji.iter().enumerate() {
                if self.forces.get(a, b) && kept.contains(&jp) {
                    return Some((j, jp));
                }
            }
        }
        None
    }

    /// All subsets of join irreducibles realizable as uncontracted sets,
    /// i.e. all upper sets of the forcing preorder. Exponential in the
    /// number of join irreducibles; guarded.
    pub fn upper_sets(&self, limit_ji: usize) -> Result<Vec<BTreeSet<ElementId>>, LatticeError> {
        let k = self.ji.len();
        if k > limit_ji {
            return Err(LatticeError::SizeGuard {
                size: k,
                limit: limit_ji,
            });
        }
        let mut out = Vec::new();
        'mask: for mask in 0u64..(1 << k) {
            for a in 0..k {
                if mask & (1 << a) != 0 {
                    continue;
                }
                for b in 0..k {
                    if mask & (1 << b) != 0 && self.forces.get(a, b) {
                        continue 'mask;
                    }
                }
            }
            out.push(
                (0..k)
                    .filter(|&a| mask & (1 << a) != 0)
                    .map(|a| self.ji[a])
                    .collect(),
            );
        }
        Ok(out)
    }
}

pub fn forcing_preorder(lattice: &FiniteLattice) -> Result<ForcingPreorder, CongruenceError> {
    let ji = lattice.irreducibles().join_irreducibles.clone();
    let mut position = vec![None; lattice.size()];
    for (a, &j) in ji.iter().enumerate() {
        position[j] = Some(a);
    }
    let mut forces = BitMatrix::new(ji.len(), ji.len());
    for (a, &j) in ji.iter().enumerate() {
        let con_j = Congruence::principal(lattice, j)?;
        for (b, &jp) in ji.iter().enumerate() {
            if con_j.contracts_ji(lattice, jp) {
                forces.set(a, b);
            }
        }
    }
    Ok(ForcingPreorder {
        ji,
        position,
        forces,
    })
}

/// The congruence whose uncontracted join irreducibles are exactly `kept`:
/// the join of the principal congruences of the dropped irreducibles.
/// `kept` must be an upper set of the forcing preorder.
pub fn congruence_from_uncontracted(
    lattice: &FiniteLattice,
    kept: &BTreeSet<ElementId>,
) -> Result<Congruence, CongruenceError> {
    let info = lattice.irreducibles();
    for &j in kept {
        if !info.is_join_irreducible(j) {
            return Err(CongruenceError::NotIrreducible(j));
        }
    }
    let forcing = forcing_preorder(lattice)?;
    if let Some((forcer, forced)) = forcing.upper_set_violation(kept) {
        return Err(CongruenceError::NotAnUpperSet { forcer, forced });
    }
    let generators: Vec<(usize, usize)> = info
        .join_irreducibles
        .iter()
        .copied()
        .filter(|j| !kept.contains(j))
        .map(|j| (info.lower_cover_of_ji(j).unwrap(), j))
        .collect();
    Congruence::generated_by(lattice, &generators)
}

/// A quotient lattice together with the class data tying it back to the
/// ambient lattice. Quotient element `i` is the class `classes()[i]`,
/// labeled by its minimum.
pub struct QuotientLattice {
    pub lattice: FiniteLattice,
    pub congruence: Congruence,
}

impl QuotientLattice {
    pub fn class_min(&self, class: usize) -> ElementId {
        self.congruence.classes()[class][0]
    }

    pub fn class_max(&self, class: usize) -> ElementId {
        *self.congruence.classes()[class].last().unwrap()
    }
}

/// The lattice on congruence classes, ordered by comparability of
/// representatives; isomorphic to the subposet of class minima.
pub fn quotient(
    lattice: &FiniteLattice,
    congruence: &Congruence,
) -> Result<QuotientLattice, CongruenceError> {
    let k = congruence.num_classes();
    let mins: Vec<ElementId> = (0..k).map(|i| congruence.classes()[i][0]).collect();
    let labels: Vec<String> = mins.iter().map(|&m| lattice.label(m)).collect();
    let q = FiniteLattice::from_order(
        k,
        |a, b| lattice.leq(mins[a], mins[b]),
        Some(labels),
    )?;
    #[cfg(debug_assertions)]
    {
        if lattice.is_semidistributive() {
            debug_assert!(q.is_semidistributive());
        }
    }
    Ok(QuotientLattice {
        lattice: q,
        congruence: congruence.clone(),
    })
}

/// Canonical join representation of the down-projection of `x`:
/// guaranteed to live in the lower ideal generated by `cjr(x)` and to
/// consist of uncontracted join irreducibles.
pub fn cjr_of_projection(
    lattice: &FiniteLattice,
    x: ElementId,
    congruence: &Congruence,
) -> Result<Representation, CongruenceError> {
    Ok(lattice.cjr(congruence.proj_down(x))?)
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let xs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
