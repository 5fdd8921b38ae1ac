//! Finite lattices with dense order relations, irreducibles, canonical
//! join/meet representations, and the kappa and Kreweras maps.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{self, BitMatrix};
use crate::Side;

pub type ElementId = usize;

/// Hard cap on lattice size: everything here relies on dense `size x size`
/// relations.
pub const MAX_LATTICE_SIZE: usize = 20_000;

/// Join/meet tables are materialized only below this size; larger lattices
/// answer `join`/`meet` from the order relation directly.
const TABLE_KEEP_MAX: usize = 4096;

/// Cap on the candidate pool of the brute-force representation oracle.
/// The S5 weak order (26 join irreducibles) must stay admissible.
pub const BRUTE_FORCE_MAX_CANDIDATES: usize = 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    EmptyLattice,
    #[error("cover ({0}, {1}) out of range for size {2}")]
    CoverOutOfRange(usize, usize, usize),
    #[error("cover relation has a cycle through element {0}")]
    NotAPartialOrder(ElementId),
    #[error("elements {x} and {y} have no unique {op} — not a lattice")]
    NotALattice { x: ElementId, y: ElementId, op: Side },
    #[error("({lower}, {upper}) is not a cover relation")]
    NotACover { lower: ElementId, upper: ElementId },
    #[error("no unique minimal element over cover ({lower}, {upper}); minimal candidates {candidates:?}")]
    NoUniqueMinimal {
        lower: ElementId,
        upper: ElementId,
        candidates: Vec<ElementId>,
    },
    #[error("no unique maximal element under cover ({lower}, {upper}); maximal candidates {candidates:?}")]
    NoUniqueMaximal {
        lower: ElementId,
        upper: ElementId,
        candidates: Vec<ElementId>,
    },
    #[error("element {element} is not {side} irreducible")]
    NotIrreducible { element: ElementId, side: Side },
    #[error("input is not the canonical {0} representation of any element")]
    NotACanonicalRepresentation(Side),
    #[error("brute-force oracle guard exceeded: {candidates} candidates > {limit}")]
    BruteForceGuard { candidates: usize, limit: usize },
    #[error("size {size} exceeds guard {limit}")]
    SizeGuard { size: usize, limit: usize },
    #[error("label list length {0} does not match size {1}")]
    BadLabels(usize, usize),
}

/// An antichain of join (or meet) irreducibles standing for a canonical
/// representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    kind: Side,
    members: BTreeSet<ElementId>,
}

impl Representation {
    pub fn new(kind: Side, members: impl IntoIterator<Item = ElementId>) -> Self {
        Representation {
            kind,
            members: members.into_iter().collect(),
        }
    }

    pub fn kind(&self) -> Side {
        self.kind
    }

    pub fn members(&self) -> &BTreeSet<ElementId> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Join and meet irreducibles with their unique lower/upper covers.
#[derive(Debug, Clone)]
pub struct IrreducibleInfo {
    pub join_irreducibles: Vec<ElementId>,
    pub meet_irreducibles: Vec<ElementId>,
    /// `j -> j_star`, the unique element covered by a join irreducible `j`.
    unique_lower_cover: Vec<Option<ElementId>>,
    /// `m -> m_star`, the unique element covering a meet irreducible `m`.
    unique_upper_cover: Vec<Option<ElementId>>,
}

impl IrreducibleInfo {
    pub fn is_join_irreducible(&self, x: ElementId) -> bool {
        self.unique_lower_cover[x].is_some()
    }

    pub fn is_meet_irreducible(&self, x: ElementId) -> bool {
        self.unique_upper_cover[x].is_some()
    }

    pub fn lower_cover_of_ji(&self, j: ElementId) -> Option<ElementId> {
        self.unique_lower_cover[j]
    }

    pub fn upper_cover_of_mi(&self, m: ElementId) -> Option<ElementId> {
        self.unique_upper_cover[m]
    }
}

struct Tables {
    join: Vec<u32>,
    meet: Vec<u32>,
}

/// JSON shape for lattices: cover list is order-insensitive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub size: usize,
    pub covers: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A finite lattice on dense element ids `0..size`.
///
/// Immutable after construction; the join/meet tables are materialized
/// on demand behind a `OnceLock`, so shared references are safe to use
/// from multiple threads.
pub struct FiniteLattice {
    size: usize,
    covers: Vec<(ElementId, ElementId)>,
    lower_covers: Vec<Vec<ElementId>>,
    upper_covers: Vec<Vec<ElementId>>,
    /// `up.get(x, y)` iff `x <= y`.
    up: BitMatrix,
    /// `down.get(x, y)` iff `y <= x`.
    down: BitMatrix,
    /// Elements in some linear extension order.
    topo: Vec<ElementId>,
    /// Position of each element in `topo`.
    rank: Vec<usize>,
    bottom: ElementId,
    top: ElementId,
    labels: Option<Vec<String>>,
    tables: OnceLock<Option<Tables>>,
    irreducibles: OnceLock<IrreducibleInfo>,
}

impl std::fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("size", &self.size)
            .field("covers", &self.covers.len())
            .finish()
    }
}

impl FiniteLattice {
    /// Builds a lattice from a cover list. The reflexive-transitive closure
    /// is computed here; redundant (non-cover) pairs in the input are
    /// dropped. Fails if the closure is not a partial order or if some pair
    /// of elements lacks a unique join or meet.
    pub fn build(size: usize, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        Self::build_labeled(size, covers, None)
    }

    pub fn build_labeled(
        size: usize,
        covers: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Self, LatticeError> {
        if size == 0 {
            return Err(LatticeError::EmptyLattice);
        }
        if size > MAX_LATTICE_SIZE {
            return Err(LatticeError::SizeGuard {
                size,
                limit: MAX_LATTICE_SIZE,
            });
        }
        if let Some(ref l) = labels {
            if l.len() != size {
                return Err(LatticeError::BadLabels(l.len(), size));
            }
        }
        for &(lo, hi) in covers {
            if lo >= size || hi >= size {
                return Err(LatticeError::CoverOutOfRange(lo, hi, size));
            }
        }

        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut indeg = vec![0usize; size];
        let mut seen = BTreeSet::new();
        for &(lo, hi) in covers {
            if lo == hi {
                return Err(LatticeError::NotAPartialOrder(lo));
            }
            if seen.insert((lo, hi)) {
                succ[lo].push(hi);
                indeg[hi] += 1;
            }
        }

        // Kahn topological sort; leftovers witness a cycle.
        let mut topo = Vec::with_capacity(size);
        let mut queue: Vec<usize> = (0..size).filter(|&x| indeg[x] == 0).collect();
        queue.sort_unstable();
        let mut qi = 0;
        let mut indeg_work = indeg.clone();
        while qi < queue.len() {
            let x = queue[qi];
            qi += 1;
            topo.push(x);
            for &y in &succ[x] {
                indeg_work[y] -= 1;
                if indeg_work[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if topo.len() != size {
            let leftover = (0..size).find(|&x| indeg_work[x] > 0).unwrap();
            return Err(LatticeError::NotAPartialOrder(leftover));
        }
        let mut rank = vec![0usize; size];
        for (r, &x) in topo.iter().enumerate() {
            rank[x] = r;
        }

        // up-sets by sweeping the linear extension from the top down.
        let mut up = BitMatrix::new(size, size);
        for &x in topo.iter().rev() {
            up.set(x, x);
            let ys = succ[x].clone();
            for y in ys {
                up.or_row_into(y, x);
            }
        }
        let mut down = BitMatrix::new(size, size);
        for x in 0..size {
            for y in up.iter_row(x) {
                down.set(y, x);
            }
        }

        // True covers: drop input pairs with an intermediate element.
        let mut true_covers = Vec::new();
        for &(lo, hi) in &seen {
            let between = up
                .row(lo)
                .iter()
                .zip(down.row(hi))
                .map(|(a, b)| a & b)
                .map(|w| w.count_ones() as usize)
                .sum::<usize>();
            if between == 2 {
                true_covers.push((lo, hi));
            }
        }
        let mut lower_covers: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut upper_covers: Vec<Vec<usize>> = vec![Vec::new(); size];
        for &(lo, hi) in &true_covers {
            lower_covers[hi].push(lo);
            upper_covers[lo].push(hi);
        }
        for v in lower_covers.iter_mut().chain(upper_covers.iter_mut()) {
            v.sort_unstable();
        }

        // Unique bottom and top; two minima have no meet, two maxima no join.
        let minima: Vec<usize> = (0..size).filter(|&x| down.count_row(x) == 1).collect();
        if minima.len() > 1 {
            return Err(LatticeError::NotALattice {
                x: minima[0],
                y: minima[1],
                op: Side::Meet,
            });
        }
        let maxima: Vec<usize> = (0..size).filter(|&x| up.count_row(x) == 1).collect();
        if maxima.len() > 1 {
            return Err(LatticeError::NotALattice {
                x: maxima[0],
                y: maxima[1],
                op: Side::Join,
            });
        }
        let bottom = minima[0];
        let top = maxima[0];

        let lat = FiniteLattice {
            size,
            covers: true_covers,
            lower_covers,
            upper_covers,
            up,
            down,
            topo,
            rank,
            bottom,
            top,
            labels,
            tables: OnceLock::new(),
            irreducibles: OnceLock::new(),
        };
        let tables = lat.validate_and_tabulate()?;
        if size <= TABLE_KEEP_MAX {
            lat.tables.set(Some(tables)).ok();
        } else {
            lat.tables.set(None).ok();
        }
        Ok(lat)
    }

    /// Builds a lattice from a full order relation (`le[x][y]` iff `x <= y`).
    pub fn from_order(
        size: usize,
        le: impl Fn(usize, usize) -> bool,
        labels: Option<Vec<String>>,
    ) -> Result<Self, LatticeError> {
        let mut covers = Vec::new();
        for x in 0..size {
            for y in 0..size {
                if x == y || !le(x, y) {
                    continue;
                }
                let mut is_cover = true;
                for z in 0..size {
                    if z != x && z != y && le(x, z) && le(z, y) {
                        is_cover = false;
                        break;
                    }
                }
                if is_cover {
                    covers.push((x, y));
                }
            }
        }
        let lat = Self::build_labeled(size, &covers, labels)?;
        for x in 0..size {
            for y in 0..size {
                if lat.leq(x, y) != le(x, y) {
                    // Input relation was not a partial order.
                    return Err(LatticeError::NotAPartialOrder(x));
                }
            }
        }
        Ok(lat)
    }

    /// Validates unique joins and meets for every pair by dynamic
    /// programming over covers, producing the tables as a byproduct.
    fn validate_and_tabulate(&self) -> Result<Tables, LatticeError> {
        let n = self.size;
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        // meet(x, y): sweep y in topo order; meet(x, y) is the dominant
        // candidate among meet(x, y') over lower covers y' of y.
        for x in 0..n {
            for &y in &self.topo {
                let m: usize = if self.leq(y, x) {
                    y
                } else {
                    let mut best = usize::MAX;
                    for &yp in &self.lower_covers[y] {
                        let cand = meet[x * n + yp] as usize;
                        if best == usize::MAX || self.rank[cand] > self.rank[best] {
                            best = cand;
                        }
                    }
                    debug_assert_ne!(best, usize::MAX);
                    for &yp in &self.lower_covers[y] {
                        let cand = meet[x * n + yp] as usize;
                        if !self.leq(cand, best) {
                            return Err(LatticeError::NotALattice {
                                x,
                                y,
                                op: Side::Meet,
                            });
                        }
                    }
                    best
                };
                meet[x * n + y] = m as u32;
            }
            for &y in self.topo.iter().rev() {
                let j: usize = if self.leq(x, y) {
                    y
                } else {
                    let mut best = usize::MAX;
                    for &yp in &self.upper_covers[y] {
                        let cand = join[x * n + yp] as usize;
                        if best == usize::MAX || self.rank[cand] < self.rank[best] {
                            best = cand;
                        }
                    }
                    debug_assert_ne!(best, usize::MAX);
                    for &yp in &self.upper_covers[y] {
                        let cand = join[x * n + yp] as usize;
                        if !self.leq(best, cand) {
                            return Err(LatticeError::NotALattice {
                                x,
                                y,
                                op: Side::Join,
                            });
                        }
                    }
                    best
                };
                join[x * n + y] = j as u32;
            }
        }
        Ok(Tables { join, meet })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    pub fn lower_covers(&self, x: ElementId) -> &[ElementId] {
        &self.lower_covers[x]
    }

    pub fn upper_covers(&self, x: ElementId) -> &[ElementId] {
        &self.upper_covers[x]
    }

    pub fn is_cover(&self, lower: ElementId, upper: ElementId) -> bool {
        self.upper_covers[lower].contains(&upper)
    }

    #[inline]
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.up.get(x, y)
    }

    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    /// Elements `>= x`, ascending by id.
    pub fn up_set(&self, x: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.up.iter_row(x)
    }

    /// Elements `<= x`, ascending by id.
    pub fn down_set(&self, x: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.down.iter_row(x)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: ElementId) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    fn tables(&self) -> &Option<Tables> {
        self.tables.get_or_init(|| {
            if self.size <= TABLE_KEEP_MAX {
                Some(self.validate_and_tabulate().expect("validated at build"))
            } else {
                None
            }
        })
    }

    pub fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        if let Some(t) = self.tables() {
            return t.join[x * self.size + y] as usize;
        }
        self.extremum_of_intersection(x, y, Side::Join)
    }

    pub fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        if let Some(t) = self.tables() {
            return t.meet[x * self.size + y] as usize;
        }
        self.extremum_of_intersection(x, y, Side::Meet)
    }

    fn extremum_of_intersection(&self, x: ElementId, y: ElementId, op: Side) -> ElementId {
        let words = match op {
            Side::Join => self.up.and_rows(x, y),
            Side::Meet => self.down.and_rows(x, y),
        };
        let mut best = usize::MAX;
        for z in bitset::BitIter::new(&words) {
            let better = best == usize::MAX
                || match op {
                    Side::Join => self.rank[z] < self.rank[best],
                    Side::Meet => self.rank[z] > self.rank[best],
                };
            if better {
                best = z;
            }
        }
        debug_assert_ne!(best, usize::MAX);
        debug_assert!(match op {
            Side::Join => bitset::subset(&words, self.up.row(best)),
            Side::Meet => bitset::subset(&words, self.down.row(best)),
        });
        best
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = ElementId>) -> ElementId {
        xs.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = ElementId>) -> ElementId {
        xs.into_iter().fold(self.top, |a, b| self.meet(a, b))
    }

    pub fn irreducibles(&self) -> &IrreducibleInfo {
        self.irreducibles.get_or_init(|| {
            let mut unique_lower_cover = vec![None; self.size];
            let mut unique_upper_cover = vec![None; self.size];
            let mut join_irreducibles = Vec::new();
            let mut meet_irreducibles = Vec::new();
            for x in 0..self.size {
                if let [only] = self.lower_covers[x][..] {
                    unique_lower_cover[x] = Some(only);
                    join_irreducibles.push(x);
                }
                if let [only] = self.upper_covers[x][..] {
                    unique_upper_cover[x] = Some(only);
                    meet_irreducibles.push(x);
                }
            }
            IrreducibleInfo {
                join_irreducibles,
                meet_irreducibles,
                unique_lower_cover,
                unique_upper_cover,
            }
        })
    }

    /// The unique minimal `z` with `z <= upper`, `z <~ lower` over a cover
    /// `lower <. upper`. Fails with all minimal candidates when uniqueness
    /// fails (a join-semidistributivity violation at this cover).
    pub fn cover_joinand(
        &self,
        lower: ElementId,
        upper: ElementId,
    ) -> Result<ElementId, LatticeError> {
        if !self.is_cover(lower, upper) {
            return Err(LatticeError::NotACover { lower, upper });
        }
        // K = down(upper) \ down(lower)
        let k: Vec<u64> = self
            .down
            .row(upper)
            .iter()
            .zip(self.down.row(lower))
            .map(|(a, b)| a & !b)
            .collect();
        let mut best = usize::MAX;
        for z in bitset::BitIter::new(&k) {
            if best == usize::MAX || self.rank[z] < self.rank[best] {
                best = z;
            }
        }
        debug_assert_ne!(best, usize::MAX);
        if bitset::subset(&k, self.up.row(best)) {
            return Ok(best);
        }
        let candidates = self.minimal_in(&k);
        Err(LatticeError::NoUniqueMinimal {
            lower,
            upper,
            candidates,
        })
    }

    /// Dual of [`cover_joinand`]: the unique maximal `z` with `z >= lower`,
    /// `z >~ upper` over a cover `lower <. upper`.
    pub fn cover_meetand(
        &self,
        lower: ElementId,
        upper: ElementId,
    ) -> Result<ElementId, LatticeError> {
        if !self.is_cover(lower, upper) {
            return Err(LatticeError::NotACover { lower, upper });
        }
        let k: Vec<u64> = self
            .up
            .row(lower)
            .iter()
            .zip(self.up.row(upper))
            .map(|(a, b)| a & !b)
            .collect();
        let mut best = usize::MAX;
        for z in bitset::BitIter::new(&k) {
            if best == usize::MAX || self.rank[z] > self.rank[best] {
                best = z;
            }
        }
        debug_assert_ne!(best, usize::MAX);
        if bitset::subset(&k, self.down.row(best)) {
            return Ok(best);
        }
        let candidates = self.maximal_in(&k);
        Err(LatticeError::NoUniqueMaximal {
            lower,
            upper,
            candidates,
        })
    }

    fn minimal_in(&self, set: &[u64]) -> Vec<ElementId> {
        bitset::BitIter::new(set)
            .filter(|&z| {
                self.down
                    .row(z)
                    .iter()
                    .zip(set)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum::<usize>()
                    == 1
            })
            .collect()
    }

    fn maximal_in(&self, set: &[u64]) -> Vec<ElementId> {
        bitset::BitIter::new(set)
            .filter(|&z| {
                self.up
                    .row(z)
                    .iter()
                    .zip(set)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum::<usize>()
                    == 1
            })
            .collect()
    }

    /// Join semidistributivity via unique minimal joinands at every cover.
    pub fn is_join_semidistributive(&self) -> bool {
        self.covers
            .iter()
            .all(|&(lo, hi)| self.cover_joinand(lo, hi).is_ok())
    }

    pub fn is_meet_semidistributive(&self) -> bool {
        self.covers
            .iter()
            .all(|&(lo, hi)| self.cover_meetand(lo, hi).is_ok())
    }

    pub fn is_semidistributive(&self) -> bool {
        self.is_join_semidistributive() && self.is_meet_semidistributive()
    }

    /// Searches for a triple violating `x v y = x v z  =>  x v (y ^ z) = x v y`.
    /// Equivalent to [`is_join_semidistributive`] returning `false`; both
    /// are exposed so tests can cross-check the two characterizations.
    /// Cubic — meant for small lattices.
    pub fn join_semidistributivity_witness(&self) -> Option<(ElementId, ElementId, ElementId)> {
        for x in 0..self.size {
            for y in 0..self.size {
                let xy = self.join(x, y);
                for z in 0..self.size {
                    if self.join(x, z) == xy && self.join(x, self.meet(y, z)) != xy {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn meet_semidistributivity_witness(&self) -> Option<(ElementId, ElementId, ElementId)> {
        for x in 0..self.size {
            for y in 0..self.size {
                let xy = self.meet(x, y);
                for z in 0..self.size {
                    if self.meet(x, z) == xy && self.meet(x, self.join(y, z)) != xy {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Canonical join representation via cover joinands.
    pub fn cjr(&self, x: ElementId) -> Result<Representation, LatticeError> {
        let mut members = BTreeSet::new();
        for &lo in &self.lower_covers[x] {
            members.insert(self.cover_joinand(lo, x)?);
        }
        Ok(Representation {
            kind: Side::Join,
            members,
        })
    }

    /// Canonical meet representation via cover meetands.
    pub fn cmr(&self, x: ElementId) -> Result<Representation, LatticeError> {
        let mut members = BTreeSet::new();
        for &hi in &self.upper_covers[x] {
            members.insert(self.cover_meetand(x, hi)?);
        }
        Ok(Representation {
            kind: Side::Meet,
            members,
        })
    }

    /// kappa_join: meet irreducible `m` to the join irreducible
    /// `cover_joinand(m, m_star)`.
    pub fn kappa_join(&self, m: ElementId) -> Result<ElementId, LatticeError> {
        let info = self.irreducibles();
        let up = info
            .upper_cover_of_mi(m)
            .ok_or(LatticeError::NotIrreducible {
                element: m,
                side: Side::Meet,
            })?;
        let j = self.cover_joinand(m, up)?;
        debug_assert!(self.irreducibles().is_join_irreducible(j));
        Ok(j)
    }

    /// kappa_meet: join irreducible `j` to the meet irreducible
    /// `cover_meetand(j_star, j)`.
    pub fn kappa_meet(&self, j: ElementId) -> Result<ElementId, LatticeError> {
        let info = self.irreducibles();
        let lo = info
            .lower_cover_of_ji(j)
            .ok_or(LatticeError::NotIrreducible {
                element: j,
                side: Side::Join,
            })?;
        let m = self.cover_meetand(lo, j)?;
        debug_assert!(self.irreducibles().is_meet_irreducible(m));
        Ok(m)
    }

    /// Kreweras map eta_join: the canonical join representation of the meet
    /// of a canonical meet representation. The input must be realized as
    /// `cmr` of some element.
    pub fn eta_join(&self, m: &Representation) -> Result<Representation, LatticeError> {
        if m.kind != Side::Meet {
            return Err(LatticeError::NotACanonicalRepresentation(Side::Meet));
        }
        let x = self.meet_all(m.members.iter().copied());
        if &self.cmr(x)? != m {
            return Err(LatticeError::NotACanonicalRepresentation(Side::Meet));
        }
        self.cjr(x)
    }

    /// Kreweras map eta_meet: dual of [`eta_join`].
    pub fn eta_meet(&self, j: &Representation) -> Result<Representation, LatticeError> {
        if j.kind != Side::Join {
            return Err(LatticeError::NotACanonicalRepresentation(Side::Join));
        }
        let x = self.join_all(j.members.iter().copied());
        if &self.cjr(x)? != j {
            return Err(LatticeError::NotACanonicalRepresentation(Side::Join));
        }
        self.cmr(x)
    }

    /// Representation order on irredundant join representations:
    /// `a <= b` iff every member of `a` is below some member of `b`
    /// (dually for meet representations).
    pub fn representation_le(&self, a: &Representation, b: &Representation) -> bool {
        debug_assert_eq!(a.kind, b.kind);
        match a.kind {
            Side::Join => a
                .members
                .iter()
                .all(|&y| b.members.iter().any(|&z| self.leq(y, z))),
            Side::Meet => a
                .members
                .iter()
                .all(|&y| b.members.iter().any(|&z| self.leq(z, y))),
        }
    }

    /// Independent brute-force oracle: enumerates antichains of join
    /// irreducibles below `x` joining to `x` and returns the minimum in the
    /// representation order. Exponential; guarded by
    /// [`BRUTE_FORCE_MAX_CANDIDATES`] candidates per call.
    pub fn cjr_brute_force(&self, x: ElementId) -> Result<Representation, LatticeError> {
        self.brute_force_representation(x, Side::Join)
    }

    pub fn cmr_brute_force(&self, x: ElementId) -> Result<Representation, LatticeError> {
        self.brute_force_representation(x, Side::Meet)
    }

    fn brute_force_representation(
        &self,
        x: ElementId,
        kind: Side,
    ) -> Result<Representation, LatticeError> {
        let info = self.irreducibles();
        let pool: Vec<ElementId> = match kind {
            Side::Join => info
                .join_irreducibles
                .iter()
                .copied()
                .filter(|&j| self.leq(j, x))
                .collect(),
            Side::Meet => info
                .meet_irreducibles
                .iter()
                .copied()
                .filter(|&m| self.leq(x, m))
                .collect(),
        };
        if pool.len() > BRUTE_FORCE_MAX_CANDIDATES {
            return Err(LatticeError::BruteForceGuard {
                candidates: pool.len(),
                limit: BRUTE_FORCE_MAX_CANDIDATES,
            });
        }
        let bound = |xs: &[ElementId]| match kind {
            Side::Join => self.join_all(xs.iter().copied()),
            Side::Meet => self.meet_all(xs.iter().copied()),
        };
        let mut found: Vec<Vec<ElementId>> = Vec::new();
        let mut stack: Vec<ElementId> = Vec::new();
        self.antichain_search(x, kind, &pool, 0, &mut stack, &bound, &mut found);
        // Minimum in the representation order among all hits.
        let reps: Vec<Representation> = found
            .into_iter()
            .map(|m| Representation::new(kind, m))
            .collect();
        let minimum = reps
            .iter()
            .find(|a| reps.iter().all(|b| self.representation_le(a, b)))
            .cloned();
        minimum.ok_or(match kind {
            Side::Join => LatticeError::NotACanonicalRepresentation(Side::Join),
            Side::Meet => LatticeError::NotACanonicalRepresentation(Side::Meet),
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn antichain_search(
        &self,
        target: ElementId,
        kind: Side,
        pool: &[ElementId],
        from: usize,
        stack: &mut Vec<ElementId>,
        bound: &dyn Fn(&[ElementId]) -> ElementId,
        found: &mut Vec<Vec<ElementId>>,
    ) {
        let current = bound(stack);
        if current == target {
            // Irredundant hits only; redundant ones are dominated anyway.
            let irredundant = (0..stack.len()).all(|i| {
                let rest: Vec<ElementId> = stack
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, &v)| v)
                    .collect();
                bound(&rest) != target
            });
            if irredundant {
                found.push(stack.clone());
            }
            return;
        }
        // Prune: even taking every remaining compatible candidate cannot
        // reach the target.
        let mut reach = current;
        for &c in &pool[from..] {
            if stack.iter().all(|&s| !self.leq(s, c) && !self.leq(c, s)) {
                reach = match kind {
                    Side::Join => self.join(reach, c),
                    Side::Meet => self.meet(reach, c),
                };
            }
        }
        if reach != target {
            return;
        }
        for i in from..pool.len() {
            let c = pool[i];
            let dominated = match kind {
                Side::Join => self.leq(c, current),
                Side::Meet => self.leq(current, c),
            };
            if dominated {
                continue;
            }
            if stack.iter().any(|&s| self.leq(s, c) || self.leq(c, s)) {
                continue;
            }
            stack.push(c);
            self.antichain_search(target, kind, pool, i + 1, stack, bound, found);
            stack.pop();
        }
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            size: self.size,
            covers: self.covers.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(json: &LatticeJson) -> Result<Self, LatticeError> {
        Self::build_labeled(json.size, &json.covers, json.labels.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain(k: usize) -> FiniteLattice {
        let covers: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        FiniteLattice::build(k, &covers).unwrap()
    }

    /// 0 bottom, atoms 1,2,3, top 4.
    pub(crate) fn m3() -> FiniteLattice {
        FiniteLattice::build(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    /// Pentagon: 0 < 1 < 4, 0 < 2 < 3 < 4.
    pub(crate) fn n5() -> FiniteLattice {
        FiniteLattice::build(5, &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]).unwrap()
    }

    /// Boolean lattice on k atoms; element ids are subset bitmasks.
    pub(crate) fn boolean(k: usize) -> FiniteLattice {
        let n = 1usize << k;
        let mut covers = Vec::new();
        for s in 0..n {
            for b in 0..k {
                if s & (1 << b) == 0 {
                    covers.push((s, s | (1 << b)));
                }
            }
        }
        FiniteLattice::build(n, &covers).unwrap()
    }

    // Transitive-closure oracle, independent of the BitMatrix sweep.
    #[allow(clippy::needless_range_loop)]
    fn closure_oracle(size: usize, covers: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut le = vec![vec![false; size]; size];
        for x in 0..size {
            le[x][x] = true;
        }
        for &(a, b) in covers {
            le[a][b] = true;
        }
        loop {
            let mut changed = false;
            for x in 0..size {
                for y in 0..size {
                    if !le[x][y] {
                        continue;
                    }
                    for z in 0..size {
                        if le[y][z] && !le[x][z] {
                            le[x][z] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        le
    }

    #[test]
    fn three_chain() {
        let l = chain(3);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 2);
        assert!(l.leq(0, 2));
        assert!(!l.leq(2, 0));
        assert_eq!(l.join(0, 2), 2);
        assert_eq!(l.meet(0, 2), 0);
    }

    #[test]
    fn diamond_closure_matches_oracle() {
        let covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
        let l = FiniteLattice::build(5, &covers).unwrap();
        let oracle = closure_oracle(5, &covers);
        for (x, row) in oracle.iter().enumerate() {
            for (y, &expected) in row.iter().enumerate() {
                assert_eq!(l.leq(x, y), expected, "leq({x},{y})");
            }
        }
    }

    #[test]
    fn no_top_is_not_a_lattice() {
        let err = FiniteLattice::build(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert!(matches!(
            err,
            LatticeError::NotALattice {
                x: 1,
                y: 2,
                op: Side::Join
            }
        ));
    }

    #[test]
    fn cycle_is_not_a_partial_order() {
        let err = FiniteLattice::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, LatticeError::NotAPartialOrder(_)));
    }

    #[test]
    fn redundant_input_pairs_are_dropped() {
        let l = FiniteLattice::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(l.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn join_meet_idempotent_absorbing() {
        for l in [chain(4), m3(), n5(), boolean(3)] {
            for x in l.elements() {
                assert_eq!(l.join(x, x), x);
                assert_eq!(l.meet(l.bottom(), x), l.bottom());
                assert_eq!(l.join(l.bottom(), x), x);
                for y in l.elements() {
                    let j = l.join(x, y);
                    let m = l.meet(x, y);
                    assert!(l.leq(x, j) && l.leq(y, j));
                    assert!(l.leq(m, x) && l.leq(m, y));
                    assert_eq!(l.join(x, y), l.join(y, x));
                    assert_eq!(l.meet(x, m), m);
                }
            }
        }
    }

    #[test]
    fn m3_fails_semidistributivity_both_ways() {
        let l = m3();
        assert!(!l.is_join_semidistributive());
        assert!(!l.is_meet_semidistributive());
        assert!(l.join_semidistributivity_witness().is_some());
        let err = l.cover_joinand(1, 4).unwrap_err();
        match err {
            LatticeError::NoUniqueMinimal { candidates, .. } => {
                assert_eq!(candidates, vec![2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn n5_is_semidistributive() {
        let l = n5();
        assert!(l.is_semidistributive());
        assert!(l.join_semidistributivity_witness().is_none());
        assert!(l.meet_semidistributivity_witness().is_none());
    }

    #[test]
    fn chain_cover_joinand_is_upper() {
        let l = chain(3);
        assert_eq!(l.cover_joinand(0, 1).unwrap(), 1);
        assert_eq!(l.cover_joinand(1, 2).unwrap(), 2);
        assert!(matches!(
            l.cover_joinand(0, 2),
            Err(LatticeError::NotACover { .. })
        ));
    }

    #[test]
    fn cjr_basics() {
        for l in [chain(5), n5(), boolean(4)] {
            assert!(l.cjr(l.bottom()).unwrap().is_empty());
            let info = l.irreducibles().clone();
            for &j in &info.join_irreducibles {
                let r = l.cjr(j).unwrap();
                assert_eq!(r.members().iter().copied().collect::<Vec<_>>(), vec![j]);
            }
            for x in l.elements() {
                let r = l.cjr(x).unwrap();
                assert_eq!(l.join_all(r.members().iter().copied()), x);
                assert_eq!(r, l.cjr_brute_force(x).unwrap());
                let rm = l.cmr(x).unwrap();
                assert_eq!(l.meet_all(rm.members().iter().copied()), x);
                assert_eq!(rm, l.cmr_brute_force(x).unwrap());
            }
        }
    }

    #[test]
    fn boolean_irreducibles_are_atoms_and_coatoms() {
        let l = boolean(3);
        let info = l.irreducibles();
        assert_eq!(info.join_irreducibles, vec![1, 2, 4]);
        assert_eq!(info.meet_irreducibles, vec![3, 5, 6]);
        // kappa maps atom {b} to coatom complement of {b}.
        assert_eq!(l.kappa_meet(1).unwrap(), 6);
        assert_eq!(l.kappa_join(6).unwrap(), 1);
    }

    #[test]
    fn kappa_maps_are_inverse_bijections() {
        for l in [chain(4), n5(), boolean(3), boolean(4)] {
            let info = l.irreducibles().clone();
            for &j in &info.join_irreducibles {
                let m = l.kappa_meet(j).unwrap();
                assert!(info.is_meet_irreducible(m));
                assert_eq!(l.kappa_join(m).unwrap(), j);
            }
            for &m in &info.meet_irreducibles {
                let j = l.kappa_join(m).unwrap();
                assert_eq!(l.kappa_meet(j).unwrap(), m);
            }
        }
    }

    #[test]
    fn kappa_rejects_non_irreducibles() {
        let l = boolean(3);
        assert!(matches!(
            l.kappa_meet(l.bottom()),
            Err(LatticeError::NotIrreducible { .. })
        ));
    }

    #[test]
    fn eta_of_empty_meet_is_cjr_of_top() {
        for l in [chain(3), n5(), boolean(3)] {
            let empty = Representation::new(Side::Meet, []);
            let r = l.eta_join(&empty).unwrap();
            assert_eq!(r, l.cjr(l.top()).unwrap());
        }
    }

    #[test]
    fn eta_rejects_non_canonical_input() {
        let l = n5();
        // cmr(0) in the pentagon 0<1<4, 0<2<3<4 is {1, 3}; the set {1, 2}
        // also meets to 0 but is not canonical.
        assert_eq!(l.cmr(0).unwrap(), Representation::new(Side::Meet, [1, 3]));
        let bogus = Representation::new(Side::Meet, [1, 2]);
        assert!(matches!(
            l.eta_join(&bogus),
            Err(LatticeError::NotACanonicalRepresentation(_))
        ));
        let valid = l.cmr(0).unwrap();
        assert_eq!(l.eta_join(&valid).unwrap(), l.cjr(0).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let l = FiniteLattice::build_labeled(
            3,
            &[(0, 1), (1, 2)],
            Some(vec!["a".into(), "b".into(), "c".into()]),
        )
        .unwrap();
        let j = l.to_json();
        let back = FiniteLattice::from_json(&j).unwrap();
        assert_eq!(back.size(), 3);
        assert_eq!(back.label(1), "b");
        // Cover order is immaterial.
        let shuffled = LatticeJson {
            size: 3,
            covers: vec![(1, 2), (0, 1)],
            labels: None,
        };
        let l2 = FiniteLattice::from_json(&shuffled).unwrap();
        assert_eq!(l2.covers(), l.covers());
    }
}
