//! Kreweras maps on non-crossing arc diagrams: the full weak order
//! versions, the projection algorithm onto an arc-ideal congruence, the
//! quotient Kreweras maps, and the classical Kreweras complement as an
//! independent oracle for the sylvester case.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::arc::{enumerate_arcs, join_irreducible_permutation, Arc, ArcError};
use crate::congruence::{Congruence, CongruenceError};
use crate::diagram::{
    join_diagram, meet_diagram, permutation_of_join_diagram, permutation_of_meet_diagram, Ncad,
};
use crate::perm::WeakOrder;
use crate::Side;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrewerasError {
    #[error("arc set is not subarc-closed: contains {containing} but not its subarc {missing}")]
    NotAnIdeal { containing: Arc, missing: Arc },
    #[error("arc {0} is not in the ideal")]
    ArcNotInIdeal(Arc),
    #[error("blocks do not partition 1..=n")]
    NotAPartition,
    #[error("blocks {0:?} and {1:?} cross")]
    CrossingPartition(Vec<u8>, Vec<u8>),
    #[error("{0} is not an up arc")]
    NotAnUpArcDiagram(Arc),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// An arc set closed under taking subarcs. These are exactly the possible
/// sets of uncontracted join irreducibles of weak order congruences: an
/// arc diagram survives in the quotient iff all its arcs are in the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcIdeal {
    n: u8,
    arcs: BTreeSet<Arc>,
}

impl ArcIdeal {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, KrewerasError> {
        let arcs: BTreeSet<Arc> = arcs.into_iter().collect();
        for arc in &arcs {
            if !arc.fits(n) {
                return Err(KrewerasError::Arc(ArcError::ArcOutOfRange { arc: *arc, n }));
            }
            // Subarcs are the restrictions to subspans.
            for a in arc.a()..arc.b() {
                for b in (a + 1)..=arc.b() {
                    let sub = arc.restrict(a, b).expect("restriction partitions its span");
                    if !arcs.contains(&sub) {
                        return Err(KrewerasError::NotAnIdeal {
                            containing: *arc,
                            missing: sub,
                        });
                    }
                }
            }
        }
        Ok(ArcIdeal {
            n: n as u8,
            arcs,
        })
    }

    /// All arcs: the trivial congruence.
    pub fn full(n: usize) -> Result<Self, KrewerasError> {
        Ok(ArcIdeal {
            n: n as u8,
            arcs: enumerate_arcs(n)?.into_iter().collect(),
        })
    }

    /// All up arcs: the sylvester congruence, whose quotient is the Tamari
    /// lattice.
    pub fn sylvester(n: usize) -> Result<Self, KrewerasError> {
        Ok(ArcIdeal {
            n: n as u8,
            arcs: enumerate_arcs(n)?
                .into_iter()
                .filter(|a| a.is_up_arc())
                .collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        ArcIdeal {
            n: n as u8,
            arcs: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.contains(arc)
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn to_json(&self) -> Vec<String> {
        self.arcs.iter().map(|a| a.to_string()).collect()
    }

    pub fn from_json(n: usize, arcs: &[String]) -> Result<Self, KrewerasError> {
        let parsed: Result<Vec<Arc>, _> = arcs.iter().map(|s| Arc::parse(s)).collect();
        Self::new(n, parsed.map_err(KrewerasError::Arc)?)
    }

    /// The weak order congruence contracting exactly the join irreducibles
    /// whose arcs are outside this ideal.
    pub fn congruence(&self, weak_order: &WeakOrder) -> Result<Congruence, KrewerasError> {
        let n = weak_order.n();
        debug_assert_eq!(n, self.n());
        let mut generators = Vec::new();
        for arc in enumerate_arcs(n)? {
            if self.contains(&arc) {
                continue;
            }
            let j = weak_order
                .id_of(&join_irreducible_permutation(&arc, n)?)
                .expect("irreducible permutation is in the weak order");
            let lo = weak_order
                .lattice
                .irreducibles()
                .lower_cover_of_ji(j)
                .expect("one-descent permutations are join irreducible");
            generators.push((lo, j));
        }
        Ok(Congruence::generated_by(&weak_order.lattice, &generators)?)
    }
}

/// Full Kreweras map eta_join: re-encodes the element of a meet diagram as
/// a join diagram.
pub fn kreweras_join(meet_ncad: &Ncad) -> Ncad {
    join_diagram(&permutation_of_meet_diagram(meet_ncad))
}

/// Full Kreweras map eta_meet: re-encodes the element of a join diagram as
/// a meet diagram.
pub fn kreweras_meet(join_ncad: &Ncad) -> Ncad {
    meet_diagram(&permutation_of_join_diagram(join_ncad))
}

/// Projects a diagram onto an arc ideal.
///
/// For `Side::Join`: `X` is the intersection of the ideal with the lower
/// ideal generated by `d` in the weak order on arcs; `Y` holds the arcs of
/// `X` splittable at an interior point into two arcs of `X`; the result is
/// the set of maximal elements of `X \ Y`. This yields the join diagram of
/// the down-projection of `d`'s element onto the ideal's congruence. For
/// `Side::Meet` everything is dualized and the result encodes the
/// up-projection.
pub fn project_diagram(d: &Ncad, ideal: &ArcIdeal, side: Side) -> Result<Ncad, KrewerasError> {
    let n = d.n();
    let le = |x: &Arc, y: &Arc| match side {
        Side::Join => x.le_join(y),
        Side::Meet => y.le_meet(x),
    };
    let x_set: Vec<Arc> = ideal
        .arcs()
        .copied()
        .filter(|alpha| d.arcs().any(|upper| le(alpha, upper)))
        .collect();
    let in_x = |arc: &Arc| x_set.contains(arc);
    let splittable = |arc: &Arc| {
        ((arc.a() + 1)..arc.b()).any(|p| {
            let left = arc.restrict(arc.a(), p).expect("left piece is an arc");
            let right = arc.restrict(p, arc.b()).expect("right piece is an arc");
            in_x(&left) && in_x(&right)
        })
    };
    let candidates: Vec<Arc> = x_set
        .iter()
        .copied()
        .filter(|a| !splittable(a))
        .collect();
    let maximal: Vec<Arc> = candidates
        .iter()
        .copied()
        .filter(|a| {
            candidates
                .iter()
                .all(|b| b == a || !le(a, b))
        })
        .collect();
    debug_assert_eq!(n, ideal.n());
    Ok(Ncad::new(n, maximal).expect("projection of a diagram is non-crossing"))
}

/// Kreweras map in the quotient by an arc ideal: project the full Kreweras
/// image. All arcs of the input must lie in the ideal.
pub fn kreweras_join_in_ideal(meet_ncad: &Ncad, ideal: &ArcIdeal) -> Result<Ncad, KrewerasError> {
    for arc in meet_ncad.arcs() {
        if !ideal.contains(arc) {
            return Err(KrewerasError::ArcNotInIdeal(*arc));
        }
    }
    project_diagram(&kreweras_join(meet_ncad), ideal, Side::Join)
}

pub fn kreweras_meet_in_ideal(join_ncad: &Ncad, ideal: &ArcIdeal) -> Result<Ncad, KrewerasError> {
    for arc in join_ncad.arcs() {
        if !ideal.contains(arc) {
            return Err(KrewerasError::ArcNotInIdeal(*arc));
        }
    }
    project_diagram(&kreweras_meet(join_ncad), ideal, Side::Meet)
}

/// A non-crossing partition of `1..=n`: blocks ascending, sorted by first
/// element, pairwise non-crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoncrossingPartition {
    n: u8,
    blocks: Vec<Vec<u8>>,
}

impl NoncrossingPartition {
    pub fn new(n: usize, blocks: Vec<Vec<u8>>) -> Result<Self, KrewerasError> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
            for &v in b.iter() {
                if v == 0 || v as usize > n || seen[v as usize] {
                    return Err(KrewerasError::NotAPartition);
                }
                seen[v as usize] = true;
            }
        }
        if !seen[1..].iter().all(|&s| s) || blocks.iter().any(|b| b.is_empty()) {
            return Err(KrewerasError::NotAPartition);
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        // Crossing: a < x < b < y with a, b in one block, x, y in another.
        for (i, b1) in blocks.iter().enumerate() {
            for b2 in &blocks[i + 1..] {
                for w in b1.windows(2) {
                    let inside = b2.iter().filter(|&&x| w[0] < x && x < w[1]).count();
                    if inside > 0 && inside < b2.len() {
                        return Err(KrewerasError::CrossingPartition(b1.clone(), b2.clone()));
                    }
                }
            }
        }
        Ok(NoncrossingPartition {
            n: n as u8,
            blocks,
        })
    }

    pub fn singletons(n: usize) -> Self {
        NoncrossingPartition {
            n: n as u8,
            blocks: (1..=n as u8).map(|v| vec![v]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    /// JSON shape: an array of ascending-integer arrays.
    pub fn to_json(&self) -> Vec<Vec<u8>> {
        self.blocks.clone()
    }

    pub fn from_json(n: usize, blocks: Vec<Vec<u8>>) -> Result<Self, KrewerasError> {
        Self::new(n, blocks)
    }
}

/// The classical Kreweras complement via the shift-and-connect rule:
/// interleave shifted copies `1', ..., n'` and connect `i'` with `j'`
/// whenever no block separates them, i.e. every block lies entirely inside
/// or entirely outside the value range `]i, j]`.
pub fn kreweras_complement(p: &NoncrossingPartition) -> NoncrossingPartition {
    let n = p.n();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let separated = p.blocks().iter().any(|b| {
                let inside = b.iter().filter(|&&v| i < (v as usize) && (v as usize) <= j).count();
                inside > 0 && inside < b.len()
            });
            if !separated {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut blocks: Vec<Vec<u8>> = Vec::new();
    let mut root_of: std::collections::HashMap<usize, usize> = Default::default();
    for v in 1..=n {
        let r = find(&mut parent, v);
        let idx = *root_of.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[idx].push(v as u8);
    }
    NoncrossingPartition::new(n, blocks).expect("complement of a non-crossing partition")
}

/// Blocks as chains of up arcs between consecutive block members.
pub fn partition_to_up_arc_diagram(p: &NoncrossingPartition) -> Ncad {
    let mut arcs = Vec::new();
    for b in p.blocks() {
        for w in b.windows(2) {
            arcs.push(Arc::up(w[0], w[1]).expect("block members are distinct"));
        }
    }
    Ncad::new(p.n(), arcs).expect("non-crossing blocks give non-crossing up arcs")
}

/// Inverse of [`partition_to_up_arc_diagram`]: connected components of the
/// endpoint-sharing relation become blocks.
pub fn up_arc_diagram_to_partition(d: &Ncad) -> Result<NoncrossingPartition, KrewerasError> {
    let n = d.n();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for arc in d.arcs() {
        if !arc.is_up_arc() {
            return Err(KrewerasError::NotAnUpArcDiagram(*arc));
        }
        let (ra, rb) = (
            find(&mut parent, arc.a() as usize),
            find(&mut parent, arc.b() as usize),
        );
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut blocks: Vec<Vec<u8>> = Vec::new();
    let mut root_of: std::collections::HashMap<usize, usize> = Default::default();
    for v in 1..=n {
        let r = find(&mut parent, v);
        let idx = *root_of.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[idx].push(v as u8);
    }
    NoncrossingPartition::new(n, blocks)
}

/// All non-crossing partitions of `1..=n` (Catalan many).
pub fn all_noncrossing_partitions(n: usize) -> Vec<NoncrossingPartition> {
    // Restricted growth strings, filtered by the non-crossing condition.
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    fn rec(
        n: usize,
        pos: usize,
        max_used: usize,
        assignment: &mut Vec<usize>,
        out: &mut Vec<NoncrossingPartition>,
    ) {
        if pos == n {
            let nblocks = max_used;
            let mut blocks = vec![Vec::new(); nblocks];
            for (i, &b) in assignment.iter().enumerate() {
                blocks[b].push((i + 1) as u8);
            }
            if let Ok(p) = NoncrossingPartition::new(n, blocks) {
                out.push(p);
            }
            return;
        }
        for b in 0..=max_used {
            assignment[pos] = b;
            rec(n, pos + 1, max_used.max(b + 1), assignment, out);
        }
    }
    rec(n, 0, 0, &mut assignment, &mut out);
    out
}
