//! Non-crossing arc diagrams and semi-crossing arc bidiagrams: the arc
//! encodings of permutations and of weak order intervals.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arc::{
    join_irreducible_inversions, meet_irreducible_noninversions, semi_cross_conflict, Arc,
    ArcError,
};
use crate::complex::{CanonicalVertex, FlagComplex};
use crate::perm::{all_pairs_mask, close_inversions, permutation_from_inversions, Permutation};

/// A set of pairwise non-crossing arcs on `n` points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ncad {
    n: u8,
    arcs: BTreeSet<Arc>,
}

impl Ncad {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, ArcError> {
        let arcs: BTreeSet<Arc> = arcs.into_iter().collect();
        for arc in &arcs {
            if !arc.fits(n) {
                return Err(ArcError::ArcOutOfRange { arc: *arc, n });
            }
        }
        let list: Vec<&Arc> = arcs.iter().collect();
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                if x.crosses(y) {
                    return Err(ArcError::NotNonCrossing(**x, **y));
                }
            }
        }
        Ok(Ncad {
            n: n as u8,
            arcs,
        })
    }

    pub fn empty(n: usize) -> Self {
        Ncad {
            n: n as u8,
            arcs: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
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

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.contains(arc)
    }

    pub fn to_json(&self) -> Vec<String> {
        self.arcs.iter().map(|a| a.to_string()).collect()
    }

    pub fn from_json(n: usize, arcs: &[String]) -> Result<Self, ArcError> {
        let parsed: Result<Vec<Arc>, _> = arcs.iter().map(|s| Arc::parse(s)).collect();
        Ncad::new(n, parsed?)
    }
}

impl std::fmt::Display for Ncad {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arcs.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.arcs.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The join diagram of a permutation: one arc per descent `p_i > p_{i+1}`,
/// running from `p_{i+1}` up to `p_i`, passing above the in-between values
/// placed before the descent and below those placed after it.
pub fn join_diagram(p: &Permutation) -> Ncad {
    let n = p.n();
    let line = p.one_line();
    let mut arcs = Vec::new();
    for i in 1..n {
        let (hi, lo) = (line[i - 1], line[i]);
        if hi > lo {
            let mut above = Vec::new();
            let mut below = Vec::new();
            for (j, &v) in line.iter().enumerate() {
                if lo < v && v < hi {
                    if j + 1 < i {
                        above.push(v);
                    } else if j + 1 > i + 1 {
                        below.push(v);
                    }
                }
            }
            arcs.push(Arc::new(lo, hi, above, below).expect("descent arc is valid"));
        }
    }
    Ncad::new(n, arcs).expect("descent arcs of one permutation never cross")
}

/// The meet diagram: one arc per ascent `p_i < p_{i+1}`, with the same
/// above/below rule (earlier position passes above).
pub fn meet_diagram(p: &Permutation) -> Ncad {
    let n = p.n();
    let line = p.one_line();
    let mut arcs = Vec::new();
    for i in 1..n {
        let (lo, hi) = (line[i - 1], line[i]);
        if lo < hi {
            let mut above = Vec::new();
            let mut below = Vec::new();
            for (j, &v) in line.iter().enumerate() {
                if lo < v && v < hi {
                    if j + 1 < i {
                        above.push(v);
                    } else if j + 1 > i + 1 {
                        below.push(v);
                    }
                }
            }
            arcs.push(Arc::new(lo, hi, above, below).expect("ascent arc is valid"));
        }
    }
    Ncad::new(n, arcs).expect("ascent arcs of one permutation never cross")
}

/// Inverse of [`join_diagram`]: the permutation whose inversion set is the
/// transitive closure of the union of the arcs' inversion sets.
pub fn permutation_of_join_diagram(d: &Ncad) -> Permutation {
    let n = d.n();
    let mask = close_inversions(
        d.arcs().fold(0u128, |m, a| m | join_irreducible_inversions(a)),
        n,
    );
    permutation_from_inversions(n, mask)
        .expect("a non-crossing join diagram determines a permutation")
}

/// Inverse of [`meet_diagram`], via non-inversion sets.
pub fn permutation_of_meet_diagram(d: &Ncad) -> Permutation {
    let n = d.n();
    let noninv = close_inversions(
        d.arcs()
            .fold(0u128, |m, a| m | meet_irreducible_noninversions(a)),
        n,
    );
    permutation_from_inversions(n, all_pairs_mask(n) ^ noninv)
        .expect("a non-crossing meet diagram determines a permutation")
}

/// JSON shape of a semi-crossing arc bidiagram.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScabJson {
    pub join: Vec<String>,
    pub meet: Vec<String>,
}

/// A semi-crossing arc bidiagram: a join diagram and a meet diagram with no
/// forbidden crossing between a join arc and a meet arc. Encodes a weak
/// order interval.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scab {
    join_diagram: Ncad,
    meet_diagram: Ncad,
}

impl Scab {
    pub fn new(join_diagram: Ncad, meet_diagram: Ncad) -> Result<Self, ArcError> {
        debug_assert_eq!(join_diagram.n(), meet_diagram.n());
        for ja in join_diagram.arcs() {
            for ma in meet_diagram.arcs() {
                if semi_cross_conflict(ja, ma) {
                    return Err(ArcError::SemiCrossViolation(*ja, *ma));
                }
            }
        }
        Ok(Scab {
            join_diagram,
            meet_diagram,
        })
    }

    /// The bidiagram of an interval `x <= y`: join diagram of the bottom,
    /// meet diagram of the top.
    pub fn of_interval(x: &Permutation, y: &Permutation) -> Result<Self, ArcError> {
        if !x.weak_le(y) {
            return Err(ArcError::NotAnInterval(x.clone(), y.clone()));
        }
        Scab::new(join_diagram(x), meet_diagram(y))
    }

    /// The interval encoded by this bidiagram.
    pub fn interval(&self) -> (Permutation, Permutation) {
        (
            permutation_of_join_diagram(&self.join_diagram),
            permutation_of_meet_diagram(&self.meet_diagram),
        )
    }

    pub fn join_diagram(&self) -> &Ncad {
        &self.join_diagram
    }

    pub fn meet_diagram(&self) -> &Ncad {
        &self.meet_diagram
    }

    pub fn n(&self) -> usize {
        self.join_diagram.n()
    }

    pub fn to_json(&self) -> ScabJson {
        ScabJson {
            join: self.join_diagram.to_json(),
            meet: self.meet_diagram.to_json(),
        }
    }

    pub fn from_json(n: usize, json: &ScabJson) -> Result<Self, ArcError> {
        Scab::new(
            Ncad::from_json(n, &json.join)?,
            Ncad::from_json(n, &json.meet)?,
        )
    }
}

/// Guard for the interval table; the weak order on 7 points is the largest
/// materialized.
pub const MAX_TABLE_N: usize = 7;

/// Counts the weak order intervals `x <= y` by the pair
/// `(descents of x, ascents of y)` = `(join arcs, meet arcs)` of the
/// corresponding bidiagram. Entry `(i, j)` of the result is the number of
/// bidiagrams with `i` join arcs and `j` meet arcs.
pub fn interval_table(n: usize) -> Result<Vec<Vec<u64>>, ArcError> {
    if n == 0 || n > MAX_TABLE_N {
        return Err(ArcError::SizeGuard {
            size: n,
            limit: MAX_TABLE_N,
        });
    }
    // All permutations with inversion masks, descent and ascent counts.
    let mut perms: Vec<(u128, usize, usize)> = Vec::new();
    let mut p = Permutation::identity(n);
    loop {
        perms.push((p.inversion_mask(), p.descents().len(), p.ascents().len()));
        let mut v = p.one_line().to_vec();
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            break;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        p = Permutation::new(v).unwrap();
    }
    let mut table = vec![vec![0u64; n]; n];
    for &(mx, dx, _) in &perms {
        for &(my, _, ay) in &perms {
            if mx & !my == 0 {
                table[dx][ay] += 1;
            }
        }
    }
    Ok(table)
}

/// The semi-crossing complex on `n` points: two tagged copies of every arc,
/// with edges between compatible pairs. Its cliques are exactly the
/// semi-crossing arc bidiagrams. Returns the complex together with the arc
/// list indexing its vertices (`element` fields index into that list).
pub fn semi_crossing_complex(n: usize) -> Result<(FlagComplex, Vec<Arc>), ArcError> {
    let arcs = crate::arc::enumerate_arcs(n)?;
    let m = arcs.len();
    let mut vertices = Vec::with_capacity(2 * m);
    let mut labels = Vec::with_capacity(2 * m);
    for (i, a) in arcs.iter().enumerate() {
        vertices.push(CanonicalVertex::join(i));
        labels.push(a.to_string());
    }
    for (i, a) in arcs.iter().enumerate() {
        vertices.push(CanonicalVertex::meet(i));
        labels.push(a.to_string());
    }
    let mut complex = FlagComplex::new(vertices, labels);
    for i in 0..m {
        for j in 0..m {
            if i < j && !arcs[i].crosses(&arcs[j]) {
                complex.add_edge(i, j);
                complex.add_edge(m + i, m + j);
            }
            if !semi_cross_conflict(&arcs[i], &arcs[j]) {
                complex.add_edge(i, m + j);
            }
        }
    }
    Ok((complex, arcs))
}
