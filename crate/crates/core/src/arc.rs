//! Arcs: the combinatorial avatars of join and meet irreducible
//! permutations. An arc runs from point `a` to point `b` on the horizontal
//! axis, passing above the points of `A` and below the points of `B`.

use thiserror::Error;

use crate::perm::{pair_index, Permutation};

/// Point masks live in a `u32`; arcs on more points are rejected.
pub const MAX_ARC_POINTS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("arc endpoints must satisfy a < b, got ({0}, {1})")]
    EndpointsOutOfOrder(u8, u8),
    #[error("above/below sets must partition the open interval of ({0}, {1})")]
    NotAPartition(u8, u8),
    #[error("arc {arc} does not fit in 1..={n}")]
    ArcOutOfRange { arc: Arc, n: usize },
    #[error("size {size} exceeds guard {limit}")]
    SizeGuard { size: usize, limit: usize },
    #[error("arcs {0} and {1} cross")]
    NotNonCrossing(Arc, Arc),
    #[error("join arc {0} and meet arc {1} semi-cross")]
    SemiCrossViolation(Arc, Arc),
    #[error("{0} is not below {1} in the weak order")]
    NotAnInterval(Permutation, Permutation),
    #[error("cannot parse arc from {0:?}")]
    Parse(String),
}

/// An arc `(a, b, A, B)` with `a < b` and `A ⊔ B` partitioning the open
/// interval `]a, b[`. Point sets are bitmasks with bit `p` for point `p`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    a: u8,
    b: u8,
    above: u32,
    below: u32,
}

#[inline]
fn open_interval_mask(a: u8, b: u8) -> u32 {
    // bits a+1 ..= b-1
    let mut m = 0u32;
    for p in (a + 1)..b {
        m |= 1 << p;
    }
    m
}

#[inline]
fn bit(p: u8) -> u32 {
    1 << p
}

impl Arc {
    pub fn new(
        a: u8,
        b: u8,
        above: impl IntoIterator<Item = u8>,
        below: impl IntoIterator<Item = u8>,
    ) -> Result<Self, ArcError> {
        let above_mask = above.into_iter().fold(0u32, |m, p| m | bit(p));
        let below_mask = below.into_iter().fold(0u32, |m, p| m | bit(p));
        Self::from_masks(a, b, above_mask, below_mask)
    }

    pub fn from_masks(a: u8, b: u8, above: u32, below: u32) -> Result<Self, ArcError> {
        if a == 0 || a >= b || b as usize > MAX_ARC_POINTS {
            return Err(ArcError::EndpointsOutOfOrder(a, b));
        }
        let span = open_interval_mask(a, b);
        if above & below != 0 || above | below != span {
            return Err(ArcError::NotAPartition(a, b));
        }
        Ok(Arc { a, b, above, below })
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    pub fn above_mask(&self) -> u32 {
        self.above
    }

    pub fn below_mask(&self) -> u32 {
        self.below
    }

    pub fn above_points(&self) -> Vec<u8> {
        (self.a + 1..self.b).filter(|&p| self.above & bit(p) != 0).collect()
    }

    pub fn below_points(&self) -> Vec<u8> {
        (self.a + 1..self.b).filter(|&p| self.below & bit(p) != 0).collect()
    }

    pub fn fits(&self, n: usize) -> bool {
        (self.b as usize) <= n
    }

    /// An up arc passes above its whole open interval.
    pub fn is_up_arc(&self) -> bool {
        self.below == 0
    }

    pub fn up(a: u8, b: u8) -> Result<Self, ArcError> {
        Self::from_masks(a, b, open_interval_mask(a, b), 0)
    }

    /// The restriction of this arc to a subspan `a' <= .. <= b'`.
    pub fn restrict(&self, a: u8, b: u8) -> Result<Self, ArcError> {
        let span = open_interval_mask(a, b);
        Self::from_masks(a, b, self.above & span, self.below & span)
    }

    /// Crossing relation: some point of one arc's closed support lies on
    /// the wrong side of the other, in both directions. Arcs sharing a
    /// start or end cross; an arc ending where another starts does not.
    pub fn crosses(&self, other: &Arc) -> bool {
        let ends_self = bit(self.a) | bit(self.b);
        let ends_other = bit(other.a) | bit(other.b);
        let x1 = (other.above | ends_other) & (self.below | ends_self);
        let x2 = (self.above | ends_self) & (other.below | ends_other);
        x1 != 0 && x2 != 0 && (x1 | x2).count_ones() >= 2
    }

    /// Subarc relation: `self` sits within `other`'s endpoints and follows
    /// it, i.e. both point sets are contained in `other`'s.
    pub fn is_subarc_of(&self, other: &Arc) -> bool {
        other.a <= self.a
            && self.b <= other.b
            && self.above & !other.above == 0
            && self.below & !other.below == 0
    }

    /// Weak order on arcs via join irreducibles:
    /// `σ_join(self) <= σ_join(other)`.
    pub fn le_join(&self, other: &Arc) -> bool {
        let a_ok = (bit(self.a) & (other.below | bit(other.a))) != 0;
        let b_ok = (bit(self.b) & (other.above | bit(other.b))) != 0;
        a_ok && b_ok && self.above & !other.above == 0 && self.below & !other.below == 0
    }

    /// Dual order via meet irreducibles: `σ_meet(self) <= σ_meet(other)`
    /// iff `a'` lies in `A ∪ {a}`, `b'` lies in `B ∪ {b}`, and both primed
    /// point sets are contained in the unprimed ones.
    pub fn le_meet(&self, other: &Arc) -> bool {
        let a_ok = (bit(other.a) & (self.above | bit(self.a))) != 0;
        let b_ok = (bit(other.b) & (self.below | bit(self.b))) != 0;
        a_ok && b_ok && other.above & !self.above == 0 && other.below & !self.below == 0
    }

    /// The at most two arcs covered by this one in the weak order on arcs.
    pub fn lower_covers(&self) -> Vec<Arc> {
        let mut out = Vec::new();
        if self.below != 0 {
            let min_b = self.below.trailing_zeros() as u8;
            let span = open_interval_mask(min_b, self.b);
            out.push(Arc {
                a: min_b,
                b: self.b,
                above: self.above & span,
                below: (self.below & !bit(min_b)) & span,
            });
        }
        if self.above != 0 {
            let max_a = (31 - self.above.leading_zeros()) as u8;
            let span = open_interval_mask(self.a, max_a);
            out.push(Arc {
                a: self.a,
                b: max_a,
                above: (self.above & !bit(max_a)) & span,
                below: self.below & span,
            });
        }
        out
    }

    /// Text format `a-b|A|B`, e.g. `1-5|2,4|3` or `2-3||`.
    pub fn parse(text: &str) -> Result<Self, ArcError> {
        let err = || ArcError::Parse(text.to_string());
        let parts: Vec<&str> = text.trim().split('|').collect();
        let [ends, above, below] = parts[..] else {
            return Err(err());
        };
        let (a_str, b_str) = ends.split_once('-').ok_or_else(err)?;
        let a: u8 = a_str.trim().parse().map_err(|_| err())?;
        let b: u8 = b_str.trim().parse().map_err(|_| err())?;
        let parse_set = |s: &str| -> Result<Vec<u8>, ArcError> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            let vals: Result<Vec<u8>, _> =
                s.split(',').map(|t| t.trim().parse::<u8>()).collect();
            let vals = vals.map_err(|_| err())?;
            if !vals.windows(2).all(|w| w[0] < w[1]) {
                return Err(err());
            }
            Ok(vals)
        };
        Arc::new(a, b, parse_set(above)?, parse_set(below)?)
    }
}

impl std::fmt::Display for Arc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_set = |pts: Vec<u8>| {
            pts.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{}-{}|{}|{}",
            self.a,
            self.b,
            fmt_set(self.above_points()),
            fmt_set(self.below_points())
        )
    }
}

impl std::fmt::Debug for Arc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Arc({self})")
    }
}

/// All arcs on `n` points; there are `2^n - n - 1` of them.
pub fn enumerate_arcs(n: usize) -> Result<Vec<Arc>, ArcError> {
    if n > MAX_ARC_POINTS {
        return Err(ArcError::SizeGuard {
            size: n,
            limit: MAX_ARC_POINTS,
        });
    }
    let mut out = Vec::new();
    for b in 2..=(n as u8) {
        for a in 1..b {
            let span = open_interval_mask(a, b);
            // (above - span) & span steps through the subsets of span.
            let mut above = 0u32;
            loop {
                out.push(Arc {
                    a,
                    b,
                    above,
                    below: span & !above,
                });
                if above == span {
                    break;
                }
                above = above.wrapping_sub(span) & span;
            }
        }
    }
    Ok(out)
}

/// The permutation with exactly one descent attached to an arc:
/// `[1 .. a-1, A ascending, b, a, B ascending, b+1 .. n]`.
pub fn join_irreducible_permutation(arc: &Arc, n: usize) -> Result<Permutation, ArcError> {
    if !arc.fits(n) || n > MAX_ARC_POINTS {
        return Err(ArcError::ArcOutOfRange { arc: *arc, n });
    }
    let mut v: Vec<u8> = (1..arc.a).collect();
    v.extend(arc.above_points());
    v.push(arc.b);
    v.push(arc.a);
    v.extend(arc.below_points());
    v.extend((arc.b + 1)..=(n as u8));
    Ok(Permutation::new(v).expect("arc data forms a permutation"))
}

/// The permutation with exactly one ascent attached to an arc:
/// `[n .. b+1, A descending, a, b, B descending, a-1 .. 1]`.
pub fn meet_irreducible_permutation(arc: &Arc, n: usize) -> Result<Permutation, ArcError> {
    if !arc.fits(n) || n > MAX_ARC_POINTS {
        return Err(ArcError::ArcOutOfRange { arc: *arc, n });
    }
    let mut v: Vec<u8> = ((arc.b + 1)..=(n as u8)).rev().collect();
    v.extend(arc.above_points().into_iter().rev());
    v.push(arc.a);
    v.push(arc.b);
    v.extend(arc.below_points().into_iter().rev());
    v.extend((1..arc.a).rev());
    Ok(Permutation::new(v).expect("arc data forms a permutation"))
}

/// Inversion set of `σ_join(arc)`: pairs `u < v` with `u` in `B ∪ {a}` and
/// `v` in `A ∪ {b}`.
pub(crate) fn join_irreducible_inversions(arc: &Arc) -> u128 {
    let us = arc.below | bit(arc.a);
    let vs = arc.above | bit(arc.b);
    mask_product(us, vs)
}

/// Non-inversion set of `σ_meet(arc)`: pairs `u < v` with `u` in `A ∪ {a}`
/// and `v` in `B ∪ {b}`.
pub(crate) fn meet_irreducible_noninversions(arc: &Arc) -> u128 {
    let us = arc.above | bit(arc.a);
    let vs = arc.below | bit(arc.b);
    mask_product(us, vs)
}

fn mask_product(us: u32, vs: u32) -> u128 {
    let mut out = 0u128;
    for u in 1..=MAX_ARC_POINTS as u8 {
        if us & bit(u) == 0 {
            continue;
        }
        for v in (u + 1)..=MAX_ARC_POINTS as u8 {
            if vs & bit(v) != 0 {
                out |= 1 << pair_index(u, v);
            }
        }
    }
    out
}

/// The semi-crossing obstruction between a join arc and a meet arc: some
/// `u < v` with `u` in `(A_meet ∪ {a_meet}) ∩ (B_join ∪ {a_join})` and
/// `v` in `(A_join ∪ {b_join}) ∩ (B_meet ∪ {b_meet})`. Equivalent to
/// `σ_join(join_arc) <~ σ_meet(meet_arc)`.
pub fn semi_cross_conflict(join_arc: &Arc, meet_arc: &Arc) -> bool {
    let u_set = (meet_arc.above | bit(meet_arc.a)) & (join_arc.below | bit(join_arc.a));
    let v_set = (join_arc.above | bit(join_arc.b)) & (meet_arc.below | bit(meet_arc.b));
    if u_set == 0 || v_set == 0 {
        return false;
    }
    u_set.trailing_zeros() < 31 - v_set.leading_zeros()
}
