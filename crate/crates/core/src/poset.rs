//! Finite posets on dense points, used by the distributive-lattice
//! construction and rowmotion.

use thiserror::Error;

use crate::bitset::BitMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation is not a partial order (cycle through {0})")]
    NotAPartialOrder(usize),
    #[error("point {0} out of range for size {1}")]
    PointOutOfRange(usize, usize),
    #[error("{0:?} is not an antichain")]
    NotAnAntichain(Vec<usize>),
    #[error("poset size {size} exceeds guard {limit}")]
    SizeGuard { size: usize, limit: usize },
}

/// A finite poset on points `0..size` with a dense reflexive relation.
#[derive(Clone)]
pub struct Poset {
    size: usize,
    le: BitMatrix,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(size={}, relations={:?})", self.size, self.relations())
    }
}

impl Poset {
    /// Builds the reflexive-transitive closure of the given strict
    /// relations and checks antisymmetry.
    pub fn from_relations(size: usize, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        for &(a, b) in relations {
            if a >= size {
                return Err(PosetError::PointOutOfRange(a, size));
            }
            if b >= size {
                return Err(PosetError::PointOutOfRange(b, size));
            }
        }
        let mut le = BitMatrix::new(size, size);
        for x in 0..size {
            le.set(x, x);
        }
        for &(a, b) in relations {
            le.set(a, b);
        }
        // Warshall closure.
        for z in 0..size {
            for x in 0..size {
                if x != z && le.get(x, z) {
                    le.or_row_into(z, x);
                }
            }
        }
        for x in 0..size {
            for y in 0..size {
                if x != y && le.get(x, y) && le.get(y, x) {
                    return Err(PosetError::NotAPartialOrder(x));
                }
            }
        }
        Ok(Poset { size, le })
    }

    pub fn chain(size: usize) -> Self {
        let rel: Vec<(usize, usize)> = (0..size.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Self::from_relations(size, &rel).unwrap()
    }

    pub fn antichain(size: usize) -> Self {
        Self::from_relations(size, &[]).unwrap()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le.get(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        x != y && !self.le(x, y) && !self.le(y, x)
    }

    /// Strict relations (x, y) with x < y in the poset.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in self.le.iter_row(x) {
                if y != x {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_antichain(&self, points: &[usize]) -> bool {
        points.iter().enumerate().all(|(i, &x)| {
            points[i + 1..]
                .iter()
                .all(|&y| !self.le(x, y) && !self.le(y, x))
        })
    }

    pub fn minimal_of(&self, points: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = points
            .iter()
            .copied()
            .filter(|&x| points.iter().all(|&y| y == x || !self.lt(y, x)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn maximal_of(&self, points: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = points
            .iter()
            .copied()
            .filter(|&x| points.iter().all(|&y| y == x || !self.lt(x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Lower set generated by `points`.
    pub fn lower_set_of(&self, points: &[usize]) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| points.iter().any(|&y| self.le(x, y)))
            .collect()
    }

    /// All antichains, the empty one included.
    pub fn antichains(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut stack = Vec::new();
        self.antichain_rec(0, &mut stack, &mut out);
        out
    }

    fn antichain_rec(&self, from: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for x in from..self.size {
            if stack.iter().all(|&y| self.incomparable(x, y)) {
                stack.push(x);
                out.push(stack.clone());
                self.antichain_rec(x + 1, stack, out);
                stack.pop();
            }
        }
    }
}

/// All labeled posets on `size` points. Enumerates the 3^(pairs) orientation
/// assignments and keeps the transitive ones; sizes beyond 5 are rejected.
pub fn all_posets(size: usize) -> Result<Vec<Poset>, PosetError> {
    const LIMIT: usize = 5;
    if size > LIMIT {
        return Err(PosetError::SizeGuard { size, limit: LIMIT });
    }
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| ((i + 1)..size).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0u8; pairs.len()];
    loop {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&choice)
            .filter_map(|(&(i, j), &c)| match c {
                1 => Some((i, j)),
                2 => Some((j, i)),
                _ => None,
            })
            .collect();
        // Keep assignments that are already transitively closed, so each
        // poset appears exactly once.
        if let Ok(p) = Poset::from_relations(size, &rel) {
            if p.relations().len() == rel.len() {
                out.push(p);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < 3 {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_antisymmetry() {
        let p = Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2));
        assert!(Poset::from_relations(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn antichain_enumeration() {
        // V poset: 0 < 2, 1 < 2.
        let p = Poset::from_relations(3, &[(0, 2), (1, 2)]).unwrap();
        let a = p.antichains();
        // {}, {0}, {1}, {2}, {0,1}
        assert_eq!(a.len(), 5);
        assert!(p.is_antichain(&[0, 1]));
        assert!(!p.is_antichain(&[0, 2]));
    }

    #[test]
    fn labeled_poset_counts_match_reference_sequence() {
        // 1, 1, 3, 19, 219 labeled posets on 0..=4 points.
        let expected = [1usize, 1, 3, 19, 219];
        for (k, &e) in expected.iter().enumerate() {
            assert_eq!(all_posets(k).unwrap().len(), e, "size {k}");
        }
    }

    #[test]
    fn min_max_of_subsets() {
        let p = Poset::from_relations(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.minimal_of(&[1, 2, 3]), vec![1, 3]);
        assert_eq!(p.maximal_of(&[0, 1, 3]), vec![1, 3]);
    }
}
