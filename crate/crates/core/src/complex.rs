//! The canonical join complex, canonical meet complex, and canonical
//! complex of a finite semidistributive lattice, stored as flag complexes.
//! Faces live implicitly as the cliques of the edge relation; flagness is a
//! verified statement, not an assumption: first-principles face
//! enumerations are compared against clique enumerations in the checks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitMatrix;
use crate::congruence::{quotient, Congruence, CongruenceError};
use crate::lattice::{ElementId, FiniteLattice, LatticeError};
use crate::Side;

/// Cap on explicit face enumeration.
pub const DEFAULT_FACE_CAP: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("lattice is not semidistributive")]
    NotSemidistributive,
    #[error("({0}, {1}) is not an interval")]
    NotAnInterval(ElementId, ElementId),
    #[error("vertex set is not a face")]
    NotAFace,
    #[error("face enumeration exceeded cap {0}")]
    FaceCapExceeded(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// A vertex of the canonical complex: a lattice element together with the
/// side on which it is irreducible. An element that is both join and meet
/// irreducible yields two distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalVertex {
    pub side: Side,
    pub element: ElementId,
}

impl CanonicalVertex {
    pub fn join(element: ElementId) -> Self {
        CanonicalVertex {
            side: Side::Join,
            element,
        }
    }

    pub fn meet(element: ElementId) -> Self {
        CanonicalVertex {
            side: Side::Meet,
            element,
        }
    }
}

/// A face of the canonical complex: a canonical join representation
/// together with a canonical meet representation (either may be empty).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub join_part: BTreeSet<ElementId>,
    pub meet_part: BTreeSet<ElementId>,
}

impl Face {
    pub fn vertices(&self) -> Vec<CanonicalVertex> {
        self.join_part
            .iter()
            .map(|&j| CanonicalVertex::join(j))
            .chain(self.meet_part.iter().map(|&m| CanonicalVertex::meet(m)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.join_part.len() + self.meet_part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A simplicial complex presented by its graph; the faces are the cliques.
pub struct FlagComplex {
    vertices: Vec<CanonicalVertex>,
    labels: Vec<String>,
    adj: BitMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexJson {
    pub tag: Side,
    pub label: String,
}

impl FlagComplex {
    pub fn new(vertices: Vec<CanonicalVertex>, labels: Vec<String>) -> Self {
        assert_eq!(vertices.len(), labels.len());
        let n = vertices.len();
        FlagComplex {
            vertices,
            labels,
            adj: BitMatrix::new(n, n),
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj.set(u, v);
            self.adj.set(v, u);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[CanonicalVertex] {
        &self.vertices
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_index(&self, v: &CanonicalVertex) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in (u + 1)..self.vertex_count() {
                if self.adj.get(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, verts: &[usize]) -> bool {
        verts.iter().enumerate().all(|(i, &u)| {
            verts[i + 1..]
                .iter()
                .all(|&v| u != v && self.adj.get(u, v))
        })
    }

    /// All cliques (the empty one included), capped.
    pub fn cliques(&self, cap: usize) -> Result<Vec<Vec<usize>>, ComplexError> {
        let mut out = vec![Vec::new()];
        let mut stack = Vec::new();
        self.cliques_rec(0, &mut stack, &mut out, cap)?;
        Ok(out)
    }

    fn cliques_rec(
        &self,
        from: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<(), ComplexError> {
        for v in from..self.vertex_count() {
            if stack.iter().all(|&u| self.adj.get(u, v)) {
                stack.push(v);
                if out.len() >= cap {
                    return Err(ComplexError::FaceCapExceeded(cap));
                }
                out.push(stack.clone());
                self.cliques_rec(v + 1, stack, out, cap)?;
                stack.pop();
            }
        }
        Ok(())
    }

    pub fn count_cliques(&self, cap: usize) -> Result<usize, ComplexError> {
        let mut count = 1usize;
        let mut stack = Vec::new();
        self.count_rec(0, &mut stack, &mut count, cap)?;
        Ok(count)
    }

    fn count_rec(
        &self,
        from: usize,
        stack: &mut Vec<usize>,
        count: &mut usize,
        cap: usize,
    ) -> Result<(), ComplexError> {
        for v in from..self.vertex_count() {
            if stack.iter().all(|&u| self.adj.get(u, v)) {
                *count += 1;
                if *count > cap {
                    return Err(ComplexError::FaceCapExceeded(cap));
                }
                stack.push(v);
                self.count_rec(v + 1, stack, count, cap)?;
                stack.pop();
            }
        }
        Ok(())
    }

    /// Induced subcomplex on the given vertex positions.
    pub fn induced(&self, keep: &[usize]) -> FlagComplex {
        let vertices: Vec<CanonicalVertex> = keep.iter().map(|&i| self.vertices[i]).collect();
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut sub = FlagComplex::new(vertices, labels);
        for (new_u, &old_u) in keep.iter().enumerate() {
            for (new_v, &old_v) in keep.iter().enumerate().skip(new_u + 1) {
                if self.adj.get(old_u, old_v) {
                    sub.add_edge(new_u, new_v);
                }
            }
        }
        sub
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self
                .vertices
                .iter()
                .zip(&self.labels)
                .map(|(v, l)| VertexJson {
                    tag: v.side,
                    label: l.clone(),
                })
                .collect(),
            edges: self.edges(),
        }
    }
}

fn require_semidistributive(lattice: &FiniteLattice) -> Result<(), ComplexError> {
    if lattice.is_semidistributive() {
        Ok(())
    } else {
        Err(ComplexError::NotSemidistributive)
    }
}

fn representation_vertices(lattice: &FiniteLattice, side: Side) -> (Vec<CanonicalVertex>, Vec<String>) {
    let info = lattice.irreducibles();
    let elems = match side {
        Side::Join => &info.join_irreducibles,
        Side::Meet => &info.meet_irreducibles,
    };
    let vertices: Vec<CanonicalVertex> = elems
        .iter()
        .map(|&e| CanonicalVertex { side, element: e })
        .collect();
    let labels: Vec<String> = elems.iter().map(|&e| lattice.label(e)).collect();
    (vertices, labels)
}

/// The canonical join complex: vertices are the join irreducibles, faces
/// the canonical join representations. Edges are derived from
/// co-occurrence inside some representation.
pub fn canonical_join_complex(lattice: &FiniteLattice) -> Result<FlagComplex, ComplexError> {
    require_semidistributive(lattice)?;
    let (vertices, labels) = representation_vertices(lattice, Side::Join);
    let mut complex = FlagComplex::new(vertices, labels);
    let pos: std::collections::HashMap<ElementId, usize> = complex
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.element, i))
        .collect();
    for x in lattice.elements() {
        let members: Vec<ElementId> = lattice.cjr(x)?.members().iter().copied().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                complex.add_edge(pos[&u], pos[&v]);
            }
        }
    }
    Ok(complex)
}

pub fn canonical_meet_complex(lattice: &FiniteLattice) -> Result<FlagComplex, ComplexError> {
    require_semidistributive(lattice)?;
    let (vertices, labels) = representation_vertices(lattice, Side::Meet);
    let mut complex = FlagComplex::new(vertices, labels);
    let pos: std::collections::HashMap<ElementId, usize> = complex
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.element, i))
        .collect();
    for x in lattice.elements() {
        let members: Vec<ElementId> = lattice.cmr(x)?.members().iter().copied().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                complex.add_edge(pos[&u], pos[&v]);
            }
        }
    }
    Ok(complex)
}

/// The canonical complex: vertices are the disjoint union of join and meet
/// irreducibles; each interval `x <= y` contributes the face
/// `cjr(x) ⊔ cmr(y)`. Edges are derived from co-occurrence inside a face.
pub fn canonical_complex(lattice: &FiniteLattice) -> Result<FlagComplex, ComplexError> {
    require_semidistributive(lattice)?;
    let (mut vertices, mut labels) = representation_vertices(lattice, Side::Join);
    let (mv, ml) = representation_vertices(lattice, Side::Meet);
    vertices.extend(mv);
    labels.extend(ml);
    let mut complex = FlagComplex::new(vertices, labels);
    let index: std::collections::HashMap<CanonicalVertex, usize> = complex
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let cjrs: Vec<Vec<ElementId>> = lattice
        .elements()
        .map(|x| Ok(lattice.cjr(x)?.members().iter().copied().collect()))
        .collect::<Result<_, LatticeError>>()?;
    let cmrs: Vec<Vec<ElementId>> = lattice
        .elements()
        .map(|x| Ok(lattice.cmr(x)?.members().iter().copied().collect()))
        .collect::<Result<_, LatticeError>>()?;
    for x in lattice.elements() {
        for y in lattice.up_set(x) {
            let verts: Vec<usize> = cjrs[x]
                .iter()
                .map(|&j| index[&CanonicalVertex::join(j)])
                .chain(cmrs[y].iter().map(|&m| index[&CanonicalVertex::meet(m)]))
                .collect();
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    complex.add_edge(u, v);
                }
            }
        }
    }
    Ok(complex)
}

/// First-principles face list of the canonical complex: one face per
/// interval, deduplicated (the interval-face correspondence being a
/// bijection is a checked statement, not assumed here).
pub fn cc_faces(lattice: &FiniteLattice) -> Result<BTreeSet<Face>, ComplexError> {
    require_semidistributive(lattice)?;
    let mut out = BTreeSet::new();
    for x in lattice.elements() {
        let join_part = lattice.cjr(x)?.members().clone();
        for y in lattice.up_set(x) {
            let meet_part = lattice.cmr(y)?.members().clone();
            out.insert(Face {
                join_part: join_part.clone(),
                meet_part,
            });
        }
    }
    Ok(out)
}

/// The face attached to an interval: `cjr(x) ⊔ cmr(y)`.
pub fn cc_face_of_interval(
    lattice: &FiniteLattice,
    x: ElementId,
    y: ElementId,
) -> Result<Face, ComplexError> {
    if !lattice.leq(x, y) {
        return Err(ComplexError::NotAnInterval(x, y));
    }
    Ok(Face {
        join_part: lattice.cjr(x)?.members().clone(),
        meet_part: lattice.cmr(y)?.members().clone(),
    })
}

/// The interval attached to a face: `(join of the join part, meet of the
/// meet part)`. Validates that the input is a genuine face.
pub fn cc_interval_of_face(
    lattice: &FiniteLattice,
    face: &Face,
) -> Result<(ElementId, ElementId), ComplexError> {
    let x = lattice.join_all(face.join_part.iter().copied());
    let y = lattice.meet_all(face.meet_part.iter().copied());
    if !lattice.leq(x, y) {
        return Err(ComplexError::NotAFace);
    }
    if lattice.cjr(x)?.members() != &face.join_part || lattice.cmr(y)?.members() != &face.meet_part
    {
        return Err(ComplexError::NotAFace);
    }
    Ok((x, y))
}

/// The color-swapping involution on vertices: a join-tagged `j` goes to the
/// meet-tagged `kappa_meet(j)` and back.
pub fn kappa_vertex(
    lattice: &FiniteLattice,
    v: &CanonicalVertex,
) -> Result<CanonicalVertex, ComplexError> {
    Ok(match v.side {
        Side::Join => CanonicalVertex::meet(lattice.kappa_meet(v.element)?),
        Side::Meet => CanonicalVertex::join(lattice.kappa_join(v.element)?),
    })
}

/// Checks flagness of the canonical join, canonical meet, and canonical
/// complexes of `lattice`: the cliques of each graph must coincide with the
/// faces enumerated from first principles.
pub fn verify_flagness(lattice: &FiniteLattice, cap: usize) -> Result<bool, ComplexError> {
    // Canonical join and meet complexes.
    for side in [Side::Join, Side::Meet] {
        let complex = match side {
            Side::Join => canonical_join_complex(lattice)?,
            Side::Meet => canonical_meet_complex(lattice)?,
        };
        let mut faces = BTreeSet::new();
        for x in lattice.elements() {
            let rep = match side {
                Side::Join => lattice.cjr(x)?,
                Side::Meet => lattice.cmr(x)?,
            };
            faces.insert(rep.members().clone());
        }
        let cliques: BTreeSet<BTreeSet<ElementId>> = complex
            .cliques(cap)?
            .into_iter()
            .map(|c| c.iter().map(|&i| complex.vertices[i].element).collect())
            .collect();
        if faces != cliques {
            return Ok(false);
        }
    }
    // Canonical complex.
    let complex = canonical_complex(lattice)?;
    let faces = cc_faces(lattice)?;
    let cliques: BTreeSet<Face> = complex
        .cliques(cap)?
        .into_iter()
        .map(|c| clique_to_face(&complex, &c))
        .collect();
    Ok(faces == cliques)
}

fn clique_to_face(complex: &FlagComplex, clique: &[usize]) -> Face {
    let mut face = Face {
        join_part: BTreeSet::new(),
        meet_part: BTreeSet::new(),
    };
    for &i in clique {
        let v = complex.vertices[i];
        match v.side {
            Side::Join => face.join_part.insert(v.element),
            Side::Meet => face.meet_part.insert(v.element),
        };
    }
    face
}

/// The subcomplex induced by the irreducibles uncontracted by the
/// congruence. Isomorphic to the canonical complex of the quotient via
/// `irreducible -> its congruence class`.
pub fn restrict_to_congruence(
    complex: &FlagComplex,
    lattice: &FiniteLattice,
    congruence: &Congruence,
) -> FlagComplex {
    let kept_ji: BTreeSet<ElementId> = congruence.uncontracted_ji(lattice).into_iter().collect();
    let kept_mi: BTreeSet<ElementId> = congruence.uncontracted_mi(lattice).into_iter().collect();
    let keep: Vec<usize> = (0..complex.vertex_count())
        .filter(|&i| {
            let v = complex.vertices[i];
            match v.side {
                Side::Join => kept_ji.contains(&v.element),
                Side::Meet => kept_mi.contains(&v.element),
            }
        })
        .collect();
    complex.induced(&keep)
}

/// Face set of the subcomplex of the canonical complex of `lattice` induced
/// by the irreducibles uncontracted by `congruence`, compared against the
/// canonical complex of the quotient under the canonical vertex map
/// `irreducible -> its congruence class`. No isomorphism search: the map is
/// fixed, face sets must match exactly.
pub fn restriction_matches_quotient(
    lattice: &FiniteLattice,
    congruence: &Congruence,
    cap: usize,
) -> Result<bool, ComplexError> {
    let cc = canonical_complex(lattice)?;
    let restricted = restrict_to_congruence(&cc, lattice, congruence);
    let mapped: BTreeSet<Face> = restricted
        .cliques(cap)?
        .into_iter()
        .map(|c| {
            let mut face = Face {
                join_part: BTreeSet::new(),
                meet_part: BTreeSet::new(),
            };
            for &i in &c {
                let v = restricted.vertices[i];
                let class = congruence.class_of(v.element);
                match v.side {
                    Side::Join => face.join_part.insert(class),
                    Side::Meet => face.meet_part.insert(class),
                };
            }
            face
        })
        .collect();
    let q = quotient(lattice, congruence)?;
    let quotient_faces = cc_faces(&q.lattice)?;
    Ok(mapped == quotient_faces)
}
