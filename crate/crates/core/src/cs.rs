//! Central symmetry under the canonical involution `σ(k) = -k`, the induced
//! cs 4-cycle test, and the quotient to a triangulation of projective space.

use std::fmt;
use std::ops::Deref;

use crate::complex::{Face, SimplicialComplex, VertexId, VertexSet};
use crate::error::{Error, Result};

/// The fixed-point-free vertex involution `k ↦ -k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Involution;

impl Involution {
    pub fn apply(self, v: VertexId) -> VertexId {
        v.antipode()
    }
}

/// Vertexwise negation.
pub trait Antipodal {
    fn antipode(&self) -> Self;
}

impl Antipodal for VertexId {
    fn antipode(&self) -> Self {
        VertexId::antipode(*self)
    }
}

impl Antipodal for Face {
    fn antipode(&self) -> Self {
        self.map(VertexId::antipode)
    }
}

impl Antipodal for SimplicialComplex {
    fn antipode(&self) -> Self {
        self.quotient_by_vertex_map(VertexId::antipode)
    }
}

impl Antipodal for VertexSet {
    fn antipode(&self) -> Self {
        self.iter().map(|v| v.antipode()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CsViolation {
    /// The antipode of this facet is not a face.
    NotClosed(Face),
    /// This face contains an antipodal pair, so σ fixes a nonempty face.
    FixedFace(Face),
}

impl fmt::Display for CsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsViolation::NotClosed(face) => write!(f, "antipode of facet {face} is missing"),
            CsViolation::FixedFace(face) => write!(f, "face {face} is fixed by the involution"),
        }
    }
}

/// Checks that `σ` is a simplicial automorphism acting freely on nonempty
/// faces; reports the first violation in facet order.
pub fn check_cs(complex: &SimplicialComplex) -> std::result::Result<(), CsViolation> {
    for facet in complex.facets() {
        let vs = facet.vertices();
        if let Some(&v) = vs.iter().find(|v| facet.contains(v.antipode())) {
            return Err(CsViolation::FixedFace(Face::collapsing([v, v.antipode()])));
        }
        let image = facet.antipode();
        if !complex.facets().binary_search(&image).is_ok() {
            return Err(CsViolation::NotClosed(facet.clone()));
        }
    }
    Ok(())
}

/// A complex known to be centrally symmetric under `σ(k) = -k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsComplex(SimplicialComplex);

impl CsComplex {
    pub fn new(complex: SimplicialComplex) -> Result<Self> {
        check_cs(&complex).map_err(|v| Error::CsViolation(v.to_string()))?;
        Ok(Self(complex))
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.0
    }

    pub fn into_inner(self) -> SimplicialComplex {
        self.0
    }

    pub fn involution(&self) -> Involution {
        Involution
    }
}

impl Deref for CsComplex {
    type Target = SimplicialComplex;

    fn deref(&self) -> &SimplicialComplex {
        &self.0
    }
}

fn star_vertices(complex: &SimplicialComplex, v: VertexId) -> VertexSet {
    complex
        .facets_containing(&Face::vertex(v))
        .flat_map(|f| f.vertices().iter().copied())
        .collect()
}

/// Returns a vertex `v` with `st(v) ∩ st(σ(v)) ≠ {∅}`, i.e. one lying on an
/// induced cs 4-cycle, or `None` when there is no such cycle. Vertices are
/// scanned by ascending absolute label, positive first.
pub fn find_induced_cs_4cycle(complex: &CsComplex) -> Option<VertexId> {
    let mut verts = complex.vertices();
    verts.sort_by_key(|v| v.canonical_key());
    verts.into_iter().find(|&v| {
        let mine = star_vertices(complex, v);
        let theirs = star_vertices(complex, v.antipode());
        !mine.is_disjoint(&theirs)
    })
}

/// Identifies every vertex with its antipode (`v ↦ |v|`). The halving of
/// every face count is checked rather than assumed.
pub fn quotient_rp(complex: &CsComplex) -> Result<SimplicialComplex> {
    if let Some(v) = find_induced_cs_4cycle(complex) {
        return Err(Error::CsViolation(format!(
            "vertex {v} lies on an induced cs 4-cycle"
        )));
    }
    let quotient = complex.quotient_by_vertex_map(|v| VertexId::from_raw(v.label().abs()));
    check_halving(complex, &quotient)?;
    Ok(quotient)
}

pub(crate) fn check_halving(cover: &SimplicialComplex, quotient: &SimplicialComplex) -> Result<()> {
    let fc = cover.f_vector();
    let fq = quotient.f_vector();
    for dim in 0..fc.0.len().max(fq.0.len()) {
        let c = fc.0.get(dim).copied().unwrap_or(0);
        let q = fq.0.get(dim).copied().unwrap_or(0);
        if c != 2 * q {
            return Err(Error::IdentificationCollision {
                dim,
                cover: c,
                quotient: q,
            });
        }
    }
    Ok(())
}
