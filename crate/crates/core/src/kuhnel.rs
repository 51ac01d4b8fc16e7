//! The barycentric subdivision of `∂Δ^{d+1}` with the complement involution,
//! and its quotient: a triangulation of `RP^d` on `2^{d+1} - 1` vertices.

use itertools::Itertools;
use rayon::prelude::*;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::cs::{quotient_rp, CsComplex};
use crate::error::{Error, Result};

/// Signed label of a nonempty proper subset of `{1, …, d+2}` (bit `i` is
/// element `i+1`). Subsets avoiding element 1 are numbered `1, 2, …` in
/// increasing bitmask order; a subset containing element 1 gets the negated
/// label of its complement.
pub fn subset_label(mask: u32, d: usize) -> VertexId {
    let full = (1u32 << (d + 2)) - 1;
    debug_assert!(mask != 0 && mask != full);
    if mask & 1 == 0 {
        VertexId::from_raw((mask >> 1) as i32)
    } else {
        VertexId::from_raw(-(((full ^ mask) >> 1) as i32))
    }
}

/// Inverse of [`subset_label`].
pub fn label_subset(v: VertexId, d: usize) -> u32 {
    let full = (1u32 << (d + 2)) - 1;
    let half = (v.label().unsigned_abs()) << 1;
    if v.label() > 0 {
        half
    } else {
        full ^ half
    }
}

/// Facets are the maximal chains `A_1 ⊂ … ⊂ A_{d+1}`, one per ordering of
/// `{1, …, d+2}`; `σ(A)` is the complement.
pub fn barycentric_boundary_simplex(d: usize) -> Result<CsComplex> {
    if d == 0 || d > 9 {
        return Err(Error::BuilderInvariant(format!(
            "barycentric double cover supported for 1 <= d <= 9, got {d}"
        )));
    }
    let perms: Vec<Vec<usize>> = (0..d + 2).permutations(d + 2).collect();
    let facets: Vec<Face> = perms
        .par_iter()
        .map(|perm| {
            let mut mask = 0u32;
            let chain = perm[..d + 1].iter().map(|&e| {
                mask |= 1 << e;
                subset_label(mask, d)
            });
            Face::collapsing(chain.collect::<Vec<_>>())
        })
        .collect();
    CsComplex::new(SimplicialComplex::from_facets(facets))
}

/// `2^{d+1} - 1`-vertex `RP^d`; the representative of each antipodal pair is
/// the subset avoiding element 1.
pub fn kuhnel_rpd(d: usize) -> Result<SimplicialComplex> {
    quotient_rp(&barycentric_boundary_simplex(d)?)
}
