//! Locally acyclic orientations and the staircase triangulation of the prism
//! `Δ × [-1, 1]` they determine.
//!
//! Prism vertices `(u, ±1)` are packed into fresh signed labels so that the
//! prism involution `(u, i) ↦ (σ(u), -i)` is again plain negation:
//!
//! ```text
//! label(u, i) = sign(u) · (2|u| - 1)   if i has the sign of u
//! label(u, i) = sign(u) · 2|u|         otherwise
//! ```

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::complex::{Face, SimplicialComplex, VertexId, VertexSet};
use crate::cs::Antipodal;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Top,
    Bottom,
}

impl Level {
    pub fn sign(self) -> i32 {
        match self {
            Level::Top => 1,
            Level::Bottom => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Level::Top => Level::Bottom,
            Level::Bottom => Level::Top,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrismVertex {
    pub base: VertexId,
    pub level: Level,
}

impl PrismVertex {
    pub fn new(base: VertexId, level: Level) -> Self {
        Self { base, level }
    }

    pub fn label(self) -> VertexId {
        let u = self.base.label();
        let s = u.signum();
        let m = 2 * u.abs();
        VertexId::from_raw(if self.level.sign() == s {
            s * (m - 1)
        } else {
            s * m
        })
    }

    pub fn decode(v: VertexId) -> Self {
        let x = v.label();
        let s = x.signum();
        let a = x.abs();
        if a % 2 == 1 {
            Self::new(
                VertexId::from_raw(s * (a + 1) / 2),
                if s > 0 { Level::Top } else { Level::Bottom },
            )
        } else {
            Self::new(
                VertexId::from_raw(s * a / 2),
                if s > 0 { Level::Bottom } else { Level::Top },
            )
        }
    }

    pub fn antipode(self) -> Self {
        Self::new(self.base.antipode(), self.level.flip())
    }
}

/// Smallest label strictly above every prism label over `base`.
pub fn first_free_label(base: &SimplicialComplex) -> i32 {
    2 * base
        .vertices()
        .iter()
        .map(|v| v.label().abs())
        .max()
        .unwrap_or(0)
        + 1
}

/// Edge orientation of a complex's graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lao {
    // (smaller, larger) -> whether smaller → larger
    arrows: BTreeMap<(VertexId, VertexId), bool>,
}

impl Lao {
    pub fn from_arrows<I: IntoIterator<Item = (VertexId, VertexId)>>(arrows: I) -> Self {
        let arrows = arrows
            .into_iter()
            .map(|(t, h)| {
                if t < h {
                    ((t, h), true)
                } else {
                    ((h, t), false)
                }
            })
            .collect();
        Self { arrows }
    }

    /// `Some(true)` if `u → w`, `Some(false)` if `w → u`.
    pub fn points(&self, u: VertexId, w: VertexId) -> Option<bool> {
        if u < w {
            self.arrows.get(&(u, w)).copied()
        } else {
            self.arrows.get(&(w, u)).map(|&b| !b)
        }
    }

    /// `(tail, head)` pairs in key order.
    pub fn arrows(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.arrows
            .iter()
            .map(|(&(a, b), &fwd)| if fwd { (a, b) } else { (b, a) })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Vertices of `face` from source to sink. Requires the orientation to be
    /// total and transitive on the face.
    pub fn order_face(&self, face: &Face) -> Result<Vec<VertexId>> {
        let vs = face.vertices();
        let mut ranked = Vec::with_capacity(vs.len());
        for &u in vs {
            let mut out = 0usize;
            for &w in vs {
                if u == w {
                    continue;
                }
                match self.points(u, w) {
                    Some(true) => out += 1,
                    Some(false) => {}
                    None => {
                        return Err(Error::Orientation(format!(
                            "edge {{{u},{w}}} is not oriented"
                        )))
                    }
                }
            }
            ranked.push((out, u));
        }
        ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        if ranked
            .iter()
            .enumerate()
            .any(|(i, r)| r.0 != vs.len() - 1 - i)
        {
            return Err(Error::Orientation(format!(
                "face {face} contains a directed cycle"
            )));
        }
        Ok(ranked.into_iter().map(|(_, u)| u).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaoViolation {
    Unoriented(Face),
    DirectedCycle(Face),
    NotOrderReversing(Face),
    CrossEdgeBackwards(Face),
}

impl fmt::Display for LaoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaoViolation::Unoriented(e) => write!(f, "edge {e} has no orientation"),
            LaoViolation::DirectedCycle(t) => write!(f, "triangle {t} is a directed cycle"),
            LaoViolation::NotOrderReversing(e) => {
                write!(f, "edge {e} is not reversed by the involution")
            }
            LaoViolation::CrossEdgeBackwards(e) => {
                write!(f, "cross edge {e} does not point out of the upper side")
            }
        }
    }
}

/// Checks (1) totality and no directed cycle on any 2-simplex, (2) with
/// `symmetric`, `u → w ⇔ σ(w) → σ(u)`, (3) with `upper`, every edge from
/// `upper` to its antipodal side points away from `upper`.
pub fn validate_lao(
    complex: &SimplicialComplex,
    lao: &Lao,
    symmetric: bool,
    upper: Option<&VertexSet>,
) -> std::result::Result<(), LaoViolation> {
    for e in complex.faces(1) {
        let (u, w) = (e.vertices()[0], e.vertices()[1]);
        let Some(fwd) = lao.points(u, w) else {
            return Err(LaoViolation::Unoriented(e.clone()));
        };
        if symmetric && lao.points(w.antipode(), u.antipode()) != Some(fwd) {
            return Err(LaoViolation::NotOrderReversing(e.clone()));
        }
        if let Some(side) = upper {
            let (tail, head) = if fwd { (u, w) } else { (w, u) };
            let crossing = (side.contains(&u) && side.contains(&w.antipode()))
                || (side.contains(&w) && side.contains(&u.antipode()));
            if crossing && !(side.contains(&tail) && side.contains(&head.antipode())) {
                return Err(LaoViolation::CrossEdgeBackwards(e.clone()));
            }
        }
    }
    for t in complex.faces(2) {
        let [a, b, c] = [t.vertices()[0], t.vertices()[1], t.vertices()[2]];
        let ab = lao.points(a, b);
        if ab == lao.points(b, c) && ab == lao.points(c, a) {
            return Err(LaoViolation::DirectedCycle(t.clone()));
        }
    }
    Ok(())
}

fn require_side_partition(complex: &SimplicialComplex, upper: &VertexSet) -> Result<()> {
    let verts = complex.vertex_set();
    let lower = upper.antipode();
    if let Some(v) = upper.iter().find(|v| lower.contains(v)) {
        return Err(Error::Certificate(format!(
            "upper side contains both {v} and its antipode"
        )));
    }
    let covered: VertexSet = upper.union(&lower).copied().collect();
    if covered != verts {
        return Err(Error::Certificate(
            "upper side and its antipode do not partition the vertex set".into(),
        ));
    }
    Ok(())
}

/// The symmetric orientation used by the tower: inside `upper` by ascending
/// absolute label (positive first), reversed on the antipodal side, and every
/// crossing edge directed out of `upper`.
pub fn canonical_lao(complex: &SimplicialComplex, upper: &VertexSet) -> Result<Lao> {
    require_side_partition(complex, upper)?;
    let arrows = complex.faces(1).iter().map(|e| {
        let (u, w) = (e.vertices()[0], e.vertices()[1]);
        match (upper.contains(&u), upper.contains(&w)) {
            (true, true) => {
                if u.canonical_key() < w.canonical_key() {
                    (u, w)
                } else {
                    (w, u)
                }
            }
            (false, false) => {
                // u → w iff σ(w) → σ(u) inside `upper`.
                if w.antipode().canonical_key() < u.antipode().canonical_key() {
                    (u, w)
                } else {
                    (w, u)
                }
            }
            (true, false) => (u, w),
            (false, true) => (w, u),
        }
    });
    Ok(Lao::from_arrows(arrows))
}

/// Staircase triangulation of `Δ × [-1, 1]`: a facet ordered `v_1 → … → v_k`
/// yields the `k` simplices `{(v_1,+),…,(v_t,+),(v_t,-),…,(v_k,-)}`.
pub fn staircase_prism(complex: &SimplicialComplex, lao: &Lao) -> Result<SimplicialComplex> {
    validate_lao(complex, lao, false, None).map_err(|v| Error::Orientation(v.to_string()))?;
    let chunks: Vec<Vec<Face>> = complex
        .facets()
        .par_iter()
        .map(|facet| {
            let order = lao.order_face(facet)?;
            let mut out = Vec::with_capacity(order.len());
            for t in 0..order.len() {
                let top = order[..=t]
                    .iter()
                    .map(|&u| PrismVertex::new(u, Level::Top).label());
                let bottom = order[t..]
                    .iter()
                    .map(|&u| PrismVertex::new(u, Level::Bottom).label());
                out.push(Face::new(top.chain(bottom)).expect("prism labels are distinct"));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(SimplicialComplex::from_facets(chunks.into_iter().flatten()))
}

/// `Δ × {level}` as a subcomplex of the prism.
pub fn layer(complex: &SimplicialComplex, level: Level) -> SimplicialComplex {
    complex.quotient_by_vertex_map(|u| PrismVertex::new(u, level).label())
}

/// The middle-layer embedding: `u ↦ (u, +1)` on the upper side and
/// `u ↦ (u, -1)` on its antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMap {
    map: BTreeMap<VertexId, VertexId>,
}

impl GammaMap {
    pub fn new(base: &SimplicialComplex, upper: &VertexSet) -> Result<Self> {
        require_side_partition(base, upper)?;
        let map = base
            .vertices()
            .into_iter()
            .map(|u| {
                let level = if upper.contains(&u) {
                    Level::Top
                } else {
                    Level::Bottom
                };
                (u, PrismVertex::new(u, level).label())
            })
            .collect();
        Ok(Self { map })
    }

    pub fn apply(&self, v: VertexId) -> Option<VertexId> {
        self.map.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    /// Post-composes with a vertex map on the image side.
    pub fn then<F: Fn(VertexId) -> VertexId>(&self, f: F) -> Self {
        Self {
            map: self.map.iter().map(|(&a, &b)| (a, f(b))).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let img: VertexSet = self.map.values().copied().collect();
        img.len() == self.map.len()
    }

    pub fn image(&self, complex: &SimplicialComplex) -> SimplicialComplex {
        complex.quotient_by_vertex_map(|v| self.map[&v])
    }
}

/// `Γ = ψ(S)`, checked to be an induced subcomplex of `host` isomorphic to
/// `S` via `ψ`.
pub fn gamma_subcomplex(
    host: &SimplicialComplex,
    psi: &GammaMap,
    base: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    if !psi.is_injective() {
        return Err(Error::BuilderInvariant(
            "middle-layer map is not injective".into(),
        ));
    }
    let gamma = psi.image(base);
    if let Some(f) = gamma.facets().iter().find(|f| !host.contains_face(f)) {
        return Err(Error::BuilderInvariant(format!(
            "image face {f} of the middle layer is missing"
        )));
    }
    if host.induced_subcomplex(&gamma.vertex_set()) != gamma {
        return Err(Error::BuilderInvariant(
            "image of the middle layer is not an induced subcomplex".into(),
        ));
    }
    if gamma.facets().len() != base.facets().len() {
        return Err(Error::BuilderInvariant(
            "middle-layer image is not isomorphic to its source".into(),
        ));
    }
    Ok(gamma)
}
