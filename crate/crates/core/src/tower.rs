//! The inductive engine: a flag of cs spheres `S_0 ⊂ S_1 ⊂ … ⊂ S_d`, each
//! carrying a certificate `(B_i, D_i, v_i)`, grown one dimension at a time.
//!
//! One extension step takes the top sphere `S = S_{d-1}`:
//!
//! 1. triangulates `S × [-1, 1]` by the staircase of the canonical symmetric
//!    orientation;
//! 2. caps the two boundary copies of `S` with the cones `v± * K±` and
//!    `w± * L±`, giving the closed cs complex `Φ'`;
//! 3. contracts the vertical edges over `D ∪ σ(D)`, checking the link
//!    condition before every contraction;
//! 4. reads off the next certificate and relabels so that `σ(k) = -k` and
//!    the old sphere keeps its labels.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::complex::{Face, SimplicialComplex, VertexId, VertexSet};
use crate::cs::{check_cs, quotient_rp, Antipodal, CsComplex};
use crate::error::{Error, Result};
use crate::prism::{
    canonical_lao, first_free_label, gamma_subcomplex, layer, staircase_prism, validate_lao,
    GammaMap, Lao, Level, PrismVertex,
};

/// `(B_i, D_i, v_i)` for one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub ball_b: SimplicialComplex,
    pub ball_d: SimplicialComplex,
    pub apex: VertexId,
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub sphere: CsComplex,
    pub cert: Certificate,
}

/// Bookkeeping for one extension step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepLog {
    pub dim: usize,
    pub phi_prime_vertices: usize,
    pub contractions: usize,
    pub link_checks_passed: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct Tower {
    levels: Vec<TowerLevel>,
    log: Vec<StepLog>,
}

impl Tower {
    /// Assembles a tower from parts, e.g. after parsing. Structure is not
    /// checked here; see [`crate::verify::verify_certificate`].
    pub fn from_levels(levels: Vec<TowerLevel>) -> Self {
        Self {
            levels,
            log: Vec::new(),
        }
    }

    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &TowerLevel {
        &self.levels[i]
    }

    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn top(&self) -> &CsComplex {
        &self.levels[self.dim()].sphere
    }

    pub fn log(&self) -> &[StepLog] {
        &self.log
    }

    /// `S_{i-1}`, with `S_{-1} = {∅}`.
    pub fn sphere_below(&self, i: usize) -> SimplicialComplex {
        if i == 0 {
            SimplicialComplex::empty()
        } else {
            self.levels[i - 1].sphere.complex().clone()
        }
    }

    pub fn truncated(&self, dim: usize) -> Self {
        Self {
            levels: self.levels[..=dim].to_vec(),
            log: self.log.iter().filter(|s| s.dim <= dim).cloned().collect(),
        }
    }
}

fn vid(l: i32) -> VertexId {
    VertexId::from_raw(l)
}

fn cx(lists: &[&[i32]]) -> SimplicialComplex {
    SimplicialComplex::from_vertex_lists(lists).expect("static complex")
}

/// Levels 0 and 1: the antipodal pair `{3, -3}` and the cs 6-cycle.
pub fn base_tower() -> Tower {
    let s0 = cx(&[&[3], &[-3]]);
    let c0 = Certificate {
        ball_b: cx(&[&[3]]),
        ball_d: cx(&[&[3]]),
        apex: vid(3),
    };
    let s1 = cx(&[&[-3, 1], &[1, 2], &[2, 3], &[3, -1], &[-1, -2], &[-2, -3]]);
    let c1 = Certificate {
        ball_b: cx(&[&[-3, 1], &[1, 2], &[2, 3]]),
        ball_d: cx(&[&[1, 2]]),
        apex: vid(1),
    };
    Tower {
        levels: vec![
            TowerLevel {
                sphere: CsComplex::new(s0).expect("S_0 is cs"),
                cert: c0,
            },
            TowerLevel {
                sphere: CsComplex::new(s1).expect("S_1 is cs"),
                cert: c1,
            },
        ],
        log: Vec::new(),
    }
}

/// `W = V(D_{d-1}) ⊎ V(st_{S_{d-2}}(v_{d-2}))` for extending the top level.
pub fn upper_side(tower: &Tower) -> Result<VertexSet> {
    let top = tower.dim();
    if top == 0 {
        return Err(Error::Certificate(
            "extension needs at least two levels".into(),
        ));
    }
    let below = tower.level(top - 1);
    let star = below.sphere.star(&Face::vertex(below.cert.apex))?;
    let mut w = tower.level(top).cert.ball_d.vertex_set();
    for v in star.vertices() {
        if !w.insert(v) {
            return Err(Error::Certificate(format!(
                "vertex {v} lies in both D and the lower apex star"
            )));
        }
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Apexes {
    pub v_plus: VertexId,
    pub v_minus: VertexId,
    pub w_plus: VertexId,
    pub w_minus: VertexId,
}

/// The closed cs complex `Φ'` with the data needed by later steps.
#[derive(Clone, Debug)]
pub struct PhiPrime {
    pub complex: SimplicialComplex,
    pub prism: SimplicialComplex,
    pub lao: Lao,
    pub upper: VertexSet,
    pub psi: GammaMap,
    pub apexes: Apexes,
}

fn require_sub(part: &SimplicialComplex, whole: &SimplicialComplex, what: &str) -> Result<()> {
    if part.is_subcomplex_of(whole) {
        Ok(())
    } else {
        Err(Error::BuilderInvariant(format!(
            "{what} is not a subcomplex"
        )))
    }
}

/// `Φ' = Σ ∪ (v+ * K+) ∪ (v- * K-) ∪ (w+ * L+) ∪ (w- * L-)`.
pub fn build_phi_prime(tower: &Tower) -> Result<PhiPrime> {
    let upper = upper_side(tower)?;
    let lao = canonical_lao(tower.top(), &upper)?;
    build_phi_prime_with_lao(tower, lao)
}

/// [`build_phi_prime`] with a caller-supplied orientation, which must be
/// symmetric and point every crossing edge out of [`upper_side`].
pub fn build_phi_prime_with_lao(tower: &Tower, lao: Lao) -> Result<PhiPrime> {
    let top = tower.level(tower.dim());
    let sphere = top.sphere.complex();
    let ball = &top.cert.ball_b;
    let rim = tower.sphere_below(tower.dim());

    let upper = upper_side(tower)?;
    validate_lao(sphere, &lao, true, Some(&upper))
        .map_err(|v| Error::Orientation(v.to_string()))?;
    let prism = staircase_prism(sphere, &lao)?;

    let free = first_free_label(sphere);
    let apexes = Apexes {
        v_plus: vid(free),
        v_minus: vid(-free),
        w_plus: vid(free + 1),
        w_minus: vid(-(free + 1)),
    };

    let k_plus = layer(ball, Level::Top);
    let k_minus = layer(&ball.antipode(), Level::Bottom);
    let opposite_top = layer(&ball.antipode(), Level::Top);
    let same_bottom = layer(ball, Level::Bottom);
    for (part, what) in [
        (&k_plus, "K+"),
        (&k_minus, "K-"),
        (&opposite_top, "σ(B) × {+1}"),
        (&same_bottom, "B × {-1}"),
    ] {
        require_sub(part, &prism, what)?;
    }
    let l_plus = opposite_top.union(&layer(&rim, Level::Top).cone(apexes.v_plus)?);
    let l_minus = same_bottom.union(&layer(&rim, Level::Bottom).cone(apexes.v_minus)?);

    let caps = [
        k_plus.cone(apexes.v_plus)?,
        k_minus.cone(apexes.v_minus)?,
        l_plus.cone(apexes.w_plus)?,
        l_minus.cone(apexes.w_minus)?,
    ];
    let complex = SimplicialComplex::from_facets(
        prism
            .facets()
            .iter()
            .chain(caps.iter().flat_map(|c| c.facets()))
            .cloned(),
    );

    check_cs(&complex).map_err(|v| Error::BuilderInvariant(format!("Φ' is not cs: {v}")))?;
    if let Some((r, c)) = complex.ridge_counts().into_iter().find(|(_, c)| *c != 2) {
        return Err(Error::BuilderInvariant(format!(
            "Φ' is not a closed pseudomanifold: ridge {r} lies in {c} facets"
        )));
    }
    let psi = GammaMap::new(sphere, &upper)?;
    Ok(PhiPrime {
        complex,
        prism,
        lao,
        upper,
        psi,
        apexes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ContractionOrder {
    #[default]
    Ascending,
    Descending,
}

#[derive(Clone, Debug)]
pub struct Contracted {
    pub complex: SimplicialComplex,
    pub contractions: usize,
    pub link_checks_passed: usize,
    /// Maps each removed prism vertex to the vertex it was merged into.
    pub merged: HashMap<VertexId, VertexId>,
}

fn vertical_edge(u: VertexId) -> (VertexId, VertexId) {
    (
        PrismVertex::new(u, Level::Top).label(),
        PrismVertex::new(u, Level::Bottom).label(),
    )
}

/// Contracts `{(u,+1),(u,-1)}` and its antipode for every `u ∈ V(D)`,
/// checking the link condition right before each contraction.
pub fn contract_step(
    phi_prime: &SimplicialComplex,
    ball_d: &SimplicialComplex,
    order: ContractionOrder,
) -> Result<Contracted> {
    let mut base: Vec<VertexId> = ball_d.vertices();
    base.sort_by_key(|v| v.canonical_key());
    if order == ContractionOrder::Descending {
        base.reverse();
    }
    let mut current = phi_prime.clone();
    let mut merged = HashMap::new();
    let mut contractions = 0;
    let mut checks = 0;
    for u in base {
        let (top, bottom) = vertical_edge(u);
        // e keeps (u,+1); σ(e) keeps (σu,-1).
        for (survivor, gone) in [(top, bottom), (top.antipode(), bottom.antipode())] {
            let edge = Face::new([survivor, gone])?;
            if !current.link_condition(&edge)? {
                return Err(Error::ContractionUnsound(edge));
            }
            checks += 1;
            let before = current.num_vertices();
            current = current.edge_contraction(&edge, survivor)?;
            if current.num_vertices() + 1 != before {
                return Err(Error::BuilderInvariant(format!(
                    "contracting {edge} did not remove exactly one vertex"
                )));
            }
            merged.insert(gone, survivor);
            contractions += 1;
        }
    }
    Ok(Contracted {
        complex: current,
        contractions,
        link_checks_passed: checks,
        merged,
    })
}

/// Reads off `(B_d, D_d, v_d)` from the contracted sphere, relabels it, and
/// returns the extended tower.
pub fn next_certificate(
    tower: &Tower,
    phi_prime: &PhiPrime,
    contracted: &Contracted,
) -> Result<Tower> {
    let d = tower.dim() + 1;
    let phi = &contracted.complex;
    let prev = tower.level(d - 1);
    let sphere = prev.sphere.complex();
    let apexes = phi_prime.apexes;

    let psi = phi_prime
        .psi
        .then(|x| contracted.merged.get(&x).copied().unwrap_or(x));
    let gamma = gamma_subcomplex(phi, &psi, sphere)?;
    let d_top = layer(&prev.cert.ball_d, Level::Top);
    let d_bottom = layer(&prev.cert.ball_d.antipode(), Level::Bottom);
    if !d_top.is_subcomplex_of(&gamma) || !d_bottom.is_subcomplex_of(&gamma) {
        return Err(Error::BuilderInvariant(
            "Γ does not contain D × {+1} and σ(D) × {-1}".into(),
        ));
    }

    // D_d = {v+, w+} * st_{S_{d-2} × {+1}}((σ(v_{d-2}), +1))
    let lower = tower.level(d - 2);
    let lower_star = lower
        .sphere
        .star(&Face::vertex(lower.cert.apex.antipode()))?;
    let apex_edge = SimplicialComplex::simplex(Face::new([apexes.v_plus, apexes.w_plus])?);
    let ball_d = apex_edge.join(&layer(&lower_star, Level::Top))?;

    let split = phi.deletion(&gamma)?;
    let parts = split.connected_components();
    let expected_parts = {
        let mut p = vec![ball_d.clone(), ball_d.antipode()];
        p.sort_by(|a, b| a.facets().cmp(b.facets()));
        p
    };
    let mut got = parts.clone();
    got.sort_by(|a, b| a.facets().cmp(b.facets()));
    if got != expected_parts {
        return Err(Error::Certificate(format!(
            "S_{d} minus S_{} has {} components, not D_{d} and its antipode",
            d - 1,
            parts.len()
        )));
    }

    let sides = phi.complement_components(&gamma)?;
    if sides.len() != 2 {
        return Err(Error::Certificate(format!(
            "Φ - Γ has {} components, expected 2",
            sides.len()
        )));
    }
    let apex_face = Face::vertex(apexes.v_plus);
    let ball_b = sides
        .into_iter()
        .find(|c| c.contains_face(&apex_face))
        .ok_or_else(|| Error::Certificate("no side of Γ contains v+".into()))?;

    // Relabel: Γ takes back the labels of S_{d-1}; the rest of D_d follows
    // (lower star by canonical order of its base, then v+, then w+).
    let half = (sphere.num_vertices() / 2) as i32;
    let mut relabel: HashMap<VertexId, VertexId> = HashMap::new();
    for (u, image) in psi.iter() {
        relabel.insert(image, u);
    }
    let mut fresh: Vec<VertexId> = ball_d
        .vertices()
        .into_iter()
        .filter(|&x| x != apexes.v_plus && x != apexes.w_plus)
        .collect();
    fresh.sort_by_key(|&x| PrismVertex::decode(x).base.canonical_key());
    fresh.push(apexes.v_plus);
    fresh.push(apexes.w_plus);
    for (i, x) in fresh.into_iter().enumerate() {
        let label = vid(half + 1 + i as i32);
        relabel.insert(x, label);
        relabel.insert(x.antipode(), label.antipode());
    }
    if relabel.len() != phi.num_vertices() {
        return Err(Error::Certificate(format!(
            "V(Γ) ⊎ V(D_{d}) ⊎ V(σD_{d}) covers {} of {} vertices",
            relabel.len(),
            phi.num_vertices()
        )));
    }
    let rename = |x: VertexId| relabel[&x];
    let new_sphere = CsComplex::new(phi.quotient_by_vertex_map(rename))
        .map_err(|e| Error::BuilderInvariant(format!("relabelled sphere: {e}")))?;
    let cert = Certificate {
        ball_b: ball_b.quotient_by_vertex_map(rename),
        ball_d: ball_d.quotient_by_vertex_map(rename),
        apex: rename(apexes.v_plus),
    };

    if new_sphere.induced_subcomplex(&sphere.vertex_set()) != *sphere {
        return Err(Error::BuilderInvariant(format!(
            "S_{} is not an induced subcomplex of S_{d}",
            d - 1
        )));
    }
    for check in crate::verify::certificate_structure(&new_sphere, &cert, sphere) {
        if let Err(msg) = check.outcome {
            return Err(Error::Certificate(format!(
                "level {d}: {}: {msg}",
                check.name
            )));
        }
    }

    let mut levels = tower.levels.clone();
    levels.push(TowerLevel {
        sphere: new_sphere,
        cert,
    });
    Ok(Tower {
        levels,
        log: tower.log.clone(),
    })
}

/// One full extension step `S_{d-1} → S_d`.
pub fn extend(tower: &Tower) -> Result<Tower> {
    extend_with_order(tower, ContractionOrder::Ascending)
}

pub fn extend_with_order(tower: &Tower, order: ContractionOrder) -> Result<Tower> {
    let started = Instant::now();
    let phi_prime = build_phi_prime(tower)?;
    let ball_d = &tower.level(tower.dim()).cert.ball_d;
    let contracted = contract_step(&phi_prime.complex, ball_d, order)?;
    if contracted.contractions != 2 * ball_d.num_vertices() {
        return Err(Error::BuilderInvariant(format!(
            "{} contractions performed, expected {}",
            contracted.contractions,
            2 * ball_d.num_vertices()
        )));
    }
    let mut next = next_certificate(tower, &phi_prime, &contracted)?;
    next.log.push(StepLog {
        dim: next.dim(),
        phi_prime_vertices: phi_prime.complex.num_vertices(),
        contractions: contracted.contractions,
        link_checks_passed: contracted.link_checks_passed,
        elapsed: started.elapsed(),
    });
    Ok(next)
}

/// The verified tower `S_0 ⊂ … ⊂ S_d`.
pub fn build(d: usize) -> Result<Tower> {
    let mut tower = base_tower();
    if d == 0 {
        return Ok(tower.truncated(0));
    }
    while tower.dim() < d {
        tower = extend(&tower)?;
    }
    Ok(tower)
}

/// `Δ_d = S_d / σ`.
pub fn build_rpd(d: usize) -> Result<SimplicialComplex> {
    quotient_rp(build(d)?.top())
}

/// Vertex count of `S_d` from the recursion `n_0 = 2, n_1 = 6,
/// n_{i+1} = n_i + n_{i-1} + 4`.
pub fn sphere_vertex_recursion(d: usize) -> u64 {
    let (mut a, mut b) = (2u64, 6u64);
    if d == 0 {
        return a;
    }
    for _ in 1..d {
        (a, b) = (b, a + b + 4);
    }
    b
}
