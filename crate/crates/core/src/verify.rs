//! Property checks standing in for PL statements: closed pseudomanifolds,
//! homology-sphere vertex links, certificate invariants, and the reference
//! vertex counts.

use std::fmt;

use rayon::prelude::*;

use crate::complex::{Face, SimplicialComplex};
use crate::cs::Antipodal;
use crate::homology::{betti_gf2, homology_z, HomologyGroups, DEFAULT_Z_CAP};
use crate::tower::{Certificate, Tower};
use crate::util::UnionFind;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pure, every ridge in exactly two facets, facet-ridge graph connected.
pub fn check_closed_pseudomanifold(complex: &SimplicialComplex) -> Report {
    let mut violations = Vec::new();
    if complex.is_void() || complex.dim() < 0 {
        violations.push("complex has no vertices".into());
        return Report { violations };
    }
    let d = complex.dim();
    if let Some(f) = complex.facets().iter().find(|f| f.dim() != d) {
        violations.push(format!("not pure: facet {f} has dimension {}", f.dim()));
        return Report { violations };
    }
    let mut counts: Vec<(Face, u32)> = complex
        .ridge_counts()
        .into_iter()
        .filter(|(_, c)| *c != 2)
        .collect();
    counts.sort();
    for (r, c) in counts.iter().take(10) {
        violations.push(format!("ridge {r} lies in {c} facets"));
    }
    if counts.len() > 10 {
        violations.push(format!("… {} bad ridges in total", counts.len()));
    }
    if d > 0 {
        let facets = complex.facets();
        let mut owner: std::collections::HashMap<Face, usize> = Default::default();
        let mut uf = UnionFind::new(facets.len());
        for (i, f) in facets.iter().enumerate() {
            for r in f.ridges() {
                match owner.get(&r) {
                    Some(&j) => uf.union(i, j),
                    None => {
                        owner.insert(r, i);
                    }
                }
            }
        }
        let root = uf.find(0);
        if (1..facets.len()).any(|i| uf.find(i) != root) {
            violations.push("facet-ridge graph is disconnected".into());
        }
    }
    Report { violations }
}

/// Whether GF(2) Betti numbers are those of `S^k`.
pub fn is_gf2_sphere(betti: &[usize], k: usize) -> bool {
    let mut want = vec![0; k + 1];
    want[0] += 1;
    want[k] += 1;
    betti == want.as_slice()
}

/// Every vertex link is a closed `(d-1)`-pseudomanifold with the GF(2) Betti
/// numbers of `S^{d-1}`. With `edges`, edge links are checked the same way.
pub fn check_vertex_links(complex: &SimplicialComplex, d: usize, edges: bool) -> Report {
    let mut faces: Vec<Face> = complex.faces(0).to_vec();
    if edges && d >= 1 {
        faces.extend(complex.faces(1).iter().cloned());
    }
    let mut violations: Vec<String> = faces
        .par_iter()
        .filter_map(|f| {
            let k = d as isize - f.len() as isize;
            let link = complex.link(f).ok()?;
            if link.dim() != k {
                return Some(format!(
                    "link of {f} has dimension {}, expected {k}",
                    link.dim()
                ));
            }
            if k == 0 {
                return (link.num_vertices() != 2)
                    .then(|| format!("link of {f} is not two points"));
            }
            if !check_closed_pseudomanifold(&link).passed() {
                return Some(format!("link of {f} is not a closed pseudomanifold"));
            }
            let b = betti_gf2(&link);
            (!is_gf2_sphere(&b, k as usize)).then(|| format!("link of {f} has GF(2) Betti {b:?}"))
        })
        .collect();
    violations.sort();
    Report { violations }
}

/// A named pass/fail with a reason on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

impl CheckOutcome {
    fn new(name: &'static str, ok: bool, why: impl FnOnce() -> String) -> Self {
        Self {
            name,
            outcome: if ok { Ok(()) } else { Err(why()) },
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Ok(()) => write!(f, "{}: pass", self.name),
            Err(e) => write!(f, "{}: FAIL ({e})", self.name),
        }
    }
}

/// Combinatorial certificate invariants for `(S_i, B, D, v)` over the
/// sphere `below = S_{i-1}`.
pub fn certificate_structure(
    sphere: &SimplicialComplex,
    cert: &Certificate,
    below: &SimplicialComplex,
) -> Vec<CheckOutcome> {
    let b = &cert.ball_b;
    let sb = b.antipode();
    let v = cert.apex;
    let mut out = Vec::new();

    out.push(CheckOutcome::new(
        "sphere_below_included",
        below.is_subcomplex_of(sphere) && sphere.induced_subcomplex(&below.vertex_set()) == *below,
        || "S_{i-1} is not an induced subcomplex of S_i".into(),
    ));
    out.push(CheckOutcome::new(
        "ball_union",
        b.union(&sb) == *sphere,
        || "B ∪ σ(B) differs from S_i".into(),
    ));
    let meet = b.intersection(&sb);
    out.push(CheckOutcome::new(
        "ball_intersection",
        meet == *below,
        || format!("B ∩ σ(B) has f-vector {}", meet.f_vector()),
    ));
    let boundary = b.boundary_faces();
    out.push(CheckOutcome::new(
        "ball_boundary",
        boundary.as_ref().is_ok_and(|bd| bd == below),
        || match &boundary {
            Ok(bd) => format!("∂B has f-vector {}", bd.f_vector()),
            Err(e) => e.to_string(),
        },
    ));
    let split = match sphere.deletion(below) {
        Ok(del) => {
            let mut got = del.connected_components();
            let mut want = vec![cert.ball_d.clone(), cert.ball_d.antipode()];
            got.sort_by(|x, y| x.facets().cmp(y.facets()));
            want.sort_by(|x, y| x.facets().cmp(y.facets()));
            if got == want {
                Ok(())
            } else {
                Err(format!(
                    "deletion has {} components, not D ⊎ σ(D)",
                    got.len()
                ))
            }
        }
        Err(e) => Err(e.to_string()),
    };
    out.push(CheckOutcome {
        name: "deletion_split",
        outcome: split,
    });
    let star_v = sphere
        .star(&Face::vertex(v))
        .unwrap_or_else(|_| SimplicialComplex::void());
    let star_sv = sphere
        .star(&Face::vertex(v.antipode()))
        .unwrap_or_else(|_| SimplicialComplex::void());
    let (a, c) = (star_v.vertex_set(), star_sv.vertex_set());
    out.push(CheckOutcome::new(
        "star_cover",
        a.is_disjoint(&c) && a.len() + c.len() == sphere.num_vertices(),
        || {
            format!(
                "stars cover {} of {} vertices",
                a.union(&c).count(),
                sphere.num_vertices()
            )
        },
    ));
    out.push(CheckOutcome::new(
        "apex_star",
        cert.ball_d.is_subcomplex_of(&star_v) && star_v.is_subcomplex_of(b),
        || "D ⊆ st(v) ⊆ B fails".into(),
    ));
    out
}

fn acyclic(name: &'static str, complex: &SimplicialComplex) -> CheckOutcome {
    let b = betti_gf2(complex);
    let mut point = vec![0; b.len().max(1)];
    point[0] = 1;
    if b != point {
        return CheckOutcome::new(name, false, || format!("GF(2) Betti {b:?}"));
    }
    let d = complex.dim().max(0) as usize;
    if d <= DEFAULT_Z_CAP {
        match homology_z(complex, DEFAULT_Z_CAP) {
            Ok(h) if h == HomologyGroups::point(d) => {}
            Ok(h) => return CheckOutcome::new(name, false, || format!("integral homology {h}")),
            Err(e) => return CheckOutcome::new(name, false, || e.to_string()),
        }
    }
    CheckOutcome::new(name, true, String::new)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub levels: Vec<Vec<CheckOutcome>>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = (usize, &CheckOutcome)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.iter().map(move |c| (i, c)))
            .filter(|(_, c)| c.outcome.is_err())
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, level) in self.levels.iter().enumerate() {
            for c in level {
                writeln!(f, "level {i} {c}")?;
            }
        }
        Ok(())
    }
}

/// All certificate invariants at every level, including the homology-point
/// tests for `B` and `D` (GF(2) always, integral up to the default cap).
pub fn verify_certificate(tower: &Tower) -> CertificateReport {
    let levels = (0..=tower.dim())
        .into_par_iter()
        .map(|i| {
            let level = tower.level(i);
            let below = tower.sphere_below(i);
            let mut checks = certificate_structure(level.sphere.complex(), &level.cert, &below);
            checks.push(acyclic("ball_b_acyclic", &level.cert.ball_b));
            checks.push(acyclic("ball_d_acyclic", &level.cert.ball_d));
            checks
        })
        .collect();
    CertificateReport { levels }
}

/// `F_n` for `n ≥ -1`, with `F_{-1} = 1`.
pub fn fibonacci(n: i64) -> u64 {
    assert!(n >= -1, "Fibonacci index below -1");
    let (mut a, mut b) = (1u64, 0u64);
    for _ in -1..n {
        (a, b) = (b, a + b);
    }
    a
}

/// `f_0(S_d) = 3F_{d+1} + 7F_d + 3F_{d-1} - 4`.
pub fn fibonacci_sphere_f0(d: usize) -> u64 {
    let d = d as i64;
    3 * fibonacci(d + 1) + 7 * fibonacci(d) + 3 * fibonacci(d - 1) - 4
}

pub fn fibonacci_rpd_f0(d: usize) -> u64 {
    fibonacci_sphere_f0(d) / 2
}

pub fn kuhnel_f0(d: usize) -> u64 {
    (1u64 << (d + 1)) - 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub dim: usize,
    pub value: u64,
    /// The lower bound is only asserted for `d ≥ 3`.
    pub in_stated_range: bool,
}

/// `C(d+2, 2) + 1`.
pub fn arnoux_marin_bound(d: usize) -> Bound {
    let n = d as u64 + 2;
    Bound {
        dim: d,
        value: n * (n - 1) / 2 + 1,
        in_stated_range: d >= 3,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub bound: Bound,
    pub ours: u64,
    pub kuhnel: u64,
}

impl Comparison {
    pub fn new(d: usize) -> Self {
        Self {
            bound: arnoux_marin_bound(d),
            ours: fibonacci_rpd_f0(d),
            kuhnel: kuhnel_f0(d),
        }
    }

    /// `bound ≤ ours < kuhnel`, asserted only for `d ≥ 3`.
    pub fn holds(&self) -> Option<bool> {
        self.bound
            .in_stated_range
            .then_some(self.bound.value <= self.ours && self.ours < self.kuhnel)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bound={}  ours={}  kuhnel={}",
            self.bound.value, self.ours, self.kuhnel
        )?;
        if !self.bound.in_stated_range {
            write!(f, "  (bound outside stated range d>=3)")?;
        }
        Ok(())
    }
}
