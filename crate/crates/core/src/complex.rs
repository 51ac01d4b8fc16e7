//! Facet-represented abstract simplicial complexes over signed vertex labels.
//!
//! A [`SimplicialComplex`] stores only its maximal faces. The full face set is
//! the downward closure of the facets and is materialized lazily, one
//! dimension at a time, the first time a query needs it. Faces in every list
//! the complex hands out are sorted lexicographically on their (sorted)
//! vertex sequences, so every derived output is deterministic.
//!
//! Two degenerate complexes are kept apart on purpose: the *void* complex has
//! no faces at all, while the *empty* complex `{∅}` contains only the empty
//! face. Stars of antipodal vertices in a cs sphere without induced cs
//! 4-cycles intersect in exactly the latter.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::util::{for_each_combination, UnionFind};

/// A nonzero signed vertex label. In centrally symmetric contexts the sign
/// encodes the antipode: `σ(k) = -k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(i32);

impl VertexId {
    pub fn new(label: i32) -> Result<Self> {
        if label == 0 {
            return Err(Error::ZeroVertex);
        }
        Ok(Self(label))
    }

    /// Caller guarantees `label != 0`.
    pub(crate) const fn from_raw(label: i32) -> Self {
        debug_assert!(label != 0);
        Self(label)
    }

    pub const fn label(self) -> i32 {
        self.0
    }

    pub const fn antipode(self) -> Self {
        Self(-self.0)
    }

    /// Sort key used for canonical orders: ascending absolute value, the
    /// positive label before the negative one.
    pub fn canonical_key(self) -> (u32, bool) {
        (self.0.unsigned_abs(), self.0 < 0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

pub(crate) type VertexBuf = SmallVec<[VertexId; 8]>;

/// A face: a strictly increasing sequence of vertices. The empty face is a
/// valid value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Face {
    vertices: VertexBuf,
}

impl Face {
    pub fn new<I: IntoIterator<Item = VertexId>>(vertices: I) -> Result<Self> {
        let mut buf: VertexBuf = vertices.into_iter().collect();
        buf.sort_unstable();
        if buf.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedFace(buf.iter().map(|v| v.0).collect()));
        }
        Ok(Self { vertices: buf })
    }

    pub fn from_labels(labels: &[i32]) -> Result<Self> {
        let vs = labels
            .iter()
            .map(|&l| VertexId::new(l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vs)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertex(v: VertexId) -> Self {
        let mut vertices = VertexBuf::new();
        vertices.push(v);
        Self { vertices }
    }

    /// Builds a face from vertices that may repeat; duplicates collapse.
    pub(crate) fn collapsing<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        let mut buf: VertexBuf = vertices.into_iter().collect();
        buf.sort_unstable();
        buf.dedup();
        Self { vertices: buf }
    }

    pub(crate) fn from_sorted(vertices: VertexBuf) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.vertices.len() as isize - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.vertices.iter();
        'outer: for v in &self.vertices {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::collapsing(self.vertices.iter().chain(other.vertices.iter()).copied())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face::from_sorted(
            self.vertices
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face::from_sorted(
            self.vertices
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    pub fn without(&self, v: VertexId) -> Face {
        Face::from_sorted(self.vertices.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: VertexId) -> Face {
        Face::collapsing(self.vertices.iter().copied().chain(std::iter::once(v)))
    }

    /// Image under a vertex map; coinciding images collapse.
    pub fn map<F: Fn(VertexId) -> VertexId>(&self, f: F) -> Face {
        Face::collapsing(self.vertices.iter().map(|&v| f(v)))
    }

    /// All faces of codimension one, in lexicographic order.
    pub fn ridges(&self) -> Vec<Face> {
        let mut out: Vec<Face> = (0..self.len())
            .map(|i| {
                let mut buf = self.vertices.clone();
                buf.remove(i);
                Face::from_sorted(buf)
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn labels(&self) -> Vec<i32> {
        self.vertices.iter().map(|v| v.0).collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v.0)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Face counts `(f_0, …, f_dim)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An abstract simplicial complex stored by its facets.
///
/// Immutable after construction. Per-dimension face lists and the
/// vertex-to-facet incidence are computed on first use behind `OnceLock`s, so
/// a complex can be shared across threads once built.
pub struct SimplicialComplex {
    facets: Vec<Face>,
    dim: isize,
    closure: Vec<OnceLock<Vec<Face>>>,
    incidence: OnceLock<HashMap<VertexId, Vec<u32>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        Self {
            facets: self.facets.clone(),
            dim: self.dim,
            closure: self.closure.clone(),
            incidence: self.incidence.clone(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("dim", &self.dim)
            .field("facets", &self.facets)
            .finish()
    }
}

impl SimplicialComplex {
    /// Canonicalizes a facet description: duplicates and faces contained in
    /// another listed face are dropped, the rest sorted lexicographically.
    pub fn from_facets<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort_unstable();
        faces.dedup();
        let max_len = faces.iter().map(Face::len).max();
        let facets = match max_len {
            None => Vec::new(),
            Some(m) if faces.iter().all(|f| f.len() == m) => faces,
            Some(_) => remove_dominated(faces),
        };
        Self::from_canonical(facets)
    }

    /// Convenience constructor from raw labels.
    pub fn from_vertex_lists<L: AsRef<[i32]>>(lists: &[L]) -> Result<Self> {
        let faces = lists
            .iter()
            .map(|l| Face::from_labels(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_facets(faces))
    }

    fn from_canonical(facets: Vec<Face>) -> Self {
        let dim = facets.iter().map(Face::dim).max().unwrap_or(-1);
        let closure = (0..(dim + 2).max(0)).map(|_| OnceLock::new()).collect();
        Self {
            facets,
            dim,
            closure,
            incidence: OnceLock::new(),
        }
    }

    /// The complex with no faces at all.
    pub fn void() -> Self {
        Self::from_canonical(Vec::new())
    }

    /// The complex `{∅}`.
    pub fn empty() -> Self {
        Self::from_canonical(vec![Face::empty()])
    }

    /// The full simplex on a face, with all of its subfaces.
    pub fn simplex(face: Face) -> Self {
        Self::from_canonical(vec![face])
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.dim() == self.dim)
    }

    /// All `k`-faces in lexicographic order; out-of-range `k` gives an empty
    /// slice.
    pub fn faces(&self, k: isize) -> &[Face] {
        if k < -1 || k > self.dim {
            return &[];
        }
        self.closure[(k + 1) as usize].get_or_init(|| self.enumerate_faces(k))
    }

    pub fn num_faces(&self, k: isize) -> usize {
        self.faces(k).len()
    }

    /// Iterator over every face of every dimension, lowest dimension first.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> + '_ {
        (-1..=self.dim).flat_map(move |k| self.faces(k).iter())
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        let k = face.dim();
        if self.is_void() || k > self.dim {
            return false;
        }
        if let Some(list) = self.closure[(k + 1) as usize].get() {
            return list.binary_search(face).is_ok();
        }
        self.facets_containing(face).next().is_some()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.faces(0).iter().map(|f| f.vertices[0]).collect()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().into_iter().collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector((0..=self.dim).map(|k| self.num_faces(k)).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    fn incidence(&self) -> &HashMap<VertexId, Vec<u32>> {
        self.incidence.get_or_init(|| {
            let mut map: HashMap<VertexId, Vec<u32>> = HashMap::new();
            for (i, f) in self.facets.iter().enumerate() {
                for &v in f.vertices() {
                    map.entry(v).or_default().push(i as u32);
                }
            }
            map
        })
    }

    /// Facets containing `face`, in facet order.
    pub fn facets_containing<'a>(
        &'a self,
        face: &'a Face,
    ) -> Box<dyn Iterator<Item = &'a Face> + 'a> {
        if face.is_empty() {
            return Box::new(self.facets.iter());
        }
        let inc = self.incidence();
        let best = face
            .vertices()
            .iter()
            .map(|v| inc.get(v).map(Vec::as_slice).unwrap_or(&[]))
            .min_by_key(|l| l.len())
            .unwrap_or(&[]);
        Box::new(
            best.iter()
                .map(move |&i| &self.facets[i as usize])
                .filter(move |f| face.is_subset(f)),
        )
    }

    fn enumerate_faces(&self, k: isize) -> Vec<Face> {
        if k == -1 {
            return if self.is_void() {
                Vec::new()
            } else {
                vec![Face::empty()]
            };
        }
        let size = (k + 1) as usize;
        let inc = self.incidence();
        let mut verts: Vec<VertexId> = inc.keys().copied().collect();
        verts.sort_unstable();
        if size == 1 {
            return verts.into_iter().map(Face::vertex).collect();
        }
        // Bucket by smallest vertex: buckets come out in lexicographic order
        // and each one is deduplicated on its own.
        let buckets: Vec<Vec<Face>> = verts
            .par_iter()
            .map(|&v| {
                let mut bucket = Vec::new();
                for &fi in &inc[&v] {
                    let facet = &self.facets[fi as usize];
                    if facet.len() < size {
                        continue;
                    }
                    let pos = facet.vertices.binary_search(&v).expect("incidence");
                    let tail = &facet.vertices[pos + 1..];
                    for_each_combination(tail, size - 1, |combo| {
                        let mut buf = VertexBuf::with_capacity(size);
                        buf.push(v);
                        buf.extend_from_slice(combo);
                        bucket.push(Face::from_sorted(buf));
                    });
                }
                bucket.sort_unstable();
                bucket.dedup();
                bucket
            })
            .collect();
        buckets.concat()
    }

    /// `{σ : σ ∪ F ∈ Δ}`: generated by the facets containing `F`.
    pub fn star(&self, face: &Face) -> Result<Self> {
        let facets: Vec<Face> = self.facets_containing(face).cloned().collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(face.clone()));
        }
        Ok(Self::from_facets(facets))
    }

    /// `{σ ∈ st(F) : σ ∩ F = ∅}`.
    pub fn link(&self, face: &Face) -> Result<Self> {
        let facets: Vec<Face> = self
            .facets_containing(face)
            .map(|f| f.difference(face))
            .collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(face.clone()));
        }
        Ok(Self::from_facets(facets))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        let mine = self.vertex_set();
        if let Some(v) = other.vertices().into_iter().find(|v| mine.contains(v)) {
            return Err(Error::NotDisjoint(v));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                facets.push(f.union(g));
            }
        }
        Ok(Self::from_facets(facets))
    }

    /// Cone with apex `v`.
    pub fn cone(&self, apex: VertexId) -> Result<Self> {
        Self::simplex(Face::vertex(apex)).join(self)
    }

    /// All faces with vertices in `w`.
    pub fn induced_subcomplex(&self, w: &VertexSet) -> Self {
        if self.is_void() {
            return Self::void();
        }
        Self::from_facets(self.facets.iter().map(|f| {
            Face::from_sorted(
                f.vertices
                    .iter()
                    .copied()
                    .filter(|v| w.contains(v))
                    .collect(),
            )
        }))
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.first_missing_in(other).is_none()
    }

    fn first_missing_in(&self, other: &Self) -> Option<&Face> {
        self.facets.iter().find(|f| !other.contains_face(f))
    }

    fn require_subcomplex(&self, sub: &Self) -> Result<()> {
        match sub.first_missing_in(self) {
            Some(f) => Err(Error::NotASubcomplex(f.clone())),
            None => Ok(()),
        }
    }

    /// `Δ ∖ Γ`: the subcomplex induced on the vertices not in `Γ`.
    pub fn deletion(&self, sub: &Self) -> Result<Self> {
        self.require_subcomplex(sub)?;
        let removed = sub.vertex_set();
        let keep: VertexSet = self
            .vertices()
            .into_iter()
            .filter(|v| !removed.contains(v))
            .collect();
        Ok(self.induced_subcomplex(&keep))
    }

    /// Closure of the set difference `Δ - Γ` of face sets.
    pub fn complement_closure(&self, sub: &Self) -> Result<Self> {
        self.require_subcomplex(sub)?;
        Ok(Self::from_canonical(
            self.facets
                .iter()
                .filter(|f| !sub.contains_face(f))
                .cloned()
                .collect(),
        ))
    }

    fn require_edge(&self, edge: &Face) -> Result<()> {
        if edge.len() != 2 || !self.contains_face(edge) {
            return Err(Error::NotAnEdge(edge.clone()));
        }
        Ok(())
    }

    /// Identifies the endpoints of `edge`, keeping the label `survivor`.
    pub fn edge_contraction(&self, edge: &Face, survivor: VertexId) -> Result<Self> {
        self.require_edge(edge)?;
        if !edge.contains(survivor) {
            return Err(Error::SurvivorNotInEdge {
                edge: edge.clone(),
                survivor,
            });
        }
        let gone = edge.without(survivor).vertices()[0];
        Ok(self.quotient_by_vertex_map(|v| if v == gone { survivor } else { v }))
    }

    /// `lk(i) ∩ lk(j) = lk({i,j})` as face sets.
    pub fn link_condition(&self, edge: &Face) -> Result<bool> {
        self.require_edge(edge)?;
        let (i, j) = (edge.vertices()[0], edge.vertices()[1]);
        let lk_i = self.link(&Face::vertex(i))?;
        let lk_j = self.link(&Face::vertex(j))?;
        let lk_e = self.link(edge)?;
        // lk(e) ⊆ lk(i) ∩ lk(j) always holds; check the other inclusion.
        let holds = lk_i
            .all_faces()
            .filter(|g| !g.contains(j) && lk_j.contains_face(g))
            .all(|g| lk_e.contains_face(g));
        Ok(holds)
    }

    /// Image under a vertex map, with coinciding vertices of a face merged
    /// and dominated images dropped.
    pub fn quotient_by_vertex_map<F: Fn(VertexId) -> VertexId + Sync>(&self, f: F) -> Self {
        let images: Vec<Face> = self.facets.par_iter().map(|g| g.map(&f)).collect();
        Self::from_facets(images)
    }

    /// Components of the 1-skeleton, each as the complex generated by its
    /// facets, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Self> {
        let verts = self.vertices();
        if verts.is_empty() {
            return Vec::new();
        }
        let index: HashMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        for f in &self.facets {
            if let Some((&first, rest)) = f.vertices().split_first() {
                for w in rest {
                    uf.union(index[&first], index[w]);
                }
            }
        }
        let mut groups: Vec<Vec<Face>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        // Vertices are sorted, so first appearance order is by smallest vertex.
        for (i, _) in verts.iter().enumerate() {
            let r = uf.find(i);
            let next = slot.len();
            slot.entry(r).or_insert(next);
        }
        groups.resize(slot.len(), Vec::new());
        for f in &self.facets {
            if let Some(&v) = f.vertices().first() {
                groups[slot[&uf.find(index[&v])]].push(f.clone());
            }
        }
        groups.into_iter().map(Self::from_canonical).collect()
    }

    /// Complex generated by the ridges lying in exactly one facet.
    pub fn boundary_faces(&self) -> Result<Self> {
        if let Some(f) = self.facets.iter().find(|f| f.dim() != self.dim) {
            return Err(Error::NotPure(f.clone()));
        }
        let counts = self.ridge_counts();
        let ridges: Vec<Face> = counts
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        Ok(Self::from_facets(ridges))
    }

    /// How many facets contain each codimension-one face of a facet.
    pub fn ridge_counts(&self) -> HashMap<Face, u32> {
        let mut counts: HashMap<Face, u32> = HashMap::with_capacity(self.facets.len() * 4);
        for f in &self.facets {
            for r in f.ridges() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Faces shared by both complexes, as a complex.
    pub fn intersection(&self, other: &Self) -> Self {
        let (small, big) = if self.facets.len() <= other.facets.len() {
            (self, other)
        } else {
            (other, self)
        };
        let common: Vec<Face> = small
            .all_faces()
            .filter(|f| big.contains_face(f))
            .cloned()
            .collect();
        Self::from_facets(common)
    }

    /// Connected components of the face set `Δ - Γ` (faces of `Δ` not in
    /// `Γ`, adjacent when one contains the other), each returned as the
    /// closure of its faces. Ordered by smallest facet.
    pub fn complement_components(&self, sub: &Self) -> Result<Vec<Self>> {
        self.require_subcomplex(sub)?;
        let outside: Vec<&Face> = self
            .facets
            .iter()
            .filter(|f| !sub.contains_face(f))
            .collect();
        let sub_verts = sub.vertex_set();
        let mut uf = UnionFind::new(outside.len());
        let mut owner: HashMap<Face, usize> = HashMap::new();
        for (i, f) in outside.iter().enumerate() {
            let inside = Face::from_sorted(
                f.vertices()
                    .iter()
                    .copied()
                    .filter(|v| sub_verts.contains(v))
                    .collect(),
            );
            let mut link = |key: Face, uf: &mut UnionFind| match owner.get(&key) {
                Some(&j) => uf.union(i, j),
                None => {
                    owner.insert(key, i);
                }
            };
            for &v in f.vertices() {
                if !sub_verts.contains(&v) {
                    link(Face::vertex(v), &mut uf);
                }
            }
            // Faces spanned by vertices of Γ that are not in Γ; only possible
            // when Γ is not induced.
            if !inside.is_empty() && !sub.contains_face(&inside) {
                for r in 2..=inside.len() {
                    for_each_combination(inside.vertices(), r, |c| {
                        let h = Face::from_sorted(c.iter().copied().collect());
                        if !sub.contains_face(&h) {
                            link(h, &mut uf);
                        }
                    });
                }
            }
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut groups: Vec<Vec<Face>> = Vec::new();
        for (i, f) in outside.iter().enumerate() {
            let r = uf.find(i);
            let next = slot.len();
            let s = *slot.entry(r).or_insert(next);
            if s == groups.len() {
                groups.push(Vec::new());
            }
            groups[s].push((*f).clone());
        }
        Ok(groups.into_iter().map(Self::from_canonical).collect())
    }

    pub fn num_vertices(&self) -> usize {
        self.incidence().len()
    }

    /// Face-set union.
    pub fn union(&self, other: &Self) -> Self {
        Self::from_facets(self.facets.iter().chain(other.facets.iter()).cloned())
    }
}

fn remove_dominated(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut accepted: Vec<Face> = Vec::with_capacity(faces.len());
    let mut inc: HashMap<VertexId, Vec<usize>> = HashMap::new();
    let top = faces[0].len();
    for f in faces {
        let dominated = if f.len() == top {
            false
        } else if f.is_empty() {
            !accepted.is_empty()
        } else {
            let best = f
                .vertices()
                .iter()
                .map(|v| inc.get(v).map(Vec::as_slice).unwrap_or(&[]))
                .min_by_key(|l| l.len())
                .unwrap_or(&[]);
            best.iter().any(|&i| f.is_subset(&accepted[i]))
        };
        if !dominated {
            let idx = accepted.len();
            for &v in f.vertices() {
                inc.entry(v).or_default().push(idx);
            }
            accepted.push(f);
        }
    }
    accepted.sort_unstable();
    accepted
}

/// Brute-force set of every face of a complex, for cross-checks.
pub fn face_set(complex: &SimplicialComplex) -> HashSet<Face> {
    complex.all_faces().cloned().collect()
}
