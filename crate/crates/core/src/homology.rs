//! Simplicial chain complexes: boundary matrices, ranks over GF(2), Smith
//! normal form over the integers, and homology groups.
//!
//! Homology is unreduced, so `H_0` has rank equal to the number of
//! connected components.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Default top dimension for integral homology.
pub const DEFAULT_Z_CAP: usize = 4;

/// `∂_k`: columns are the `k`-faces and rows the `(k-1)`-faces, both in
/// lexicographic order. Removing the vertex at position `i` of a sorted face
/// contributes `(-1)^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub k: usize,
    pub rows: usize,
    pub columns: Vec<Vec<(u32, i8)>>,
}

impl BoundaryMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                m[i as usize][j] = s as i64;
            }
        }
        m
    }

    fn gf2_columns(&self) -> Vec<Vec<u32>> {
        self.columns
            .iter()
            .map(|c| c.iter().map(|&(i, _)| i).collect())
            .collect()
    }
}

fn face_index(faces: &[Face]) -> HashMap<&Face, u32> {
    faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f, i as u32))
        .collect()
}

/// `∂_k` for `k ≥ 1`.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> BoundaryMatrix {
    let lower = complex.faces(k as isize - 1);
    let index = face_index(lower);
    let columns = complex
        .faces(k as isize)
        .par_iter()
        .map(|f| {
            let mut col: Vec<(u32, i8)> = (0..f.len())
                .map(|i| {
                    let r = f.without(f.vertices()[i]);
                    (index[&r], if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    BoundaryMatrix {
        k,
        rows: lower.len(),
        columns,
    }
}

/// `∂_1, …, ∂_dim`. `∂_{k-1} ∂_k = 0` is checked for `k ≤ check_cap`.
pub fn boundary_matrices(
    complex: &SimplicialComplex,
    check_cap: usize,
) -> Result<Vec<BoundaryMatrix>> {
    let top = complex.dim().max(0) as usize;
    let mats: Vec<BoundaryMatrix> = (1..=top).map(|k| boundary_matrix(complex, k)).collect();
    for pair in mats.windows(2) {
        if pair[1].k <= check_cap && !composes_to_zero(&pair[0], &pair[1]) {
            return Err(Error::BuilderInvariant(format!(
                "∂_{} ∂_{} is nonzero",
                pair[0].k, pair[1].k
            )));
        }
    }
    Ok(mats)
}

/// Whether `lower · upper = 0`.
pub fn composes_to_zero(lower: &BoundaryMatrix, upper: &BoundaryMatrix) -> bool {
    upper.columns.par_iter().all(|col| {
        let mut acc: HashMap<u32, i64> = HashMap::new();
        for &(mid, a) in col {
            for &(row, b) in &lower.columns[mid as usize] {
                *acc.entry(row).or_default() += (a * b) as i64;
            }
        }
        acc.values().all(|&x| x == 0)
    })
}

/// Dense matrix over GF(2) with bit-packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_boundary(m: &BoundaryMatrix) -> Self {
        let mut b = Self::zeros(m.rows, m.cols());
        for (j, col) in m.columns.iter().enumerate() {
            for &(i, _) in col {
                b.set(i as usize, j, true);
            }
        }
        b
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if bit {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for j in 0..self.cols {
            let (word, bit) = (j / 64, 1u64 << (j % 64));
            let Some(p) = (rank..self.rows).find(|&r| m[r * w + word] & bit != 0) else {
                continue;
            };
            if p != rank {
                for x in 0..w {
                    m.swap(p * w + x, rank * w + x);
                }
            }
            let pivot: Vec<u64> = m[rank * w..(rank + 1) * w].to_vec();
            for r in 0..self.rows {
                if r != rank && m[r * w + word] & bit != 0 {
                    for (x, pw) in pivot.iter().enumerate() {
                        m[r * w + x] ^= pw;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Column reduction over GF(2). Columns listed in `skip` are known to reduce
/// to zero and are not processed. Returns the rank and the pivot rows.
fn reduce_gf2(columns: Vec<Vec<u32>>, skip: &HashSet<u32>) -> (usize, HashSet<u32>) {
    let mut owner: HashMap<u32, usize> = HashMap::new();
    let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(columns.len());
    for (j, mut col) in columns.into_iter().enumerate() {
        if skip.contains(&(j as u32)) {
            reduced.push(Vec::new());
            continue;
        }
        while let Some(&low) = col.last() {
            match owner.get(&low) {
                Some(&other) => col = xor_sorted(&col, &reduced[other]),
                None => {
                    owner.insert(low, j);
                    break;
                }
            }
        }
        reduced.push(col);
    }
    (owner.len(), owner.into_keys().collect())
}

/// GF(2) ranks of `∂_1, …, ∂_dim`, reducing the top dimension first so each
/// pivot set clears columns one dimension down.
pub fn ranks_gf2(complex: &SimplicialComplex) -> Vec<usize> {
    let top = complex.dim().max(0) as usize;
    let mut ranks = vec![0; top + 1];
    let mut clear = HashSet::new();
    for k in (1..=top).rev() {
        let m = boundary_matrix(complex, k);
        let (r, pivots) = reduce_gf2(m.gf2_columns(), &clear);
        ranks[k] = r;
        clear = pivots;
    }
    ranks
}

/// GF(2) Betti numbers `b_0, …, b_dim`. Empty for the void complex; `[0]`
/// for `{∅}`.
pub fn betti_gf2(complex: &SimplicialComplex) -> Vec<usize> {
    if complex.is_void() {
        return Vec::new();
    }
    if complex.dim() < 0 {
        return vec![0];
    }
    let ranks = ranks_gf2(complex);
    let f = complex.f_vector();
    (0..ranks.len())
        .map(|k| f.0[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect()
}

/// Integer types usable by the dense Smith normal form.
trait SnfInt: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    type Key: Ord;
    fn key(&self) -> Self::Key;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn div_floor(&self, b: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_negative(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl SnfInt for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    type Key = u64;
    fn key(&self) -> u64 {
        self.unsigned_abs()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn div_floor(&self, b: &Self) -> Self {
        Integer::div_floor(self, b)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    type Key = BigInt;
    fn key(&self) -> BigInt {
        self.abs()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn div_floor(&self, b: &Self) -> Self {
        Integer::div_floor(self, b)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Dense SNF with smallest-absolute-value pivoting. `None` on overflow.
fn dense_snf<T: SnfInt>(mut m: Vec<Vec<T>>) -> Option<Vec<BigInt>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize, T::Key)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() {
                        let key = x.key();
                        if best.as_ref().is_none_or(|b| key < b.2) {
                            best = Some((i, j, key));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return Some(finish(diag));
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&p);
                for j in t..cols {
                    let v = m[i][j].sub_mul(&q, &m[t][j])?;
                    m[i][j] = v;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&p);
                for i in t..rows {
                    let v = m[i][j].sub_mul(&q, &m[i][t])?;
                    m[i][j] = v;
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold a row with a non-multiple into row t.
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| {
                    let x = &m[i][j];
                    !x.is_zero() && !x.sub_mul(&x.div_floor(&p), &p).is_some_and(|r| r.is_zero())
                })
            });
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = m[t][j].add(&m[i][j])?;
                        m[t][j] = v;
                    }
                }
                None => {
                    diag.push(if p.is_negative() { p.neg() } else { p }.to_big());
                    break;
                }
            }
        }
    }
    Some(finish(diag))
}

fn finish(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    diag.sort();
    diag
}

/// Nonzero invariant factors `d_1 | d_2 | …` of an integer matrix given as
/// sparse columns of `(row, value)`. Unit pivots are eliminated sparsely
/// first; the remainder goes through a dense SNF in `i64`, redone with
/// big integers if any intermediate overflows.
pub fn smith_normal_form(rows: usize, columns: &[Vec<(u32, i64)>]) -> Vec<BigInt> {
    sparse_then_dense(rows, columns).unwrap_or_else(|| {
        let mut big = vec![vec![BigInt::zero(); columns.len()]; rows];
        for (j, c) in columns.iter().enumerate() {
            for &(i, v) in c {
                big[i as usize][j] += v;
            }
        }
        dense_snf::<BigInt>(big).expect("big integers do not overflow")
    })
}

fn sparse_then_dense(rows: usize, columns: &[Vec<(u32, i64)>]) -> Option<Vec<BigInt>> {
    let mut cols: Vec<HashMap<u32, i64>> = vec![HashMap::new(); columns.len()];
    for (j, c) in columns.iter().enumerate() {
        for &(i, v) in c {
            let e = cols[j].entry(i).or_insert(0);
            *e = e.checked_add(v)?;
        }
        cols[j].retain(|_, v| *v != 0);
    }
    let mut row_cols: Vec<HashSet<u32>> = vec![HashSet::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            row_cols[i as usize].insert(j as u32);
        }
    }
    let mut units = 0usize;
    let mut alive_row = vec![true; rows];
    let mut queue: Vec<usize> = (0..cols.len()).collect();
    let mut next = 0;
    while next < queue.len() {
        let j = queue[next];
        next += 1;
        let pivot = cols[j]
            .iter()
            .filter(|(_, v)| v.abs() == 1)
            .min_by_key(|(i, _)| (row_cols[**i as usize].len(), **i))
            .map(|(&i, &v)| (i, v));
        let Some((r, v)) = pivot else { continue };
        let pivot_col = std::mem::take(&mut cols[j]);
        for &i in pivot_col.keys() {
            row_cols[i as usize].remove(&(j as u32));
        }
        let mut others: Vec<u32> = row_cols[r as usize].iter().copied().collect();
        others.sort_unstable();
        for c in others {
            let c = c as usize;
            let q = cols[c][&r] * v;
            for (&i, &x) in &pivot_col {
                let e = cols[c].entry(i).or_insert(0);
                *e = e.checked_sub(q.checked_mul(x)?)?;
                if *e == 0 {
                    cols[c].remove(&i);
                    row_cols[i as usize].remove(&(c as u32));
                } else {
                    row_cols[i as usize].insert(c as u32);
                }
            }
            queue.push(c);
        }
        alive_row[r as usize] = false;
        units += 1;
    }

    let live_rows: Vec<usize> = (0..rows)
        .filter(|&i| alive_row[i] && !row_cols[i].is_empty())
        .collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let pos: HashMap<usize, usize> = live_rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut dense = vec![vec![0i64; live_cols.len()]; live_rows.len()];
    for (q, &j) in live_cols.iter().enumerate() {
        for (&i, &x) in &cols[j] {
            dense[pos[&(i as usize)]][q] = x;
        }
    }
    let rest = match dense_snf(dense.clone()) {
        Some(r) => r,
        None => {
            let big = dense
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            dense_snf::<BigInt>(big)?
        }
    };
    let mut out = vec![BigInt::one(); units];
    out.extend(rest);
    Some(finish(out))
}

/// Invariant factors of a dense integer matrix.
pub fn smith_normal_form_dense(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let columns: Vec<Vec<(u32, i64)>> = (0..cols)
        .map(|j| (0..rows).map(|i| (i as u32, m[i][j])).collect())
        .collect();
    smith_normal_form(rows, &columns)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroups(pub Vec<HomologyGroup>);

impl HomologyGroups {
    /// `Z, 0, …, 0, Z`.
    pub fn sphere(d: usize) -> Self {
        let mut g = vec![HomologyGroup::free(0); d + 1];
        g[0].rank += 1;
        g[d].rank += 1;
        Self(g)
    }

    /// `H_0 = Z`, `H_k = Z/2` for odd `k < d`, `H_d = Z` iff `d` is odd.
    pub fn real_projective(d: usize) -> Self {
        let g = (0..=d)
            .map(|k| {
                if k == 0 || (k == d && d % 2 == 1) {
                    HomologyGroup::free(1)
                } else if k % 2 == 1 {
                    HomologyGroup {
                        rank: 0,
                        torsion: vec![BigInt::from(2)],
                    }
                } else {
                    HomologyGroup::free(0)
                }
            })
            .collect();
        Self(g)
    }

    /// A point: `Z, 0, …, 0` with `d + 1` entries.
    pub fn point(d: usize) -> Self {
        let mut g = vec![HomologyGroup::free(0); d + 1];
        g[0].rank = 1;
        Self(g)
    }
}

impl fmt::Display for HomologyGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integral homology up to dimension `dim(complex)`, refusing when that
/// exceeds `cap`.
pub fn homology_z(complex: &SimplicialComplex, cap: usize) -> Result<HomologyGroups> {
    if complex.dim() < 0 {
        return Ok(HomologyGroups(Vec::new()));
    }
    let top = complex.dim() as usize;
    if top > cap {
        return Err(Error::HomologyCapExceeded { dim: top, cap });
    }
    let f = complex.f_vector();
    // factors[k] = invariant factors of ∂_k, k = 1..=top
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    let mats = boundary_matrices(complex, cap)?;
    for m in &mats {
        let cols: Vec<Vec<(u32, i64)>> = m
            .columns
            .iter()
            .map(|c| c.iter().map(|&(i, s)| (i, s as i64)).collect())
            .collect();
        factors[m.k] = smith_normal_form(m.rows, &cols);
    }
    let groups = (0..=top)
        .map(|k| {
            let rank_out = factors[k].len();
            let rank_in = factors[k + 1].len();
            HomologyGroup {
                rank: f.0[k] - rank_out - rank_in,
                torsion: factors[k + 1]
                    .iter()
                    .filter(|x| !x.is_one())
                    .cloned()
                    .collect(),
            }
        })
        .collect();
    Ok(HomologyGroups(groups))
}

/// Rank of a dense integer matrix modulo a prime `p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let inv = |x: i64| -> i64 {
        let (mut r, mut e, mut b) = (1i64, p - 2, x);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for j in 0..cols {
        let Some(pr) = (rank..rows).find(|&i| a[i][j] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let iv = inv(a[rank][j]);
        for x in a[rank].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..rows {
            if i != rank && a[i][j] != 0 {
                let q = a[i][j];
                for c in j..cols {
                    a[i][c] = (a[i][c] - q * a[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Converts small invariant factors for display and tests.
pub fn factors_as_i64(f: &[BigInt]) -> Option<Vec<i64>> {
    f.iter().map(|x| x.to_i64()).collect()
}
