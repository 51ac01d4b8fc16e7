use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use rpd_core::homology::{
    betti_gf2, boundary_matrix, factors_as_i64, homology_z, smith_normal_form_dense, BitMatrix,
};
use rpd_core::{Antipodal, Face, SimplicialComplex, VertexId};

fn closure(c: &SimplicialComplex) -> BTreeSet<Vec<i32>> {
    let mut out = BTreeSet::new();
    for f in c.facets() {
        let l = f.labels();
        for mask in 0u32..(1 << l.len()) {
            out.insert(
                (0..l.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| l[i])
                    .collect(),
            );
        }
    }
    out
}

fn complex_strategy(max_v: i32) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(1..=max_v, 1..=4), 1..7).prop_map(|fs| {
        let lists: Vec<Vec<i32>> = fs.into_iter().map(|s| s.into_iter().collect()).collect();
        SimplicialComplex::from_vertex_lists(&lists).unwrap()
    })
}

fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for j in 0..cols {
        let Some(pr) = (rank..a.len()).find(|&i| a[i][j] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = pow_mod(a[rank][j], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != rank && a[i][j] != 0 {
                let q = a[i][j];
                for c in 0..cols {
                    a[i][c] = (a[i][c] - q * a[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank over Q, taken as the maximum over a few large primes.
fn rank_q(m: &[Vec<i64>]) -> usize {
    [1_000_003, 998_244_353, 1_000_000_007]
        .iter()
        .map(|&p| rank_mod(m, p))
        .max()
        .unwrap_or(0)
}

fn dense_boundary(c: &SimplicialComplex, k: usize) -> Vec<Vec<i64>> {
    let faces = closure(c);
    let rows: Vec<&Vec<i32>> = faces.iter().filter(|f| f.len() == k).collect();
    let cols: Vec<&Vec<i32>> = faces.iter().filter(|f| f.len() == k + 1).collect();
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, f) in cols.iter().enumerate() {
        for i in 0..f.len() {
            let mut r = (*f).clone();
            r.remove(i);
            let row = rows.iter().position(|x| **x == r).unwrap();
            m[row][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_vector_matches_closure(c in complex_strategy(8)) {
        let faces = closure(&c);
        let mut want = vec![0usize; c.dim() as usize + 1];
        for f in faces.iter().filter(|f| !f.is_empty()) {
            want[f.len() - 1] += 1;
        }
        prop_assert_eq!(c.f_vector().0, want);
    }

    #[test]
    fn join_f_vector_is_a_convolution(a in complex_strategy(4), b in complex_strategy(4)) {
        let b = b.quotient_by_vertex_map(|v| VertexId::new(v.label() + 10).unwrap());
        let j = a.join(&b).unwrap();
        let fa: Vec<usize> = std::iter::once(1).chain(a.f_vector().0).collect();
        let fb: Vec<usize> = std::iter::once(1).chain(b.f_vector().0).collect();
        let mut conv = vec![0usize; fa.len() + fb.len() - 1];
        for (i, x) in fa.iter().enumerate() {
            for (k, y) in fb.iter().enumerate() {
                conv[i + k] += x * y;
            }
        }
        let fj: Vec<usize> = std::iter::once(1).chain(j.f_vector().0).collect();
        prop_assert_eq!(fj, conv);
    }

    #[test]
    fn star_is_simplex_join_link(c in complex_strategy(7), pick in 0usize..100) {
        let faces: Vec<Face> = c.all_faces().filter(|f| !f.is_empty()).cloned().collect();
        let f = &faces[pick % faces.len()];
        let star = c.star(f).unwrap();
        let joined = SimplicialComplex::simplex(f.clone()).join(&c.link(f).unwrap()).unwrap();
        prop_assert_eq!(star, joined);
    }

    #[test]
    fn contraction_matches_brute_force_image(c in complex_strategy(7), pick in 0usize..100) {
        let edges = c.faces(1).to_vec();
        prop_assume!(!edges.is_empty());
        let e = &edges[pick % edges.len()];
        let (keep, gone) = (e.vertices()[0], e.vertices()[1]);
        let got = closure(&c.edge_contraction(e, keep).unwrap());
        let want: BTreeSet<Vec<i32>> = closure(&c)
            .into_iter()
            .map(|f| {
                let s: BTreeSet<i32> = f
                    .into_iter()
                    .map(|x| if x == gone.label() { keep.label() } else { x })
                    .collect();
                s.into_iter().collect()
            })
            .collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn antipode_is_an_involution(c in complex_strategy(8)) {
        prop_assert_eq!(c.antipode().antipode(), c.clone());
        let labels: HashSet<i32> = c.vertices().iter().map(|v| -v.label()).collect();
        let image: HashSet<i32> = c.antipode().vertices().iter().map(|v| v.label()).collect();
        prop_assert_eq!(labels, image);
    }

    #[test]
    fn homology_matches_dense_oracle(c in complex_strategy(6)) {
        prop_assume!(closure(&c).len() <= 200);
        let d = c.dim() as usize;
        let mats: Vec<Vec<Vec<i64>>> = (1..=d).map(|k| dense_boundary(&c, k)).collect();
        let f = c.f_vector().0;
        let rank = |k: usize, p: Option<i64>| -> usize {
            if k == 0 || k > d { return 0; }
            match p { Some(p) => rank_mod(&mats[k - 1], p), None => rank_q(&mats[k - 1]) }
        };
        let gf2: Vec<usize> = (0..=d).map(|k| f[k] - rank(k, Some(2)) - rank(k + 1, Some(2))).collect();
        prop_assert_eq!(betti_gf2(&c), gf2);

        let h = homology_z(&c, 10).unwrap();
        for k in 0..=d {
            let free = f[k] - rank(k, None) - rank(k + 1, None);
            prop_assert_eq!(h.0[k].rank, free);
            let torsion = factors_as_i64(&h.0[k].torsion).unwrap();
            for p in [2i64, 3, 5] {
                let divisible = torsion.iter().filter(|t| *t % p == 0).count();
                prop_assert_eq!(divisible, rank(k + 1, None) - rank(k + 1, Some(p)));
            }
        }
    }

    #[test]
    fn snf_ranks_match_mod_p(m in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..6)) {
        let factors = factors_as_i64(&smith_normal_form_dense(&m)).unwrap();
        prop_assert_eq!(factors.len(), rank_q(&m));
        for p in [2i64, 3, 5, 7] {
            let divisible = factors.iter().filter(|t| *t % p == 0).count();
            prop_assert_eq!(factors.len() - divisible, rank_mod(&m, p));
        }
        for w in factors.windows(2) {
            prop_assert!(w[0] > 0 && w[1] % w[0] == 0);
        }
    }

    #[test]
    fn bit_matrix_rank_matches_oracle(c in complex_strategy(7)) {
        prop_assume!(c.dim() >= 1);
        let m = boundary_matrix(&c, 1);
        prop_assert_eq!(BitMatrix::from_boundary(&m).rank(), rank_mod(&m.to_dense(), 2));
    }
}

#[test]
fn closed_form_matches_recursion() {
    fn fib(n: i64) -> u64 {
        if n < 0 {
            return 1;
        }
        let (mut a, mut b) = (0u64, 1u64);
        for _ in 0..n {
            (a, b) = (b, a + b);
        }
        a
    }
    let (mut prev, mut cur) = (2u64, 6u64);
    for i in 0..=20i64 {
        let n_i = if i == 0 { prev } else { cur };
        assert_eq!(
            3 * fib(i + 1) + 7 * fib(i) + 3 * fib(i - 1) - 4,
            n_i,
            "i={i}"
        );
        assert_eq!(rpd_core::verify::fibonacci_sphere_f0(i as usize), n_i);
        assert_eq!(rpd_core::tower::sphere_vertex_recursion(i as usize), n_i);
        if i >= 1 {
            (prev, cur) = (cur, cur + prev + 4);
        }
    }
}
