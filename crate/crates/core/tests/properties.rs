mod common;

use common::*;
use lexind_core::complex::{independence_complex, neighborhood_decomposition};
use lexind_core::domination::domination_number;
use lexind_core::graph::forests::nonisomorphic_forests;
use lexind_core::graph::random_graph;
use lexind_core::homology::{
    betti, betti_with_census, euler_consistent, Coefficients, Connectivity,
};
use lexind_core::{Graph, Limits};

fn lim() -> Limits {
    Limits::default()
}

fn faces(k: &lexind_core::SimplicialComplex) -> FaceSet {
    nonempty(k.face_set(&lim()).unwrap())
}

fn seeded_graph(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    use rand::Rng;
    let n = r.random_range(1..=max_n);
    let p = r.random_range(0.1..0.8);
    random_graph(n, p, seed)
}

#[test]
fn independence_complex_matches_subset_scan() {
    for seed in 0..200 {
        let g = seeded_graph(seed, 12);
        let k = independence_complex(&g, &lim()).unwrap();
        assert!(k.is_antichain());
        assert_eq!(faces(&k), brute_faces(&g), "seed {seed}");
        let census = k.face_census(&lim()).unwrap();
        assert_eq!(census.counts, census_of(&brute_faces(&g)), "seed {seed}");
    }
}

#[test]
fn vertex_decomposition_union_and_intersection() {
    for seed in 0..200 {
        let g = seeded_graph(1000 + seed, 12);
        let whole = brute_faces(&g);
        for v in 0..g.vertex_count() {
            let (minus_v, minus_open, minus_closed) =
                neighborhood_decomposition(&g, v, &lim()).unwrap();
            let a = faces(&minus_v);
            let b = faces(&minus_open);
            let union: FaceSet = a.union(&b).cloned().collect();
            let meet: FaceSet = a.intersection(&b).cloned().collect();
            assert_eq!(union, whole, "seed {seed} v {v}");
            assert_eq!(meet, faces(&minus_closed), "seed {seed} v {v}");
        }
    }
}

#[test]
fn disjoint_union_gives_join_and_complete_join_gives_union() {
    for seed in 0..100 {
        let g1 = seeded_graph(2000 + seed, 8);
        let g2 = seeded_graph(3000 + seed, 8);
        let k1 = independence_complex(&g1, &lim()).unwrap();
        let k2 = independence_complex(&g2, &lim()).unwrap();
        let joined = k1.join(&k2, &lim()).unwrap();
        assert_eq!(
            faces(&joined),
            brute_faces(&g1.disjoint_union(&g2)),
            "seed {seed}"
        );
        assert_eq!(
            independence_complex(&g1.disjoint_union(&g2), &lim()).unwrap(),
            joined,
            "seed {seed}"
        );
        let cj = g1.complete_join(&g2);
        assert_eq!(
            faces(&k1.disjoint_union(&k2)),
            brute_faces(&cj),
            "seed {seed}"
        );
    }
}

#[test]
fn complex_join_betti_convolution() {
    for seed in 0..50 {
        let g1 = seeded_graph(4000 + seed, 7);
        let g2 = seeded_graph(5000 + seed, 7);
        let k1 = independence_complex(&g1, &lim()).unwrap();
        let k2 = independence_complex(&g2, &lim()).unwrap();
        for p in [2, 1_000_003] {
            let f = Coefficients::Prime(p);
            let b1 = betti(&k1, f, &lim()).unwrap();
            let b2 = betti(&k2, f, &lim()).unwrap();
            let bj = betti(&k1.join(&k2, &lim()).unwrap(), f, &lim()).unwrap();
            assert!(
                bj.same_ranks(&b1.join_convolution(&b2)),
                "seed {seed} p {p}"
            );
        }
    }
}

#[test]
fn sparse_homology_matches_dense_oracle() {
    for seed in 0..150 {
        let g = seeded_graph(6000 + seed, 10);
        let k = independence_complex(&g, &lim()).unwrap();
        let oracle = dense_gf2_betti(&brute_faces(&g));
        for p in [2, 1_000_003] {
            let (b, census) = betti_with_census(&k, Coefficients::Prime(p), &lim()).unwrap();
            assert!(euler_consistent(&census, &b));
            if p == 2 {
                assert_eq!(ranks_u64(&b), oracle, "seed {seed}");
            }
        }
    }
    assert_eq!(
        dense_gf2_betti(&FaceSet::new()),
        [(-1, 1)].into_iter().collect()
    );
}

#[test]
fn chordal_connectivity_bound_on_forests() {
    for n in 1..=9 {
        for g in nonisomorphic_forests(n) {
            let gamma = domination_number(&g, &lim()).unwrap().0 as i64;
            let b = betti(
                &independence_complex(&g, &lim()).unwrap(),
                Coefficients::Prime(2),
                &lim(),
            )
            .unwrap();
            assert!(
                b.conn_h() >= Connectivity::Finite(gamma - 2),
                "{:?}",
                g.edges()
            );
        }
    }
}
