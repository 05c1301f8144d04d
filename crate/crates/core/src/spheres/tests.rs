use super::*;
use crate::complex::independence_complex;
use crate::graph::forests::nonisomorphic_forests;
use crate::graph::Graph;
use crate::homology::{betti, Coefficients};
use crate::limits::Limits;
use proptest::prelude::*;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn comp(dims: &[(u32, u64)]) -> Component {
    Component::wedge(dims.iter().map(|&(d, m)| (d, big(m))))
}

fn space(comps: &[&[(u32, u64)]]) -> SphereSpace {
    SphereSpace::from_components(comps.iter().map(|c| comp(c)).collect())
}

fn s0() -> SphereSpace {
    SphereSpace::sphere(0)
}

#[test]
fn wedge_examples() {
    let s1 = SphereSpace::sphere(1);
    assert_eq!(s1.wedge(&s1).unwrap(), space(&[&[(1, 2)]]));
    let x = space(&[&[(2, 1)], &[(3, 4)]]);
    assert_eq!(SphereSpace::point().wedge(&x).unwrap(), x);
    assert_eq!(s0().wedge(&s0()).unwrap(), space(&[&[], &[], &[]]));
    assert!(SphereSpace::empty().wedge(&s1).is_err());
    assert!(s1.wedge(&SphereSpace::empty()).is_err());
}

#[test]
fn suspension_examples() {
    assert_eq!(SphereSpace::empty().suspend(), s0());
    assert_eq!(s0().suspend(), SphereSpace::sphere(1));
    assert_eq!(SphereSpace::point().suspend(), SphereSpace::point());
    for n in 1..4u64 {
        for k in 0..3u32 {
            let w = SphereSpace::wedge_of_spheres(n, k);
            let expect = SphereSpace::sphere(1)
                .wedge(&SphereSpace::wedge_of_spheres(2 * n, k + 1))
                .unwrap();
            assert_eq!(w.disjoint_union(&w).suspend(), expect, "n={n} k={k}");
        }
    }
}

#[test]
fn join_examples() {
    assert_eq!(s0().join(&s0()), SphereSpace::sphere(1));
    for n in 1..4u64 {
        for k in 0..3u32 {
            let w = SphereSpace::wedge_of_spheres(n, k);
            assert_eq!(w.join(&w), SphereSpace::wedge_of_spheres(n * n, 2 * k + 1));
        }
    }
    let x = space(&[&[(1, 2)], &[]]);
    assert!(SphereSpace::point().join(&x).is_point());
    assert_eq!(x.join(&SphereSpace::empty()), x);
    assert_eq!(SphereSpace::empty().join(&x), x);
    // three points joined with two points is a theta graph's worth of circles
    let three = SphereSpace::wedge_of_spheres(2u32, 0);
    assert_eq!(three.join(&s0()), SphereSpace::wedge_of_spheres(2u32, 1));
}

#[test]
fn betti_examples() {
    assert!(SphereSpace::empty().reduced_betti().is_void());
    assert!(SphereSpace::point().reduced_betti().is_zero());
    let x = SphereSpace::wedge_of_spheres(2u32, 1)
        .disjoint_union(&SphereSpace::wedge_of_spheres(4u32, 3));
    let b = x.reduced_betti();
    assert_eq!(
        b.ranks(),
        &[(0, big(1)), (1, big(2)), (3, big(4))]
            .into_iter()
            .collect()
    );
}

#[test]
fn pretty_printing() {
    assert_eq!(SphereSpace::empty().to_string(), "EMPTY");
    assert_eq!(SphereSpace::point().to_string(), "pt");
    assert_eq!(space(&[&[(2, 2), (3, 3)]]).to_string(), "S^2 v S^2 v 3·S^3");
    assert_eq!(s0().to_string(), "(pt) ⊔ (pt)");
    assert_eq!(space(&[&[(1, 1)], &[]]).to_string(), "(pt) ⊔ (S^1)");
}

#[test]
fn json_round_trip() {
    let cases = [
        SphereSpace::empty(),
        SphereSpace::point(),
        s0(),
        space(&[&[(2, 2), (3, 3)], &[(1, 1)]]),
    ];
    for x in cases {
        let text = serde_json::to_string(&x).unwrap();
        let back: SphereSpace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x, "{text}");
    }
    assert_eq!(
        serde_json::to_string(&SphereSpace::empty()).unwrap(),
        "\"EMPTY\""
    );
    assert_eq!(
        serde_json::to_string(&space(&[&[(2, 2)]])).unwrap(),
        r#"{"components":[[2,2]]}"#
    );
    let with_zero: SphereSpace = serde_json::from_str(r#"{"components":[[0,1]]}"#).unwrap();
    assert_eq!(with_zero, space(&[&[(1, 1)], &[]]));
    assert!(serde_json::from_str::<SphereSpace>(r#"{"components":[]}"#).is_err());
    let huge = SphereSpace::wedge_of_spheres(big(10_000_000), 2);
    assert!(serde_json::to_string(&huge).is_err());
}

#[test]
fn uniform_wedge_detection() {
    assert_eq!(SphereSpace::point().as_uniform_wedge(), Some((big(0), 0)));
    assert_eq!(
        SphereSpace::wedge_of_spheres(3u32, 0).as_uniform_wedge(),
        Some((big(3), 0))
    );
    assert_eq!(
        SphereSpace::wedge_of_spheres(5u32, 2).as_uniform_wedge(),
        Some((big(5), 2))
    );
    assert_eq!(space(&[&[(1, 1), (2, 1)]]).as_uniform_wedge(), None);
    assert_eq!(space(&[&[(1, 1)], &[]]).as_uniform_wedge(), None);
    assert_eq!(SphereSpace::empty().as_uniform_wedge(), None);
}

#[test]
fn cycle_and_complete_types() {
    assert_eq!(
        cycle_homotopy(6).unwrap(),
        SphereSpace::wedge_of_spheres(2u32, 1)
    );
    assert_eq!(cycle_homotopy(4).unwrap(), s0());
    assert_eq!(cycle_homotopy(5).unwrap(), SphereSpace::sphere(1));
    assert_eq!(
        cycle_homotopy(3).unwrap(),
        SphereSpace::wedge_of_spheres(2u32, 0)
    );
    assert!(cycle_homotopy(2).is_err());
    assert!(complete_homotopy(1).unwrap().is_point());
    assert_eq!(complete_homotopy(2).unwrap(), s0());
    assert_eq!(complete_homotopy(4).unwrap().component_count(), 4);
    assert!(complete_homotopy(0).is_err());
}

#[test]
fn closed_form_examples() {
    for n in 1..4u64 {
        for k in 0..3u32 {
            let w = SphereSpace::wedge_of_spheres(n, k);
            assert_eq!(closed_form_l(1, n, k).unwrap().0, w);
            assert_eq!(closed_form_count(1, n, k, 1, k), big(n));
            assert_eq!(closed_form_l(2, n, k).unwrap().0, w.disjoint_union(&w));
            assert_eq!(
                x_space(2, n, k).unwrap(),
                s0().wedge(&SphereSpace::wedge_of_spheres(2 * n, k))
                    .unwrap()
            );
            let expect3 = s0()
                .wedge(&w)
                .unwrap()
                .wedge(&SphereSpace::wedge_of_spheres(n * n, 2 * k + 1))
                .unwrap();
            assert_eq!(x_space(3, n, k).unwrap(), expect3);
        }
    }
    let (x, terms) = closed_form_l(4, 1, 1).unwrap();
    let got: Vec<(u32, u32, BigUint)> = terms.into_iter().map(|t| (t.p, t.d, t.count)).collect();
    assert_eq!(got, vec![(1, 2, big(2)), (2, 3, big(3))]);
    assert_eq!(x, space(&[&[(2, 2), (3, 3)]]));
    assert!(closed_form_l(0, 1, 1).is_err());
    assert!(closed_form_l(3, 0, 1).is_err());
}

#[test]
fn closed_form_support_matches_range() {
    for m in 1..=15u32 {
        for n in 1..=3u64 {
            for k in 0..=3u32 {
                for p in 0..=m.div_ceil(2) {
                    for d in 0..=(p * k + m + 3) {
                        let lo = 3 * (p as i64 * k as i64 - 1) + (3 * p as i64).max(m as i64);
                        let hi = 3 * p as i64 * k as i64 + m as i64 + p as i64 - 2;
                        let inside = lo <= 3 * d as i64 && 3 * d as i64 <= hi;
                        let nonzero = !closed_form_count(m, n, k, p, d).is_zero();
                        assert_eq!(inside, nonzero, "m={m} n={n} k={k} p={p} d={d}");
                    }
                }
            }
        }
    }
}

#[test]
fn no_zero_spheres_beyond_three() {
    for m in 4..=30u32 {
        for k in 0..=4u32 {
            assert!(x_space(m, 2, k).unwrap().is_connected(), "m={m} k={k}");
        }
    }
}

#[test]
fn x_space_recursion() {
    for n in 1..=3u64 {
        for k in 0..=3u32 {
            for m in 1..=12u32 {
                let a = x_space(m, n, k).unwrap();
                let b = x_space(m + 1, n, k).unwrap();
                let step = line_recursion_step(&a, &b, n, k).unwrap();
                assert_eq!(x_space(m + 3, n, k).unwrap(), step, "m={m} n={n} k={k}");
            }
        }
    }
}

#[test]
fn line_connectivity_examples() {
    assert_eq!(line_connectivity(4, 1).unwrap(), 1);
    for k in 0..4 {
        assert_eq!(line_connectivity(3, k).unwrap(), -1);
        assert_eq!(line_connectivity(2, k).unwrap(), -1);
    }
    assert!(line_connectivity(0, 1).is_err());
}

#[test]
fn forest_examples() {
    for n in 1..4u64 {
        for k in 0..3u32 {
            let w = SphereSpace::wedge_of_spheres(n, k);
            let expect = w.disjoint_union(&SphereSpace::wedge_of_spheres(n * n, 2 * k + 1));
            assert_eq!(
                forest_lex_homotopy(&Graph::path(3).unwrap(), &w).unwrap(),
                expect
            );
        }
    }
    let s1 = SphereSpace::sphere(1);
    assert_eq!(
        forest_lex_homotopy(&Graph::path(4).unwrap(), &s1).unwrap(),
        space(&[&[(2, 2), (3, 3)]])
    );
    assert_eq!(
        forest_lex_homotopy(&Graph::star(4).unwrap(), &s0()).unwrap(),
        s0().disjoint_union(&SphereSpace::sphere(2))
    );
    assert!(forest_lex_homotopy(&Graph::empty_graph(0), &s1)
        .unwrap()
        .is_empty());
    assert_eq!(
        forest_lex_homotopy(&Graph::empty_graph(1), &s1).unwrap(),
        s1
    );
    assert!(matches!(
        forest_lex_homotopy(&Graph::cycle(4).unwrap(), &s1),
        Err(Error::NotAForest)
    ));
    assert!(forest_lex_homotopy(&Graph::path(2).unwrap(), &SphereSpace::empty()).is_err());
}

#[test]
fn contractible_factor_recovers_independence_complex() {
    let limits = Limits::default();
    for n in 1..=7 {
        for g in nonisomorphic_forests(n) {
            let x = forest_lex_homotopy(&g, &SphereSpace::point()).unwrap();
            let k = independence_complex(&g, &limits).unwrap();
            let b = betti(&k, Coefficients::Prime(2), &limits).unwrap();
            assert!(x.reduced_betti().same_ranks(&b), "{:?}", g.edges());
        }
    }
}

#[test]
fn forest_shape() {
    let factors = [
        SphereSpace::point(),
        SphereSpace::sphere(1),
        SphereSpace::wedge_of_spheres(2u32, 2),
        space(&[&[(1, 1), (3, 2)]]),
    ];
    for n in 2..=8 {
        for g in nonisomorphic_forests(n) {
            for t in &factors {
                let x = forest_lex_homotopy(&g, t).unwrap();
                assert!(x.is_canonical());
                if g.is_star() {
                    let cone = (1..n).fold(SphereSpace::empty(), |acc, _| acc.join(t));
                    assert_eq!(x, t.disjoint_union(&cone));
                } else if g.edge_count() >= 1 {
                    let solid = x.components().iter().filter(|c| !c.is_point()).count();
                    assert!(solid <= 1, "{:?} {t} -> {x}", g.edges());
                }
            }
        }
    }
}

#[test]
fn path_recursion_consistency() {
    for n in 1..=3u64 {
        for k in 0..=3u32 {
            let t = SphereSpace::wedge_of_spheres(n, k);
            let lines: Vec<SphereSpace> = (0..=12)
                .map(|m| {
                    forest_lex_homotopy(&Graph::path(m).unwrap_or(Graph::empty_graph(0)), &t)
                        .unwrap()
                })
                .collect();
            for r in 1..=9 {
                let step = line_recursion_step(&lines[r], &lines[r + 1], n, k).unwrap();
                assert_eq!(lines[r + 3], step, "r={r} n={n} k={k}");
            }
            for m in 1..=12u32 {
                let x = &lines[m as usize];
                let (cf, _) = closed_form_l(m, n, k).unwrap();
                assert!(x.reduced_betti().same_ranks(&cf.reduced_betti()));
                assert_eq!(x, &cf, "m={m} n={n} k={k}");
                let conn = x.reduced_betti().conn_h();
                assert_eq!(
                    conn,
                    crate::homology::Connectivity::Finite(line_connectivity(m, k).unwrap())
                );
            }
        }
    }
}

fn arb_component() -> impl Strategy<Value = Component> {
    prop::collection::vec((1u32..5, 1u64..4), 0..3).prop_map(|v| comp(&v))
}

fn arb_space() -> impl Strategy<Value = SphereSpace> {
    prop_oneof![
        1 => Just(SphereSpace::empty()),
        6 => prop::collection::vec(arb_component(), 1..4).prop_map(SphereSpace::from_components),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn join_commutative_associative(x in arb_space(), y in arb_space(), z in arb_space()) {
        prop_assert_eq!(x.join(&y), y.join(&x));
        prop_assert_eq!(x.join(&y).join(&z), x.join(&y.join(&z)));
        prop_assert!(x.join(&y).is_canonical());
    }

    #[test]
    fn join_identity_and_absorption(x in arb_space()) {
        prop_assert_eq!(x.join(&SphereSpace::empty()), x.clone());
        if !x.is_empty() {
            prop_assert!(SphereSpace::point().join(&x).is_point());
        }
    }

    #[test]
    fn wedge_and_union_betti(x in arb_space(), y in arb_space()) {
        let u = x.disjoint_union(&y);
        prop_assert_eq!(u.component_count(), x.component_count() + y.component_count());
        if !x.is_empty() && !y.is_empty() {
            let w = x.wedge(&y).unwrap();
            prop_assert!(w.is_canonical());
            prop_assert_eq!(w.component_count(), x.component_count() + y.component_count() - 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn join_betti_convolution(x in arb_space(), y in arb_space()) {
        let lhs = x.join(&y).reduced_betti();
        let rhs = x.reduced_betti().join_convolution(&y.reduced_betti());
        prop_assert!(lhs.same_ranks(&rhs), "{} * {}: {} vs {}", x, y, lhs, rhs);
    }

    #[test]
    fn suspension_shift(x in arb_space()) {
        let s = x.suspend();
        prop_assert!(s.is_canonical());
        if !x.is_empty() {
            let bx = x.reduced_betti();
            let bs = s.reduced_betti();
            prop_assert_eq!(bs.get(0), BigUint::zero());
            for d in 0..12 {
                prop_assert_eq!(bs.get(d + 1), bx.get(d));
            }
        }
    }
}
