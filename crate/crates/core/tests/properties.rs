//! Structural properties of the classifier and the distances, checked on
//! generated ray sets. Test names start with their group (`heredity`,
//! `monotonicity`, `scaling`, `trichotomy`, `alternative`, `semi_elliptic`,
//! `rho_a`), so `cargo test --test properties <group>` runs one group.

use proptest::prelude::*;
use raydiag::classifier::{
    classify, elliptic_by_alternative, is_connected_parabolic, is_elliptic, is_lanner, is_semi_elliptic,
    semi_elliptic_decomposition, DiagramClass,
};
use raydiag::exhaustive::for_each_canonical;
use raydiag::raygraph::{diameter, distance_a_matrix, is_connected, parse_rayset};
use raydiag::{q, qi, Dist, RaySet, Rational};

fn entry() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => Just(qi(0)),
        4 => (1i64..=4).prop_map(qi),
        2 => (1i64..=6, 1i64..=3).prop_map(|(p, d)| q(p, d)),
    ]
}

fn matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(entry(), n), n).prop_map(move |mut m| {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = qi(-2);
            }
            m
        })
    })
}

fn rs(m: Vec<Vec<Rational>>) -> RaySet {
    RaySet::from_matrix(m).unwrap()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n) - 1).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn heredity_random(m in matrix(5)) {
        let r = rs(m);
        let ell = is_elliptic(&r).unwrap().0;
        let semi = is_semi_elliptic(&r).unwrap();
        for s in subsets(r.n()) {
            let sub = r.sub(&s);
            if ell {
                prop_assert!(is_elliptic(&sub).unwrap().0);
            }
            if semi {
                prop_assert!(is_semi_elliptic(&sub).unwrap());
            }
        }
    }

    #[test]
    fn monotonicity_lowering_weights(m in matrix(5), i in 0usize..5, j in 0usize..5, f in 0i64..=3) {
        let n = m.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let r = rs(m.clone());
        let mut low = m;
        low[i][j] = low[i][j].clone() * q(f, 3);
        let l = rs(low);
        if is_elliptic(&r).unwrap().0 {
            prop_assert!(is_elliptic(&l).unwrap().0);
        }
        if is_semi_elliptic(&r).unwrap() {
            prop_assert!(is_semi_elliptic(&l).unwrap());
        }
    }

    #[test]
    fn scaling_conjugation(m in matrix(5), ds in proptest::collection::vec((1i64..=4, 1i64..=3), 5)) {
        let n = m.len();
        let d: Vec<Rational> = ds.iter().take(n).map(|&(a, b)| q(a, b)).collect();
        let scaled: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| d[i].clone() * m[i][j].clone() / d[j].clone()).collect()).collect();
        let a = classify(&rs(m)).unwrap().class;
        let b = classify(&rs(scaled)).unwrap().class;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn scaling_row_or_column(m in matrix(5), i in 0usize..5, c in (1i64..=5, 1i64..=4), col in any::<bool>()) {
        let n = m.len();
        let i = i % n;
        let c = q(c.0, c.1);
        let mut s = m.clone();
        for t in 0..n {
            if col {
                s[t][i] = s[t][i].clone() * c.clone();
            } else {
                s[i][t] = s[i][t].clone() * c.clone();
            }
        }
        let a = classify(&rs(m)).unwrap().class;
        let b = classify(&RaySet::general(s).unwrap()).unwrap().class;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn trichotomy_elliptic_subsets(m in matrix(5)) {
        let r = rs(m);
        let n = r.n();
        prop_assume!(is_connected(&r));
        prop_assume!((0..n).all(|v| {
            let rest: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            rest.is_empty() || is_elliptic(&r.sub(&rest)).unwrap().0
        }));
        let e = is_elliptic(&r).unwrap().0;
        let p = is_connected_parabolic(&r).unwrap().0;
        let l = is_lanner(&r).unwrap().0;
        prop_assert_eq!(u8::from(e) + u8::from(p) + u8::from(l), 1);
        let c = classify(&r).unwrap().class;
        prop_assert!(matches!(c, DiagramClass::Elliptic | DiagramClass::ConnectedParabolic | DiagramClass::Lanner));
    }

    #[test]
    fn trichotomy_strongly_connected(m in matrix(5)) {
        let r = rs(m);
        // irreducible: every vertex reaches every other along arrows
        prop_assume!(is_connected(&r) && diameter(&r) != Dist::Inf);
        let e = is_elliptic(&r).unwrap().0;
        let p = is_connected_parabolic(&r).unwrap().0;
        let h = !is_semi_elliptic(&r).unwrap();
        prop_assert_eq!(u8::from(e) + u8::from(p) + u8::from(h), 1);
    }

    #[test]
    fn alternative_equivalence(m in matrix(5)) {
        let r = rs(m);
        prop_assert_eq!(is_elliptic(&r).unwrap().0, elliptic_by_alternative(&r));
    }

    #[test]
    fn semi_elliptic_agreement_random(m in matrix(5)) {
        let r = rs(m);
        let d = semi_elliptic_decomposition(&r).unwrap();
        prop_assert_eq!(d.is_some(), is_semi_elliptic(&r).unwrap());
        let c = classify(&r).unwrap().class;
        prop_assert_eq!(c.is_semi_elliptic(), d.is_some());
    }

    #[test]
    fn rho_a_symmetry_random(m in matrix(6)) {
        let r = rs(m);
        let dm = distance_a_matrix(&r);
        for i in 0..r.n() {
            for j in 0..r.n() {
                prop_assert_eq!(dm[i][j], dm[j][i]);
            }
        }
    }
}

#[test]
fn heredity_exhaustive() {
    for (n, max) in [(2, 5), (3, 3), (4, 2), (5, 1)] {
        for_each_canonical(n, max, |m| {
            let r: RaySet = RaySet::from_ints(m).unwrap();
            if !is_elliptic(&r).unwrap().0 {
                return;
            }
            for s in subsets(n) {
                assert!(is_elliptic(&r.sub(&s)).unwrap().0, "{m:?} {s:?}");
            }
        });
    }
}

#[test]
fn semi_elliptic_agreement_exhaustive() {
    for (n, max) in [(2, 5), (3, 3)] {
        for_each_canonical(n, max, |m| {
            let r: RaySet = RaySet::from_ints(m).unwrap();
            let d = semi_elliptic_decomposition(&r).unwrap();
            assert_eq!(d.is_some(), is_semi_elliptic(&r).unwrap(), "{m:?}");
        });
    }
}

#[test]
fn rho_a_symmetry_black_vertex() {
    let r: RaySet = parse_rayset(
        "rayset v1\nn 4\nvertex 0 I k=2\nvertex 1 II\nvertex 2 II\nvertex 3 II\nm 0 1 1\nm 1 0 1\nm 1 2 1\nm 2 1 1\nm 3 2 1\n",
    )
    .unwrap();
    let dm = distance_a_matrix(&r);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(dm[i][j], dm[j][i]);
        }
    }
    assert_eq!(classify(&r).unwrap().class == DiagramClass::Elliptic, is_elliptic(&r).unwrap().0);
}
