use raydiag::classifier::{
    classify, is_connected_parabolic, is_elliptic, is_lanner, is_parabolic, is_quasi_lanner, is_semi_elliptic,
    minimal_non_semi_elliptic_check, oracle_classify, semi_elliptic_decomposition, DiagramClass, Sign,
};
use raydiag::scalar::primitive;
use raydiag::{q, qi, Error, Mode, RayKind, RaySet, Rational};

use DiagramClass::*;

fn ints(rows: &[&[i64]]) -> RaySet {
    RaySet::from_ints(rows).unwrap()
}

fn two(a: i64, b: i64) -> RaySet {
    ints(&[&[-2, a], &[b, -2]])
}

fn black_white(k: u8, a: i64, b: i64) -> RaySet {
    RaySet::new(
        vec![RayKind::TypeI { k }, RayKind::TypeII],
        vec![],
        vec![vec![qi(0), qi(a)], vec![qi(b), qi(0)]],
        Mode::Cy,
    )
    .unwrap()
}

fn cycle3() -> RaySet {
    ints(&[&[-2, 1, 1], &[1, -2, 1], &[1, 1, -2]])
}

fn affine_e8() -> RaySet {
    // chain 0..7 with 8 attached to vertex 5; weights below
    let n = 9;
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = -2;
    }
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)];
    for (a, b) in edges {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    RaySet::from_ints(&m).unwrap()
}

/// Kernel of a singular 2x2 matrix, scaled to coprime integers.
fn kernel2(m: &[Vec<Rational>]) -> Vec<Rational> {
    assert_eq!(m[0][0].clone() * m[1][1].clone(), m[0][1].clone() * m[1][0].clone());
    primitive(&[m[0][1].clone(), -m[0][0].clone()])
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    primitive(a) == primitive(b)
}

#[test]
fn elliptic_examples() {
    let (ok, w) = is_elliptic(&ints(&[&[-2]])).unwrap();
    assert!(ok);
    assert_eq!(w.unwrap().coefficients, vec![qi(1)]);
    assert!(is_elliptic(&two(1, 1)).unwrap().0);
    assert!(!is_elliptic(&two(2, 2)).unwrap().0);
    assert!(is_elliptic(&black_white(3, 2, 2)).unwrap().0);
}

#[test]
fn elliptic_witness_is_strict() {
    for rs in [two(1, 1), two(1, 3), black_white(3, 2, 2), ints(&[&[-2, 1, 0], &[1, -2, 2], &[0, 1, -2]])] {
        let w = is_elliptic(&rs).unwrap().1.unwrap();
        assert!(w.verify(&rs));
        assert!(w.signs.iter().all(|s| *s == Sign::Neg));
        assert!(w.coefficients.iter().all(|x| *x > qi(0)));
    }
}

#[test]
fn connected_parabolic_examples() {
    let rs = two(1, 4);
    let (ok, w) = is_connected_parabolic(&rs).unwrap();
    assert!(ok);
    let k = w.unwrap();
    assert!(proportional(&k.coefficients, &kernel2(rs.matrix())));
    assert!(proportional(&k.coefficients, &[qi(2), qi(4)]));
    assert!(k.signs.iter().all(|s| *s == Sign::Zero));

    let (ok, w) = is_connected_parabolic(&cycle3()).unwrap();
    assert!(ok);
    assert!(proportional(&w.unwrap().coefficients, &[qi(1), qi(1), qi(1)]));
    assert!(!is_connected_parabolic(&two(1, 1)).unwrap().0);
}

#[test]
fn parabolic_examples() {
    let blocks = ints(&[&[-2, 2, 0, 0], &[2, -2, 0, 0], &[0, 0, -2, 2], &[0, 0, 2, -2]]);
    assert!(is_parabolic(&blocks).unwrap());
    let mixed = ints(&[&[-2, 2, 0, 0], &[2, -2, 0, 0], &[0, 0, -2, 1], &[0, 0, 1, -2]]);
    assert!(!is_parabolic(&mixed).unwrap());
    assert!(is_parabolic(&affine_e8()).unwrap());
    assert_eq!(classify(&blocks).unwrap().class, Parabolic);
}

#[test]
fn affine_e8_kernel() {
    let (ok, w) = is_connected_parabolic(&affine_e8()).unwrap();
    assert!(ok);
    // chain order 0..7, pendant 8 at the branch vertex 5
    let expect: Vec<Rational> = [1, 2, 3, 4, 5, 6, 4, 2, 3].iter().map(|&x| qi(x)).collect();
    assert!(proportional(&w.unwrap().coefficients, &expect));
}

#[test]
fn lanner_examples() {
    assert!(is_lanner(&two(1, 5)).unwrap().0);
    assert!(!is_lanner(&two(2, 2)).unwrap().0);
    // black k=1 with ab = 2: parabolic boundary
    assert!(!is_lanner(&black_white(1, 1, 2)).unwrap().0);
    assert_eq!(classify(&black_white(1, 1, 2)).unwrap().class, ConnectedParabolic);
}

#[test]
fn quasi_lanner_examples() {
    for (a, b) in [(1, 5), (2, 3), (3, 3), (1, 8)] {
        assert!(is_quasi_lanner(&two(a, b)).unwrap().0);
    }
    assert!(!is_quasi_lanner(&two(1, 1)).unwrap().0);
    // black k=1, white chain of two, ab = 2 = kn/(n-1): quasi-Lanner boundary
    let rs = RaySet::new(
        vec![RayKind::TypeI { k: 1 }, RayKind::TypeII, RayKind::TypeII],
        vec![],
        vec![vec![qi(0), qi(1), qi(0)], vec![qi(2), qi(0), qi(1)], vec![qi(0), qi(1), qi(0)]],
        Mode::Cy,
    )
    .unwrap();
    assert!(is_quasi_lanner(&rs).unwrap().0);
    assert!(!is_lanner(&rs).unwrap().0);
    assert_eq!(classify(&rs).unwrap().class, QuasiLanner);
}

#[test]
fn semi_elliptic_examples() {
    assert!(is_semi_elliptic(&two(1, 1)).unwrap());
    assert!(is_semi_elliptic(&affine_e8()).unwrap());
    assert!(!is_semi_elliptic(&two(1, 5)).unwrap());
}

#[test]
fn decomposition_examples() {
    let d = semi_elliptic_decomposition(&two(1, 1)).unwrap().unwrap();
    assert!(d.parabolic_parts.is_empty());
    assert_eq!(d.elliptic_part, vec![0, 1]);

    // affine block {0,1} with an arrow 0 -> 2 only
    let rs = ints(&[&[-2, 2, 1], &[2, -2, 0], &[0, 0, -2]]);
    let d = semi_elliptic_decomposition(&rs).unwrap().unwrap();
    assert_eq!(d.parabolic_parts, vec![vec![0, 1]]);
    assert_eq!(d.elliptic_part, vec![2]);
    let c = classify(&rs).unwrap();
    assert_eq!(c.class, SemiElliptic);
    assert_eq!(c.decomposition, Some(d));

    assert!(semi_elliptic_decomposition(&two(1, 5)).unwrap().is_none());
}

#[test]
fn decomposition_respects_arrow_direction() {
    // arrow 2 -> 0 into the affine block: no valid decomposition, and
    // a = (1, 1, 0) gives M a = (0, 0, 1)
    let rs = ints(&[&[-2, 2, 0], &[2, -2, 0], &[1, 0, -2]]);
    assert!(semi_elliptic_decomposition(&rs).unwrap().is_none());
    assert!(!is_semi_elliptic(&rs).unwrap());
}

#[test]
fn minimal_check() {
    let r = minimal_non_semi_elliptic_check(&two(1, 5)).unwrap();
    assert!(r.quasi_lanner);
    assert!(r.subsets_ok);
    assert!(matches!(minimal_non_semi_elliptic_check(&two(1, 1)), Err(Error::Precondition(_))));

    // five-vertex type-(C) quasi-Lanner row, last pair product 2
    let rs = ints(&[
        &[-2, 0, 1, 0, 0],
        &[1, -2, 1, 0, 0],
        &[1, 1, -2, 1, 0],
        &[0, 0, 1, -2, 1],
        &[0, 0, 0, 2, -2],
    ]);
    let c = classify(&rs).unwrap().class;
    assert!(matches!(c, QuasiLanner | Lanner), "{c}");
    let r = minimal_non_semi_elliptic_check(&rs).unwrap();
    assert!(r.subsets_ok);
    if c == QuasiLanner {
        assert!(r.parabolic_subsets.iter().any(|s| s.len() == 4));
    }
}

#[test]
fn classify_examples() {
    assert_eq!(classify(&two(3, 1)).unwrap().class, Elliptic);
    assert_eq!(classify(&two(1, 4)).unwrap().class, ConnectedParabolic);
    assert_eq!(classify(&two(1, 5)).unwrap().class, Lanner);
    assert_eq!(classify(&ints(&[&[-2, 0], &[0, -2]])).unwrap().class, Elliptic);
}

#[test]
fn not_semi_elliptic_reports_reason() {
    // two disjoint Lanner pairs
    let rs = ints(&[&[-2, 5, 0, 0], &[1, -2, 0, 0], &[0, 0, -2, 5], &[0, 0, 1, -2]]);
    let c = classify(&rs).unwrap();
    assert_eq!(c.class, NotSemiElliptic);
    assert!(c.reason.is_some());
    let w = c.witness.unwrap();
    assert!(w.nonnegative_only);
    assert!(w.verify(&rs));
    assert!(w.signs.iter().all(|s| *s != Sign::Neg));
    assert!(w.signs.contains(&Sign::Pos));
}

#[test]
fn two_vertex_trichotomy() {
    for a in 1..=8 {
        for b in 1..=8 {
            let c = classify(&two(a, b)).unwrap();
            let expect = match (a * b).cmp(&4) {
                std::cmp::Ordering::Less => Elliptic,
                std::cmp::Ordering::Equal => ConnectedParabolic,
                std::cmp::Ordering::Greater => Lanner,
            };
            assert_eq!(c.class, expect, "a={a} b={b}");
        }
    }
}

#[test]
fn oracle_agrees_on_two_vertex_sets() {
    for a in 0..=6 {
        for b in 0..=6 {
            let rs = two(a, b);
            assert_eq!(classify(&rs).unwrap().class, oracle_classify(&rs).unwrap(), "a={a} b={b}");
        }
    }
    assert_eq!(oracle_classify(&affine_e8()).unwrap_err(), Error::OracleBound { n: 9, bound: 7 });
}

#[test]
fn oracle_agrees_on_affine_e8() {
    let rs = affine_e8();
    assert_eq!(raydiag::classifier::oracle_classify_bounded(&rs, 9).unwrap(), ConnectedParabolic);
}

#[test]
fn rational_entries() {
    let rs = RaySet::general(vec![vec![qi(-2), q(1, 2)], vec![qi(8), qi(-2)]]).unwrap();
    assert_eq!(classify(&rs).unwrap().class, ConnectedParabolic);
    let rs = RaySet::general(vec![vec![qi(-2), q(1, 3)], vec![qi(8), qi(-2)]]).unwrap();
    assert_eq!(classify(&rs).unwrap().class, Elliptic);
}

#[test]
fn dotted_pairs_are_rejected() {
    let rs: RaySet = raydiag::raygraph::parse_rayset("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\npair 0 1\n").unwrap();
    assert!(matches!(classify(&rs), Err(Error::Precondition(_))));
}
