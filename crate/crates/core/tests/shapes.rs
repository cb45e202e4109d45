use raydiag::catalog::{build_family, ChainKind, ChainSpec, FamilyId, FamilySpec};
use raydiag::classifier::is_elliptic;
use raydiag::raygraph::parse_rayset;
use raydiag::shapes::{
    full_graph_elliptic_max, is_chain, lints, shape_type, shape_type_checked, special_components, special_rays,
    LintRule, ShapeType, SpecialComponentType,
};
use raydiag::{RaySet, Rational};

fn ints(rows: &[&[i64]]) -> RaySet {
    RaySet::from_ints(rows).unwrap()
}

fn fam(id: FamilyId, v: &[i64]) -> RaySet {
    build_family(&FamilySpec::new(id, v)).unwrap()
}

#[test]
fn special_rays_and_components() {
    assert!(special_rays(&fam(FamilyId::A, &[4])).is_empty());
    assert!(special_components(&fam(FamilyId::A, &[4])).unwrap().is_empty());

    // one single arrow 1 -> 0
    let s = ints(&[&[-2, 0, 0], &[1, -2, 1], &[0, 1, -2]]);
    assert_eq!(special_rays(&s), vec![0, 1]);
    let c = special_components(&s).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].kind, SpecialComponentType::C { n: 2 });
    assert_eq!(c[0].vertices[0], 0);

    let black: RaySet<Rational> = parse_rayset("rayset v1\nn 2\nvertex 0 I k=1\nvertex 1 II\nm 0 1 1\nm 1 0 1\n").unwrap();
    let c = special_components(&black).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].kind, SpecialComponentType::A1);

    let dotted: RaySet<Rational> = parse_rayset("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\npair 0 1\n").unwrap();
    assert_eq!(special_components(&dotted).unwrap()[0].kind, SpecialComponentType::B2);

    // single-arrow three-cycle
    let t = ints(&[&[-2, 1, 0], &[0, -2, 1], &[1, 0, -2]]);
    assert_eq!(special_components(&t).unwrap()[0].kind, SpecialComponentType::T3Prime);
}

#[test]
fn chains() {
    let a4 = fam(FamilyId::A, &[4]);
    assert!(is_chain(&a4, &[0, 1, 2, 3]).unwrap());
    assert!(is_chain(&a4, &[3, 2, 1, 0]).unwrap());
    assert!(!is_chain(&a4, &[0, 2, 1, 3]).unwrap());
    assert!(is_chain(&a4, &[1]).unwrap());
    let d4 = fam(FamilyId::D, &[4]);
    let n = d4.n();
    let mut found = false;
    let mut p: Vec<usize> = (0..n).collect();
    // no ordering of a branched diagram is a chain
    loop {
        found |= is_chain(&d4, &p).unwrap();
        if !next_perm(&mut p) {
            break;
        }
    }
    assert!(!found);
    assert!(is_chain(&a4, &[0, 0]).is_err());
    assert!(is_chain(&a4, &[0, 9]).is_err());
}

fn next_perm(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[test]
fn grammar_types() {
    assert_eq!(shape_type_checked(&fam(FamilyId::AffE7, &[])).unwrap(), ShapeType::A);
    assert_eq!(shape_type_checked(&fam(FamilyId::Lanner2, &[1, 5])).unwrap(), ShapeType::A);
    assert!(matches!(shape_type_checked(&fam(FamilyId::ADot, &[3, 1, 1, 1])).unwrap(), ShapeType::D { .. }));
    assert!(matches!(shape_type_checked(&fam(FamilyId::TypeC3, &[1, 1, 1, 1, 1])).unwrap(), ShapeType::C { .. }));
    let b = FamilySpec::type_b(vec![
        ChainSpec { kind: ChainKind::A, len: 2, reversed: false, weight: 1 },
        ChainSpec { kind: ChainKind::A, len: 1, reversed: false, weight: 2 },
    ]);
    let rs = build_family(&b).unwrap();
    match shape_type(&rs).unwrap() {
        ShapeType::B { chains, .. } => assert_eq!(chains.len(), 2),
        other => panic!("{other}"),
    }
    let tri = fam(FamilyId::SpecialTriangle, &[2, 2, 2]);
    assert_eq!(shape_type(&tri).unwrap().letter(), "E'");
}

#[test]
fn checked_typing_requires_elliptic_subsets() {
    // A3 with a Lanner pair inside
    let rs = ints(&[&[-2, 5, 0], &[1, -2, 1], &[0, 1, -2]]);
    assert!(shape_type_checked(&rs).is_err());
    let split = ints(&[&[-2, 0], &[0, -2]]);
    assert!(shape_type(&split).is_err());
}

/// Every full graph on `k` vertices with weights in `1..=w`, by brute force.
fn any_full_elliptic(k: usize, w: i64) -> bool {
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let total = (w as u64).pow(cells.len() as u32);
    (0..total).any(|mut c| {
        let mut m = vec![vec![-2i64; k]; k];
        for &(i, j) in &cells {
            m[i][j] = 1 + (c % w as u64) as i64;
            c /= w as u64;
        }
        is_elliptic(&RaySet::<Rational>::from_ints(&m).unwrap()).unwrap().0
    })
}

#[test]
fn full_graph_bound() {
    for w in [1, 2, 3] {
        let q = full_graph_elliptic_max(w);
        assert_eq!(q, 2, "w={w}");
        assert!(any_full_elliptic(q, w));
        assert!(!any_full_elliptic(q + 1, w));
    }
}

#[test]
fn attachment_lints() {
    assert!(lints(&fam(FamilyId::A, &[3])).unwrap().is_empty());
    // non-special 2 meets the hub 0 of a single arrow 1 -> 0
    let rs = ints(&[&[-2, 0, 1], &[1, -2, 0], &[1, 0, -2]]);
    let l = lints(&rs).unwrap();
    assert!(l.iter().any(|x| x.rule == LintRule::Attachment && x.vertices.contains(&2)), "{l:?}");
    // attaching to the tail is fine
    let ok = ints(&[&[-2, 0, 0], &[1, -2, 1], &[0, 1, -2]]);
    assert!(lints(&ok).unwrap().is_empty());
}
