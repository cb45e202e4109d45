use raydiag::raygraph::{
    arrows, components, diameter, distance, distance_a, distance_a_matrix, distance_matrix, divisorially_joint,
    parse_rayset, prune_special,
};
use raydiag::{q, qi, Dist, Error, Mode, RayKind, RaySet, Rational};

fn ints(rows: &[&[i64]]) -> RaySet {
    RaySet::from_ints(rows).unwrap()
}

fn chain(n: usize) -> RaySet {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = -2;
        if i + 1 < n {
            m[i][i + 1] = 1;
            m[i + 1][i] = 1;
        }
    }
    RaySet::from_ints(&m).unwrap()
}

/// Floyd-Warshall over arrows.
fn floyd(rs: &RaySet) -> Vec<Vec<Dist>> {
    let n = rs.n();
    let big = usize::MAX / 4;
    let mut d = vec![vec![big; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if i != j && *rs.m(i, j) > qi(0) {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d.into_iter().map(|r| r.into_iter().map(|x| if x >= big { Dist::Inf } else { Dist::Fin(x) }).collect()).collect()
}

#[test]
fn parses_two_vertex_chain() {
    let rs: RaySet = parse_rayset("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\nm 0 1 1\nm 1 0 1\n").unwrap();
    assert_eq!(rs.matrix(), &[vec![qi(-2), qi(1)], vec![qi(1), qi(-2)]]);
    assert_eq!(rs.mode(), Mode::Cy);
}

#[test]
fn black_vertex_diagonal() {
    let rs: RaySet = parse_rayset("rayset v1\nn 2\nvertex 0 I k=3\nvertex 1 II\nm 0 1 2\nm 1 0 2\n").unwrap();
    assert_eq!(*rs.m(0, 0), qi(-3));
    assert_eq!(rs.kind(0), RayKind::TypeI { k: 3 });
}

#[test]
fn dotted_pair_entries() {
    let rs: RaySet = parse_rayset("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\npair 0 1\n").unwrap();
    assert_eq!(*rs.m(0, 1), qi(-2));
    assert_eq!(*rs.m(1, 0), qi(-2));
    assert!(rs.is_dotted(1, 0));
}

#[test]
fn unspecified_entries_default_to_zero() {
    let rs: RaySet = parse_rayset("rayset v1\n# comment\nn 3\nvertex 0 II\nvertex 1 II\nvertex 2 II\nm 0 1 2\n").unwrap();
    assert_eq!(*rs.m(1, 0), qi(0));
    assert_eq!(*rs.m(2, 1), qi(0));
}

#[test]
fn general_mode_rationals() {
    let rs: RaySet = parse_rayset("rayset v1\nmode general\nn 2\nvertex 0 II\nvertex 1 II\nm 0 1 1/2\nm 1 0 7/3\n").unwrap();
    assert_eq!(*rs.m(0, 1), q(1, 2));
    assert_eq!(*rs.m(1, 0), q(7, 3));
    assert_eq!(rs.mode(), Mode::General);
}

#[test]
fn rejects_bad_input() {
    let bad = [
        ("n 1\nvertex 0 II\n", "header"),
        ("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\nm 0 0 1\n", "diagonal"),
        ("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\nm 0 1 -1\n", "negative"),
        ("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\nm 0 1 1\nm 0 1 2\n", "duplicate"),
        ("rayset v1\nn 2\nvertex 0 I k=1\nvertex 1 II\npair 0 1\n", "dotted black"),
        ("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\nm 0 1 1/2\n", "cy fraction"),
        ("rayset v1\nn 2\nvertex 0 I k=4\nvertex 1 II\n", "k range"),
        ("rayset v1\nn 3\nvertex 0 II\nvertex 1 II\nvertex 2 II\npair 0 1\npair 1 2\n", "overlapping pairs"),
    ];
    for (text, what) in bad {
        let e = parse_rayset::<Rational>(text).expect_err(what);
        assert!(e.is_parse(), "{what}: {e}");
    }
}

#[test]
fn syntax_errors_carry_position() {
    match parse_rayset::<Rational>("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\nm 0 1 x\n") {
        Err(Error::Syntax { line, col, .. }) => {
            assert_eq!(line, 5);
            assert!(col >= 1);
        }
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn text_round_trip() {
    let rs: RaySet = parse_rayset("rayset v1\nn 3\nvertex 0 I k=2\nvertex 1 II\nvertex 2 II\nm 0 1 3\nm 1 0 1\nm 2 1 1\n").unwrap();
    let back: RaySet = parse_rayset(&rs.to_text()).unwrap();
    assert_eq!(rs, back);
}

#[test]
fn arrow_listing() {
    let a = arrows(&ints(&[&[-2, 1], &[0, -2]]));
    assert_eq!(a.len(), 1);
    assert_eq!((a[0].from, a[0].to, a[0].single), (0, 1, true));
    assert_eq!(a[0].weight, qi(1));

    let a = arrows(&ints(&[&[-2, 1], &[1, -2]]));
    assert_eq!(a.iter().map(|x| (x.from, x.to, x.single)).collect::<Vec<_>>(), vec![(0, 1, false), (1, 0, false)]);

    assert!(arrows(&ints(&[&[-2, 0], &[0, -2]])).is_empty());
}

#[test]
fn joint_relation() {
    let dotted: RaySet = parse_rayset("rayset v1\nn 2\nvertex 0 II\nvertex 1 II\npair 0 1\n").unwrap();
    assert!(divisorially_joint(&dotted, 0, 1).unwrap());
    assert!(divisorially_joint(&ints(&[&[-2, 1], &[0, -2]]), 1, 0).unwrap());
    assert!(!divisorially_joint(&ints(&[&[-2, 0], &[0, -2]]), 0, 1).unwrap());
    assert!(divisorially_joint(&ints(&[&[-2, 0], &[0, -2]]), 0, 0).is_err());
    assert!(matches!(divisorially_joint(&ints(&[&[-2, 0], &[0, -2]]), 0, 5), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn component_partition() {
    assert_eq!(components(&ints(&[&[-2, 1], &[1, -2]])), vec![vec![0, 1]]);
    assert_eq!(components(&ints(&[&[-2, 0], &[0, -2]])), vec![vec![0], vec![1]]);
    // hub 0 with single arrows from 1 and 2
    let c3 = ints(&[&[-2, 0, 0], &[1, -2, 0], &[1, 0, -2]]);
    assert_eq!(components(&c3), vec![vec![0, 1, 2]]);
}

#[test]
fn oriented_distances() {
    let s = ints(&[&[-2, 1], &[0, -2]]);
    assert_eq!(distance(&s, 0, 0).unwrap(), Dist::Fin(0));
    assert_eq!(distance(&s, 0, 1).unwrap(), Dist::Fin(1));
    assert_eq!(distance(&s, 1, 0).unwrap(), Dist::Inf);
    assert_eq!(distance(&chain(4), 0, 3).unwrap(), Dist::Fin(3));
}

#[test]
fn distances_match_floyd_warshall() {
    let cases = [
        chain(6),
        ints(&[&[-2, 1, 0, 0], &[0, -2, 2, 0], &[0, 0, -2, 1], &[3, 0, 0, -2]]),
        ints(&[&[-2, 0, 1, 0, 0], &[1, -2, 1, 0, 0], &[1, 1, -2, 1, 0], &[0, 0, 1, -2, 0], &[0, 0, 0, 1, -2]]),
        ints(&[&[-2, 0, 0], &[0, -2, 0], &[1, 0, -2]]),
    ];
    for rs in &cases {
        assert_eq!(distance_matrix(rs), floyd(rs));
    }
}

#[test]
fn diameters() {
    assert_eq!(diameter(&chain(2)), Dist::Fin(1));
    assert_eq!(diameter(&ints(&[&[-2]])), Dist::Fin(0));
    assert_eq!(diameter(&ints(&[&[-2, 1, 0], &[1, -2, 0], &[0, 0, -2]])), Dist::Inf);
    // six-vertex type-(C) chain, quasi-Lanner row: diameter 4
    let c6 = ints(&[
        &[-2, 0, 1, 0, 0, 0],
        &[1, -2, 1, 0, 0, 0],
        &[1, 1, -2, 1, 0, 0],
        &[0, 0, 1, -2, 1, 0],
        &[0, 0, 0, 1, -2, 1],
        &[0, 0, 0, 0, 2, -2],
    ]);
    assert_eq!(diameter(&c6), Dist::Fin(4));
}

#[test]
fn pruning() {
    let (p, keep) = prune_special(&chain(3));
    assert_eq!(keep, vec![0, 1, 2]);
    assert_eq!(p, chain(3));

    let (_, keep) = prune_special(&ints(&[&[-2, 0], &[1, -2]]));
    assert_eq!(keep, vec![1]);

    let black = RaySet::new(
        vec![RayKind::TypeI { k: 1 }, RayKind::TypeII],
        vec![],
        vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]],
        Mode::Cy,
    )
    .unwrap();
    let (_, keep) = prune_special(&black);
    assert_eq!(keep, vec![1]);
    assert_eq!(distance_a(&black, 0, 1).unwrap(), Dist::Inf);
    assert_eq!(distance_a(&black, 0, 0).unwrap(), Dist::Fin(0));
}

#[test]
fn pruned_distance_is_symmetric_on_chains() {
    let a3 = chain(3);
    assert_eq!(distance_a(&a3, 0, 2).unwrap(), Dist::Fin(2));
    assert_eq!(distance_a(&a3, 2, 0).unwrap(), Dist::Fin(2));
    let dm = distance_a_matrix(&chain(5));
    for i in 0..5 {
        for j in 0..5 {
            assert_eq!(dm[i][j], dm[j][i]);
            assert_eq!(dm[i][j], Dist::Fin(i.abs_diff(j)));
        }
    }
}

#[test]
fn mode_override() {
    let general: RaySet = parse_rayset("rayset v1\nmode general\nn 2\nvertex 0 II\nvertex 1 II\nm 0 1 1/2\n").unwrap();
    assert!(general.with_mode(Mode::Cy).is_err());
    let cy = chain(2).with_mode(Mode::General).unwrap();
    assert_eq!(cy.mode(), Mode::General);
}
