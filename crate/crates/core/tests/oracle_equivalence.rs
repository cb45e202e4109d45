//! `classify` against the Fourier-Motzkin oracle.
//!
//! The default run covers n <= 3 with entries 0..=5, n = 4 with entries
//! 0..=2, both exhaustively up to relabeling, and 10^4 seeded random rational
//! sets with n <= 6. The full n = 4, entries 0..=5 sweep takes hours on one
//! core and is `#[ignore]`d; run it with
//! `cargo test -p raydiag --test oracle_equivalence -- --ignored`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use raydiag::classifier::{classify, oracle_classify};
use raydiag::exhaustive::for_each_canonical;
use raydiag::{q, RaySet, Rational, SmallRational};

fn agree_int(m: &[Vec<i64>]) -> bool {
    let rs: RaySet<SmallRational> = RaySet::from_ints(m).expect("valid matrix");
    classify(&rs).expect("classify").class == oracle_classify(&rs).expect("oracle")
}

fn sweep(n: usize, max: u8) -> (u64, Vec<Vec<Vec<i64>>>) {
    let mut bad = vec![];
    let count = for_each_canonical(n, max, |m| {
        if !agree_int(m) {
            bad.push(m.to_vec());
        }
    });
    (count, bad)
}

/// Orbit count by Burnside: average over permutations of `(max+1)^cycles`
/// on ordered off-diagonal pairs.
fn burnside(n: usize, max: u64) -> u64 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let ps = perms(n);
    let total: u64 = ps
        .iter()
        .map(|p| {
            let mut seen = vec![vec![false; n]; n];
            let mut cycles = 0;
            for i in 0..n {
                for j in 0..n {
                    if i == j || seen[i][j] {
                        continue;
                    }
                    cycles += 1;
                    let (mut a, mut b) = (i, j);
                    while !seen[a][b] {
                        seen[a][b] = true;
                        (a, b) = (p[a], p[b]);
                    }
                }
            }
            (max + 1).pow(cycles)
        })
        .sum();
    total / ps.len() as u64
}

#[test]
fn canonical_enumeration_counts_orbits() {
    for (n, max) in [(2, 5), (3, 2), (3, 5), (4, 1), (4, 2)] {
        let c = for_each_canonical(n, max, |_| {});
        assert_eq!(c, burnside(n, max as u64), "n={n} max={max}");
    }
}

#[test]
fn exhaustive_up_to_three_vertices() {
    for n in 1..=3 {
        let (count, bad) = sweep(n, 5);
        assert!(count > 0);
        assert!(bad.is_empty(), "n={n}: {} mismatches, first {:?}", bad.len(), bad.first());
    }
}

#[test]
fn exhaustive_four_vertices_small_entries() {
    let (count, bad) = sweep(4, 2);
    assert_eq!(count, burnside(4, 2));
    assert!(bad.is_empty(), "{} mismatches, first {:?}", bad.len(), bad.first());
}

#[test]
#[ignore = "hours on one core"]
fn exhaustive_four_vertices_full_range() {
    let (count, bad) = sweep(4, 5);
    eprintln!("n=4 entries 0..=5: {count} orbits, {} mismatches", bad.len());
    assert!(bad.is_empty(), "first mismatch {:?}", bad.first());
}

/// Random all-white set: entries `p/d` with `p` in `0..=6`, `d` in `1..=3`,
/// about a third of them zero.
fn random_rational(rng: &mut StdRng) -> RaySet<Rational> {
    let n = rng.gen_range(1..=6);
    let mut m = vec![vec![q(0, 1); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = if i == j {
                q(-2, 1)
            } else if rng.gen_bool(0.35) {
                q(0, 1)
            } else {
                q(rng.gen_range(1..=6), rng.gen_range(1..=3))
            };
        }
    }
    RaySet::from_matrix(m).expect("valid matrix")
}

#[test]
fn random_rational_instances() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut bad = vec![];
    for _ in 0..10_000 {
        let rs = random_rational(&mut rng);
        let a = classify(&rs).expect("classify").class;
        let b = oracle_classify(&rs).expect("oracle");
        if a != b {
            bad.push((rs.to_text(), a, b));
        }
    }
    assert!(bad.is_empty(), "{} mismatches, first {:?}", bad.len(), bad.first());
}
