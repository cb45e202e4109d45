//! Small all-white integer matrices up to relabeling of the vertices.

use crate::shapes::next_permutation;

/// Off-diagonal positions in row-major order.
fn positions(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

/// For each non-identity permutation `p`, the index map `k -> index of (p(i), p(j))`.
fn permuted_indices(n: usize) -> Vec<Vec<usize>> {
    let pos = positions(n);
    let index = |i: usize, j: usize| pos.iter().position(|&x| x == (i, j)).expect("off-diagonal");
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![];
    while next_permutation(&mut p) {
        out.push(pos.iter().map(|&(i, j)| index(p[i], p[j])).collect());
    }
    out
}

/// Calls `f` once per orbit of `n x n` matrices with diagonal `-2` and
/// off-diagonal entries in `0..=max` under simultaneous row and column
/// permutation. The representative has the lexicographically smallest
/// off-diagonal word. Returns the number of orbits.
pub fn for_each_canonical(n: usize, max: u8, mut f: impl FnMut(&[Vec<i64>])) -> u64 {
    let pos = positions(n);
    let perms = permuted_indices(n);
    let k = pos.len();
    let mut w = vec![0u8; k];
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = -2;
    }
    let mut count = 0;
    loop {
        let canonical = perms.iter().all(|p| {
            for (t, &src) in p.iter().enumerate() {
                match w[t].cmp(&w[src]) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
            true
        });
        if canonical {
            for (t, &(i, j)) in pos.iter().enumerate() {
                m[i][j] = w[t] as i64;
            }
            f(&m);
            count += 1;
        }
        // odometer, last digit fastest
        let mut t = k;
        loop {
            if t == 0 {
                return count;
            }
            t -= 1;
            if w[t] < max {
                w[t] += 1;
                break;
            }
            w[t] = 0;
        }
    }
}
