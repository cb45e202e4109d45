//! Dense exact linear algebra on small matrices.

use crate::scalar::Scalar;

pub type Mat<S> = Vec<Vec<S>>;

pub fn mat_vec<S: Scalar>(a: &[Vec<S>], x: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(S::zero(), |acc, (p, q)| acc + p.clone() * q.clone()))
        .collect()
}

pub fn neg<S: Scalar>(a: &[Vec<S>]) -> Mat<S> {
    a.iter().map(|r| r.iter().map(|x| -x.clone()).collect()).collect()
}

/// Principal submatrix on `idx`.
pub fn principal<S: Scalar>(a: &[Vec<S>], idx: &[usize]) -> Mat<S> {
    idx.iter().map(|&i| idx.iter().map(|&j| a[i][j].clone()).collect()).collect()
}

/// Leading principal minors are all positive. Elimination without row
/// exchanges: the k-th pivot is `D_k / D_{k-1}`.
pub fn leading_minors_positive<S: Scalar>(a: &[Vec<S>]) -> bool {
    let n = a.len();
    let mut w: Mat<S> = a.to_vec();
    for k in 0..n {
        if !w[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if w[i][k].is_zero() {
                continue;
            }
            let f = w[i][k].clone() / w[k][k].clone();
            for j in k..n {
                let t = f.clone() * w[k][j].clone();
                w[i][j] = w[i][j].clone() - t;
            }
        }
    }
    true
}

/// Leading principal minors `D_1..D_n`.
pub fn leading_minors<S: Scalar>(a: &[Vec<S>]) -> Vec<S> {
    (1..=a.len()).map(|k| det(&principal(a, &(0..k).collect::<Vec<_>>()))).collect()
}

pub fn det<S: Scalar>(a: &[Vec<S>]) -> S {
    let n = a.len();
    let mut w: Mat<S> = a.to_vec();
    let mut d = S::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !w[i][k].is_zero()) else {
            return S::zero();
        };
        if p != k {
            w.swap(p, k);
            d = -d;
        }
        d = d * w[k][k].clone();
        for i in k + 1..n {
            if w[i][k].is_zero() {
                continue;
            }
            let f = w[i][k].clone() / w[k][k].clone();
            for j in k..n {
                let t = f.clone() * w[k][j].clone();
                w[i][j] = w[i][j].clone() - t;
            }
        }
    }
    d
}

/// Solve `a x = b` for square nonsingular `a`.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let mut w: Mat<S> = a.iter().zip(b).map(|(r, v)| {
        let mut r = r.clone();
        r.push(v.clone());
        r
    }).collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !w[i][k].is_zero())?;
        w.swap(p, k);
        let piv = w[k][k].clone();
        for j in k..=n {
            w[k][j] = w[k][j].clone() / piv.clone();
        }
        for i in 0..n {
            if i == k || w[i][k].is_zero() {
                continue;
            }
            let f = w[i][k].clone();
            for j in k..=n {
                let t = f.clone() * w[k][j].clone();
                w[i][j] = w[i][j].clone() - t;
            }
        }
    }
    Some(w.into_iter().map(|r| r[n].clone()).collect())
}

/// Basis of the right null space, one vector per free column of the RREF.
pub fn nullspace<S: Scalar>(a: &[Vec<S>]) -> Vec<Vec<S>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut w: Mat<S> = a.to_vec();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !w[i][c].is_zero()) else { continue };
        w.swap(p, r);
        let piv = w[r][c].clone();
        for j in c..cols {
            w[r][j] = w[r][j].clone() / piv.clone();
        }
        for i in 0..rows {
            if i == r || w[i][c].is_zero() {
                continue;
            }
            let f = w[i][c].clone();
            for j in c..cols {
                let t = f.clone() * w[r][j].clone();
                w[i][j] = w[i][j].clone() - t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -w[ri][f].clone();
            }
            v
        })
        .collect()
}

/// Scale so the smallest entry is `1` (entries assumed positive).
pub fn normalize_min_one<S: Scalar>(v: &[S]) -> Vec<S> {
    match v.iter().filter(|x| x.is_positive()).min() {
        Some(m) => {
            let m = m.clone();
            v.iter().map(|x| x.clone() / m.clone()).collect()
        }
        None => v.to_vec(),
    }
}

/// `a` and `b` are positive multiples of each other.
pub fn proportional<S: Scalar>(a: &[S], b: &[S]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else { return false };
    if b[i].is_zero() {
        return false;
    }
    let r = b[i].clone() / a[i].clone();
    r.is_positive() && a.iter().zip(b).all(|(x, y)| x.clone() * r.clone() == *y)
}
