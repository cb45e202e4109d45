//! Exact linear feasibility: a phase-one simplex (Bland's rule) for the hot
//! path and Fourier-Motzkin elimination for the independent oracle.

use crate::scalar::Scalar;

/// A point `x >= 0` with `g x >= h`, or `None` when the system is infeasible.
pub fn simplex_ge<S: Scalar>(g: &[Vec<S>], h: &[S]) -> Option<Vec<S>> {
    let m = g.len();
    let n = g.first().map_or(0, |r| r.len());
    if m == 0 {
        return Some(vec![S::zero(); n]);
    }
    // columns: x (n) | surplus (m) | artificial (one per row with h >= 0... only where needed)
    let needs_art: Vec<bool> = h.iter().map(|v| !v.is_negative()).collect();
    let n_art = needs_art.iter().filter(|&&b| b).count();
    let cols = n + m + n_art;
    let mut t: Vec<Vec<S>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    let mut art_col = n + m;
    let mut is_art = vec![false; cols];
    for i in 0..m {
        let mut row = vec![S::zero(); cols + 1];
        if needs_art[i] {
            row[..n].clone_from_slice(&g[i][..n]);
            row[n + i] = -S::one();
            row[art_col] = S::one();
            row[cols] = h[i].clone();
            basis[i] = art_col;
            is_art[art_col] = true;
            art_col += 1;
        } else {
            for j in 0..n {
                row[j] = -g[i][j].clone();
            }
            row[n + i] = S::one();
            row[cols] = -h[i].clone();
            basis[i] = n + i;
        }
        t.push(row);
    }
    // reduced costs for minimizing the sum of artificials
    let mut d = vec![S::zero(); cols + 1];
    for j in 0..cols {
        if is_art[j] {
            d[j] = S::one();
        }
    }
    for i in 0..m {
        if is_art[basis[i]] {
            for j in 0..=cols {
                d[j] = d[j].clone() - t[i][j].clone();
            }
        }
    }
    loop {
        let Some(e) = (0..cols).find(|&j| d[j].is_negative()) else { break };
        let mut leave: Option<(usize, S)> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let r = t[i][cols].clone() / t[i][e].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, r));
                }
            }
        }
        let (l, _) = leave.expect("phase one objective is bounded below");
        pivot(&mut t, &mut d, l, e);
        basis[l] = e;
    }
    // objective value is -d[cols]
    if !d[cols].is_zero() {
        return None;
    }
    let mut x = vec![S::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][cols].clone();
        }
    }
    Some(x)
}

fn pivot<S: Scalar>(t: &mut [Vec<S>], d: &mut [S], l: usize, e: usize) {
    let w = t[l].len();
    let p = t[l][e].clone();
    for j in 0..w {
        t[l][j] = t[l][j].clone() / p.clone();
    }
    let prow = t[l].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == l || row[e].is_zero() {
            continue;
        }
        let f = row[e].clone();
        for j in 0..w {
            if !prow[j].is_zero() {
                row[j] = row[j].clone() - f.clone() * prow[j].clone();
            }
        }
    }
    if !d[e].is_zero() {
        let f = d[e].clone();
        for j in 0..w {
            if !prow[j].is_zero() {
                d[j] = d[j].clone() - f.clone() * prow[j].clone();
            }
        }
    }
}

/// One inequality `sum c_j x_j >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ineq<S> {
    pub c: Vec<S>,
    pub rhs: S,
}

impl<S: Scalar> Ineq<S> {
    pub fn new(c: Vec<S>, rhs: S) -> Self {
        Ineq { c, rhs }
    }

    /// Both `c x >= rhs` and `c x <= rhs`.
    pub fn eq(c: Vec<S>, rhs: S) -> [Self; 2] {
        let neg = c.iter().map(|x| -x.clone()).collect();
        [Ineq { c, rhs: rhs.clone() }, Ineq { c: neg, rhs: -rhs }]
    }

    fn normalized(mut self) -> Self {
        if let Some(p) = self.c.iter().find(|x| !x.is_zero()) {
            let s = p.abs();
            for x in self.c.iter_mut() {
                *x = x.clone() / s.clone();
            }
            self.rhs = self.rhs / s;
        }
        self
    }
}

/// Fourier-Motzkin feasibility of a system of non-strict inequalities.
/// Redundant combinations are dropped with the Kohler history rule.
pub fn fourier_motzkin<S: Scalar>(system: &[Ineq<S>]) -> bool {
    let nvars = system.first().map_or(0, |r| r.c.len());
    let mut rows: Vec<(Ineq<S>, Vec<u64>)> = vec![];
    let words = system.len().div_ceil(64).max(1);
    for (k, r) in system.iter().enumerate() {
        let mut h = vec![0u64; words];
        h[k / 64] |= 1 << (k % 64);
        rows.push((r.clone().normalized(), h));
    }
    let mut alive: Vec<bool> = vec![true; nvars];
    let mut eliminated = 0usize;
    loop {
        // trivial rows
        let mut kept = Vec::with_capacity(rows.len());
        let mut seen = std::collections::HashSet::new();
        for (r, h) in rows {
            if r.c.iter().all(|x| x.is_zero()) {
                if r.rhs.is_positive() {
                    return false;
                }
                continue;
            }
            if seen.insert(r.clone()) {
                kept.push((r, h));
            }
        }
        rows = kept;
        let Some(var) = (0..nvars).filter(|&v| alive[v]).min_by_key(|&v| {
            let p = rows.iter().filter(|(r, _)| r.c[v].is_positive()).count();
            let q = rows.iter().filter(|(r, _)| r.c[v].is_negative()).count();
            (p * q) as isize - (p + q) as isize
        }) else {
            return true;
        };
        alive[var] = false;
        eliminated += 1;
        let (pos, rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|(r, _)| r.c[var].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|(r, _)| r.c[var].is_negative());
        let mut next = zero;
        for (p, hp) in &pos {
            for (q, hq) in &neg {
                let hist: Vec<u64> = hp.iter().zip(hq).map(|(a, b)| a | b).collect();
                let weight: u32 = hist.iter().map(|w| w.count_ones()).sum();
                if weight as usize > eliminated + 1 {
                    continue;
                }
                let a = p.c[var].clone();
                let b = -q.c[var].clone();
                let c: Vec<S> = p
                    .c
                    .iter()
                    .zip(&q.c)
                    .map(|(x, y)| x.clone() / a.clone() + y.clone() / b.clone())
                    .collect();
                let rhs = p.rhs.clone() / a.clone() + q.rhs.clone() / b.clone();
                next.push((Ineq { c, rhs }.normalized(), hist));
            }
        }
        rows = next;
    }
}
