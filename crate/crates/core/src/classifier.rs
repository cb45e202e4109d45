//! Exact classification of ray sets.
//!
//! Hot path: `-M` is a Z-matrix, so ellipticity is the leading-principal-minor
//! test and the witness is `(-M)^{-1} 1`. Lanner, quasi-Lanner and
//! semi-elliptic decisions go through the exact simplex. `oracle_classify`
//! redoes everything with Fourier-Motzkin only.

use crate::error::{Error, Result};
use crate::feasibility::{fourier_motzkin, simplex_ge, Ineq};
use crate::linalg::{self, mat_vec, normalize_min_one};
use crate::raygraph::RaySet;
use crate::scalar::Scalar;
use crate::Rational;
use std::collections::HashMap;
use std::fmt;

/// Largest vertex count accepted by the subset-based procedures.
pub const MAX_VERTICES: usize = 30;
/// Default size limit for `oracle_classify`.
pub const ORACLE_BOUND: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagramClass {
    Elliptic,
    ConnectedParabolic,
    Parabolic,
    Lanner,
    QuasiLanner,
    SemiElliptic,
    NotSemiElliptic,
}

impl DiagramClass {
    pub const ALL: [DiagramClass; 7] = [
        DiagramClass::Elliptic,
        DiagramClass::ConnectedParabolic,
        DiagramClass::Parabolic,
        DiagramClass::Lanner,
        DiagramClass::QuasiLanner,
        DiagramClass::SemiElliptic,
        DiagramClass::NotSemiElliptic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiagramClass::Elliptic => "elliptic",
            DiagramClass::ConnectedParabolic => "connected-parabolic",
            DiagramClass::Parabolic => "parabolic",
            DiagramClass::Lanner => "lanner",
            DiagramClass::QuasiLanner => "quasi-lanner",
            DiagramClass::SemiElliptic => "semi-elliptic",
            DiagramClass::NotSemiElliptic => "not-semi-elliptic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Semi-elliptic in the sense of the LP test.
    pub fn is_semi_elliptic(self) -> bool {
        matches!(
            self,
            DiagramClass::Elliptic
                | DiagramClass::ConnectedParabolic
                | DiagramClass::Parabolic
                | DiagramClass::SemiElliptic
        )
    }
}

impl fmt::Display for DiagramClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of<S: Scalar>(x: &S) -> Sign {
        if x.is_negative() {
            Sign::Neg
        } else if x.is_zero() {
            Sign::Zero
        } else {
            Sign::Pos
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Neg => "<0",
            Sign::Zero => "=0",
            Sign::Pos => ">0",
        }
    }
}

/// Coefficients `a` and the signs of `(M a)_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<S = Rational> {
    pub coefficients: Vec<S>,
    pub signs: Vec<Sign>,
    /// Some coefficients may be zero (semi-elliptic failure witness).
    pub nonnegative_only: bool,
}

impl<S: Scalar> Witness<S> {
    fn new(m: &[Vec<S>], a: Vec<S>, nonnegative_only: bool) -> Self {
        let signs = mat_vec(m, &a).iter().map(Sign::of).collect();
        Witness { coefficients: a, signs, nonnegative_only }
    }

    /// Recompute the signs from the coefficients and compare.
    pub fn verify(&self, rs: &RaySet<S>) -> bool {
        let ok_coeff = self
            .coefficients
            .iter()
            .all(|x| if self.nonnegative_only { !x.is_negative() } else { x.is_positive() });
        let signs: Vec<Sign> = mat_vec(rs.matrix(), &self.coefficients).iter().map(Sign::of).collect();
        ok_coeff && signs == self.signs
    }
}

/// Parabolic parts plus an elliptic remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parabolic_parts: Vec<Vec<usize>>,
    pub elliptic_part: Vec<usize>,
}

/// Boolean sub-flags that accompany the primary label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub elliptic: bool,
    pub connected_parabolic: bool,
    pub parabolic: bool,
    pub lanner: bool,
    pub quasi_lanner: bool,
    pub semi_elliptic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification<S = Rational> {
    pub class: DiagramClass,
    pub flags: Flags,
    pub witness: Option<Witness<S>>,
    pub decomposition: Option<Decomposition>,
    pub reason: Option<String>,
}

fn precheck<S: Scalar>(rs: &RaySet<S>) -> Result<()> {
    if !rs.dotted().is_empty() {
        return Err(Error::Precondition("dotted pairs are not allowed here (distinct divisors required)".into()));
    }
    if rs.n() > MAX_VERTICES {
        return Err(Error::Precondition(format!("at most {MAX_VERTICES} vertices supported")));
    }
    Ok(())
}

type Mask = u32;

fn bits(mask: Mask) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn full(n: usize) -> Mask {
    if n == 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Subset queries with memoized ellipticity.
struct Ctx<'a, S: Scalar> {
    m: &'a [Vec<S>],
    n: usize,
    adj: Vec<Mask>,
    ell: HashMap<Mask, bool>,
}

impl<'a, S: Scalar> Ctx<'a, S> {
    fn new(m: &'a [Vec<S>]) -> Self {
        let n = m.len();
        let adj = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && (m[i][j].is_positive() || m[j][i].is_positive()))
                    .fold(0, |acc, j| acc | 1 << j)
            })
            .collect();
        Ctx { m, n, adj, ell: HashMap::new() }
    }

    fn sub(&self, mask: Mask) -> Vec<Vec<S>> {
        linalg::principal(self.m, &bits(mask))
    }

    fn elliptic(&mut self, mask: Mask) -> bool {
        if mask == 0 {
            return true;
        }
        if let Some(&v) = self.ell.get(&mask) {
            return v;
        }
        let v = linalg::leading_minors_positive(&linalg::neg(&self.sub(mask)));
        self.ell.insert(mask, v);
        v
    }

    fn connected(&self, mask: Mask) -> bool {
        connected_mask(&self.adj, mask)
    }

    fn components(&self, mask: Mask) -> Vec<Mask> {
        components_mask(&self.adj, mask)
    }

    fn all_drop_one(&mut self, mask: Mask, mut pred: impl FnMut(&mut Self, Mask) -> bool) -> bool {
        bits(mask).into_iter().all(|i| pred(self, mask & !(1 << i)))
    }

    /// Positive kernel (normalized) when `mask` is connected parabolic.
    fn connected_parabolic(&mut self, mask: Mask) -> Option<Vec<S>> {
        if mask.count_ones() < 2 || !self.connected(mask) {
            return None;
        }
        if !self.all_drop_one(mask, |c, s| c.elliptic(s)) {
            return None;
        }
        if self.elliptic(mask) {
            return None;
        }
        let sub = self.sub(mask);
        let ker = linalg::nullspace(&sub);
        if ker.len() != 1 {
            return None;
        }
        let mut v = ker.into_iter().next().unwrap();
        if v.iter().any(|x| x.is_negative()) {
            v = v.into_iter().map(|x| -x).collect();
        }
        if v.iter().all(|x| x.is_positive()) {
            Some(normalize_min_one(&v))
        } else {
            None
        }
    }

    fn elliptic_or_cp(&mut self, mask: Mask) -> bool {
        self.elliptic(mask) || self.connected_parabolic(mask).is_some()
    }
}

pub(crate) fn connected_mask(adj: &[Mask], mask: Mask) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen: Mask = 1 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v] & mask;
        }
        next &= !seen;
        seen |= next;
        frontier = next;
    }
    seen == mask
}

pub(crate) fn components_mask(adj: &[Mask], mask: Mask) -> Vec<Mask> {
    let mut rest = mask;
    let mut out = vec![];
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut seen: Mask = 1 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v] & mask;
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        out.push(seen);
        rest &= !seen;
    }
    out
}

/// `{a >= 1, M a >= 0, sum (M a) >= 1}` via the simplex; returns `a`.
fn lanner_system<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<S>> {
    let n = m.len();
    // a = 1 + x, x >= 0
    let row_sums: Vec<S> = m.iter().map(|r| r.iter().cloned().fold(S::zero(), |a, b| a + b)).collect();
    let mut g: Vec<Vec<S>> = m.to_vec();
    let mut h: Vec<S> = row_sums.iter().map(|s| -s.clone()).collect();
    let col_sums: Vec<S> = (0..n).map(|j| (0..n).fold(S::zero(), |a, i| a + m[i][j].clone())).collect();
    let total = row_sums.iter().cloned().fold(S::zero(), |a, b| a + b);
    g.push(col_sums);
    h.push(S::one() - total);
    simplex_ge(&g, &h).map(|x| normalize_min_one(&x.into_iter().map(|v| v + S::one()).collect::<Vec<_>>()))
}

/// Some `a >= 0` with `M a >= 0` and `M a != 0`. The sum row normalizes the
/// homogeneous system.
fn semi_violation<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<S>> {
    let n = m.len();
    let mut g = m.to_vec();
    g.push((0..n).map(|j| m.iter().fold(S::zero(), |acc, r| acc + r[j].clone())).collect());
    let mut h = vec![S::zero(); n];
    h.push(S::one());
    simplex_ge(&g, &h).map(|a| normalize_min_one(&a))
}

fn elliptic_witness<S: Scalar>(m: &[Vec<S>]) -> Vec<S> {
    let ones = vec![S::one(); m.len()];
    let a = linalg::solve(&linalg::neg(m), &ones).expect("elliptic matrices are nonsingular");
    normalize_min_one(&a)
}

/// Elliptic test with witness.
pub fn is_elliptic<S: Scalar>(rs: &RaySet<S>) -> Result<(bool, Option<Witness<S>>)> {
    precheck(rs)?;
    let m = rs.matrix();
    if linalg::leading_minors_positive(&linalg::neg(m)) {
        Ok((true, Some(Witness::new(m, elliptic_witness(m), false))))
    } else {
        Ok((false, None))
    }
}

/// Connected parabolic test with the positive kernel.
pub fn is_connected_parabolic<S: Scalar>(rs: &RaySet<S>) -> Result<(bool, Option<Witness<S>>)> {
    precheck(rs)?;
    let m = rs.matrix();
    let mut c = Ctx::new(m);
    match c.connected_parabolic(full(rs.n())) {
        Some(k) => Ok((true, Some(Witness::new(m, k, false)))),
        None => Ok((false, None)),
    }
}

/// Every divisorially connected component is connected parabolic.
pub fn is_parabolic<S: Scalar>(rs: &RaySet<S>) -> Result<bool> {
    precheck(rs)?;
    let mut c = Ctx::new(rs.matrix());
    Ok(parabolic_kernel(&mut c, full(rs.n())).is_some())
}

fn parabolic_kernel<S: Scalar>(c: &mut Ctx<'_, S>, mask: Mask) -> Option<Vec<S>> {
    let mut out = vec![S::zero(); c.n];
    for comp in c.components(mask) {
        let k = c.connected_parabolic(comp)?;
        for (v, i) in k.into_iter().zip(bits(comp)) {
            out[i] = v;
        }
    }
    Some(bits(mask).into_iter().map(|i| out[i].clone()).collect())
}

/// Lanner test with witness.
pub fn is_lanner<S: Scalar>(rs: &RaySet<S>) -> Result<(bool, Option<Witness<S>>)> {
    precheck(rs)?;
    let m = rs.matrix();
    let mut c = Ctx::new(m);
    let f = full(rs.n());
    if !c.all_drop_one(f, |c, s| c.elliptic(s)) {
        return Ok((false, None));
    }
    match lanner_system(m) {
        Some(a) => Ok((true, Some(Witness::new(m, a, false)))),
        None => Ok((false, None)),
    }
}

/// Quasi-Lanner test with witness. Every proper subset must be elliptic or
/// parabolic; this reduces to each `(n-1)`-subset being elliptic or connected
/// parabolic, since a disconnected parabolic set has mixed subsets.
pub fn is_quasi_lanner<S: Scalar>(rs: &RaySet<S>) -> Result<(bool, Option<Witness<S>>)> {
    precheck(rs)?;
    let m = rs.matrix();
    let mut c = Ctx::new(m);
    let f = full(rs.n());
    if !c.all_drop_one(f, |c, s| c.elliptic_or_cp(s)) {
        return Ok((false, None));
    }
    match lanner_system(m) {
        Some(a) => Ok((true, Some(Witness::new(m, a, false)))),
        None => Ok((false, None)),
    }
}

/// No `a >= 0` gives `M a >= 0` with some entry positive. This is the form
/// under which semi-ellipticity matches the parabolic/elliptic
/// decomposition; the strict form (`M a > 0` everywhere) does not, e.g. an
/// affine pair receiving an arrow from a third vertex.
pub fn is_semi_elliptic<S: Scalar>(rs: &RaySet<S>) -> Result<bool> {
    precheck(rs)?;
    Ok(semi_violation(rs.matrix()).is_none())
}

/// Parabolic parts plus elliptic remainder, or `None` when no decomposition exists.
pub fn semi_elliptic_decomposition<S: Scalar>(rs: &RaySet<S>) -> Result<Option<Decomposition>> {
    precheck(rs)?;
    if rs.n() > 20 {
        return Err(Error::Precondition("decomposition search supports at most 20 vertices".into()));
    }
    let mut c = Ctx::new(rs.matrix());
    Ok(decompose(&mut c))
}

fn decompose<S: Scalar>(c: &mut Ctx<'_, S>) -> Option<Decomposition> {
    let n = c.n;
    let f = full(n);
    if c.elliptic(f) {
        return Some(Decomposition { parabolic_parts: vec![], elliptic_part: (0..n).collect() });
    }
    // predecessors: u -> v arrows
    let pred: Vec<Mask> = (0..n)
        .map(|v| (0..n).filter(|&u| u != v && c.m[u][v].is_positive()).fold(0, |a, u| a | 1 << u))
        .collect();
    let mut cands: Vec<Mask> = vec![];
    for s in 1..=f {
        if s.count_ones() < 2 {
            continue;
        }
        if bits(s).iter().any(|&v| pred[v] & !s != 0) {
            continue;
        }
        if c.connected_parabolic(s).is_some() {
            cands.push(s);
        }
    }
    fn search<S: Scalar>(c: &mut Ctx<'_, S>, cands: &[Mask], k: usize, used: Mask, f: Mask, chosen: &mut Vec<Mask>) -> bool {
        if c.elliptic(f & !used) {
            return true;
        }
        for i in k..cands.len() {
            if cands[i] & used == 0 {
                chosen.push(cands[i]);
                if search(c, cands, i + 1, used | cands[i], f, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = vec![];
    if search(c, &cands, 0, 0, f, &mut chosen) {
        let used = chosen.iter().fold(0, |a, b| a | b);
        Some(Decomposition {
            parabolic_parts: chosen.into_iter().map(bits).collect(),
            elliptic_part: bits(f & !used),
        })
    } else {
        None
    }
}

/// Result of the minimal non-semi-elliptic check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalReport {
    pub quasi_lanner: bool,
    /// Every proper subset is elliptic, or connected parabolic of size `n - 1`.
    pub subsets_ok: bool,
    pub parabolic_subsets: Vec<Vec<usize>>,
    pub violations: Vec<Vec<usize>>,
}

/// Checks the structure of a minimal non-semi-elliptic set.
pub fn minimal_non_semi_elliptic_check<S: Scalar>(rs: &RaySet<S>) -> Result<MinimalReport> {
    precheck(rs)?;
    let n = rs.n();
    if n > 16 {
        return Err(Error::Precondition("subset scan supports at most 16 vertices".into()));
    }
    let m = rs.matrix();
    if semi_violation(m).is_none() {
        return Err(Error::Precondition("input is semi-elliptic".into()));
    }
    let f = full(n);
    let mut c = Ctx::new(m);
    for s in 1..f {
        let sub = c.sub(s);
        if semi_violation(&sub).is_some() {
            return Err(Error::Precondition(format!("proper subset {:?} is not semi-elliptic", bits(s))));
        }
    }
    let mut parabolic_subsets = vec![];
    let mut violations = vec![];
    for s in 1..f {
        if c.elliptic(s) {
            continue;
        }
        if s.count_ones() as usize == n - 1 && c.connected_parabolic(s).is_some() {
            parabolic_subsets.push(bits(s));
        } else {
            violations.push(bits(s));
        }
    }
    let (ql, _) = is_quasi_lanner(rs)?;
    Ok(MinimalReport { quasi_lanner: ql, subsets_ok: violations.is_empty(), parabolic_subsets, violations })
}

/// Full classification in the fixed dispatch order.
pub fn classify<S: Scalar>(rs: &RaySet<S>) -> Result<Classification<S>> {
    precheck(rs)?;
    let m = rs.matrix();
    let n = rs.n();
    let f = full(n);
    let mut c = Ctx::new(m);
    let done = |class, flags, w: Option<Vec<S>>, nonneg, decomposition, reason| Classification {
        class,
        flags,
        witness: w.map(|a| Witness::new(m, a, nonneg)),
        decomposition,
        reason,
    };
    if c.elliptic(f) {
        let flags = Flags { elliptic: true, semi_elliptic: true, ..Flags::default() };
        let dec = Decomposition { parabolic_parts: vec![], elliptic_part: (0..n).collect() };
        return Ok(done(DiagramClass::Elliptic, flags, Some(elliptic_witness(m)), false, Some(dec), None));
    }
    let comps = c.components(f);
    if comps.len() == 1 {
        if let Some(k) = c.connected_parabolic(f) {
            let flags = Flags { connected_parabolic: true, parabolic: true, semi_elliptic: true, ..Flags::default() };
            let dec = Decomposition { parabolic_parts: vec![(0..n).collect()], elliptic_part: vec![] };
            return Ok(done(DiagramClass::ConnectedParabolic, flags, Some(k), false, Some(dec), None));
        }
    } else if let Some(k) = parabolic_kernel(&mut c, f) {
        let flags = Flags { parabolic: true, semi_elliptic: true, ..Flags::default() };
        let dec = Decomposition { parabolic_parts: comps.iter().map(|&s| bits(s)).collect(), elliptic_part: vec![] };
        return Ok(done(DiagramClass::Parabolic, flags, Some(k), false, Some(dec), None));
    }
    let all_e = c.all_drop_one(f, |c, s| c.elliptic(s));
    let all_ep = all_e || c.all_drop_one(f, |c, s| c.elliptic_or_cp(s));
    if all_ep {
        if let Some(a) = lanner_system(m) {
            let class = if all_e { DiagramClass::Lanner } else { DiagramClass::QuasiLanner };
            let flags = Flags { lanner: all_e, quasi_lanner: true, ..Flags::default() };
            debug_assert!(comps.len() == 1, "Lanner-type sets are connected");
            return Ok(done(class, flags, Some(a), false, None, None));
        }
    }
    match semi_violation(m) {
        None => {
            let dec = decompose(&mut c);
            let flags = Flags { semi_elliptic: true, ..Flags::default() };
            Ok(done(DiagramClass::SemiElliptic, flags, None, false, dec, None))
        }
        Some(a) => {
            let reason = if all_ep {
                "proper subsets are elliptic or parabolic but no Lanner witness exists".to_string()
            } else {
                "a non-negative vector makes every ray non-negative and one positive".to_string()
            };
            Ok(done(DiagramClass::NotSemiElliptic, Flags::default(), Some(a), true, None, Some(reason)))
        }
    }
}

/// The classifier rebuilt from Fourier-Motzkin feasibility alone, checking
/// every proper subset literally. Independent of determinants.
pub fn oracle_classify<S: Scalar>(rs: &RaySet<S>) -> Result<DiagramClass> {
    oracle_classify_bounded(rs, ORACLE_BOUND)
}

pub fn oracle_classify_bounded<S: Scalar>(rs: &RaySet<S>, bound: usize) -> Result<DiagramClass> {
    precheck(rs)?;
    let n = rs.n();
    if n > bound {
        return Err(Error::OracleBound { n, bound });
    }
    let mut o = Oracle { m: rs.matrix(), adj: Ctx::new(rs.matrix()).adj, ell: HashMap::new(), cp: HashMap::new() };
    let f = full(n);
    if o.elliptic(f) {
        return Ok(DiagramClass::Elliptic);
    }
    if o.parabolic(f) {
        return Ok(if connected_mask(&o.adj, f) { DiagramClass::ConnectedParabolic } else { DiagramClass::Parabolic });
    }
    let proper: Vec<Mask> = (1..f).collect();
    let all_e = proper.iter().all(|&s| o.elliptic(s));
    let all_ep = all_e || proper.iter().all(|&s| o.elliptic(s) || o.parabolic(s));
    if all_ep && o.lanner_system(f) {
        return Ok(if all_e { DiagramClass::Lanner } else { DiagramClass::QuasiLanner });
    }
    if o.semi(f) {
        Ok(DiagramClass::SemiElliptic)
    } else {
        Ok(DiagramClass::NotSemiElliptic)
    }
}

struct Oracle<'a, S: Scalar> {
    m: &'a [Vec<S>],
    adj: Vec<Mask>,
    ell: HashMap<Mask, bool>,
    cp: HashMap<Mask, bool>,
}

impl<S: Scalar> Oracle<'_, S> {
    fn rows(&self, mask: Mask) -> (Vec<usize>, Vec<Vec<S>>) {
        let idx = bits(mask);
        let sub = linalg::principal(self.m, &idx);
        (idx, sub)
    }

    fn unit(k: usize, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); k];
        v[i] = S::one();
        v
    }

    /// `a >= 1`, `-(M a) >= 1`.
    fn elliptic(&mut self, mask: Mask) -> bool {
        if let Some(&v) = self.ell.get(&mask) {
            return v;
        }
        let (idx, sub) = self.rows(mask);
        let k = idx.len();
        let mut sys = vec![];
        for i in 0..k {
            sys.push(Ineq::new(Self::unit(k, i), S::one()));
            sys.push(Ineq::new(sub[i].iter().map(|x| -x.clone()).collect(), S::one()));
        }
        let v = fourier_motzkin(&sys);
        self.ell.insert(mask, v);
        v
    }

    /// Connected, every proper subset elliptic, `a >= 1` with `M a = 0`.
    fn connected_parabolic(&mut self, mask: Mask) -> bool {
        if let Some(&v) = self.cp.get(&mask) {
            return v;
        }
        let mut v = mask.count_ones() >= 2 && connected_mask(&self.adj, mask);
        if v {
            let mut s = (mask - 1) & mask;
            while s != 0 {
                if !self.elliptic(s) {
                    v = false;
                    break;
                }
                s = (s - 1) & mask;
            }
        }
        if v {
            let (idx, sub) = self.rows(mask);
            let k = idx.len();
            let mut sys = vec![];
            for i in 0..k {
                sys.push(Ineq::new(Self::unit(k, i), S::one()));
                sys.extend(Ineq::eq(sub[i].clone(), S::zero()));
            }
            v = fourier_motzkin(&sys);
        }
        self.cp.insert(mask, v);
        v
    }

    fn parabolic(&mut self, mask: Mask) -> bool {
        components_mask(&self.adj, mask).into_iter().all(|c| self.connected_parabolic(c))
    }

    /// `a >= 1`, `M a >= 0`, `sum M a >= 1`.
    fn lanner_system(&mut self, mask: Mask) -> bool {
        let (idx, sub) = self.rows(mask);
        let k = idx.len();
        let mut sys = vec![];
        for i in 0..k {
            sys.push(Ineq::new(Self::unit(k, i), S::one()));
            sys.push(Ineq::new(sub[i].clone(), S::zero()));
        }
        let col: Vec<S> = (0..k).map(|j| (0..k).fold(S::zero(), |a, i| a + sub[i][j].clone())).collect();
        sys.push(Ineq::new(col, S::one()));
        fourier_motzkin(&sys)
    }

    /// Infeasibility of `a >= 0`, `M a >= 1`.
    fn semi(&mut self, mask: Mask) -> bool {
        let (idx, sub) = self.rows(mask);
        let k = idx.len();
        let mut sys = vec![];
        let mut total = vec![S::zero(); k];
        for i in 0..k {
            sys.push(Ineq::new(Self::unit(k, i), S::zero()));
            sys.push(Ineq::new(sub[i].clone(), S::zero()));
            for (t, x) in total.iter_mut().zip(&sub[i]) {
                *t = t.clone() + x.clone();
            }
        }
        sys.push(Ineq::new(total, S::one()));
        !fourier_motzkin(&sys)
    }
}

/// `is_elliptic` decided by Fourier-Motzkin on `{b >= 0, b != 0, M b >= 0}`
/// being infeasible (normalized by `sum b = 1`).
pub fn elliptic_by_alternative<S: Scalar>(rs: &RaySet<S>) -> bool {
    let m = rs.matrix();
    let n = m.len();
    let mut sys = vec![];
    for i in 0..n {
        let mut e = vec![S::zero(); n];
        e[i] = S::one();
        sys.push(Ineq::new(e, S::zero()));
        sys.push(Ineq::new(m[i].clone(), S::zero()));
    }
    sys.extend(Ineq::eq(vec![S::one(); n], S::one()));
    !fourier_motzkin(&sys)
}
