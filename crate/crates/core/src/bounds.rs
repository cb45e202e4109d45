//! Diagram constants extracted from catalog sweeps, the Picard-number bound
//! formulas, and the angle weights `sigma_A`, `sigma_AV`.

use crate::catalog::{enumerate_with, EnumOptions, FamilySpec, TypeBMode};
use crate::classifier::{classify, is_elliptic, DiagramClass};
use crate::error::{Error, Result};
use crate::quasi;
use crate::raygraph::{distance_matrix, is_connected, pruned_indices, Dist, RaySet};
use crate::scalar::{mixed, Scalar};
use crate::shapes::{full_graph_elliptic_max, shape_type, ShapeType};
use crate::{q, qi, Rational};
use num_traits::{One, Zero};
use std::collections::VecDeque;
use std::fmt;

/// `subject < bound` (strict) or `subject <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub subject: Rational,
    pub strict: bool,
    pub bound: Rational,
    pub holds: bool,
}

impl Claim {
    pub fn new(subject: Rational, strict: bool, bound: Rational) -> Self {
        let holds = if strict { subject < bound } else { subject <= bound };
        Claim { subject, strict, bound, holds }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.strict { "<" } else { "<=" };
        let ok = if self.holds { "OK" } else { "FAIL" };
        write!(f, "{} {rel} {} {ok}", mixed(&self.subject), mixed(&self.bound))
    }
}

/// One evaluated formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub formula: String,
    pub inputs: Vec<(String, Rational)>,
    pub value: Rational,
    pub claim: Option<Claim>,
    pub notes: Vec<String>,
}

impl BoundReport {
    /// Integer part of the value.
    pub fn floor(&self) -> i128 {
        self.value.floor_i128()
    }
}

/// Ordered-pair counts at distance `1..=d` and `d+1..=2d+1`, and the counts
/// divided by the number of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDensity {
    pub c1: usize,
    pub c2: usize,
    pub ratio1: Rational,
    pub ratio2: Rational,
}

pub fn pair_density<S: Scalar>(rs: &RaySet<S>, d: usize) -> Result<PairDensity> {
    if d < 1 {
        return Err(Error::Precondition("pair density needs d >= 1".into()));
    }
    let dm = distance_matrix(rs);
    let (mut c1, mut c2) = (0, 0);
    for (i, row) in dm.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            if x.within(1, d) {
                c1 += 1;
            } else if x.within(d + 1, 2 * d + 1) {
                c2 += 1;
            }
        }
    }
    let n = qi(rs.n() as i64);
    Ok(PairDensity { c1, c2, ratio1: qi(c1 as i64) / n.clone(), ratio2: qi(c2 as i64) / n })
}

/// Distances inside `keep` only, as a `keep.len()` square matrix.
fn bfs_within<S: Scalar>(rs: &RaySet<S>, keep: &[usize]) -> Vec<Vec<Dist>> {
    let k = keep.len();
    let mut out = vec![vec![Dist::Inf; k]; k];
    for s in 0..k {
        out[s][s] = Dist::Fin(0);
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            let da = out[s][a].finite().unwrap_or(0);
            for b in 0..k {
                if out[s][b] == Dist::Inf && rs.has_arrow(keep[a], keep[b]) {
                    out[s][b] = Dist::Fin(da + 1);
                    queue.push_back(b);
                }
            }
        }
    }
    out
}

/// Unordered pairs of `rs - e0` with `1 <= rho_A <= 2 d_A + 1`, where
/// `rho_A` is measured inside the pruned part of `rs - e0`; and the count
/// divided by `#(rs - e0)` (0 for an empty complement).
pub fn ca_density<S: Scalar>(rs: &RaySet<S>, e0: &[usize], d_a: usize) -> Result<(usize, Rational)> {
    for &v in e0 {
        rs.check(v)?;
        if rs.kind(v).is_type_i() {
            return Err(Error::Precondition(format!("e0 vertex {v} is black")));
        }
    }
    if e0.len() > 1 && !is_connected(&rs.sub(e0)) {
        return Err(Error::Precondition("e0 must be divisorially connected".into()));
    }
    let rest: Vec<usize> = (0..rs.n()).filter(|v| !e0.contains(v)).collect();
    if rest.is_empty() {
        return Ok((0, Rational::zero()));
    }
    let pruned = pruned_indices(rs);
    let keep: Vec<usize> = rest.iter().copied().filter(|v| pruned.contains(v)).collect();
    let dm = bfs_within(rs, &keep);
    let mut count = 0;
    for a in 0..keep.len() {
        for b in a + 1..keep.len() {
            if dm[a][b].within(1, 2 * d_a + 1) {
                count += 1;
            }
        }
    }
    Ok((count, qi(count as i64) / qi(rest.len() as i64)))
}

/// `1/2` iff `1 <= rho_A <= 2 d_A + 1`, else `0`.
pub fn sigma_a(rho_a: Dist, d_a: usize) -> Result<Rational> {
    if d_a < 1 {
        return Err(Error::Precondition("sigma_A needs d_A >= 1".into()));
    }
    Ok(if rho_a.within(1, 2 * d_a + 1) { q(1, 2) } else { Rational::zero() })
}

/// Finite-type diagram of a connected all-double-arrow elliptic component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dynkin {
    /// Path types A, B, C; `path` lists the vertices end to end.
    Classical { letter: char, path: Vec<usize> },
    /// `D_n`: the two short leaves, the branch vertex, then the long arm
    /// from the branch outwards.
    D { leaves: [usize; 2], branch: usize, arm: Vec<usize> },
    /// `E_6`, `E_7`, `E_8` in figure order: far and near vertex of the
    /// 2-arm, branch, pendant, then the long arm from the branch outwards.
    E { n: usize, order: Vec<usize> },
    F4 { path: Vec<usize> },
    G2 { path: Vec<usize> },
}

impl Dynkin {
    pub fn name(&self) -> String {
        match self {
            Dynkin::Classical { letter, path } => format!("{letter}{}", path.len()),
            Dynkin::D { arm, .. } => format!("D{}", arm.len() + 3),
            Dynkin::E { n, .. } => format!("E{n}"),
            Dynkin::F4 { .. } => "F4".into(),
            Dynkin::G2 { .. } => "G2".into(),
        }
    }
}

/// Identify the finite type of a connected all-white elliptic diagram
/// without single arrows.
pub fn dynkin_type<S: Scalar>(rs: &RaySet<S>) -> Result<Dynkin> {
    let n = rs.n();
    if rs.kinds().iter().any(|k| k.is_type_i()) || !rs.dotted().is_empty() {
        return Err(Error::Precondition("component must be all type II without dotted pairs".into()));
    }
    if !is_connected(rs) {
        return Err(Error::Precondition("component must be connected".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if rs.is_single(i, j) {
                return Err(Error::Precondition("component has a single arrow".into()));
            }
        }
    }
    if !is_elliptic(rs)?.0 {
        return Err(Error::Precondition("component is not elliptic".into()));
    }
    let nb = |v: usize| -> Vec<usize> { (0..n).filter(|&w| w != v && rs.has_arrow(v, w)).collect() };
    let prod = |a: usize, b: usize| rs.m(a, b).clone() * rs.m(b, a).clone();
    // walk from `start` away from `from` until a leaf or the branch
    let walk = |start: usize, from: usize| -> Vec<usize> {
        let mut out = vec![start];
        let (mut prev, mut cur) = (from, start);
        loop {
            let next: Vec<usize> = nb(cur).into_iter().filter(|&w| w != prev).collect();
            if next.len() != 1 {
                break;
            }
            prev = cur;
            cur = next[0];
            out.push(cur);
        }
        out
    };
    if let Some(b) = (0..n).find(|&v| nb(v).len() >= 3) {
        let mut arms: Vec<Vec<usize>> = nb(b).into_iter().map(|s| walk(s, b)).collect();
        arms.sort_by_key(|a| a.len());
        let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
        return match lens.as_slice() {
            [1, 1, _] => Ok(Dynkin::D { leaves: [arms[0][0], arms[1][0]], branch: b, arm: arms[2].clone() }),
            [1, 2, k @ 2..=4] => {
                let mut order = vec![arms[1][1], arms[1][0], b, arms[0][0]];
                order.extend(&arms[2]);
                Ok(Dynkin::E { n: 4 + k, order })
            }
            _ => Err(Error::Precondition("branched component of unknown type".into())),
        };
    }
    let end = (0..n).find(|&v| nb(v).len() <= 1).unwrap_or(0);
    let path = walk(end, usize::MAX);
    let prods: Vec<S> = path.windows(2).map(|w| prod(w[0], w[1])).collect();
    if prods.iter().any(|p| *p == S::from_int(3)) {
        return Ok(Dynkin::G2 { path });
    }
    match prods.iter().position(|p| *p == S::from_int(2)) {
        None => Ok(Dynkin::Classical { letter: 'A', path }),
        Some(1) if n == 4 => Ok(Dynkin::F4 { path }),
        Some(pos) => {
            // orient so the doubled edge is at the start; B if the heavy
            // arrow points into the end vertex
            let mut path = path;
            if pos != 0 {
                path.reverse();
            }
            let letter = if rs.m(path[1], path[0]) > rs.m(path[0], path[1]) { 'B' } else { 'C' };
            Ok(Dynkin::Classical { letter, path })
        }
    }
}

/// Pairs of `E_8` (figure order) that get weight 0.
pub const E8_EXCLUDED: [(usize, usize); 4] = [(3, 5), (3, 6), (3, 7), (4, 7)];

/// Angle weight for a pair inside one finite-type component.
pub fn sigma_av<S: Scalar>(component: &RaySet<S>, i: usize, j: usize) -> Result<Rational> {
    component.check(i)?;
    component.check(j)?;
    if i == j {
        return Err(Error::Precondition("sigma_AV needs two distinct vertices".into()));
    }
    let ty = dynkin_type(component)?;
    let n = component.n();
    let half = q(1, 2);
    if n <= 4 {
        return Ok(Rational::one());
    }
    if component.has_arrow(i, j) || n <= 7 {
        return Ok(half);
    }
    let in_terminal = match &ty {
        Dynkin::Classical { path, .. } => {
            let pos = |v: usize| path.iter().position(|&x| x == v).expect("vertex on path");
            let (a, b) = (pos(i).min(pos(j)), pos(i).max(pos(j)));
            b < 6 || n - a <= 6
        }
        Dynkin::D { leaves, branch, arm } => {
            let arm_pos = |v: usize| arm.iter().position(|&x| x == v);
            let fork_side = |v: usize| -> Option<usize> {
                // size of the smallest fork-side interval holding v
                if leaves.contains(&v) || v == *branch {
                    Some(3)
                } else {
                    arm_pos(v).map(|p| 4 + p)
                }
            };
            let far_side = |v: usize| arm_pos(v).map(|p| arm.len() - p);
            let fs = fork_side(i).max(fork_side(j)).unwrap_or(usize::MAX);
            let far = match (far_side(i), far_side(j)) {
                (Some(a), Some(b)) => a.max(b),
                _ => usize::MAX,
            };
            fs <= 6 || far <= 6
        }
        Dynkin::E { n: 8, order } => {
            let pos = |v: usize| order.iter().position(|&x| x == v).expect("vertex in E8");
            let key = (pos(i).min(pos(j)), pos(i).max(pos(j)));
            return Ok(if E8_EXCLUDED.contains(&key) { Rational::zero() } else { half });
        }
        _ => false,
    };
    Ok(if in_terminal { half } else { Rational::zero() })
}

/// A diagram attaining a reported constant.
#[derive(Debug, Clone)]
pub struct ConstantWitness {
    pub spec: Option<FamilySpec>,
    pub rs: RaySet,
    pub detail: String,
}

/// Numeric constants. `n_*` are `-1` when no Lanner diagram of that shape
/// occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constants {
    pub q: i64,
    pub d: i64,
    pub n_d: i64,
    pub n_c: i64,
    pub n_a: i64,
    pub d_a: i64,
    pub c1: Rational,
    pub c2: Rational,
    pub c_a: Rational,
}

/// Sweep result with one witness per constant.
#[derive(Debug, Clone)]
pub struct ConstantsReport {
    pub constants: Constants,
    pub max_n: usize,
    pub max_weight: i64,
    /// `(constant name, witness)`, in the field order of [`Constants`].
    pub attained_by: Vec<(&'static str, ConstantWitness)>,
    /// Number of catalog entries examined.
    pub entries: usize,
}

/// Options for [`extract_constants_with`].
#[derive(Debug, Clone, Copy)]
pub struct ConstantsOptions {
    /// Largest `e0` tried for `C_A`.
    pub e0_cap: usize,
}

impl Default for ConstantsOptions {
    fn default() -> Self {
        ConstantsOptions { e0_cap: 4 }
    }
}

pub fn extract_constants(max_n: usize, max_weight: i64) -> Result<ConstantsReport> {
    extract_constants_with(max_n, max_weight, ConstantsOptions::default())
}

struct Best<T: Ord + Clone> {
    value: Option<T>,
    witness: Option<ConstantWitness>,
}

impl<T: Ord + Clone> Best<T> {
    fn new() -> Self {
        Best { value: None, witness: None }
    }

    fn offer(&mut self, v: T, w: impl FnOnce() -> ConstantWitness) {
        if self.value.as_ref().map_or(true, |b| v > *b) {
            self.value = Some(v);
            self.witness = Some(w());
        }
    }
}

fn diam_value(rs: &RaySet) -> Option<i64> {
    crate::raygraph::diameter(rs).finite().map(|d| d as i64)
}

/// Connected all-white subsets of size `1..=cap`, as sorted index lists.
fn connected_white_subsets(rs: &RaySet, cap: usize) -> Vec<Vec<usize>> {
    let n = rs.n();
    let mut out: Vec<Vec<usize>> = vec![];
    let mut seen = std::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> =
        (0..n).filter(|&v| !rs.kind(v).is_type_i()).map(|v| vec![v]).collect();
    for s in &frontier {
        seen.insert(s.clone());
    }
    for _ in 0..cap {
        out.extend(frontier.iter().cloned());
        let mut next = vec![];
        for s in &frontier {
            if s.len() >= cap {
                continue;
            }
            for v in 0..n {
                if s.contains(&v) || rs.kind(v).is_type_i() || !s.iter().any(|&u| crate::raygraph::joint(rs, u, v)) {
                    continue;
                }
                let mut t = s.clone();
                t.push(v);
                t.sort_unstable();
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Constants over the catalog at `(max_n, max_weight)`. Type-(B)
/// configurations are visited once per chain-length multiset: their arrow
/// pattern, hence every distance, does not depend on chain kinds or weights.
pub fn extract_constants_with(max_n: usize, max_weight: i64, opts: ConstantsOptions) -> Result<ConstantsReport> {
    if max_n < 2 || max_weight < 1 {
        return Err(Error::Precondition("constants need max_n >= 2 and max_weight >= 1".into()));
    }
    let mut d = Best::<i64>::new();
    let mut d_a = Best::<i64>::new();
    let mut n_d = Best::<i64>::new();
    let mut n_c = Best::<i64>::new();
    let mut n_a = Best::<i64>::new();
    let mut c1 = Best::<Rational>::new();
    let mut c2 = Best::<Rational>::new();
    let mut c_a = Best::<Rational>::new();
    let mut elliptic: Vec<(FamilySpec, RaySet)> = vec![];
    let mut entries = 0;
    let mut failure = None;
    let opts_enum = EnumOptions { type_b: TypeBMode::GraphOnly };
    enumerate_with(max_n, max_weight, opts_enum, |e| {
        if failure.is_some() {
            return;
        }
        entries += 1;
        let class = match classify(&e.rs) {
            Ok(c) => c.class,
            Err(err) => {
                failure = Some(err);
                return;
            }
        };
        let wit = |detail: String| ConstantWitness { spec: Some(e.spec.clone()), rs: e.rs.clone(), detail };
        match class {
            DiagramClass::Lanner => {
                let size = e.rs.n() as i64;
                if let Some(dm) = diam_value(&e.rs) {
                    d.offer(dm, || wit(format!("diameter {dm}")));
                }
                let shape = shape_type(&e.rs).unwrap_or(ShapeType::Unclassified { reason: "error".into() });
                let slot = match shape {
                    ShapeType::A => {
                        if let Some(dm) = diam_value(&e.rs) {
                            d_a.offer(dm, || wit(format!("type A, diameter {dm}")));
                        }
                        Some(&mut n_a)
                    }
                    ShapeType::C { .. } => Some(&mut n_c),
                    ShapeType::D { .. } => Some(&mut n_d),
                    _ => None,
                };
                if let Some(slot) = slot {
                    slot.offer(size - 1, || wit(format!("{} vertices, type {}", size, shape_letter(&e.rs))));
                }
            }
            DiagramClass::Elliptic => elliptic.push((e.spec, e.rs)),
            _ => {}
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    let dv = d.value.unwrap_or(1).max(1) as usize;
    let dav = d_a.value.unwrap_or(1).max(1) as usize;
    for (spec, rs) in &elliptic {
        let pd = pair_density(rs, dv)?;
        let wit = |detail: String| ConstantWitness { spec: Some(spec.clone()), rs: rs.clone(), detail };
        c1.offer(pd.ratio1.clone(), || wit(format!("{} ordered pairs at distance 1..={dv}", pd.c1)));
        c2.offer(pd.ratio2.clone(), || wit(format!("{} ordered pairs at distance {}..={}", pd.c2, dv + 1, 2 * dv + 1)));
        let mut subsets = vec![vec![]];
        subsets.extend(connected_white_subsets(rs, opts.e0_cap));
        for e0 in subsets {
            let (count, ratio) = ca_density(rs, &e0, dav)?;
            c_a.offer(ratio, || wit(format!("e0 = {e0:?}, {count} pairs")));
        }
    }
    let qv = full_graph_elliptic_max(max_weight) as i64;
    let mut full = vec![vec![-2i64; 2]; 2];
    full[0][1] = 1;
    full[1][0] = 1;
    let q_wit = ConstantWitness {
        spec: None,
        rs: RaySet::from_ints(&full).expect("A2 is valid"),
        detail: format!("largest elliptic full graph has {qv} vertices"),
    };
    let constants = Constants {
        q: qv,
        d: d.value.unwrap_or(-1),
        n_d: n_d.value.unwrap_or(-1),
        n_c: n_c.value.unwrap_or(-1),
        n_a: n_a.value.unwrap_or(-1),
        d_a: d_a.value.unwrap_or(-1),
        c1: c1.value.clone().unwrap_or_else(Rational::zero),
        c2: c2.value.clone().unwrap_or_else(Rational::zero),
        c_a: c_a.value.clone().unwrap_or_else(Rational::zero),
    };
    let mut attained_by = vec![("q", q_wit)];
    for (name, w) in [
        ("d", d.witness),
        ("n_D", n_d.witness),
        ("n_C", n_c.witness),
        ("n_A", n_a.witness),
        ("d_A", d_a.witness),
        ("C1", c1.witness),
        ("C2", c2.witness),
        ("C_A", c_a.witness),
    ] {
        if let Some(w) = w {
            attained_by.push((name, w));
        }
    }
    Ok(ConstantsReport { constants, max_n, max_weight, attained_by, entries })
}

fn shape_letter(rs: &RaySet) -> &'static str {
    shape_type(rs).map(|s| s.letter()).unwrap_or("?")
}

/// Largest quasi-Lanner diagrams found, plus the constants they imply.
#[derive(Debug, Clone)]
pub struct QuasiReport {
    pub max_size: usize,
    pub max_diameter: usize,
    pub size_witness: Option<ConstantWitness>,
    pub diameter_witness: Option<ConstantWitness>,
    /// Quasi-Lanner diagrams seen (catalog plus augmentation search).
    pub count: usize,
    /// Constants implied by the extremes: `d, d_A <= diam`,
    /// `n_A, n_C <= size - 1`, `n_D <= size - 2`, `C1 <= 2d`,
    /// `C2 <= 2(d+1)`, `C_A <= 2 d_A + 1`, and `q <= 3` (at most three
    /// black rays).
    pub implied: Constants,
}

/// Quasi-Lanner extremes over the catalog families and the one-vertex
/// augmentations of connected finite and affine diagrams.
pub fn extract_constants_quasi(max_n: usize, max_weight: i64) -> Result<QuasiReport> {
    if max_n < 2 || max_weight < 1 {
        return Err(Error::Precondition("constants need max_n >= 2 and max_weight >= 1".into()));
    }
    let mut size = Best::<usize>::new();
    let mut diam = Best::<(usize, usize)>::new();
    let mut count = 0;
    let mut consider = |spec: Option<FamilySpec>, rs: RaySet, origin: &str| {
        count += 1;
        let n = rs.n();
        let wit = |detail: String| ConstantWitness { spec: spec.clone(), rs: rs.clone(), detail };
        size.offer(n, || wit(format!("{n} vertices ({origin})")));
        if let Some(dm) = crate::raygraph::diameter(&rs).finite() {
            // prefer the smaller diagram on ties
            diam.offer((dm, usize::MAX - n), || wit(format!("diameter {dm}, {n} vertices ({origin})")));
        }
    };
    let mut failure = None;
    let opts = EnumOptions { type_b: TypeBMode::Skip };
    let mut catalog = vec![];
    enumerate_with(max_n, max_weight, opts, |e| {
        if e.predicted == DiagramClass::QuasiLanner {
            catalog.push(e);
        }
    });
    for e in catalog {
        match classify(&e.rs) {
            Ok(c) if c.class == DiagramClass::QuasiLanner => {
                let origin = format!("{:?} family", e.spec.id.origin());
                consider(Some(e.spec), e.rs, &origin);
            }
            Ok(_) => {}
            Err(err) => failure = Some(err),
        }
    }
    if let Some(err) = failure {
        return Err(err);
    }
    for found in quasi::augmentations(max_n, max_weight)? {
        let origin = format!("{} plus one vertex", found.base);
        consider(Some(found.base_spec.clone()), found.rs, &origin);
    }
    let max_size = size.value.unwrap_or(0);
    let max_diameter = diam.value.map(|v| v.0).unwrap_or(0);
    let dd = max_diameter as i64;
    let implied = Constants {
        q: 3,
        d: dd,
        n_d: max_size as i64 - 2,
        n_c: max_size as i64 - 1,
        n_a: max_size as i64 - 1,
        d_a: dd,
        c1: qi(2 * dd),
        c2: qi(2 * (dd + 1)),
        c_a: qi(2 * dd + 1),
    };
    Ok(QuasiReport {
        max_size,
        max_diameter,
        size_witness: size.witness,
        diameter_witness: diam.witness,
        count,
        implied,
    })
}

/// `(16/3) C1 + 4 C2 + 6`.
pub fn bound_basic(c1: &Rational, c2: &Rational) -> Result<BoundReport> {
    if *c1 < Rational::zero() || *c2 < Rational::zero() {
        return Err(Error::Precondition("C1 and C2 must be non-negative".into()));
    }
    let value = q(16, 3) * c1.clone() + qi(4) * c2.clone() + qi(6);
    Ok(BoundReport {
        formula: "basic".into(),
        inputs: vec![("C1".into(), c1.clone()), ("C2".into(), c2.clone())],
        value,
        claim: None,
        notes: vec![],
    })
}

/// Refined bound `k n_D + l2 max(n_C, n_A) + 8 C_A + 6` and its coarse form
/// `q max(n_D, n_C, n_A) + 8 C_A + 6`.
pub fn bound_refined(k: i64, l2: i64, c: &Constants) -> Result<(BoundReport, BoundReport)> {
    if k < 0 || l2 < 0 {
        return Err(Error::Precondition("k and l2 must be non-negative".into()));
    }
    let tail = qi(8) * c.c_a.clone() + qi(6);
    let refined = qi(k * c.n_d + l2 * c.n_c.max(c.n_a)) + tail.clone();
    let coarse = qi(c.q * c.n_d.max(c.n_c).max(c.n_a)) + tail;
    let inputs = vec![
        ("k".into(), qi(k)),
        ("l2".into(), qi(l2)),
        ("q".into(), qi(c.q)),
        ("n_D".into(), qi(c.n_d)),
        ("n_C".into(), qi(c.n_c)),
        ("n_A".into(), qi(c.n_a)),
        ("C_A".into(), c.c_a.clone()),
    ];
    let r = BoundReport { formula: "refined".into(), inputs: inputs.clone(), value: refined, claim: None, notes: vec![] };
    let co = BoundReport { formula: "coarse".into(), inputs, value: coarse, claim: None, notes: vec![] };
    Ok((r, co))
}

/// Both variants of the strengthened bound: `4k + 5 l2 + 29` and
/// `4k + 5 l2 + 30`, each checked against 40.
pub fn bound_strengthened(k: i64, l2: i64) -> Result<(BoundReport, BoundReport)> {
    if k < 0 || l2 < 0 || k + l2 > 2 {
        return Err(Error::Precondition(format!("need k, l2 >= 0 and k + l2 <= 2, got k={k}, l2={l2}")));
    }
    let mk = |c: i64| {
        let value = qi(4 * k + 5 * l2 + c);
        BoundReport {
            formula: format!("strengthened+{c}"),
            inputs: vec![("k".into(), qi(k)), ("l2".into(), qi(l2))],
            value: value.clone(),
            claim: Some(Claim::new(value, false, qi(40))),
            notes: vec!["two additive constants, 29 and 30, are in use; both are reported".into()],
        }
    };
    Ok((mk(29), mk(30)))
}
