//! Structural typing of ray-set graphs: components of the special rays, the
//! (A)-(E') grammar for sets whose proper subsets are elliptic, chains, and
//! consistency lints.

use crate::classifier::{is_elliptic, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::raygraph::{joint, Mode, RaySet};
use crate::scalar::Scalar;
use crate::Rational;
use std::collections::BTreeSet;
use std::fmt;

/// Type of a divisorially connected component of the special rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpecialComponentType {
    /// One black vertex.
    A1,
    /// A dotted pair.
    B2,
    /// Hub plus `n - 1` pairwise disjoint tails with single arrows into it.
    C { n: usize },
    /// Dotted pair whose second member is the hub of a `C_n`.
    B2C { n: usize },
    /// Single arrows `Q1 Q2`, `Q2 Q3`, non-single `Q1 Q3`.
    T3,
    /// Cycle of three single arrows.
    T3Prime,
}

impl fmt::Display for SpecialComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialComponentType::A1 => f.write_str("A1"),
            SpecialComponentType::B2 => f.write_str("B2"),
            SpecialComponentType::C { n } => write!(f, "C{n}"),
            SpecialComponentType::B2C { n } => write!(f, "B2C{n}"),
            SpecialComponentType::T3 => f.write_str("T3"),
            SpecialComponentType::T3Prime => f.write_str("T3'"),
        }
    }
}

/// A special component with its roles. For `C`/`B2C` the hub comes first in
/// `vertices`; for `T3`/`T3'` the order is `Q1, Q2, Q3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialComponent {
    pub vertices: Vec<usize>,
    pub kind: SpecialComponentType,
}

/// Vertices that are black, dotted, or an end of a single arrow.
pub fn special_rays<S: Scalar>(rs: &RaySet<S>) -> Vec<usize> {
    let n = rs.n();
    (0..n)
        .filter(|&i| {
            rs.kind(i).is_type_i()
                || rs.dotted().iter().any(|&(a, b)| a == i || b == i)
                || (0..n).any(|j| rs.is_single(i, j) || rs.is_single(j, i))
        })
        .collect()
}

/// Divisorially connected components of the special rays, each matched to
/// its pattern. A component matching no pattern is an error.
pub fn special_components<S: Scalar>(rs: &RaySet<S>) -> Result<Vec<SpecialComponent>> {
    if rs.mode() != Mode::Cy {
        return Err(Error::Precondition("special components need cy mode".into()));
    }
    let sp = special_rays(rs);
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for &s in &sp {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for &w in &sp {
                if !seen.contains(&w) && joint(rs, v, w) {
                    seen.insert(w);
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(match_component(rs, &comp)?);
    }
    Ok(out)
}

fn unmatched(comp: &[usize], reason: &str) -> Error {
    Error::Unclassified { component: comp.to_vec(), reason: reason.into() }
}

fn match_component<S: Scalar>(rs: &RaySet<S>, comp: &[usize]) -> Result<SpecialComponent> {
    let done = |kind, vertices: Vec<usize>| Ok(SpecialComponent { vertices, kind });
    if comp.len() == 1 {
        let v = comp[0];
        if rs.kind(v).is_type_i() {
            return done(SpecialComponentType::A1, vec![v]);
        }
        return Err(unmatched(comp, "isolated special ray of type II"));
    }
    if comp.iter().any(|&v| rs.kind(v).is_type_i()) {
        return Err(unmatched(comp, "black ray joined to other special rays"));
    }
    let pairs: Vec<(usize, usize)> =
        rs.dotted().iter().copied().filter(|&(a, _)| comp.contains(&a)).collect();
    match pairs.len() {
        0 => {}
        1 => {
            let (a, b) = pairs[0];
            if comp.len() == 2 {
                return done(SpecialComponentType::B2, vec![a, b]);
            }
            for (hub, other) in [(b, a), (a, b)] {
                let tails: Vec<usize> = comp.iter().copied().filter(|&v| v != a && v != b).collect();
                if hub_of(rs, hub, &tails) {
                    let mut v = vec![hub, other];
                    v.extend(tails);
                    return done(SpecialComponentType::B2C { n: comp.len() - 1 }, v);
                }
            }
            return Err(unmatched(comp, "dotted pair with a non-hub attachment"));
        }
        _ => return Err(unmatched(comp, "more than one dotted pair")),
    }
    for &hub in comp {
        let tails: Vec<usize> = comp.iter().copied().filter(|&v| v != hub).collect();
        if hub_of(rs, hub, &tails) {
            let mut v = vec![hub];
            v.extend(tails);
            return done(SpecialComponentType::C { n: comp.len() }, v);
        }
    }
    if comp.len() == 3 {
        for &q1 in comp {
            for &q2 in comp {
                let Some(&q3) = comp.iter().find(|&&x| x != q1 && x != q2) else { continue };
                if q1 == q2 || !rs.is_single(q1, q2) || !rs.is_single(q2, q3) {
                    continue;
                }
                if rs.is_single(q3, q1) {
                    let mut v = vec![q1, q2, q3];
                    // canonical rotation: smallest first
                    let r = v.iter().enumerate().min_by_key(|p| p.1).map(|p| p.0).unwrap_or(0);
                    v.rotate_left(r);
                    return done(SpecialComponentType::T3Prime, v);
                }
                if rs.has_arrow(q1, q3) && rs.has_arrow(q3, q1) {
                    return done(SpecialComponentType::T3, vec![q1, q2, q3]);
                }
            }
        }
    }
    Err(unmatched(comp, "no special-component pattern matches"))
}

/// Every tail sends a single arrow into `hub`, and the tails are pairwise disjoint.
fn hub_of<S: Scalar>(rs: &RaySet<S>, hub: usize, tails: &[usize]) -> bool {
    !tails.is_empty()
        && tails.iter().all(|&t| rs.is_single(t, hub))
        && tails.iter().enumerate().all(|(i, &a)| tails[i + 1..].iter().all(|&b| !joint(rs, a, b)))
}

/// Consecutive members are joined by arrows both ways; other members are disjoint.
pub fn is_chain<S: Scalar>(rs: &RaySet<S>, indices: &[usize]) -> Result<bool> {
    for &i in indices {
        rs.check(i)?;
    }
    let set: BTreeSet<usize> = indices.iter().copied().collect();
    if set.len() != indices.len() {
        return Err(Error::Precondition("chain indices must be distinct".into()));
    }
    Ok(chain_ok(rs, indices))
}

fn chain_ok<S: Scalar>(rs: &RaySet<S>, c: &[usize]) -> bool {
    for a in 0..c.len() {
        for b in a + 1..c.len() {
            let (i, j) = (c[a], c[b]);
            let ok = if b == a + 1 {
                rs.has_arrow(i, j) && rs.has_arrow(j, i)
            } else {
                !joint(rs, i, j)
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Order the vertices of `set` as a chain, if possible. When `start` is
/// given the chain must begin there.
fn as_chain<S: Scalar>(rs: &RaySet<S>, set: &[usize], start: Option<usize>) -> Option<Vec<usize>> {
    if set.len() == 1 {
        return (start.is_none() || start == Some(set[0])).then(|| set.to_vec());
    }
    let deg = |v: usize| set.iter().filter(|&&w| w != v && joint(rs, v, w)).count();
    let ends: Vec<usize> = set.iter().copied().filter(|&v| deg(v) == 1).collect();
    let first = match start {
        Some(s) => {
            if !ends.contains(&s) {
                return None;
            }
            s
        }
        None => *ends.first()?,
    };
    let mut order = vec![first];
    let mut prev = usize::MAX;
    let mut cur = first;
    while order.len() < set.len() {
        let next = set.iter().copied().find(|&w| w != cur && w != prev && joint(rs, cur, w))?;
        prev = cur;
        cur = next;
        order.push(cur);
    }
    chain_ok(rs, &order).then_some(order)
}

/// Grammar type of a connected set whose proper subsets are elliptic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeType {
    /// All white, no single arrow.
    A,
    /// Hub plus disjoint chains, each sending one single arrow into the hub
    /// from its first vertex.
    B { hub: usize, chains: Vec<Vec<usize>> },
    /// `R1, R2, R3, ...` with the single arrow `R2 R1`.
    C { order: Vec<usize> },
    /// A chain starting at the black vertex.
    D { chain: Vec<usize> },
    /// Triangle `Q1, Q2, Q3`.
    E { q: [usize; 3] },
    /// Special triangle.
    EPrime { q: [usize; 3] },
    Unclassified { reason: String },
}

impl ShapeType {
    /// Grammar letter: `A`, `B`, `C`, `D`, `E`, `E'` or `?`.
    pub fn letter(&self) -> &'static str {
        match self {
            ShapeType::A => "A",
            ShapeType::B { .. } => "B",
            ShapeType::C { .. } => "C",
            ShapeType::D { .. } => "D",
            ShapeType::E { .. } => "E",
            ShapeType::EPrime { .. } => "E'",
            ShapeType::Unclassified { .. } => "?",
        }
    }
}

impl fmt::Display for ShapeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeType::Unclassified { reason } => write!(f, "unclassified ({reason})"),
            other => f.write_str(other.letter()),
        }
    }
}

/// Type the set without re-checking that its proper subsets are elliptic.
/// An isolated white vertex is type A.
pub fn shape_type<S: Scalar>(rs: &RaySet<S>) -> Result<ShapeType> {
    if !rs.dotted().is_empty() {
        return Err(Error::Precondition("shape typing excludes dotted pairs".into()));
    }
    if !crate::raygraph::is_connected(rs) {
        return Err(Error::Precondition("shape typing needs a connected set".into()));
    }
    let n = rs.n();
    let all: Vec<usize> = (0..n).collect();
    let blacks: Vec<usize> = all.iter().copied().filter(|&v| rs.kind(v).is_type_i()).collect();
    let singles: Vec<(usize, usize)> =
        all.iter().flat_map(|&i| all.iter().map(move |&j| (i, j))).filter(|&(i, j)| rs.is_single(i, j)).collect();
    let un = |r: &str| Ok(ShapeType::Unclassified { reason: r.into() });

    if !blacks.is_empty() {
        if blacks.len() > 1 {
            return un("more than one black vertex");
        }
        if !singles.is_empty() {
            return un("black vertex together with a single arrow");
        }
        return match as_chain(rs, &all, Some(blacks[0])) {
            Some(chain) => Ok(ShapeType::D { chain }),
            None => un("black vertex is not the end of a chain"),
        };
    }
    if singles.is_empty() {
        return Ok(ShapeType::A);
    }
    if n == 3 {
        let has = |i, j| singles.contains(&(i, j));
        for &(a, b) in &singles {
            let c = 3 - a - b;
            if has(b, c) && has(c, a) {
                let mut q = [a, b, c];
                let r = (0..3).min_by_key(|&k| q[k]).unwrap_or(0);
                q.rotate_left(r);
                return Ok(ShapeType::EPrime { q });
            }
            if singles.len() == 2 && has(b, c) && rs.has_arrow(a, c) && rs.has_arrow(c, a) {
                return Ok(ShapeType::E { q: [a, b, c] });
            }
        }
    }
    // type C: one single arrow R2 -> R1, both joined both ways to R3
    if singles.len() == 1 && n >= 3 {
        let (r2, r1) = singles[0];
        for r3 in 0..n {
            if r3 == r1 || r3 == r2 {
                continue;
            }
            let both = |x: usize| rs.has_arrow(x, r3) && rs.has_arrow(r3, x);
            if !(both(r1) && both(r2)) {
                continue;
            }
            let rest: Vec<usize> = all.iter().copied().filter(|&v| v != r1 && v != r2).collect();
            let Some(chain) = as_chain(rs, &rest, Some(r3)) else { continue };
            if chain[1..].iter().all(|&v| !joint(rs, v, r1) && !joint(rs, v, r2)) {
                let mut order = vec![r1, r2];
                order.extend(chain);
                return Ok(ShapeType::C { order });
            }
        }
    }
    // type B: every single arrow ends at the hub
    let hub = singles[0].1;
    if singles.iter().all(|&(_, h)| h == hub) && (0..n).all(|v| !rs.has_arrow(hub, v)) {
        let rest: Vec<usize> = all.iter().copied().filter(|&v| v != hub).collect();
        let sub_comps = components_within(rs, &rest);
        let mut chains = vec![];
        for comp in sub_comps {
            let heads: Vec<usize> = comp.iter().copied().filter(|&v| rs.has_arrow(v, hub)).collect();
            if heads.len() != 1 {
                return un("a chain must attach to the hub exactly once");
            }
            match as_chain(rs, &comp, Some(heads[0])) {
                Some(c) => chains.push(c),
                None => return un("hub attachment is not a chain end"),
            }
        }
        chains.sort();
        return Ok(ShapeType::B { hub, chains });
    }
    un("no grammar type matches")
}

fn components_within<S: Scalar>(rs: &RaySet<S>, set: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for &s in set {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for &w in set {
                if !seen.contains(&w) && joint(rs, v, w) {
                    seen.insert(w);
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// [`shape_type`] after verifying that every proper subset is elliptic.
pub fn shape_type_checked<S: Scalar>(rs: &RaySet<S>) -> Result<ShapeType> {
    let n = rs.n();
    if n > MAX_VERTICES.min(20) {
        return Err(Error::Precondition(format!("subset verification limited to 20 vertices, got {n}")));
    }
    for drop in 0..n {
        let idx: Vec<usize> = (0..n).filter(|&v| v != drop).collect();
        if idx.is_empty() {
            break;
        }
        // every proper subset is elliptic iff every maximal one is (heredity)
        if !is_elliptic(&rs.sub(&idx))?.0 {
            return Err(Error::Precondition(format!("dropping vertex {drop} leaves a non-elliptic set")));
        }
    }
    shape_type(rs)
}

/// Largest all-white full graph (every ordered pair an arrow) with weights
/// `<= max_weight` that is elliptic. Grows sets one vertex at a time; a set
/// can only be extended if it is elliptic, so the search stops at the first
/// size with no elliptic member.
pub fn full_graph_elliptic_max(max_weight: i64) -> usize {
    let w = max_weight.max(1);
    // a two-vertex full graph is elliptic iff its product is < 4
    let pairs: Vec<(i64, i64)> = (1..=w).flat_map(|a| (1..=w).map(move |b| (a, b))).filter(|(a, b)| a * b < 4).collect();
    let mut frontier: Vec<Vec<Vec<i64>>> = pairs.iter().map(|&(a, b)| vec![vec![-2, a], vec![b, -2]]).collect();
    let mut best = if frontier.is_empty() { 1 } else { 2 };
    while !frontier.is_empty() {
        let k = frontier[0].len();
        let mut next = vec![];
        let mut seen = BTreeSet::new();
        for m in &frontier {
            for choice in 0..pairs.len().pow(k as u32) {
                let mut c = choice;
                let mut g = m.clone();
                for row in g.iter_mut() {
                    row.push(0);
                }
                g.push(vec![0; k + 1]);
                g[k][k] = -2;
                for i in 0..k {
                    let (a, b) = pairs[c % pairs.len()];
                    c /= pairs.len();
                    g[i][k] = a;
                    g[k][i] = b;
                }
                let key = canonical(&g);
                if !seen.insert(key) {
                    continue;
                }
                let rs: RaySet<Rational> = RaySet::from_ints(&g).expect("full graph is a valid ray set");
                if is_elliptic(&rs).map(|r| r.0).unwrap_or(false) {
                    next.push(g);
                }
            }
        }
        if !next.is_empty() {
            best = k + 1;
        }
        frontier = next;
    }
    best
}

/// Lexicographically least relabeling of a small integer matrix.
fn canonical(m: &[Vec<i64>]) -> Vec<i64> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<i64>> = None;
    loop {
        let flat: Vec<i64> = perm.iter().flat_map(|&i| perm.iter().map(move |&j| m[i][j])).collect();
        if best.as_ref().map_or(true, |b| flat < *b) {
            best = Some(flat);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Which structural rule a lint refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LintRule {
    /// How a non-special ray may attach to the special components.
    Attachment,
    /// Two non-special rays sharing a special neighbour.
    SharedNeighbour,
}

/// A consistency warning: the matrix is valid but not realizable by the
/// structure theorems for special rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lint {
    pub rule: LintRule,
    pub vertices: Vec<usize>,
    pub message: String,
}

/// Special rays joined to a non-special ray `s`.
fn z_set<S: Scalar>(rs: &RaySet<S>, special: &[usize], s: usize) -> Vec<usize> {
    special.iter().copied().filter(|&q| joint(rs, s, q)).collect()
}

/// Attachment and sharing lints for non-special rays.
pub fn lints<S: Scalar>(rs: &RaySet<S>) -> Result<Vec<Lint>> {
    let comps = special_components(rs)?;
    let special = special_rays(rs);
    let nonspecial: Vec<usize> = (0..rs.n()).filter(|v| !special.contains(v)).collect();
    let comp_of = |q: usize| comps.iter().position(|c| c.vertices.contains(&q));
    let mut out = vec![];
    let mut zs = vec![];
    for &s in &nonspecial {
        let z = z_set(rs, &special, s);
        zs.push(z.clone());
        if z.is_empty() {
            continue;
        }
        let cs: BTreeSet<usize> = z.iter().filter_map(|&q| comp_of(q)).collect();
        let mut lint = |msg: String| {
            let mut v = vec![s];
            v.extend(&z);
            out.push(Lint { rule: LintRule::Attachment, vertices: v, message: msg });
        };
        if cs.len() > 1 {
            lint(format!("ray {s} meets several special components"));
            continue;
        }
        let c = &comps[*cs.iter().next().expect("z is non-empty")];
        let hub_or_pair = |q: usize| match c.kind {
            SpecialComponentType::C { .. } => q == c.vertices[0],
            SpecialComponentType::B2C { .. } => q == c.vertices[0] || q == c.vertices[1],
            _ => false,
        };
        let ok = match c.kind {
            SpecialComponentType::A1 => true,
            SpecialComponentType::B2 => z.len() == 2,
            SpecialComponentType::C { n } => {
                (z.len() == 1 && !hub_or_pair(z[0])) || (n == 2 && z.len() == 2)
            }
            SpecialComponentType::B2C { .. } => z.len() == 1 && !hub_or_pair(z[0]),
            SpecialComponentType::T3 | SpecialComponentType::T3Prime => false,
        };
        if !ok {
            lint(format!("ray {s} attaches to a {} component as {:?}", c.kind, z));
        }
        // arrows from a non-special ray to a special one must be non-single
        for &q in &z {
            if !(rs.has_arrow(s, q) && rs.has_arrow(q, s)) && !rs.kind(q).is_type_i() {
                out.push(Lint {
                    rule: LintRule::Attachment,
                    vertices: vec![s, q],
                    message: format!("ray {s} meets special ray {q} without arrows both ways"),
                });
            }
        }
    }
    for a in 0..nonspecial.len() {
        for b in a + 1..nonspecial.len() {
            let (za, zb) = (&zs[a], &zs[b]);
            let shared: Vec<usize> = za.iter().copied().filter(|q| zb.contains(q)).collect();
            if shared.is_empty() {
                continue;
            }
            let (s, t) = (nonspecial[a], nonspecial[b]);
            let c = comp_of(shared[0]).map(|i| &comps[i]);
            let joined = rs.has_arrow(s, t) && rs.has_arrow(t, s);
            let allowed = joined
                && match c.map(|c| &c.kind) {
                    Some(SpecialComponentType::C { n: 2 }) => {
                        let tail = c.map(|c| c.vertices[1]).unwrap_or(usize::MAX);
                        let full = |z: &Vec<usize>| z.len() == 2;
                        (full(za) && full(zb)) || (full(za) && zb == &vec![tail]) || (full(zb) && za == &vec![tail])
                    }
                    Some(SpecialComponentType::B2) => za.len() == 2 && zb.len() == 2,
                    _ => false,
                };
            if !allowed {
                out.push(Lint {
                    rule: LintRule::SharedNeighbour,
                    vertices: vec![s, t],
                    message: format!("rays {s} and {t} share special neighbours {shared:?}"),
                });
            }
        }
    }
    Ok(out)
}
