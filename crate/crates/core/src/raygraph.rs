//! Ray sets and their oriented graphs.
//!
//! A ray set is an `n x n` exact intersection matrix `m` with
//! `m[i][j] = r_i . D(R_j)`. An arrow `i -> j` exists iff `m[i][j] > 0`; it is
//! single when `m[j][i] = 0`.

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};
use crate::Rational;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// Type of an extremal ray: black (`TypeI`, diagonal `-k`) or white (`TypeII`, diagonal `-2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RayKind {
    TypeI { k: u8 },
    TypeII,
}

impl RayKind {
    pub fn type_i(k: u8) -> Result<Self> {
        if (1..=3).contains(&k) {
            Ok(RayKind::TypeI { k })
        } else {
            Err(Error::Invariant(format!("TypeI weight k={k} not in {{1,2,3}}")))
        }
    }

    pub fn is_type_i(self) -> bool {
        matches!(self, RayKind::TypeI { .. })
    }

    /// Normalized diagonal entry.
    pub fn diagonal<S: Scalar>(self) -> S {
        match self {
            RayKind::TypeI { k } => -S::from_int(k as i64),
            RayKind::TypeII => -S::from_int(2),
        }
    }
}

impl fmt::Display for RayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RayKind::TypeI { k } => write!(f, "I k={k}"),
            RayKind::TypeII => write!(f, "II"),
        }
    }
}

/// Construction mode. `Cy` forces integral off-diagonals and normalized
/// diagonals; `General` allows rational entries and any negative diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Cy,
    General,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cy => "cy",
            Mode::General => "general",
        })
    }
}

/// Oriented path length; `Inf` when no path exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dist {
    Fin(usize),
    Inf,
}

impl Dist {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dist::Fin(d) => Some(d),
            Dist::Inf => None,
        }
    }

    /// `lo <= self <= hi` with `Inf` above everything.
    pub fn within(self, lo: usize, hi: usize) -> bool {
        matches!(self, Dist::Fin(d) if d >= lo && d <= hi)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Fin(d) => write!(f, "{d}"),
            Dist::Inf => f.write_str("inf"),
        }
    }
}

/// A ray set: vertex kinds, dotted (same-divisor) pairs and the matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RaySet<S = Rational> {
    kinds: Vec<RayKind>,
    dotted: Vec<(usize, usize)>,
    m: Vec<Vec<S>>,
    mode: Mode,
}

/// One arrow of the oriented graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow<S = Rational> {
    pub from: usize,
    pub to: usize,
    pub weight: S,
    pub single: bool,
}

impl<S: Scalar> RaySet<S> {
    /// Build from kinds, dotted pairs and off-diagonal data. Diagonal entries of
    /// `off` are ignored and replaced by the normalized values; entries at dotted
    /// positions must be `0` or `-2`.
    pub fn new(
        kinds: Vec<RayKind>,
        dotted: Vec<(usize, usize)>,
        mut off: Vec<Vec<S>>,
        mode: Mode,
    ) -> Result<Self> {
        let n = kinds.len();
        if n == 0 {
            return Err(Error::Invariant("empty ray set".into()));
        }
        if off.len() != n || off.iter().any(|r| r.len() != n) {
            return Err(Error::Invariant(format!("matrix must be {n}x{n}")));
        }
        let mut pairs = BTreeSet::new();
        let mut used = vec![false; n];
        for &(a, b) in &dotted {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::Invariant(format!("dotted pair ({a},{b}) repeats a vertex")));
            }
            if kinds[a].is_type_i() || kinds[b].is_type_i() {
                return Err(Error::Invariant(format!("dotted pair ({a},{b}) touches a TypeI vertex")));
            }
            if used[a] || used[b] {
                return Err(Error::Invariant(format!("dotted pair ({a},{b}) shares a vertex with another pair")));
            }
            used[a] = true;
            used[b] = true;
            pairs.insert((a.min(b), a.max(b)));
        }
        let minus_two = -S::from_int(2);
        for i in 0..n {
            off[i][i] = kinds[i].diagonal();
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = pairs.contains(&(i.min(j), i.max(j)));
                if d {
                    if !(off[i][j].is_zero() || off[i][j] == minus_two) {
                        return Err(Error::Invariant(format!(
                            "entry ({i},{j}) of dotted pair must be -2, got {}",
                            off[i][j]
                        )));
                    }
                    off[i][j] = minus_two.clone();
                } else {
                    if off[i][j].is_negative() {
                        return Err(Error::Invariant(format!(
                            "negative off-diagonal entry ({i},{j}) = {} outside a dotted pair",
                            off[i][j]
                        )));
                    }
                    if mode == Mode::Cy && !off[i][j].is_integral() {
                        return Err(Error::Invariant(format!(
                            "cy mode needs integral entries, ({i},{j}) = {}",
                            off[i][j]
                        )));
                    }
                }
            }
        }
        Ok(RaySet { kinds, dotted: pairs.into_iter().collect(), m: off, mode })
    }

    /// All-white ray set from a full matrix (diagonal must be `-2`).
    pub fn from_matrix(m: Vec<Vec<S>>) -> Result<Self> {
        let n = m.len();
        let mode = if m.iter().flatten().all(|x| x.is_integral()) { Mode::Cy } else { Mode::General };
        Self::with_diagonal(m, mode, n)
    }

    /// General mode: keep whatever negative diagonal `m` has. Kinds are read off
    /// the diagonal where it is `-1`, `-2`, `-3`; other values are tagged `TypeII`
    /// but keep their diagonal.
    pub fn general(m: Vec<Vec<S>>) -> Result<Self> {
        let n = m.len();
        Self::with_diagonal(m, Mode::General, n)
    }

    fn with_diagonal(m: Vec<Vec<S>>, mode: Mode, n: usize) -> Result<Self> {
        if n == 0 || m.iter().any(|r| r.len() != n) {
            return Err(Error::Invariant("matrix must be square and non-empty".into()));
        }
        let mut kinds = Vec::with_capacity(n);
        for (i, row) in m.iter().enumerate() {
            let d = &row[i];
            let kind = if *d == -S::from_int(2) {
                RayKind::TypeII
            } else if *d == -S::one() {
                RayKind::TypeI { k: 1 }
            } else if *d == -S::from_int(3) {
                RayKind::TypeI { k: 3 }
            } else if mode == Mode::General && d.is_negative() {
                RayKind::TypeII
            } else {
                return Err(Error::Invariant(format!("diagonal entry {i} = {d} is not admissible")));
            };
            kinds.push(kind);
        }
        let diag: Vec<S> = (0..n).map(|i| m[i][i].clone()).collect();
        let mut rs = Self::new(kinds, vec![], m, mode)?;
        if mode == Mode::General {
            for (i, d) in diag.into_iter().enumerate() {
                rs.m[i][i] = d;
            }
        }
        Ok(rs)
    }

    /// Integer convenience constructor; `-1`/`-3` diagonals become black vertices.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| S::from_int(v)).collect())
            .collect();
        Self::from_matrix(m)
    }

    /// Replace one diagonal entry (general mode only).
    pub fn set_diagonal(&mut self, i: usize, value: S) -> Result<()> {
        if self.mode != Mode::General {
            return Err(Error::Invariant("explicit diagonals need general mode".into()));
        }
        if !value.is_negative() {
            return Err(Error::Invariant(format!("diagonal {i} must be negative")));
        }
        self.check(i)?;
        self.m[i][i] = value;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[RayKind] {
        &self.kinds
    }

    pub fn kind(&self, i: usize) -> RayKind {
        self.kinds[i]
    }

    pub fn dotted(&self) -> &[(usize, usize)] {
        &self.dotted
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn m(&self, i: usize, j: usize) -> &S {
        &self.m[i][j]
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.m
    }

    pub fn is_dotted(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.dotted.iter().any(|&p| p == key)
    }

    pub(crate) fn check(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.n() })
        }
    }

    /// Arrow `i -> j` exists.
    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        i != j && self.m[i][j].is_positive()
    }

    /// Arrow `i -> j` exists and `j -> i` does not.
    pub fn is_single(&self, i: usize, j: usize) -> bool {
        self.has_arrow(i, j) && self.m[j][i].is_zero()
    }

    /// Induced sub-ray-set on `idx` (in that order).
    pub fn sub(&self, idx: &[usize]) -> RaySet<S> {
        let kinds = idx.iter().map(|&i| self.kinds[i]).collect();
        let m = idx.iter().map(|&i| idx.iter().map(|&j| self.m[i][j].clone()).collect()).collect();
        let dotted = self
            .dotted
            .iter()
            .filter_map(|&(a, b)| {
                let pa = idx.iter().position(|&x| x == a)?;
                let pb = idx.iter().position(|&x| x == b)?;
                Some((pa.min(pb), pa.max(pb)))
            })
            .collect();
        RaySet { kinds, dotted, m, mode: self.mode }
    }

    /// Same data under another mode; switching to `cy` rechecks integrality.
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        if mode == Mode::Cy {
            for (i, row) in self.m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if i != j && !self.is_dotted(i, j) && !x.is_integral() {
                        return Err(Error::Invariant(format!("cy mode needs integral entries, ({i},{j}) = {x}")));
                    }
                }
                if !self.kinds[i].diagonal::<S>().eq(&row[i]) {
                    return Err(Error::Invariant(format!("cy mode needs the standard diagonal at {i}")));
                }
            }
        }
        Ok(RaySet { mode, ..self.clone() })
    }

    /// Same data over another scalar type.
    pub fn convert<T: Scalar>(&self) -> RaySet<T> {
        RaySet {
            kinds: self.kinds.clone(),
            dotted: self.dotted.clone(),
            m: self.m.iter().map(|r| r.iter().map(crate::scalar::convert).collect()).collect(),
            mode: self.mode,
        }
    }

    /// Serialize to `rayset v1`.
    pub fn to_text(&self) -> String {
        let mut out = String::from("rayset v1\n");
        out.push_str(&format!("mode {}\n", self.mode));
        out.push_str(&format!("n {}\n", self.n()));
        for (i, k) in self.kinds.iter().enumerate() {
            out.push_str(&format!("vertex {i} {k}\n"));
        }
        for &(a, b) in &self.dotted {
            out.push_str(&format!("pair {a} {b}\n"));
        }
        for i in 0..self.n() {
            if self.mode == Mode::General && self.m[i][i] != self.kinds[i].diagonal::<S>() {
                out.push_str(&format!("diag {i} {}\n", self.m[i][i]));
            }
        }
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i != j && self.m[i][j].is_positive() {
                    out.push_str(&format!("m {i} {j} {}\n", self.m[i][j]));
                }
            }
        }
        out
    }
}

/// Parse the `rayset v1` text format.
pub fn parse_rayset<S: Scalar>(text: &str) -> Result<RaySet<S>> {
    let mut header = false;
    let mut mode = Mode::Cy;
    let mut n: Option<usize> = None;
    let mut kinds: Vec<Option<RayKind>> = vec![];
    let mut dotted = vec![];
    let mut entries: Vec<(usize, usize, S, usize)> = vec![];
    let mut diags: Vec<(usize, S, usize)> = vec![];
    let mut seen = BTreeSet::new();
    let mut last_line = 0;

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        last_line = ln;
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<(usize, &str)> = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let col = |k: usize| toks.get(k).map(|t| t.0).unwrap_or(line.len() + 1);
        let word = |k: usize| -> Result<&str> {
            toks.get(k).map(|t| t.1).ok_or_else(|| Error::syntax(ln, col(k), "missing token"))
        };
        let index = |k: usize| -> Result<usize> {
            let w = word(k)?;
            w.parse::<usize>().map_err(|_| Error::syntax(ln, col(k), format!("expected index, got `{w}`")))
        };
        if !header {
            if toks.len() == 2 && toks[0].1 == "rayset" && toks[1].1 == "v1" {
                header = true;
                continue;
            }
            return Err(Error::syntax(ln, col(0), "expected header `rayset v1`"));
        }
        let expect_len = |len: usize| -> Result<()> {
            if toks.len() == len {
                Ok(())
            } else {
                Err(Error::syntax(ln, col(len.min(toks.len())), format!("expected {len} tokens")))
            }
        };
        let need_n = |n: Option<usize>| n.ok_or_else(|| Error::syntax(ln, col(0), "`n` must come first"));
        match toks[0].1 {
            "mode" => {
                expect_len(2)?;
                if n.is_some() {
                    return Err(Error::syntax(ln, col(0), "`mode` must precede `n`"));
                }
                mode = match toks[1].1 {
                    "cy" => Mode::Cy,
                    "general" => Mode::General,
                    w => return Err(Error::syntax(ln, col(1), format!("unknown mode `{w}`"))),
                };
            }
            "n" => {
                expect_len(2)?;
                if n.is_some() {
                    return Err(Error::syntax(ln, col(0), "duplicate `n`"));
                }
                let v = index(1)?;
                if v == 0 {
                    return Err(Error::syntax(ln, col(1), "n must be at least 1"));
                }
                n = Some(v);
                kinds = vec![None; v];
            }
            "vertex" => {
                let nn = need_n(n)?;
                let i = index(1)?;
                if i >= nn {
                    return Err(Error::syntax(ln, col(1), format!("vertex {i} out of range")));
                }
                if kinds[i].is_some() {
                    return Err(Error::syntax(ln, col(1), format!("vertex {i} declared twice")));
                }
                let kind = match word(2)? {
                    "II" => {
                        expect_len(3)?;
                        RayKind::TypeII
                    }
                    "I" => {
                        expect_len(4)?;
                        let w = word(3)?;
                        let k = w
                            .strip_prefix("k=")
                            .and_then(|s| s.parse::<u8>().ok())
                            .ok_or_else(|| Error::syntax(ln, col(3), format!("expected k=<1|2|3>, got `{w}`")))?;
                        RayKind::type_i(k).map_err(|_| Error::syntax(ln, col(3), format!("k={k} not in {{1,2,3}}")))?
                    }
                    w => return Err(Error::syntax(ln, col(2), format!("unknown vertex type `{w}`"))),
                };
                kinds[i] = Some(kind);
            }
            "pair" => {
                expect_len(3)?;
                let nn = need_n(n)?;
                let (a, b) = (index(1)?, index(2)?);
                if a >= nn || b >= nn {
                    return Err(Error::syntax(ln, col(1), "pair index out of range"));
                }
                dotted.push((a, b));
            }
            "m" | "diag" => {
                let nn = need_n(n)?;
                let is_diag = toks[0].1 == "diag";
                expect_len(if is_diag { 3 } else { 4 })?;
                let i = index(1)?;
                let j = if is_diag { i } else { index(2)? };
                if i >= nn || j >= nn {
                    return Err(Error::syntax(ln, col(1), "entry index out of range"));
                }
                let vk = if is_diag { 2 } else { 3 };
                let v: S = parse_scalar(word(vk)?)
                    .ok_or_else(|| Error::syntax(ln, col(vk), format!("bad rational `{}`", toks[vk].1)))?;
                if is_diag {
                    if mode != Mode::General {
                        return Err(Error::syntax(ln, col(0), "`diag` lines need `mode general`"));
                    }
                    if !v.is_negative() {
                        return Err(Error::syntax(ln, col(2), "diagonal must be negative"));
                    }
                    diags.push((i, v, ln));
                    continue;
                }
                if i == j {
                    return Err(Error::syntax(ln, col(1), "diagonal entries are derived from vertex kinds"));
                }
                if !seen.insert((i, j)) {
                    return Err(Error::syntax(ln, col(1), format!("duplicate entry ({i},{j})")));
                }
                entries.push((i, j, v, ln));
            }
            w => return Err(Error::syntax(ln, col(0), format!("unknown directive `{w}`"))),
        }
    }
    if !header {
        return Err(Error::syntax(last_line.max(1), 1, "missing header `rayset v1`"));
    }
    let n = n.ok_or_else(|| Error::syntax(last_line.max(1), 1, "missing `n`"))?;
    let kinds: Vec<RayKind> = kinds
        .into_iter()
        .enumerate()
        .map(|(i, k)| k.ok_or_else(|| Error::Invariant(format!("vertex {i} not declared"))))
        .collect::<Result<_>>()?;
    let mut off = vec![vec![S::zero(); n]; n];
    for (i, j, v, _) in entries {
        off[i][j] = v;
    }
    let mut rs = RaySet::new(kinds, dotted, off, mode)?;
    for (i, v, _) in diags {
        rs.set_diagonal(i, v)?;
    }
    Ok(rs)
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = vec![];
    let mut start = None;
    for (p, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..p]));
            }
        } else if start.is_none() {
            start = Some(p);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// All arrows in row-major order.
pub fn arrows<S: Scalar>(rs: &RaySet<S>) -> Vec<Arrow<S>> {
    let n = rs.n();
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            if rs.has_arrow(i, j) {
                out.push(Arrow { from: i, to: j, weight: rs.m(i, j).clone(), single: rs.m(j, i).is_zero() });
            }
        }
    }
    out
}

/// Divisors meet: an arrow either way, or a dotted pair.
pub fn divisorially_joint<S: Scalar>(rs: &RaySet<S>, i: usize, j: usize) -> Result<bool> {
    rs.check(i)?;
    rs.check(j)?;
    if i == j {
        return Err(Error::Precondition("divisorially_joint needs i != j".into()));
    }
    Ok(joint(rs, i, j))
}

pub(crate) fn joint<S: Scalar>(rs: &RaySet<S>, i: usize, j: usize) -> bool {
    rs.has_arrow(i, j) || rs.has_arrow(j, i) || rs.is_dotted(i, j)
}

/// Divisorially connected components, each sorted, ordered by least element.
pub fn components<S: Scalar>(rs: &RaySet<S>) -> Vec<Vec<usize>> {
    let n = rs.n();
    let mut comp = vec![usize::MAX; n];
    let mut out = vec![];
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        comp[s] = id;
        let mut members = vec![];
        while let Some(v) = stack.pop() {
            members.push(v);
            for w in 0..n {
                if w != v && comp[w] == usize::MAX && joint(rs, v, w) {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_connected<S: Scalar>(rs: &RaySet<S>) -> bool {
    components(rs).len() == 1
}

fn bfs<S: Scalar>(rs: &RaySet<S>, src: usize) -> Vec<Dist> {
    let n = rs.n();
    let mut d = vec![Dist::Inf; n];
    d[src] = Dist::Fin(0);
    let mut q = VecDeque::from([src]);
    while let Some(v) = q.pop_front() {
        let dv = d[v].finite().unwrap_or(0);
        for w in 0..n {
            if d[w] == Dist::Inf && rs.has_arrow(v, w) {
                d[w] = Dist::Fin(dv + 1);
                q.push_back(w);
            }
        }
    }
    d
}

/// Oriented shortest-path length from `i` to `j`.
pub fn distance<S: Scalar>(rs: &RaySet<S>, i: usize, j: usize) -> Result<Dist> {
    rs.check(i)?;
    rs.check(j)?;
    Ok(bfs(rs, i)[j])
}

/// All-pairs oriented distances.
pub fn distance_matrix<S: Scalar>(rs: &RaySet<S>) -> Vec<Vec<Dist>> {
    (0..rs.n()).map(|i| bfs(rs, i)).collect()
}

/// Maximum oriented distance over ordered pairs (`0` for one vertex).
pub fn diameter<S: Scalar>(rs: &RaySet<S>) -> Dist {
    distance_matrix(rs).into_iter().flatten().max().unwrap_or(Dist::Fin(0))
}

/// Delete TypeI vertices and heads of single arrows. Returns the pruned set and
/// the original index of each surviving vertex.
pub fn prune_special<S: Scalar>(rs: &RaySet<S>) -> (RaySet<S>, Vec<usize>) {
    let keep = pruned_indices(rs);
    (rs.sub(&keep), keep)
}

pub(crate) fn pruned_indices<S: Scalar>(rs: &RaySet<S>) -> Vec<usize> {
    let n = rs.n();
    (0..n)
        .filter(|&j| !rs.kind(j).is_type_i() && !(0..n).any(|i| rs.is_single(i, j)))
        .collect()
}

/// Symmetric distance through the pruned graph.
pub fn distance_a<S: Scalar>(rs: &RaySet<S>, i: usize, j: usize) -> Result<Dist> {
    rs.check(i)?;
    rs.check(j)?;
    if i == j {
        return Ok(Dist::Fin(0));
    }
    let (p, keep) = prune_special(rs);
    match (keep.iter().position(|&x| x == i), keep.iter().position(|&x| x == j)) {
        (Some(a), Some(b)) => Ok(bfs(&p, a)[b]),
        _ => Ok(Dist::Inf),
    }
}

/// All-pairs `distance_a`, indexed by original vertices.
pub fn distance_a_matrix<S: Scalar>(rs: &RaySet<S>) -> Vec<Vec<Dist>> {
    let n = rs.n();
    let (p, keep) = prune_special(rs);
    let mut out = vec![vec![Dist::Inf; n]; n];
    for (a, &i) in keep.iter().enumerate() {
        let d = bfs(&p, a);
        for (b, &j) in keep.iter().enumerate() {
            out[i][j] = d[b];
        }
    }
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = Dist::Fin(0);
    }
    out
}
