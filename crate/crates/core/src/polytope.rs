//! Combinatorial simple polytopes with weighted oriented plane angles, and
//! the angle-counting dimension bound.
//!
//! At a vertex `v` of a simple `n`-polytope every 2-face through `v` is cut
//! out by all facets of `v` except two, `A` and `B`. The two oriented angles
//! of that face at `v` are keyed `(v, A, B)` and `(v, B, A)`.

use crate::bounds::{BoundReport, Claim};
use crate::error::{Error, Result};
use crate::scalar::parse_scalar;
use crate::{q, qi, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A polytope vertex and the facets it lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVertex {
    pub id: usize,
    pub facets: BTreeSet<usize>,
}

/// A 2-face as a cyclic sequence of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face2 {
    pub cycle: Vec<usize>,
}

impl Face2 {
    pub fn k(&self) -> usize {
        self.cycle.len()
    }
}

/// Simple polytope with angle weights in `{0, 1/2, 1}`; unset angles weigh 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPolytope {
    pub dim: usize,
    pub facet_count: usize,
    pub vertices: Vec<PolyVertex>,
    /// `(vertex, facet_a, facet_b) -> weight`
    pub angles: BTreeMap<(usize, usize, usize), Rational>,
    pub faces2: Vec<Face2>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Polytope(format!("line {line}: {}", msg.into()))
}

impl WeightedPolytope {
    fn vertex(&self, id: usize) -> Option<&PolyVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn weight(&self, v: usize, a: usize, b: usize) -> Rational {
        self.angles.get(&(v, a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Facets shared by all vertices of a face.
    fn face_facets(&self, f: &Face2) -> BTreeSet<usize> {
        let mut it = f.cycle.iter().filter_map(|&v| self.vertex(v));
        let Some(first) = it.next() else { return BTreeSet::new() };
        it.fold(first.facets.clone(), |acc, v| acc.intersection(&v.facets).copied().collect())
    }

    /// The two facets of `v` not containing face `f`.
    fn angle_facets(&self, f: &Face2, v: usize) -> Option<(usize, usize)> {
        let ff = self.face_facets(f);
        let rest: Vec<usize> = self.vertex(v)?.facets.difference(&ff).copied().collect();
        (rest.len() == 2).then(|| (rest[0], rest[1]))
    }

    /// Check simplicity, face structure and weight domain.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        if n < 2 {
            return Err(Error::Polytope("dimension must be at least 2".into()));
        }
        let allowed = [Rational::zero(), q(1, 2), Rational::one()];
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id) {
                return Err(Error::Polytope(format!("vertex {} declared twice", v.id)));
            }
            if v.facets.len() != n {
                return Err(Error::Polytope(format!("vertex {} lies on {} facets, expected {n}", v.id, v.facets.len())));
            }
            if let Some(&f) = v.facets.iter().find(|&&f| f >= self.facet_count) {
                return Err(Error::Polytope(format!("vertex {} uses facet {f} >= {}", v.id, self.facet_count)));
            }
        }
        for (&(v, a, b), w) in &self.angles {
            let Some(pv) = self.vertex(v) else {
                return Err(Error::Polytope(format!("angle at unknown vertex {v}")));
            };
            if a == b || !pv.facets.contains(&a) || !pv.facets.contains(&b) {
                return Err(Error::Polytope(format!("angle ({v},{a},{b}) needs two distinct facets of the vertex")));
            }
            if !allowed.contains(w) {
                return Err(Error::Polytope(format!("angle ({v},{a},{b}) has weight {w} outside {{0, 1/2, 1}}")));
            }
        }
        for (i, f) in self.faces2.iter().enumerate() {
            if f.k() < 3 {
                return Err(Error::Polytope(format!("face #{i} has fewer than 3 vertices")));
            }
            if f.cycle.iter().collect::<BTreeSet<_>>().len() != f.k() {
                return Err(Error::Polytope(format!("face #{i} repeats a vertex")));
            }
            for &v in &f.cycle {
                if self.vertex(v).is_none() {
                    return Err(Error::Polytope(format!("face #{i} uses unknown vertex {v}")));
                }
            }
            if self.face_facets(f).len() != n - 2 {
                return Err(Error::Polytope(format!("face #{i}: vertices do not share exactly {} facets", n - 2)));
            }
            for e in 0..f.k() {
                let (a, b) = (f.cycle[e], f.cycle[(e + 1) % f.k()]);
                let (fa, fb) = (&self.vertex(a).expect("checked").facets, &self.vertex(b).expect("checked").facets);
                if fa.intersection(fb).count() != n - 1 {
                    return Err(Error::Polytope(format!("face #{i}: {a} and {b} are not joined by an edge")));
                }
            }
        }
        Ok(())
    }
}

/// Parse the `polytope v1` format.
pub fn parse_polytope(text: &str) -> Result<WeightedPolytope> {
    let mut header = false;
    let mut dim = None;
    let mut facets = None;
    let mut p = WeightedPolytope { dim: 0, facet_count: 0, vertices: vec![], angles: BTreeMap::new(), faces2: vec![] };
    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if !header {
            if toks == ["polytope", "v1"] {
                header = true;
                continue;
            }
            return Err(perr(ln, "expected header `polytope v1`"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| perr(ln, format!("expected a number, got `{s}`")));
        match toks[0] {
            "dim" if toks.len() == 2 => dim = Some(num(toks[1])?),
            "facets" if toks.len() == 2 => facets = Some(num(toks[1])?),
            "vertex" => {
                if toks.len() < 3 || toks[2] != "on" {
                    return Err(perr(ln, "expected `vertex <id> on <facets>`"));
                }
                let id = num(toks[1])?;
                let fs = toks[3..].iter().map(|s| num(s)).collect::<Result<BTreeSet<_>>>()?;
                if fs.len() != toks.len() - 3 {
                    return Err(perr(ln, "repeated facet"));
                }
                p.vertices.push(PolyVertex { id, facets: fs });
            }
            "angle" if toks.len() == 5 => {
                let key = (num(toks[1])?, num(toks[2])?, num(toks[3])?);
                let w: Rational = parse_scalar(toks[4]).ok_or_else(|| perr(ln, format!("bad weight `{}`", toks[4])))?;
                if p.angles.insert(key, w).is_some() {
                    return Err(perr(ln, "angle given twice"));
                }
            }
            "face2" => {
                let cycle = toks[1..].iter().map(|s| num(s)).collect::<Result<Vec<_>>>()?;
                p.faces2.push(Face2 { cycle });
            }
            w => return Err(perr(ln, format!("unknown or malformed directive `{w}`"))),
        }
    }
    if !header {
        return Err(Error::Polytope("missing header `polytope v1`".into()));
    }
    p.dim = dim.ok_or_else(|| Error::Polytope("missing `dim`".into()))?;
    p.facet_count = facets.ok_or_else(|| Error::Polytope("missing `facets`".into()))?;
    p.validate()?;
    Ok(p)
}

/// Outcome of the angle-counting check.
#[derive(Debug, Clone, PartialEq)]
pub struct VinbergReport {
    /// First vertex whose angle sum exceeds `C n + D`, with that sum.
    pub vertex_violation: Option<(usize, Rational)>,
    /// First 2-face (index) whose angle sum is below `5 - k`, with that sum.
    pub face_violation: Option<(usize, Rational)>,
    /// Dimension bound, present when both conditions hold.
    pub bound: Option<BoundReport>,
}

impl VinbergReport {
    pub fn passed(&self) -> bool {
        self.vertex_violation.is_none() && self.face_violation.is_none()
    }
}

/// Check both angle conditions; on success bound the dimension.
pub fn vinberg_check(p: &WeightedPolytope, c: &Rational, d: &Rational) -> Result<VinbergReport> {
    p.validate()?;
    let n = p.dim;
    let cap = c.clone() * qi(n as i64) + d.clone();
    let mut vertex_violation = None;
    for v in &p.vertices {
        let fs: Vec<usize> = v.facets.iter().copied().collect();
        let mut sum = Rational::zero();
        for &a in &fs {
            for &b in &fs {
                if a != b {
                    sum += p.weight(v.id, a, b);
                }
            }
        }
        if sum > cap {
            vertex_violation = Some((v.id, sum));
            break;
        }
    }
    let mut face_violation = None;
    for (i, f) in p.faces2.iter().enumerate() {
        let mut sum = Rational::zero();
        for &v in &f.cycle {
            let (a, b) = p.angle_facets(f, v).ok_or_else(|| Error::Polytope(format!("face #{i} is not a 2-face at {v}")))?;
            sum += p.weight(v, a, b) + p.weight(v, b, a);
        }
        if sum < qi(5 - f.k() as i64) {
            face_violation = Some((i, sum));
            break;
        }
    }
    let bound = (vertex_violation.is_none() && face_violation.is_none()).then(|| dimension_bound(n, c, d));
    Ok(VinbergReport { vertex_violation, face_violation, bound })
}

/// `n < 8C + 5 + (1 + 8D/n)` for even `n`, `8C + 5 + (8C + 8D)/(n-1)` for
/// odd `n`; with `C >= 0`, `D = 0` this gives `n < 8C + 6`.
pub fn dimension_bound(n: usize, c: &Rational, d: &Rational) -> BoundReport {
    let nn = qi(n as i64);
    let eight = qi(8);
    let base = eight.clone() * c.clone() + qi(5);
    let value = if n % 2 == 0 {
        base + Rational::one() + eight.clone() * d.clone() / nn.clone()
    } else {
        base + (eight.clone() * c.clone() + eight.clone() * d.clone()) / (nn.clone() - Rational::one())
    };
    let simple = (*c >= Rational::zero() && d.is_zero()).then(|| eight * c.clone() + qi(6));
    let limit = simple.unwrap_or_else(|| value.clone());
    BoundReport {
        formula: "vinberg".into(),
        inputs: vec![("n".into(), nn.clone()), ("C".into(), c.clone()), ("D".into(), d.clone())],
        value: limit.clone(),
        claim: Some(Claim::new(nn, true, limit)),
        notes: vec![format!("parity form: n < {}", crate::scalar::mixed(&value))],
    }
}
