//! Parameterized diagram families with their closed-form classification
//! criteria, and a bounded enumeration over all of them.
//!
//! Vertex order follows the reading order of each figure: left to right,
//! then the branch. `m[i][j]` is the weight of the arrow `i -> j`; unlabeled
//! arrows have weight 1.

use crate::classifier::DiagramClass;
use crate::error::{Error, Result};
use crate::raygraph::{Mode, RayKind, RaySet};
use crate::{qi, Rational};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which part of the catalog a family belongs to; drives the expected shape type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Finite,
    Affine,
    Lanner,
    TypeB,
    TypeC,
    TypeD,
    TypeE,
}

macro_rules! families {
    ($( $id:ident => $name:literal, $origin:ident, $label:literal, [$($p:literal),*] ;)*) => {
        /// Every catalog family.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FamilyId { $($id),* }

        impl FamilyId {
            pub const ALL: &'static [FamilyId] = &[$(FamilyId::$id),*];

            /// ASCII mnemonic used by the CLI.
            pub fn name(self) -> &'static str {
                match self { $(FamilyId::$id => $name),* }
            }

            pub fn origin(self) -> Origin {
                match self { $(FamilyId::$id => Origin::$origin),* }
            }

            /// Human-readable label.
            pub fn label(self) -> &'static str {
                match self { $(FamilyId::$id => $label),* }
            }

            /// Parameter names in order.
            pub fn params(self) -> &'static [&'static str] {
                match self { $(FamilyId::$id => &[$($p),*]),* }
            }

            pub fn from_name(s: &str) -> Option<Self> {
                Self::ALL.iter().copied().find(|f| f.name().eq_ignore_ascii_case(s))
            }
        }
    };
}

families! {
    A => "An", Finite, "A_n", ["n"];
    B => "Bn", Finite, "B_n", ["n"];
    C => "Cn", Finite, "C_n", ["n"];
    D => "Dn", Finite, "D_n", ["n"];
    E6 => "E6", Finite, "E_6", [];
    E7 => "E7", Finite, "E_7", [];
    E8 => "E8", Finite, "E_8", [];
    F4 => "F4", Finite, "F_4", [];
    G2 => "G2", Finite, "G_2", [];
    AffA1 => "At1", Affine, "~A_1(a,b), ab=4", ["a", "b"];
    AffA => "At_n", Affine, "~A_n, n>1", ["n"];
    AffB => "Bt_n", Affine, "~B_n", ["n"];
    AffBC => "BCt_n", Affine, "~BC_n", ["n"];
    AffC => "Ct_n", Affine, "~C_n", ["n"];
    AffBD => "BDt_n", Affine, "~BD_n", ["n"];
    AffCD => "CDt_n", Affine, "~CD_n", ["n"];
    AffD => "Dt_n", Affine, "~D_n", ["n"];
    AffE6 => "Et6", Affine, "~E_6", [];
    AffE7 => "Et7", Affine, "~E_7", [];
    AffE8 => "Et8", Affine, "~E_8", [];
    AffBF4 => "BFt4", Affine, "~BF_4", [];
    AffCF4 => "CFt4", Affine, "~CF_4", [];
    AffAG2 => "AGt2", Affine, "~AG_2", [];
    AffGA2 => "GAt2", Affine, "~GA_2", [];
    Lanner2 => "Lanner2", Lanner, "two vertices, t12 t21 > 4", ["t12", "t21"];
    Lanner3Path => "Lanner3Path", Lanner, "three-vertex path", ["t12", "t21", "t23", "t32"];
    Lanner3Cycle => "Lanner3Cycle", Lanner, "three-vertex cycle", ["t12", "t21", "t23", "t32", "t13", "t31"];
    Lanner4a => "Lanner4a", Lanner, "four-cycle, one 2-arrow", [];
    Lanner4b => "Lanner4b", Lanner, "four-cycle, two parallel 2-arrows", [];
    Lanner4c => "Lanner4c", Lanner, "four-cycle, two opposed 2-arrows", [];
    Lanner5 => "Lanner5", Lanner, "five-cycle, one 2-arrow", [];
    TypeB => "TypeB", TypeB, "hub with single arrows from chains", [];
    TypeC3 => "C3", TypeC, "type (C), three vertices", ["t21", "t13", "t31", "t23", "t32"];
    TypeC4 => "C4", TypeC, "type (C), four vertices", ["t21", "t13", "t31", "t23", "t32", "t34", "t43"];
    TypeCLong => "CChain", TypeC, "type (C), 5 to 7 vertices", ["n", "t21", "tl", "tlr"];
    ADot => "AnDot", TypeD, "A_n^*(k;a,b)", ["n", "k", "a", "b"];
    BDot1 => "BnDot1", TypeD, "B_n^*(k;a,b)_1", ["n", "k", "a", "b"];
    CDot1 => "CnDot1", TypeD, "C_n^*(k;a,b)_1", ["n", "k", "a", "b"];
    BDot2 => "BnDot2", TypeD, "B_n^*(k;a,b)_2", ["n", "k", "a", "b"];
    CDot2 => "CnDot2", TypeD, "C_n^*(k;a,b)_2", ["n", "k", "a", "b"];
    F4Dot1 => "F4Dot1", TypeD, "F_4^*(k;a,b)_1", ["k", "a", "b"];
    F4Dot2 => "F4Dot2", TypeD, "F_4^*(k;a,b)_2", ["k", "a", "b"];
    G2Dot1 => "G2Dot1", TypeD, "G_2^*(k;a,b)_1", ["k", "a", "b"];
    G2Dot2 => "G2Dot2", TypeD, "G_2^*(k;a,b)_2", ["k", "a", "b"];
    Triangle => "Triangle", TypeE, "triangle", ["t12", "t23", "t13", "t31"];
    SpecialTriangle => "SpecialTriangle", TypeE, "special triangle", ["t12", "t23", "t31"];
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Chains admissible in a type-(B) hub configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainKind {
    A,
    B,
    C,
    F4,
    G2,
}

/// One chain of a type-(B) diagram. The chain is laid out in its finite-diagram
/// order (`reversed` flips it) and its first vertex sends a single arrow of
/// weight `weight` to the hub.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSpec {
    pub kind: ChainKind,
    pub len: usize,
    pub reversed: bool,
    pub weight: i64,
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ChainKind::A => "A",
            ChainKind::B => "B",
            ChainKind::C => "C",
            ChainKind::F4 => "F",
            ChainKind::G2 => "G",
        };
        write!(f, "{k}{}{}w{}", self.len, if self.reversed { "r" } else { "" }, self.weight)
    }
}

impl ChainSpec {
    /// Parse `A3w2`, `B2rw1`, `F4w3`.
    pub fn parse(s: &str) -> Option<Self> {
        let kind = match s.chars().next()? {
            'A' => ChainKind::A,
            'B' => ChainKind::B,
            'C' => ChainKind::C,
            'F' => ChainKind::F4,
            'G' => ChainKind::G2,
            _ => return None,
        };
        let rest = &s[1..];
        let (len, rest) = rest.split_at(rest.find(|c: char| !c.is_ascii_digit())?);
        let (reversed, rest) = match rest.strip_prefix('r') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let weight = rest.strip_prefix('w')?.parse().ok()?;
        let c = ChainSpec { kind, len: len.parse().ok()?, reversed, weight };
        c.validate().ok()?;
        Some(c)
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            ChainKind::A => self.len >= 1,
            ChainKind::B | ChainKind::C => self.len >= 2,
            ChainKind::F4 => self.len == 4,
            ChainKind::G2 => self.len == 2,
        };
        if ok && self.weight >= 1 {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("bad chain {self}")))
        }
    }

    fn max_entry(&self) -> i64 {
        let inner = match self.kind {
            ChainKind::A => 1,
            ChainKind::B | ChainKind::C => 2,
            ChainKind::F4 => 2,
            ChainKind::G2 => 3,
        };
        inner.max(self.weight)
    }
}

/// A family with concrete parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub params: BTreeMap<String, Rational>,
    /// Type-(B) chains (empty for other families).
    pub chains: Vec<ChainSpec>,
}

impl FamilySpec {
    pub fn new(id: FamilyId, values: &[i64]) -> Self {
        let params = id.params().iter().zip(values).map(|(k, v)| (k.to_string(), qi(*v))).collect();
        FamilySpec { id, params, chains: vec![] }
    }

    pub fn type_b(chains: Vec<ChainSpec>) -> Self {
        FamilySpec { id: FamilyId::TypeB, params: BTreeMap::new(), chains }
    }

    pub fn get(&self, name: &str) -> Result<Rational> {
        self.params
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidParams(format!("{}: missing parameter `{name}`", self.id)))
    }

    /// Integral parameter.
    pub fn int(&self, name: &str) -> Result<i64> {
        let v = self.get(name)?;
        if v.is_integer() {
            v.to_integer().to_i64().ok_or_else(|| Error::InvalidParams(format!("`{name}` too large")))
        } else {
            Err(Error::InvalidParams(format!("`{name}` must be an integer")))
        }
    }

    fn pos(&self, name: &str) -> Result<Rational> {
        let v = self.get(name)?;
        if v.is_positive() {
            Ok(v)
        } else {
            Err(Error::InvalidParams(format!("`{name}` must be positive")))
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if self.id == FamilyId::TypeB {
            let cs: Vec<String> = self.chains.iter().map(|c| c.to_string()).collect();
            return write!(f, "[{}]", cs.join(","));
        }
        if !self.params.is_empty() {
            let ps: Vec<String> =
                self.id.params().iter().filter_map(|k| self.params.get(*k).map(|v| format!("{k}={v}"))).collect();
            write!(f, "({})", ps.join(","))?;
        }
        Ok(())
    }
}

/// Declarative diagram under construction.
struct Shape {
    kinds: Vec<RayKind>,
    m: Vec<Vec<Rational>>,
}

impl Shape {
    fn white(n: usize) -> Self {
        Shape { kinds: vec![RayKind::TypeII; n], m: vec![vec![Rational::zero(); n]; n] }
    }

    fn both(&mut self, i: usize, j: usize, wij: Rational, wji: Rational) -> &mut Self {
        self.m[i][j] = wij;
        self.m[j][i] = wji;
        self
    }

    fn unit(&mut self, i: usize, j: usize) -> &mut Self {
        self.both(i, j, Rational::one(), Rational::one())
    }

    fn w(&mut self, i: usize, j: usize, wij: i64, wji: i64) -> &mut Self {
        self.both(i, j, qi(wij), qi(wji))
    }

    fn single(&mut self, i: usize, j: usize, w: Rational) -> &mut Self {
        self.m[i][j] = w;
        self
    }

    fn path(&mut self, idx: &[usize]) -> &mut Self {
        for p in idx.windows(2) {
            self.unit(p[0], p[1]);
        }
        self
    }

    fn build(self) -> RaySet {
        let mode = if self.m.iter().flatten().all(|x| x.is_integer()) { Mode::Cy } else { Mode::General };
        RaySet::new(self.kinds, vec![], self.m, mode).expect("catalog shapes satisfy the ray-set invariants")
    }
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg()))
    }
}

fn n_at_least(spec: &FamilySpec, min: i64) -> Result<usize> {
    let n = spec.int("n")?;
    need(n >= min, || format!("{}: n must be >= {min}", spec.id))?;
    Ok(n as usize)
}

fn k_param(spec: &FamilySpec) -> Result<i64> {
    let k = spec.int("k")?;
    need((1..=3).contains(&k), || "k must be 1, 2 or 3".into())?;
    Ok(k)
}

/// Build the ray set of a family instance.
pub fn build_family(spec: &FamilySpec) -> Result<RaySet> {
    use FamilyId::*;
    let rs = match spec.id {
        A => {
            let n = n_at_least(spec, 1)?;
            let mut s = Shape::white(n);
            s.path(&(0..n).collect::<Vec<_>>());
            s.build()
        }
        B | C => {
            let n = n_at_least(spec, 2)?;
            let mut s = Shape::white(n);
            s.path(&(0..n).collect::<Vec<_>>());
            if spec.id == B {
                s.w(1, 0, 2, 1);
            } else {
                s.w(0, 1, 2, 1);
            }
            s.build()
        }
        D => {
            let n = n_at_least(spec, 4)?;
            // fork: top leaf 0, branch 1, bottom leaf 2; chain 3.. hangs off the branch
            let mut s = Shape::white(n);
            s.unit(0, 1).unit(2, 1);
            let mut chain = vec![1];
            chain.extend(3..n);
            s.path(&chain);
            s.build()
        }
        E6 | E7 | E8 => {
            let n = match spec.id {
                E6 => 6,
                E7 => 7,
                _ => 8,
            };
            e_shape(n).build()
        }
        F4 => {
            let mut s = Shape::white(4);
            s.unit(0, 1).w(1, 2, 2, 1).unit(2, 3);
            s.build()
        }
        G2 => {
            let mut s = Shape::white(2);
            s.w(0, 1, 3, 1);
            s.build()
        }
        AffA1 => {
            let (a, b) = (spec.pos("a")?, spec.pos("b")?);
            need(a.clone() * b.clone() == qi(4), || "~A_1 needs ab = 4".into())?;
            let mut s = Shape::white(2);
            s.both(0, 1, a, b);
            s.build()
        }
        AffA => {
            let n = n_at_least(spec, 2)?;
            let mut s = Shape::white(n + 1);
            s.path(&(0..=n).collect::<Vec<_>>()).unit(n, 0);
            s.build()
        }
        AffB | AffBC | AffC => {
            let min = 2;
            let n = n_at_least(spec, min)?;
            let l = n;
            let mut s = Shape::white(n + 1);
            s.path(&(0..=n).collect::<Vec<_>>());
            match spec.id {
                AffB => {
                    s.w(1, 0, 2, 1).w(l - 1, l, 2, 1);
                }
                AffBC => {
                    s.w(1, 0, 2, 1).w(l, l - 1, 2, 1);
                }
                _ => {
                    s.w(0, 1, 2, 1).w(l, l - 1, 2, 1);
                }
            }
            s.build()
        }
        AffBD | AffCD => {
            let n = n_at_least(spec, 3)?;
            // fork 0 (top), 1 (mid), 2 (bottom); chain 3..n-1; end vertex n
            let mut s = Shape::white(n + 1);
            s.unit(0, 1).unit(2, 1);
            let mut chain = vec![1];
            chain.extend(3..n);
            s.path(&chain);
            let ck = *chain.last().unwrap();
            if spec.id == AffBD {
                s.w(ck, n, 2, 1);
            } else {
                s.w(n, ck, 2, 1);
            }
            s.build()
        }
        AffD => {
            let n = n_at_least(spec, 4)?;
            let mut s = Shape::white(n + 1);
            if n == 4 {
                // star: leaf, center, leaf, leaf, leaf
                s.unit(0, 1).unit(2, 1).unit(3, 1).unit(4, 1);
            } else {
                // left fork 0,1,2; chain 3..n-3; right fork n-2 (top), n-1 (mid), n (bottom)
                s.unit(0, 1).unit(2, 1);
                let mut chain = vec![1];
                chain.extend(3..n - 2);
                chain.push(n - 1);
                s.path(&chain);
                s.unit(n - 2, n - 1).unit(n, n - 1);
            }
            s.build()
        }
        AffE6 => {
            // chain 0-1-2-3-4, branch 2-5-6
            let mut s = Shape::white(7);
            s.path(&[0, 1, 2, 3, 4]).path(&[2, 5, 6]);
            s.build()
        }
        AffE7 => {
            // chain 0-1-2-3-5-6-7, pendant 4 on 3
            let mut s = Shape::white(8);
            s.path(&[0, 1, 2, 3, 5, 6, 7]).unit(3, 4);
            s.build()
        }
        AffE8 => e_shape(9).build(),
        AffBF4 => {
            let mut s = Shape::white(5);
            s.unit(0, 1).unit(1, 2).w(2, 3, 2, 1).unit(3, 4);
            s.build()
        }
        AffCF4 => {
            let mut s = Shape::white(5);
            s.unit(0, 1).w(1, 2, 2, 1).unit(2, 3).unit(3, 4);
            s.build()
        }
        AffAG2 => {
            let mut s = Shape::white(3);
            s.unit(0, 1).w(1, 2, 3, 1);
            s.build()
        }
        AffGA2 => {
            let mut s = Shape::white(3);
            s.unit(0, 1).w(1, 2, 1, 3);
            s.build()
        }
        Lanner2 => {
            let mut s = Shape::white(2);
            s.both(0, 1, spec.pos("t12")?, spec.pos("t21")?);
            s.build()
        }
        Lanner3Path => {
            let mut s = Shape::white(3);
            s.both(0, 1, spec.pos("t12")?, spec.pos("t21")?).both(1, 2, spec.pos("t23")?, spec.pos("t32")?);
            s.build()
        }
        Lanner3Cycle => {
            let mut s = Shape::white(3);
            s.both(0, 1, spec.pos("t12")?, spec.pos("t21")?)
                .both(1, 2, spec.pos("t23")?, spec.pos("t32")?)
                .both(0, 2, spec.pos("t13")?, spec.pos("t31")?);
            s.build()
        }
        Lanner4a | Lanner4b | Lanner4c => {
            // 0 top-left, 1 bottom-left, 2 top-right, 3 bottom-right
            let mut s = Shape::white(4);
            s.unit(0, 1).unit(2, 3).w(0, 2, 2, 1);
            match spec.id {
                Lanner4a => s.unit(1, 3),
                Lanner4b => s.w(1, 3, 2, 1),
                _ => s.w(3, 1, 2, 1),
            };
            s.build()
        }
        Lanner5 => {
            // cycle: 0 top-left -> 1 top-right (weight 2), 1-2 bottom-right, 2-3 middle, 3-4 bottom-left, 4-0
            let mut s = Shape::white(5);
            s.w(0, 1, 2, 1).path(&[1, 2, 3, 4, 0]);
            s.build()
        }
        TypeB => build_type_b(&spec.chains)?,
        TypeC3 | TypeC4 | TypeCLong => build_type_c(spec)?,
        ADot | BDot1 | CDot1 | BDot2 | CDot2 | F4Dot1 | F4Dot2 | G2Dot1 | G2Dot2 => build_type_d(spec)?,
        Triangle => {
            let mut s = Shape::white(3);
            s.single(0, 1, spec.pos("t12")?)
                .single(1, 2, spec.pos("t23")?)
                .both(0, 2, spec.pos("t13")?, spec.pos("t31")?);
            s.build()
        }
        SpecialTriangle => {
            let mut s = Shape::white(3);
            s.single(0, 1, spec.pos("t12")?).single(1, 2, spec.pos("t23")?).single(2, 0, spec.pos("t31")?);
            s.build()
        }
    };
    Ok(rs)
}

/// E-shape on `n` vertices: chain v0-v1-v2-v4-..., pendant v3 on the branch v2.
fn e_shape(n: usize) -> Shape {
    let mut s = Shape::white(n);
    let mut chain = vec![0, 1, 2];
    chain.extend(4..n);
    s.path(&chain).unit(2, 3);
    s
}

fn chain_shape(s: &mut Shape, c: &ChainSpec, offset: usize) {
    let l = c.len;
    let idx: Vec<usize> = if c.reversed { (0..l).rev().map(|i| offset + i).collect() } else { (0..l).map(|i| offset + i).collect() };
    // idx[p] = vertex at figure position p
    s.path(&idx);
    match c.kind {
        ChainKind::A => {}
        ChainKind::B => {
            s.w(idx[1], idx[0], 2, 1);
        }
        ChainKind::C => {
            s.w(idx[0], idx[1], 2, 1);
        }
        ChainKind::F4 => {
            s.w(idx[1], idx[2], 2, 1);
        }
        ChainKind::G2 => {
            s.w(idx[0], idx[1], 3, 1);
        }
    }
}

fn build_type_b(chains: &[ChainSpec]) -> Result<RaySet> {
    for c in chains {
        c.validate()?;
    }
    let n = 1 + chains.iter().map(|c| c.len).sum::<usize>();
    let mut s = Shape::white(n);
    let mut off = 1;
    for c in chains {
        chain_shape(&mut s, c, off);
        // the attached vertex is the first vertex in layout order
        s.single(off, 0, qi(c.weight));
        off += c.len;
    }
    Ok(s.build())
}

fn build_type_c(spec: &FamilySpec) -> Result<RaySet> {
    use FamilyId::*;
    // 0 = R1 (bottom), 1 = R2 (top), 2 = R3; chain R3-R4-...
    let (n, t) = match spec.id {
        TypeC3 => (3, ["t21", "t13", "t31", "t23", "t32"].map(|k| spec.pos(k)).into_iter().collect::<Result<Vec<_>>>()?),
        TypeC4 => (4, ["t21", "t13", "t31", "t23", "t32"].map(|k| spec.pos(k)).into_iter().collect::<Result<Vec<_>>>()?),
        _ => {
            let n = n_at_least(spec, 5)?;
            (n, vec![spec.pos("t21")?, qi(1), qi(1), qi(1), qi(1)])
        }
    };
    let mut s = Shape::white(n);
    s.single(1, 0, t[0].clone()).both(0, 2, t[1].clone(), t[2].clone()).both(1, 2, t[3].clone(), t[4].clone());
    if n >= 4 {
        s.path(&(2..n).collect::<Vec<_>>());
        let (a, b) = match spec.id {
            TypeC4 => (spec.pos("t34")?, spec.pos("t43")?),
            _ => (spec.pos("tl")?, spec.pos("tlr")?),
        };
        s.both(n - 2, n - 1, a, b);
    }
    Ok(s.build())
}

fn build_type_d(spec: &FamilySpec) -> Result<RaySet> {
    use FamilyId::*;
    let k = k_param(spec)?;
    let (a, b) = (spec.pos("a")?, spec.pos("b")?);
    let whites = match spec.id {
        ADot => n_at_least(spec, 1)?,
        BDot1 | CDot1 | BDot2 | CDot2 => n_at_least(spec, 2)?,
        F4Dot1 | F4Dot2 => 4,
        _ => 2,
    };
    let n = whites + 1;
    let mut s = Shape::white(n);
    s.kinds[0] = RayKind::TypeI { k: k as u8 };
    s.both(0, 1, a, b);
    s.path(&(1..n).collect::<Vec<_>>());
    let last = n - 1;
    match spec.id {
        BDot1 => {
            s.w(last - 1, last, 2, 1);
        }
        CDot1 => {
            s.w(last, last - 1, 2, 1);
        }
        BDot2 => {
            s.w(2, 1, 2, 1);
        }
        CDot2 => {
            s.w(1, 2, 2, 1);
        }
        F4Dot1 => {
            s.w(2, 3, 2, 1);
        }
        F4Dot2 => {
            s.w(3, 2, 2, 1);
        }
        G2Dot1 => {
            s.w(1, 2, 3, 1);
        }
        G2Dot2 => {
            s.w(2, 1, 3, 1);
        }
        _ => {}
    }
    Ok(s.build())
}

/// Class from the closed-form inequalities. For type-(D) families the bands are
/// `(E, P, upper)`: elliptic below `p`, parabolic at `p`, Lanner strictly
/// between `p` and `upper`, quasi-Lanner up to and including `upper`.
fn band(x: &Rational, p: &Rational, upper: Option<&Rational>) -> Option<DiagramClass> {
    use DiagramClass::*;
    if x < p {
        return Some(Elliptic);
    }
    if x == p {
        return Some(ConnectedParabolic);
    }
    match upper {
        None => Some(Lanner),
        Some(u) if x < u => Some(Lanner),
        Some(u) if x == u => Some(QuasiLanner),
        Some(_) => None,
    }
}

fn no_pred(spec: &FamilySpec) -> Error {
    Error::NoPredicate(spec.to_string())
}

/// Class dictated by the family's closed-form criterion, in exact arithmetic.
pub fn predicted_class(spec: &FamilySpec) -> Result<DiagramClass> {
    use DiagramClass::*;
    use FamilyId::*;
    // validates params as a side effect
    build_family(spec)?;
    let p = |a: &str, b: &str| -> Result<Rational> { Ok(spec.pos(a)? * spec.pos(b)?) };
    let four = qi(4);
    let eight = qi(8);
    let class = match spec.id {
        A | B | C | D | E6 | E7 | E8 | F4 | G2 => Elliptic,
        AffA1 | AffA | AffB | AffBC | AffC | AffBD | AffCD | AffD | AffE6 | AffE7 | AffE8 | AffBF4 | AffCF4
        | AffAG2 | AffGA2 => ConnectedParabolic,
        Lanner2 => {
            let x = p("t12", "t21")?;
            if x > four {
                Lanner
            } else if x == four {
                ConnectedParabolic
            } else {
                Elliptic
            }
        }
        Lanner3Path => {
            let (x, y) = (p("t12", "t21")?, p("t23", "t32")?);
            if x >= four || y >= four {
                return Err(no_pred(spec));
            }
            // determinant 2(4 - x - y)
            let s = x + y;
            if s < four {
                Elliptic
            } else if s == four {
                ConnectedParabolic
            } else {
                Lanner
            }
        }
        Lanner3Cycle => {
            let ps = [p("t12", "t21")?, p("t23", "t32")?, p("t13", "t31")?];
            if ps.iter().any(|x| *x >= four || !x.is_integer()) {
                return Err(no_pred(spec));
            }
            let s = ps.iter().cloned().fold(Rational::zero(), |a, b| a + b);
            if s > qi(3) {
                Lanner
            } else {
                // all products 1: the unit triangle ~A_2
                ConnectedParabolic
            }
        }
        Lanner4a | Lanner4b | Lanner4c | Lanner5 => Lanner,
        TypeB => Elliptic,
        TypeC3 => {
            let (p13, p23) = (p("t13", "t31")?, p("t23", "t32")?);
            let s = c_sum(spec)?;
            if s < eight {
                Elliptic
            } else if s == eight {
                ConnectedParabolic
            } else if p13 <= four && p23 <= four {
                if p13 < four && p23 < four {
                    Lanner
                } else {
                    QuasiLanner
                }
            } else {
                return Err(no_pred(spec));
            }
        }
        TypeC4 => {
            let (p13, p23, p34) = (p("t13", "t31")?, p("t23", "t32")?, p("t34", "t43")?);
            let s = c_sum(spec)?;
            let a = p13 + p34.clone();
            let b = p23 + p34.clone();
            if a > four || b > four || s > eight {
                return Err(no_pred(spec));
            }
            // determinant 2(8 - S - 2 p34)
            let t = s.clone() + qi(2) * p34;
            if t < eight {
                Elliptic
            } else if t == eight {
                ConnectedParabolic
            } else if a < four && b < four && s < eight {
                Lanner
            } else {
                QuasiLanner
            }
        }
        TypeCLong => {
            let n = spec.int("n")?;
            let t21 = spec.int("t21")?;
            let pl = p("tl", "tlr")?;
            let pl = if pl.is_integer() { pl.to_integer().to_i64().unwrap_or(0) } else { 0 };
            match (n, t21, pl) {
                (5, 1, 1) => Elliptic,
                (5, 1, 2) => Lanner,
                (5, 2, 1) | (5, 2, 2) => QuasiLanner,
                // listed as elliptic; the determinant vanishes
                // with positive kernel (2,3,4,3,2,1), see `listing_note`
                (6, 1, 1) => ConnectedParabolic,
                (6, 1, 2) => Lanner,
                (7, 1, 2) => QuasiLanner,
                _ => return Err(no_pred(spec)),
            }
        }
        ADot | BDot1 | CDot1 | BDot2 | CDot2 | F4Dot1 | F4Dot2 | G2Dot1 | G2Dot2 => {
            let k = qi(k_param(spec)?);
            let ab = p("a", "b")?;
            let (par, upper) = d_bands(spec, &k)?;
            band(&ab, &par, upper.as_ref()).ok_or_else(|| no_pred(spec))?
        }
        Triangle => {
            let p13 = p("t13", "t31")?;
            let s = spec.pos("t12")? * spec.pos("t23")? * spec.pos("t31")? + qi(2) * p13.clone();
            if s < eight {
                Elliptic
            } else if s == eight {
                ConnectedParabolic
            } else if p13 < four {
                Lanner
            } else if p13 == four {
                QuasiLanner
            } else {
                return Err(no_pred(spec));
            }
        }
        SpecialTriangle => {
            let s = spec.pos("t12")? * spec.pos("t23")? * spec.pos("t31")?;
            if s < eight {
                Elliptic
            } else if s == eight {
                ConnectedParabolic
            } else {
                Lanner
            }
        }
    };
    Ok(class)
}

fn c_sum(spec: &FamilySpec) -> Result<Rational> {
    let g = |k: &str| spec.pos(k);
    Ok(g("t21")? * g("t13")? * g("t32")? + qi(2) * g("t13")? * g("t31")? + qi(2) * g("t23")? * g("t32")?)
}

/// Parabolic value and quasi-Lanner upper bound of `ab` for type (D).
fn d_bands(spec: &FamilySpec, k: &Rational) -> Result<(Rational, Option<Rational>)> {
    use FamilyId::*;
    let r = |p: i64, q: i64| crate::q(p, q);
    Ok(match spec.id {
        ADot => {
            let n = spec.int("n")?;
            let par = k.clone() * r(n + 1, n);
            let up = if n == 1 { None } else { Some(k.clone() * r(n, n - 1)) };
            (par, up)
        }
        BDot1 | CDot1 => {
            let n = spec.int("n")?;
            (k.clone(), Some(k.clone() * r(n, n - 1)))
        }
        BDot2 | CDot2 => {
            let n = spec.int("n")?;
            (k.clone() * r(2, n), Some(k.clone() * r(2, n - 1)))
        }
        F4Dot1 | F4Dot2 => (k.clone() * r(1, 2), Some(k.clone())),
        // the listed bounds repeat the F_4 row; the two-vertex subset
        // {black, w1} stays elliptic or parabolic up to ab = 2k
        _ => (k.clone() * r(1, 2), Some(k.clone() * qi(2))),
    })
}

/// Where the listed class and the computed class differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListingNote {
    /// Listed class, if one is given.
    pub listed: Option<DiagramClass>,
    pub note: &'static str,
}

/// Entries whose listed label disagrees with the determinant computation.
pub fn listing_note(spec: &FamilySpec) -> Option<ListingNote> {
    use FamilyId::*;
    match spec.id {
        TypeCLong => {
            let (n, t21) = (spec.int("n").ok()?, spec.int("t21").ok()?);
            let pl = spec.pos("tl").ok()? * spec.pos("tlr").ok()?;
            (n == 6 && t21 == 1 && pl == qi(1)).then_some(ListingNote {
                listed: Some(DiagramClass::Elliptic),
                note: "listed as elliptic; det(-M) = 0 with kernel (2,3,4,3,2,1), and the 7-vertex quasi-Lanner row needs this subset parabolic",
            })
        }
        G2Dot1 | G2Dot2 => {
            let k = qi(k_param(spec).ok()?);
            let ab = spec.pos("a").ok()? * spec.pos("b").ok()?;
            let half = k.clone() * crate::q(1, 2);
            if ab <= half {
                return None;
            }
            let listed = if ab < k {
                Some(DiagramClass::Lanner)
            } else if ab == k {
                Some(DiagramClass::QuasiLanner)
            } else {
                None
            };
            let computed = predicted_class(spec).ok()?;
            (listed != Some(computed)).then_some(ListingNote {
                listed,
                note: "listed bounds copy the F_4 row (k >= ab); the two-vertex subset allows ab up to 2k",
            })
        }
        _ => None,
    }
}

/// Vertex weights (the parabolic kernel) of the affine families.
pub fn figure_kernel(spec: &FamilySpec) -> Option<Vec<Rational>> {
    use FamilyId::*;
    let v = |xs: &[i64]| Some(xs.iter().map(|&x| qi(x)).collect());
    match spec.id {
        AffA1 => Some(vec![qi(2), spec.get("b").ok()?]),
        AffA => v(&vec![1; spec.int("n").ok()? as usize + 1]),
        AffB | AffBC | AffC => {
            let n = spec.int("n").ok()? as usize;
            let mut k = vec![2i64; n + 1];
            match spec.id {
                AffB => {
                    k[0] = 1;
                    k[n] = 1;
                }
                AffBC => k[0] = 1,
                _ => k = vec![1; n + 1],
            }
            v(&k)
        }
        AffBD | AffCD => {
            let n = spec.int("n").ok()? as usize;
            let mut k = vec![2i64; n + 1];
            k[0] = 1;
            k[2] = 1;
            k[n] = if spec.id == AffBD { 1 } else { 2 };
            v(&k)
        }
        AffD => {
            let n = spec.int("n").ok()? as usize;
            if n == 4 {
                return v(&[1, 2, 1, 1, 1]);
            }
            let mut k = vec![2i64; n + 1];
            k[0] = 1;
            k[2] = 1;
            k[n - 2] = 1;
            k[n] = 1;
            v(&k)
        }
        AffE6 => v(&[1, 2, 3, 2, 1, 2, 1]),
        AffE7 => v(&[1, 2, 3, 4, 2, 3, 2, 1]),
        AffE8 => v(&[2, 4, 6, 3, 5, 4, 3, 2, 1]),
        AffBF4 => v(&[1, 2, 3, 2, 1]),
        AffCF4 => v(&[2, 4, 3, 2, 1]),
        AffAG2 => v(&[1, 2, 1]),
        AffGA2 => v(&[1, 2, 3]),
        _ => None,
    }
}

/// Vertex count of a spec without building it.
pub fn family_size(spec: &FamilySpec) -> Result<usize> {
    Ok(build_family(spec)?.n())
}

/// One emitted catalog entry.
#[derive(Debug, Clone)]
pub struct Entry {
    pub spec: FamilySpec,
    pub rs: RaySet,
    pub predicted: DiagramClass,
}

/// How type-(B) configurations are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeBMode {
    /// Every chain kind and single-arrow weight.
    Full,
    /// One representative per chain-length multiset (A-chains, weight 1).
    /// Chain kinds and weights do not change which arrows exist.
    GraphOnly,
    Skip,
}

/// Options controlling which families `enumerate_with` visits.
#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    pub type_b: TypeBMode,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { type_b: TypeBMode::Full }
    }
}

/// Every spec with size `<= max_n` and all arrow weights `<= max_weight`,
/// each with its predicted class, in a fixed order.
pub fn enumerate(max_n: usize, max_weight: i64) -> Vec<Entry> {
    let mut out = vec![];
    enumerate_with(max_n, max_weight, EnumOptions::default(), |e| out.push(e));
    out
}

/// Streaming form of [`enumerate`].
pub fn enumerate_with(max_n: usize, max_weight: i64, opts: EnumOptions, mut sink: impl FnMut(Entry)) {
    let w = max_weight;
    let mut emit = |spec: FamilySpec| {
        let Ok(rs) = build_family(&spec) else { return };
        if rs.n() > max_n {
            return;
        }
        if rs.matrix().iter().flatten().any(|x| *x > qi(w)) {
            return;
        }
        if let Ok(predicted) = predicted_class(&spec) {
            sink(Entry { spec, rs, predicted });
        }
    };
    use FamilyId::*;
    let nmax = max_n as i64;
    for id in [A, B, C, D] {
        for n in 1..=nmax {
            emit(FamilySpec::new(id, &[n]));
        }
    }
    for id in [E6, E7, E8, F4, G2] {
        emit(FamilySpec::new(id, &[]));
    }
    for (a, b) in [(1, 4), (2, 2), (4, 1)] {
        emit(FamilySpec::new(AffA1, &[a, b]));
    }
    for id in [AffA, AffB, AffBC, AffC, AffBD, AffCD, AffD] {
        for n in 1..nmax {
            emit(FamilySpec::new(id, &[n]));
        }
    }
    for id in [AffE6, AffE7, AffE8, AffBF4, AffCF4, AffAG2, AffGA2] {
        emit(FamilySpec::new(id, &[]));
    }
    for a in 1..=w {
        for b in 1..=w {
            emit(FamilySpec::new(Lanner2, &[a, b]));
        }
    }
    let pairs: Vec<(i64, i64)> = (1..=w).flat_map(|a| (1..=w).map(move |b| (a, b))).filter(|(a, b)| a * b < 4).collect();
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            emit(FamilySpec::new(Lanner3Path, &[a, b, c, d]));
            for &(e, f) in &pairs {
                emit(FamilySpec::new(Lanner3Cycle, &[a, b, c, d, e, f]));
            }
        }
    }
    for id in [Lanner4a, Lanner4b, Lanner4c, Lanner5] {
        emit(FamilySpec::new(id, &[]));
    }
    if opts.type_b != TypeBMode::Skip {
        for chains in type_b_configs(max_n.saturating_sub(1), w, opts.type_b == TypeBMode::Full) {
            emit(FamilySpec::type_b(chains));
        }
    }
    let le4: Vec<(i64, i64)> = (1..=w).flat_map(|a| (1..=w).map(move |b| (a, b))).filter(|(a, b)| a * b <= 4).collect();
    for t21 in 1..=w {
        for &(t13, t31) in &le4 {
            for &(t23, t32) in &le4 {
                emit(FamilySpec::new(TypeC3, &[t21, t13, t31, t23, t32]));
                for &(t34, t43) in &le4 {
                    emit(FamilySpec::new(TypeC4, &[t21, t13, t31, t23, t32, t34, t43]));
                }
            }
        }
    }
    for n in 5..=nmax {
        for t21 in 1..=w {
            for &(a, b) in &le4 {
                emit(FamilySpec::new(TypeCLong, &[n, t21, a, b]));
            }
        }
    }
    for id in [ADot, BDot1, CDot1, BDot2, CDot2] {
        for n in 1..nmax {
            for k in 1..=3 {
                for a in 1..=w {
                    for b in 1..=w {
                        emit(FamilySpec::new(id, &[n, k, a, b]));
                    }
                }
            }
        }
    }
    for id in [F4Dot1, F4Dot2, G2Dot1, G2Dot2] {
        for k in 1..=3 {
            for a in 1..=w {
                for b in 1..=w {
                    emit(FamilySpec::new(id, &[k, a, b]));
                }
            }
        }
    }
    for t12 in 1..=w {
        for t23 in 1..=w {
            for t13 in 1..=w {
                for t31 in 1..=w {
                    emit(FamilySpec::new(Triangle, &[t12, t23, t13, t31]));
                }
            }
            for t31 in 1..=w {
                emit(FamilySpec::new(SpecialTriangle, &[t12, t23, t31]));
            }
        }
    }
}

/// Chain variants of one length, deduplicated up to relabeling.
fn chain_variants(len: usize) -> Vec<(ChainKind, bool)> {
    use ChainKind::*;
    let mut v = vec![(A, false)];
    if len == 2 {
        // B_2 reversed is C_2 and vice versa
        v.extend([(B, false), (C, false), (G2, false), (G2, true)]);
    } else if len >= 3 {
        v.extend([(B, false), (B, true), (C, false), (C, true)]);
        if len == 4 {
            v.extend([(F4, false), (F4, true)]);
        }
    }
    v
}

/// Multisets of chains with total length `<= budget`, at least one chain.
fn type_b_configs(budget: usize, w: i64, full: bool) -> Vec<Vec<ChainSpec>> {
    let mut items: Vec<ChainSpec> = vec![];
    for len in 1..=budget {
        let variants = if full { chain_variants(len) } else { vec![(ChainKind::A, false)] };
        for (kind, reversed) in variants {
            let ws: Vec<i64> = if full { (1..=w).collect() } else { vec![1] };
            for weight in ws {
                let c = ChainSpec { kind, len, reversed, weight };
                if c.max_entry() <= w {
                    items.push(c);
                }
            }
        }
    }
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(items: &[ChainSpec], start: usize, left: usize, cur: &mut Vec<ChainSpec>, out: &mut Vec<Vec<ChainSpec>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..items.len() {
            if items[i].len <= left {
                cur.push(items[i].clone());
                rec(items, i, left - items[i].len, cur, out);
                cur.pop();
            }
        }
    }
    rec(&items, 0, budget, &mut cur, &mut out);
    out
}

/// Family names with their source, for `catalog list`.
pub fn list() -> Vec<(&'static str, &'static str, Vec<&'static str>)> {
    FamilyId::ALL.iter().map(|f| (f.name(), f.label(), f.params().to_vec())).collect()
}

/// A catalog entry whose predicted and computed classes differ.
#[derive(Debug, Clone)]
pub struct Disagreement {
    pub spec: FamilySpec,
    pub predicted: DiagramClass,
    /// Computed class, or the classifier error.
    pub actual: std::result::Result<DiagramClass, Error>,
}

/// Outcome of [`sweep`].
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub entries: usize,
    /// Entry count per origin, in [`Origin`] order.
    pub by_origin: BTreeMap<Origin, usize>,
    pub disagreements: Vec<Disagreement>,
}

/// Classify every catalog entry and compare with its prediction.
pub fn sweep(max_n: usize, max_weight: i64, opts: EnumOptions) -> SweepReport {
    let mut r = SweepReport::default();
    enumerate_with(max_n, max_weight, opts, |e| {
        r.entries += 1;
        *r.by_origin.entry(e.spec.id.origin()).or_default() += 1;
        let actual = crate::classifier::classify(&e.rs).map(|c| c.class);
        if actual.as_ref() != Ok(&e.predicted) {
            r.disagreements.push(Disagreement { spec: e.spec, predicted: e.predicted, actual });
        }
    });
    r
}
