//! Quasi-Lanner diagrams of type (A) built by adding one white vertex to a
//! connected finite or affine diagram.
//!
//! In a quasi-Lanner set every maximal proper subset is elliptic or connected
//! parabolic, so all smaller proper subsets are elliptic. Removing a non-cut
//! vertex leaves a connected finite or affine diagram; the search therefore
//! runs over those bases and attaches the new vertex pair by pair, pruning
//! with heredity.

use crate::catalog::{enumerate_with, EnumOptions, FamilySpec, Origin, TypeBMode};
use crate::classifier::{classify, is_connected_parabolic, is_elliptic, DiagramClass};
use crate::error::Result;
use crate::raygraph::{Mode, RayKind, RaySet};
use crate::{qi, Rational};
use num_traits::Zero;

/// One quasi-Lanner diagram found by the search. The new vertex is last.
#[derive(Debug, Clone)]
pub struct Augmented {
    pub base: String,
    pub base_spec: FamilySpec,
    pub rs: RaySet,
}

/// Arrow pairs `(new -> u, u -> new)` allowed between the new vertex and a
/// base vertex: weights at most `w`, product at most 4.
fn attachments(w: i64) -> Vec<Option<(i64, i64)>> {
    let mut v = vec![None];
    for a in 1..=w {
        for b in 1..=w {
            if a * b <= 4 {
                v.push(Some((a, b)));
            }
        }
    }
    v
}

fn extend(base: &RaySet, pattern: &[Option<(i64, i64)>]) -> RaySet {
    let b = base.n();
    let k = pattern.len();
    // new vertex placed after the first k base vertices' block
    let mut idx: Vec<usize> = (0..k).collect();
    idx.push(b);
    let mut m = vec![vec![Rational::zero(); k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                m[i][j] = base.m(i, j).clone();
            }
        }
        if let Some((a, c)) = pattern[i] {
            m[k][i] = qi(a);
            m[i][k] = qi(c);
        }
    }
    let mut kinds: Vec<RayKind> = base.kinds()[..k].to_vec();
    kinds.push(RayKind::TypeII);
    let mode = if m.iter().flatten().all(|x| x.is_integer()) { Mode::Cy } else { Mode::General };
    RaySet::new(kinds, vec![], m, mode).expect("augmented set is valid")
}

/// All quasi-Lanner one-vertex augmentations with at most `max_n` vertices.
pub fn augmentations(max_n: usize, max_weight: i64) -> Result<Vec<Augmented>> {
    let mut bases = vec![];
    let opts = EnumOptions { type_b: TypeBMode::Skip };
    enumerate_with(max_n.saturating_sub(1), max_weight, opts, |e| {
        if matches!(e.spec.id.origin(), Origin::Finite | Origin::Affine) && e.rs.n() >= 2 {
            bases.push(e);
        }
    });
    let choices = attachments(max_weight);
    let mut out = vec![];
    for base in bases {
        let b = base.rs.n();
        let mut pattern = vec![];
        search(&base.rs, &choices, &mut pattern, &mut |rs| {
            out.push(Augmented { base: base.spec.to_string(), base_spec: base.spec.clone(), rs });
        }, b)?;
    }
    Ok(out)
}

fn search(
    base: &RaySet,
    choices: &[Option<(i64, i64)>],
    pattern: &mut Vec<Option<(i64, i64)>>,
    emit: &mut impl FnMut(RaySet),
    b: usize,
) -> Result<()> {
    let k = pattern.len();
    if k == b {
        if pattern.iter().all(|p| p.is_none()) {
            return Ok(());
        }
        let rs = extend(base, pattern);
        if classify(&rs)?.class == DiagramClass::QuasiLanner {
            emit(rs);
        }
        return Ok(());
    }
    for c in choices {
        pattern.push(*c);
        // new vertex plus the first k+1 base vertices: size k+2 of b+1
        let size = k + 2;
        let ok = if size == b + 1 {
            true
        } else {
            let rs = extend(base, pattern);
            if size <= b - 1 {
                is_elliptic(&rs)?.0
            } else {
                is_elliptic(&rs)?.0 || is_connected_parabolic(&rs)?.0
            }
        };
        if ok {
            search(base, choices, pattern, emit, b)?;
        }
        pattern.pop();
    }
    Ok(())
}
