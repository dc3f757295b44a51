use std::collections::BTreeMap;

use super::maps::{IProjMap, Image, ProjMap};
use crate::algebra::{exact_rank, ScalarMatrix, Var};
use crate::error::{Error, Result};
use crate::families::{CommutativePoly, TaggedTable};

/// Lifts an indexed projection to a projection between commutative
/// versions: `φ'(y@i) = φ(i, y)`, where a variable image is tagged with its
/// position in the shortened word. Every position must send all its
/// variables to variables or all to scalars (zero fits either).
pub fn transfer(m: &IProjMap) -> Result<ProjMap> {
    let d = m.degree();
    // rank[pos]: position of `pos` among the positions that keep a variable
    let mut rank = vec![0usize];
    let mut kept = 0;
    for pos in 1..=d {
        let imgs: Vec<&Image> = m.source().vars().filter_map(|y| m.get(pos, y)).collect();
        let has_var = imgs.iter().any(|i| i.is_var());
        let has_scalar = imgs.iter().any(|i| matches!(i, Image::Scalar(c) if !c.is_zero()));
        if has_var && has_scalar {
            return Err(Error::MixedPosition { pos });
        }
        if has_var {
            kept += 1;
        }
        rank.push(kept);
    }
    let src = TaggedTable::new(m.source(), d);
    let dst = TaggedTable::new(m.target(), kept);
    let mut out = ProjMap::new(src.table(), dst.table());
    for ((pos, y), img) in m.entries() {
        let img = match img {
            Image::Var(x) => Image::Var(dst.tag(*x, rank[pos])),
            Image::Scalar(c) => Image::Scalar(c.clone()),
        };
        out.set(src.tag(y, pos), img);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitVerdict {
    /// No bipartition of the positions admits a factorization.
    Irreducible,
    /// Positions (1-based) of one side of a factorization.
    Split(Vec<usize>),
}

/// Exhaustive search for a position bipartition `S | S^c` whose coefficient
/// matrix (rows: assignments on `S`, columns: assignments on the rest) has
/// rank 1, which is exactly a factorization `f = g(S) · h(S^c)`.
pub fn set_multilinear_rank1_split(f: &CommutativePoly) -> Result<SplitVerdict> {
    if !f.is_set_multilinear() {
        return Err(Error::NotSetMultilinear);
    }
    if f.poly.is_zero() {
        return Err(Error::Precondition(
            "the zero polynomial has no factorization".into(),
        ));
    }
    let d = f.tags.degree();
    if d > 12 {
        return Err(Error::Precondition(format!("degree {d} exceeds 12")));
    }
    if d < 2 {
        return Ok(SplitVerdict::Irreducible);
    }
    let full = (1u32 << d) - 1;
    // S always contains position 1, so each bipartition is visited once
    for mask in (1..full).filter(|m| m & 1 == 1) {
        let mut rows: BTreeMap<Vec<Var>, usize> = BTreeMap::new();
        let mut cols: BTreeMap<Vec<Var>, usize> = BTreeMap::new();
        let mut cells = Vec::new();
        for (w, c) in f.poly.terms() {
            let (mut r, mut k) = (Vec::new(), Vec::new());
            for (i, &v) in w.letters().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    r.push(v);
                } else {
                    k.push(v);
                }
            }
            let nr = rows.len();
            let ri = *rows.entry(r).or_insert(nr);
            let nc = cols.len();
            let ci = *cols.entry(k).or_insert(nc);
            cells.push((ri, ci, c.clone()));
        }
        let mut mat = ScalarMatrix::zeros(rows.len(), cols.len());
        for (r, c, v) in cells {
            mat.set(r, c, v);
        }
        if exact_rank(&mat) == 1 {
            return Ok(SplitVerdict::Split(
                (0..d).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
            ));
        }
    }
    Ok(SplitVerdict::Irreducible)
}
