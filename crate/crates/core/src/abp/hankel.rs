use std::collections::BTreeMap;

use crate::algebra::{exact_rank, NCPoly, Scalar, ScalarMatrix, Word};
use crate::error::{Error, Result};

/// Coefficient matrix at a cut: rows are the length-`cut` prefixes occurring
/// in the support, columns the matching suffixes, entry `(u, v)` = `f(uv)`.
#[derive(Clone, Debug)]
pub struct HankelBlock {
    pub cut: usize,
    pub rows: Vec<Word>,
    pub cols: Vec<Word>,
    pub matrix: ScalarMatrix,
}

pub fn hankel_block(f: &NCPoly, cut: usize) -> Result<HankelBlock> {
    if !f.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let d = f.degree().max(0) as usize;
    if cut > d && !f.is_zero() {
        return Err(Error::Precondition(format!("cut {cut} exceeds degree {d}")));
    }
    let mut rows: BTreeMap<Word, usize> = BTreeMap::new();
    let mut cols: BTreeMap<Word, usize> = BTreeMap::new();
    for (w, _) in f.terms() {
        let (u, v) = w.letters().split_at(cut);
        rows.entry(Word(u.to_vec())).or_insert(0);
        cols.entry(Word(v.to_vec())).or_insert(0);
    }
    for (i, slot) in rows.values_mut().enumerate() {
        *slot = i;
    }
    for (i, slot) in cols.values_mut().enumerate() {
        *slot = i;
    }
    let mut m = ScalarMatrix::zeros(rows.len(), cols.len());
    for (w, c) in f.terms() {
        let (u, v) = w.letters().split_at(cut);
        let (i, j) = (rows[&Word(u.to_vec())], cols[&Word(v.to_vec())]);
        m.set(i, j, c.clone());
    }
    Ok(HankelBlock {
        cut,
        rows: rows.into_keys().collect(),
        cols: cols.into_keys().collect(),
        matrix: m,
    })
}

pub fn hankel_rank(f: &NCPoly, cut: usize) -> Result<usize> {
    Ok(exact_rank(&hankel_block(f, cut)?.matrix))
}

impl HankelBlock {
    pub fn entry(&self, u: &Word, v: &Word) -> Scalar {
        match (self.rows.binary_search(u), self.cols.binary_search(v)) {
            (Ok(i), Ok(j)) => self.matrix.get(i, j).clone(),
            _ => Scalar::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Var, VarTable};

    fn w(ids: &[u32]) -> Word {
        Word(ids.iter().map(|&i| Var(i)).collect())
    }

    #[test]
    fn one_nonzero_row() {
        let t = VarTable::shared(["x0", "x1"]);
        let f = NCPoly::from_terms(&t, [(w(&[0, 0]), Scalar::one()), (w(&[0, 1]), Scalar::one())]);
        assert_eq!(hankel_rank(&f, 1).unwrap(), 1);
        assert_eq!(hankel_rank(&f, 0).unwrap(), 1);
        assert_eq!(hankel_rank(&f, 2).unwrap(), 1);
    }

    #[test]
    fn pal2_middle_block_is_a_permutation() {
        let t = VarTable::shared(["x0", "x1"]);
        let mut f = NCPoly::zero(&t);
        for a in 0..2 {
            for b in 0..2 {
                f.add_term(w(&[a, b, b, a]), Scalar::one());
            }
        }
        let h = hankel_block(&f, 2).unwrap();
        assert_eq!(h.entry(&w(&[0, 1]), &w(&[1, 0])), Scalar::one());
        assert_eq!(h.entry(&w(&[0, 1]), &w(&[0, 1])), Scalar::zero());
        assert_eq!(exact_rank(&h.matrix), 4);
    }

    #[test]
    fn non_homogeneous_rejected() {
        let t = VarTable::shared(["x0"]);
        let f = NCPoly::from_terms(&t, [(w(&[0]), Scalar::one()), (w(&[0, 0]), Scalar::one())]);
        assert_eq!(hankel_rank(&f, 1), Err(Error::NonHomogeneous));
    }
}
