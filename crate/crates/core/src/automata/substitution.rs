use std::collections::BTreeMap;

use crate::algebra::{same_table, NCPoly, PolyMatrix, Scalar, TableRef, Var};
use crate::error::{Error, Result};
use crate::families::{Cursor, TrieTree, WordTree};
use crate::Limits;

/// One `q x q` matrix per source variable (absent means zero); a source
/// polynomial is evaluated on the matrices and read at `(in_row, out_col)`.
#[derive(Clone, Debug)]
pub struct MatrixSubstitution {
    source: TableRef,
    target: TableRef,
    dim: usize,
    matrices: BTreeMap<Var, PolyMatrix>,
}

/// Sparse row vector of polynomials.
pub type RowVec = BTreeMap<usize, NCPoly>;

impl MatrixSubstitution {
    pub fn new(source: &TableRef, target: &TableRef, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        Ok(MatrixSubstitution {
            source: source.clone(),
            target: target.clone(),
            dim,
            matrices: BTreeMap::new(),
        })
    }

    pub fn source(&self) -> &TableRef {
        &self.source
    }

    pub fn target(&self) -> &TableRef {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn in_row(&self) -> usize {
        0
    }

    pub fn out_col(&self) -> usize {
        self.dim - 1
    }

    pub fn set_matrix(&mut self, v: Var, m: PolyMatrix) -> Result<()> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, m.dim()));
        }
        if !same_table(m.table(), &self.target) {
            return Err(Error::TableMismatch);
        }
        if v.index() >= self.source.len() {
            return Err(Error::UnknownVar(format!("source variable #{}", v.index())));
        }
        if m.is_zero() {
            self.matrices.remove(&v);
        } else {
            self.matrices.insert(v, m);
        }
        Ok(())
    }

    /// Adds `p` to entry `(i, j)` of the matrix for `v`.
    pub fn accumulate(&mut self, v: Var, i: usize, j: usize, p: &NCPoly) {
        let dim = self.dim;
        let target = self.target.clone();
        let m = self
            .matrices
            .entry(v)
            .or_insert_with(|| PolyMatrix::zero(dim, &target));
        m.accumulate(i, j, p);
        if m.is_zero() {
            self.matrices.remove(&v);
        }
    }

    pub fn matrix(&self, v: Var) -> Option<&PolyMatrix> {
        self.matrices.get(&v)
    }

    pub fn matrix_or_zero(&self, v: Var) -> PolyMatrix {
        self.matrices
            .get(&v)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zero(self.dim, &self.target))
    }

    pub fn matrices(&self) -> impl Iterator<Item = (Var, &PolyMatrix)> {
        self.matrices.iter().map(|(v, m)| (*v, m))
    }

    pub fn max_entry_degree(&self) -> i64 {
        self.matrices
            .values()
            .map(PolyMatrix::max_entry_degree)
            .max()
            .unwrap_or(-1)
    }

    pub fn unit_row(&self) -> RowVec {
        BTreeMap::from([(self.in_row(), NCPoly::one(&self.target))])
    }

    /// `row · M_v`.
    pub fn step(&self, row: &RowVec, v: Var) -> RowVec {
        let mut out: RowVec = BTreeMap::new();
        let Some(m) = self.matrices.get(&v) else {
            return out;
        };
        for (&i, p) in row {
            for (j, e) in m.row(i) {
                let prod = p.mul_unchecked(e);
                if prod.is_zero() {
                    continue;
                }
                match out.get_mut(&j) {
                    Some(acc) => {
                        acc.add_assign_unchecked(&prod);
                        if acc.is_zero() {
                            out.remove(&j);
                        }
                    }
                    None => {
                        out.insert(j, prod);
                    }
                }
            }
        }
        out
    }

    /// Entry `(in_row, out_col)` of `g(M)`, walking the support of `g` as a
    /// tree and abandoning any prefix whose row vector vanishes.
    pub fn evaluate_tree(&self, tree: &dyn WordTree, limits: &Limits) -> Result<NCPoly> {
        if !same_table(tree.table(), &self.source) {
            return Err(Error::TableMismatch);
        }
        let mut out = NCPoly::zero(&self.target);
        let mut buf = Vec::new();
        self.walk(tree, &tree.root(), &self.unit_row(), &mut buf, &mut out, limits)?;
        Ok(out)
    }

    fn walk(
        &self,
        tree: &dyn WordTree,
        c: &Cursor,
        row: &RowVec,
        buf: &mut Vec<(Var, Cursor)>,
        out: &mut NCPoly,
        limits: &Limits,
    ) -> Result<()> {
        if let Some(coef) = tree.accept(c) {
            if let Some(p) = row.get(&self.out_col()) {
                out.add_assign_unchecked(&p.scale(&coef));
                if out.len() > limits.term_budget {
                    return Err(Error::TermBudget(limits.term_budget));
                }
            }
        }
        buf.clear();
        tree.step(c, buf);
        let kids = std::mem::take(buf);
        for (v, child) in &kids {
            let next = self.step(row, *v);
            if next.is_empty() {
                continue;
            }
            if next.values().any(|p| p.len() > limits.term_budget) {
                return Err(Error::TermBudget(limits.term_budget));
            }
            self.walk(tree, child, &next, buf, out, limits)?;
        }
        Ok(())
    }

    /// Entry `(in_row, out_col)` of `g(M)` for an explicit polynomial.
    pub fn evaluate(&self, g: &NCPoly, limits: &Limits) -> Result<NCPoly> {
        let g = g.retable(&self.source)?;
        self.evaluate_tree(&TrieTree::new(&g), limits)
    }

    /// Same value computed one term at a time with full matrix products;
    /// slow, used as an independent check.
    pub fn evaluate_termwise(&self, g: &NCPoly) -> Result<NCPoly> {
        let g = g.retable(&self.source)?;
        let mut out = NCPoly::zero(&self.target);
        for (w, c) in g.terms() {
            let mut m = PolyMatrix::identity(self.dim, &self.target);
            for v in w.letters() {
                m = m.mul(&self.matrix_or_zero(*v))?;
            }
            out.add_assign_unchecked(&m.get(self.in_row(), self.out_col()).scale(c));
        }
        Ok(out)
    }

    pub fn scale_matrix(&mut self, v: Var, c: &Scalar) {
        if let Some(m) = self.matrices.get(&v) {
            let m = m.scale(c);
            self.matrices.insert(v, m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{VarTable, Word};

    #[test]
    fn chain_identity() {
        let t = VarTable::shared(["x", "y"]);
        let mut s = MatrixSubstitution::new(&t, &t, 3).unwrap();
        for v in [Var(0), Var(1)] {
            for i in 0..2 {
                s.accumulate(v, i, i + 1, &NCPoly::var(&t, v));
            }
        }
        let w = |ids: &[u32]| Word(ids.iter().map(|&i| Var(i)).collect());
        let g = NCPoly::from_terms(
            &t,
            [
                (w(&[0, 1]), Scalar::from(2)),
                (w(&[1, 1]), Scalar::one()),
                (w(&[0]), Scalar::one()),
            ],
        );
        let lim = Limits::default();
        let expect = g.homogeneous_part(2);
        assert_eq!(s.evaluate(&g, &lim).unwrap(), expect);
        assert_eq!(s.evaluate_termwise(&g).unwrap(), expect);
    }

    #[test]
    fn zero_matrices_kill_everything() {
        let t = VarTable::shared(["x"]);
        let s = MatrixSubstitution::new(&t, &t, 2).unwrap();
        let g = NCPoly::var(&t, Var(0));
        assert!(s.evaluate(&g, &Limits::default()).unwrap().is_zero());
    }
}
