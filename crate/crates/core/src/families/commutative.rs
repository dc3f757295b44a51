use std::sync::Arc;

use crate::algebra::{NCPoly, TableRef, Var, VarTable, Word};
use crate::error::{Error, Result};

/// Position-tagged copy of a base table: `x@i` for every base variable `x`
/// and position `1 <= i <= degree`, stored position-major.
#[derive(Clone, Debug)]
pub struct TaggedTable {
    base: TableRef,
    degree: usize,
    table: TableRef,
}

impl TaggedTable {
    pub fn new(base: &TableRef, degree: usize) -> Self {
        let names = (1..=degree).flat_map(|i| base.names().iter().map(move |x| format!("{x}@{i}")));
        let table = VarTable::new(names).expect("tagged names are distinct");
        TaggedTable {
            base: base.clone(),
            degree,
            table: Arc::new(table),
        }
    }

    pub fn base(&self) -> &TableRef {
        &self.base
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tag(&self, x: Var, pos: usize) -> Var {
        Var(((pos - 1) * self.base.len() + x.index()) as u32)
    }

    /// 1-based position of a tagged variable.
    pub fn position(&self, v: Var) -> usize {
        v.index() / self.base.len() + 1
    }

    pub fn untag(&self, v: Var) -> Var {
        Var((v.index() % self.base.len()) as u32)
    }
}

/// A commutative set-multilinear polynomial stored as sorted words over a
/// tagged table (letters in position order).
#[derive(Clone, Debug)]
pub struct CommutativePoly {
    pub tags: TaggedTable,
    pub poly: NCPoly,
}

/// `x_{j_1} ... x_{j_d} ↦ x_{j_1}@1 ... x_{j_d}@d`.
pub fn commutative_version(f: &NCPoly) -> Result<CommutativePoly> {
    if !f.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let d = f.degree().max(0) as usize;
    let tags = TaggedTable::new(f.table(), d);
    let mut poly = NCPoly::zero(tags.table());
    for (w, c) in f.terms() {
        let img = Word(
            w.letters()
                .iter()
                .enumerate()
                .map(|(i, &x)| tags.tag(x, i + 1))
                .collect(),
        );
        debug_assert!(poly.coeff(&img).is_zero(), "position tags make images distinct");
        poly.add_term(img, c.clone());
    }
    Ok(CommutativePoly { tags, poly })
}

impl CommutativePoly {
    /// Every term uses exactly one variable from each position, in order.
    pub fn is_set_multilinear(&self) -> bool {
        let d = self.tags.degree();
        self.poly.terms().all(|(w, _)| {
            w.degree() == d
                && w.letters()
                    .iter()
                    .enumerate()
                    .all(|(i, &v)| self.tags.position(v) == i + 1)
        })
    }
}
