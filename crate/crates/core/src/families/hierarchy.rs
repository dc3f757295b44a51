use std::sync::Arc;

use super::dyck::{dyck_pairs, gen_dyck};
use super::pal::gen_id;
use crate::algebra::{NCPoly, TableRef, Var, VarTable, Word};
use crate::error::{Error, Result};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Dyck,
    Id,
}

impl FactorKind {
    fn width(self) -> usize {
        match self {
            FactorKind::Dyck => 4,
            FactorKind::Id => 2,
        }
    }
}

/// Factor sequence: `ID` for `i = 1`, otherwise `(D_2 · ID)` repeated
/// `i - 1` times.
pub fn hierarchy_factors(i: usize) -> Vec<FactorKind> {
    if i <= 1 {
        vec![FactorKind::Id]
    } else {
        [FactorKind::Dyck, FactorKind::Id].repeat(i - 1)
    }
}

/// Factor `p` (1-based) gets its own copies `(#p )#p [#p ]#p` or
/// `x0#p x1#p`.
pub fn hierarchy_table(i: usize) -> TableRef {
    let mut t = VarTable::default();
    for (k, f) in hierarchy_factors(i).into_iter().enumerate() {
        let p = k + 1;
        let base: Vec<String> = match f {
            FactorKind::Dyck => dyck_pairs(2).into_iter().flat_map(|(o, c)| [o, c]).collect(),
            FactorKind::Id => vec!["x0".into(), "x1".into()],
        };
        for name in base {
            t.push(format!("{name}#{p}")).expect("fresh names");
        }
    }
    Arc::new(t)
}

/// First variable of each factor's copy.
pub fn factor_offsets(i: usize) -> Vec<usize> {
    hierarchy_factors(i)
        .iter()
        .scan(0, |acc, f| {
            let o = *acc;
            *acc += f.width();
            Some(o)
        })
        .collect()
}

pub fn gen_hierarchy(i: usize, n: usize, limits: &Limits) -> Result<NCPoly> {
    if i == 0 || n == 0 {
        return Err(Error::Family("need i >= 1 and n >= 1".into()));
    }
    let t = hierarchy_table(i);
    let dyck = gen_dyck(2, 2 * n, limits)?;
    let id = gen_id(n, limits)?;
    let mut acc = NCPoly::one(&t);
    for (f, off) in hierarchy_factors(i).into_iter().zip(factor_offsets(i)) {
        let base = match f {
            FactorKind::Dyck => &dyck,
            FactorKind::Id => &id,
        };
        let shifted = NCPoly::from_terms(
            &t,
            base.terms().map(|(w, c)| {
                (
                    Word(w.letters().iter().map(|v| Var(v.0 + off as u32)).collect()),
                    c.clone(),
                )
            }),
        );
        let terms = acc.len() as u128 * shifted.len() as u128;
        if terms > limits.term_budget as u128 {
            return Err(Error::TermBudget(limits.term_budget));
        }
        acc = acc.mul(&shifted)?;
    }
    Ok(acc)
}
