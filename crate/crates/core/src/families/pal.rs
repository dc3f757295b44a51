use std::sync::Arc;

use super::tree::{collect, Cursor, WordTree};
use crate::algebra::{NCPoly, Scalar, TableRef, Var, VarTable, Word};
use crate::error::{Error, Result};
use crate::Limits;

pub fn binary_table() -> TableRef {
    VarTable::shared(["x0", "x1"])
}

/// `copies` consecutive factors `w w^R` (palindromes) or `w w` (identity
/// words), each with `w` ranging over all length-`n` words. The cursor
/// state holds the first half of the current factor.
#[derive(Clone, Debug)]
pub struct SquareTree {
    table: TableRef,
    n: usize,
    copies: usize,
    mirrored: bool,
}

impl SquareTree {
    pub fn palindromes(table: &TableRef, n: usize, copies: usize) -> Self {
        SquareTree {
            table: table.clone(),
            n,
            copies,
            mirrored: true,
        }
    }

    pub fn repeats(table: &TableRef, n: usize) -> Self {
        SquareTree {
            table: table.clone(),
            n,
            copies: 1,
            mirrored: false,
        }
    }
}

impl WordTree for SquareTree {
    fn table(&self) -> &TableRef {
        &self.table
    }

    fn step(&self, c: &Cursor, out: &mut Vec<(Var, Cursor)>) {
        let block = 2 * self.n;
        if c.depth >= block * self.copies {
            return;
        }
        let pos = c.depth % block;
        if pos < self.n {
            for v in self.table.vars() {
                out.push((
                    v,
                    c.child_with(|s| {
                        if pos == 0 {
                            s.clear();
                        }
                        s.push(v.0)
                    }),
                ));
            }
        } else {
            let k = pos - self.n;
            let src = if self.mirrored { self.n - 1 - k } else { k };
            out.push((Var(c.state[src]), c.child_with(|_| {})));
        }
    }

    fn accept(&self, c: &Cursor) -> Option<Scalar> {
        (c.depth == 2 * self.n * self.copies).then(Scalar::one)
    }
}

/// `PAL_n = Σ w w^R` over `x0, x1`.
pub fn gen_pal(n: usize, limits: &Limits) -> Result<NCPoly> {
    collect(&SquareTree::palindromes(&binary_table(), n, 1), limits)
}

/// Palindromes over an arbitrary alphabet.
pub fn gen_pal_over(alphabet: &[String], n: usize, limits: &Limits) -> Result<NCPoly> {
    let t = Arc::new(VarTable::new(alphabet.iter().cloned())?);
    collect(&SquareTree::palindromes(&t, n, 1), limits)
}

/// `PAL_n · PAL_n`.
pub fn gen_pal_sq(n: usize, limits: &Limits) -> Result<NCPoly> {
    collect(&SquareTree::palindromes(&binary_table(), n, 2), limits)
}

/// `ID_n = Σ w w`.
pub fn gen_id(n: usize, limits: &Limits) -> Result<NCPoly> {
    collect(&SquareTree::repeats(&binary_table(), n), limits)
}

/// Position-indexed variables `x{b},{i}` for `b ∈ {0,1}`, `i ∈ 1..=n`.
pub fn id_prime_table(n: usize) -> TableRef {
    VarTable::shared((1..=n).flat_map(|i| (0..2).map(move |b| format!("x{b},{i}"))))
}

/// `ID'_n = Σ z_1..z_n z_1..z_n` with `z_i ∈ {x_{0,i}, x_{1,i}}`.
pub fn gen_id_prime(n: usize, limits: &Limits) -> Result<NCPoly> {
    let t = id_prime_table(n);
    let count = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
    if count > limits.term_budget as u128 {
        return Err(Error::TermBudget(limits.term_budget));
    }
    let mut p = NCPoly::zero(&t);
    for bits in 0..(1u64 << n) {
        let half: Vec<Var> = (0..n)
            .map(|i| Var((2 * i + ((bits >> i) & 1) as usize) as u32))
            .collect();
        let w = Word(half.clone()).concat(&Word(half));
        p.add_term(w, Scalar::one());
    }
    Ok(p)
}
