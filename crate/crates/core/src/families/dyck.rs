use std::sync::Arc;

use super::tree::{collect, Cursor, WordTree};
use crate::algebra::{NCPoly, Scalar, TableRef, Var, VarTable, Word};
use crate::error::{Error, Result};
use crate::Limits;

const DEFAULT_PAIRS: [(&str, &str); 4] = [("(", ")"), ("[", "]"), ("{", "}"), ("<", ">")];

/// Bracket names for `k` pairs: `( ) [ ] { } < >`, then `(_5 )_5` and so on.
pub fn dyck_pairs(k: usize) -> Vec<(String, String)> {
    (0..k)
        .map(|b| match DEFAULT_PAIRS.get(b) {
            Some((o, c)) => (o.to_string(), c.to_string()),
            None => (format!("(_{}", b + 1), format!(")_{}", b + 1)),
        })
        .collect()
}

/// Table with pair `b` stored as variables `2b` (open) and `2b + 1` (close).
pub fn pair_table(pairs: &[(String, String)]) -> Result<TableRef> {
    let mut t = VarTable::default();
    for (o, c) in pairs {
        t.push(o.clone())?;
        t.push(c.clone())?;
    }
    Ok(Arc::new(t))
}

pub fn dyck_table(k: usize) -> Result<TableRef> {
    pair_table(&dyck_pairs(k))
}

/// Balanced words of a fixed length over a pair table, optionally with a
/// nesting-depth bound. Cursor state is the stack of open pair indices.
#[derive(Clone, Debug)]
pub struct DyckTree {
    table: TableRef,
    types: usize,
    len: usize,
    depth: usize,
}

impl DyckTree {
    pub fn new(table: &TableRef, len: usize, depth: Option<usize>) -> Result<Self> {
        if len % 2 == 1 {
            return Err(Error::OddDegree(len));
        }
        if table.len() % 2 == 1 || table.is_empty() {
            return Err(Error::Family("a Dyck table needs open/close pairs".into()));
        }
        Ok(DyckTree {
            table: table.clone(),
            types: table.len() / 2,
            len,
            depth: depth.unwrap_or(len),
        })
    }
}

impl WordTree for DyckTree {
    fn table(&self) -> &TableRef {
        &self.table
    }

    fn step(&self, c: &Cursor, out: &mut Vec<(Var, Cursor)>) {
        if c.depth >= self.len {
            return;
        }
        let room = self.len - c.depth - 1;
        let h = c.state.len();
        if h < self.depth && h < room {
            for b in 0..self.types {
                out.push((Var(2 * b as u32), c.child_with(|s| s.push(b as u32))));
            }
        }
        if let Some(&b) = c.state.last() {
            out.push((
                Var(2 * b + 1),
                c.child_with(|s| {
                    s.pop();
                }),
            ));
        }
    }

    fn accept(&self, c: &Cursor) -> Option<Scalar> {
        (c.depth == self.len && c.state.is_empty()).then(Scalar::one)
    }
}

/// `D_{k,d}`: all balanced words of length `d` over `k` pairs.
pub fn gen_dyck(k: usize, d: usize, limits: &Limits) -> Result<NCPoly> {
    if k == 0 {
        return Err(Error::Family("need k >= 1".into()));
    }
    collect(&DyckTree::new(&dyck_table(k)?, d, None)?, limits)
}

/// Balanced words of length `2n` over `( ) [ ]` with nesting depth at most
/// `k`.
pub fn gen_dyck_depth(k: usize, n: usize, limits: &Limits) -> Result<NCPoly> {
    collect(&DyckTree::new(&dyck_table(2)?, 2 * n, Some(k))?, limits)
}

/// Maximum nesting of a balanced word over a pair table (variable `2b`
/// opens pair `b`, `2b + 1` closes it).
pub fn nesting_depth(w: &Word) -> Result<usize> {
    let mut stack = Vec::new();
    let mut best = 0;
    for v in w.letters() {
        let b = v.0 / 2;
        if v.0 % 2 == 0 {
            stack.push(b);
            best = best.max(stack.len());
        } else if stack.pop() != Some(b) {
            return Err(Error::Unbalanced);
        }
    }
    if stack.is_empty() {
        Ok(best)
    } else {
        Err(Error::Unbalanced)
    }
}

pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(p: &NCPoly) -> Vec<String> {
        let mut v: Vec<String> = p
            .terms()
            .map(|(w, _)| w.letters().iter().map(|&x| p.table().name(x)).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn small_dyck() {
        let lim = Limits::default();
        assert_eq!(strings(&gen_dyck(2, 2, &lim).unwrap()), ["()", "[]"]);
        assert_eq!(strings(&gen_dyck(1, 4, &lim).unwrap()), ["(())", "()()"]);
        assert_eq!(gen_dyck(2, 4, &lim).unwrap().len(), 8);
        assert_eq!(
            gen_dyck(3, 0, &lim).unwrap(),
            NCPoly::one(&dyck_table(3).unwrap())
        );
        assert_eq!(gen_dyck(2, 3, &lim), Err(Error::OddDegree(3)));
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!((0..7).map(catalan).collect::<Vec<_>>(), [1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn depth() {
        let t = dyck_table(2).unwrap();
        let w =
            |s: &str| Word::parse(&s.chars().map(String::from).collect::<Vec<_>>().join(" "), &t).unwrap();
        assert_eq!(nesting_depth(&w("()")).unwrap(), 1);
        assert_eq!(nesting_depth(&w("(())")).unwrap(), 2);
        assert_eq!(nesting_depth(&w("()[]")).unwrap(), 1);
        assert_eq!(nesting_depth(&w("(]")), Err(Error::Unbalanced));
        assert_eq!(gen_dyck_depth(1, 2, &Limits::default()).unwrap().len(), 4);
    }

    #[test]
    fn default_names_extend_past_four() {
        let p = dyck_pairs(5);
        assert_eq!(p[3], ("<".to_string(), ">".to_string()));
        assert_eq!(p[4], ("(_5".to_string(), ")_5".to_string()));
    }
}
