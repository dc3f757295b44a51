//! Lazy word generators. A family is walked as a tree whose edges are
//! letters; callers can prune a subtree as soon as its prefix is known to
//! contribute nothing.

use std::collections::BTreeMap;

use crate::algebra::{NCPoly, Scalar, TableRef, Var, Word};
use crate::error::{Error, Result};
use crate::Limits;

/// Position in a word tree: number of letters read plus generator state.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cursor {
    pub depth: usize,
    pub state: Vec<u32>,
}

impl Cursor {
    pub fn child_with(&self, f: impl FnOnce(&mut Vec<u32>)) -> Cursor {
        let mut state = self.state.clone();
        f(&mut state);
        Cursor {
            depth: self.depth + 1,
            state,
        }
    }
}

pub trait WordTree {
    fn table(&self) -> &TableRef;

    fn root(&self) -> Cursor {
        Cursor::default()
    }

    /// Appends every (letter, child) pair below `c`.
    fn step(&self, c: &Cursor, out: &mut Vec<(Var, Cursor)>);

    /// Coefficient of the word spelled by the path to `c`, if it is a term.
    fn accept(&self, c: &Cursor) -> Option<Scalar>;
}

/// Expands a word tree into its polynomial.
pub fn collect(tree: &dyn WordTree, limits: &Limits) -> Result<NCPoly> {
    let mut out = NCPoly::zero(tree.table());
    let mut word = Vec::new();
    let mut buf = Vec::new();
    walk(tree, &tree.root(), &mut word, &mut buf, &mut |w, c| {
        out.add_term(Word(w.to_vec()), c);
        if out.len() > limits.term_budget {
            Err(Error::TermBudget(limits.term_budget))
        } else {
            Ok(())
        }
    })?;
    Ok(out)
}

fn walk(
    tree: &dyn WordTree,
    c: &Cursor,
    word: &mut Vec<Var>,
    buf: &mut Vec<(Var, Cursor)>,
    emit: &mut dyn FnMut(&[Var], Scalar) -> Result<()>,
) -> Result<()> {
    if let Some(coef) = tree.accept(c) {
        emit(word, coef)?;
    }
    buf.clear();
    tree.step(c, buf);
    let kids = std::mem::take(buf);
    for (v, child) in &kids {
        word.push(*v);
        walk(tree, child, word, buf, emit)?;
        word.pop();
    }
    Ok(())
}

/// Word tree over the support of an explicit polynomial.
#[derive(Clone, Debug)]
pub struct TrieTree {
    table: TableRef,
    children: Vec<BTreeMap<Var, u32>>,
    coeff: Vec<Option<Scalar>>,
}

impl TrieTree {
    pub fn new(p: &NCPoly) -> Self {
        let mut children = vec![BTreeMap::new()];
        let mut coeff = vec![None];
        for (w, c) in p.terms() {
            let mut node = 0usize;
            for v in w.letters() {
                let next = children.len() as u32;
                node = *children[node].entry(*v).or_insert_with(|| next) as usize;
                if node == children.len() {
                    children.push(BTreeMap::new());
                    coeff.push(None);
                }
            }
            coeff[node] = Some(c.clone());
        }
        TrieTree {
            table: p.table().clone(),
            children,
            coeff,
        }
    }

    fn node(c: &Cursor) -> usize {
        c.state.first().copied().unwrap_or(0) as usize
    }
}

impl WordTree for TrieTree {
    fn table(&self) -> &TableRef {
        &self.table
    }

    fn step(&self, c: &Cursor, out: &mut Vec<(Var, Cursor)>) {
        for (&v, &n) in &self.children[Self::node(c)] {
            out.push((
                v,
                Cursor {
                    depth: c.depth + 1,
                    state: vec![n],
                },
            ));
        }
    }

    fn accept(&self, c: &Cursor) -> Option<Scalar> {
        self.coeff[Self::node(c)].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarTable;

    #[test]
    fn trie_roundtrip() {
        let t = VarTable::shared(["a", "b"]);
        let w = |ids: &[u32]| Word(ids.iter().map(|&i| Var(i)).collect());
        let p = NCPoly::from_terms(
            &t,
            [
                (w(&[]), Scalar::from(2)),
                (w(&[0, 1]), Scalar::from(3)),
                (w(&[0]), Scalar::from(-1)),
                (w(&[1, 1, 0]), Scalar::one()),
            ],
        );
        assert_eq!(collect(&TrieTree::new(&p), &Limits::default()).unwrap(), p);
    }
}
