use std::collections::BTreeMap;

use super::program::{Abp, AbpEdge, LinearForm};
use crate::error::{Error, Result};
use crate::families::dyck_table;
use crate::Limits;

/// ABP for balanced words of length `2n` over `types` bracket pairs with
/// nesting depth at most `depth`. Vertices at layer `i` are the bracket
/// stacks (bottom first) that can occur after `i` letters and still be
/// closed in the remaining `2n - i`.
pub fn dyck_abp(types: usize, depth: usize, n: usize, limits: &Limits) -> Result<Abp> {
    if types == 0 {
        return Err(Error::Family("need at least one bracket type".into()));
    }
    let table = dyck_table(types)?;
    let len = 2 * n;
    let mut layers: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(len + 1);
    layers.push(BTreeMap::from([(Vec::new(), 0)]));
    let mut edges = Vec::with_capacity(len);
    let mut total = 1;
    for i in 0..len {
        let room = len - i - 1;
        let mut next: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut moves = Vec::new();
        for (stack, &u) in &layers[i] {
            if stack.len() < depth && stack.len() < room {
                for b in 0..types {
                    let mut s = stack.clone();
                    s.push(b);
                    moves.push((u, s, 2 * b));
                }
            }
            if let Some(&b) = stack.last() {
                let s = stack[..stack.len() - 1].to_vec();
                moves.push((u, s, 2 * b + 1));
            }
        }
        for (_, s, _) in &moves {
            let k = next.len();
            next.entry(s.clone()).or_insert(k);
        }
        // renumber in stack order for a canonical layout
        for (idx, slot) in next.values_mut().enumerate() {
            *slot = idx;
        }
        total += next.len();
        if total > limits.state_budget {
            return Err(Error::StateBudget(limits.state_budget));
        }
        let gap = moves
            .into_iter()
            .map(|(u, s, var)| AbpEdge {
                from: u,
                to: next[&s],
                label: LinearForm::var(crate::Var(var as u32)),
            })
            .collect();
        edges.push(gap);
        layers.push(next);
    }
    let counts = layers.iter().map(BTreeMap::len).collect();
    Abp::new(&table, counts, edges)
}

/// Depth-bounded Dyck ABP over the two pairs `(`/`)` and `[`/`]`.
pub fn bounded_depth_dyck_abp(k: usize, n: usize, limits: &Limits) -> Result<Abp> {
    if k == 0 || n == 0 {
        return Err(Error::Precondition("need k >= 1 and n >= 1".into()));
    }
    dyck_abp(2, k, n, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abp::abp_eval;

    fn strings(k: usize, n: usize) -> Vec<String> {
        let a = bounded_depth_dyck_abp(k, n, &Limits::default()).unwrap();
        let p = abp_eval(&a, &Limits::default()).unwrap();
        let mut v: Vec<String> = p
            .terms()
            .map(|(w, _)| w.letters().iter().map(|&x| p.table().name(x)).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn depth_one() {
        assert_eq!(strings(1, 1), ["()", "[]"]);
        assert_eq!(strings(1, 2), ["()()", "()[]", "[]()", "[][]"]);
    }

    #[test]
    fn vertex_bound() {
        for k in 1..=4 {
            for n in 1..=6 {
                let a = bounded_depth_dyck_abp(k, n, &Limits::default()).unwrap();
                assert!(a.size() <= (2 * n + 1) * (1 << (k + 1)));
            }
        }
    }
}
