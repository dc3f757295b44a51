use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::abp_reduction::AbpReduction;
use super::layered::Layered;
use crate::algebra::{Scalar, Var, VarTable, Word};
use crate::automata::automaton_to_substitution;
use crate::circuits::{is_skew, to_skew_bracketed, Circuit, Gate, GateId, TwinOrigin};
use crate::error::Result;
use crate::families::FamilySpec;
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Pad,
    Need(GateId),
    /// Second half: replays the mirrored symbols.
    Mirror,
}

/// `c ≤_abp PAL_{r+1}` for a skew circuit `c`. Each multiplication by a leaf
/// becomes a twin symbol; a monomial is the sequence of twin symbols along a
/// descent path ending in a terminal leaf, padded on the left with
/// `y_1 ... y_p y0` to length `r + 1` and followed by its mirror image. The
/// first half emits what the left twins carry (constants and left factors),
/// the second half what the right twins carry (right factors).
pub fn pal_vsk_reduction(c: &Circuit, limits: &Limits) -> Result<AbpReduction> {
    let witness = is_skew(c)?;
    let sb = to_skew_bracketed(c, &witness)?;
    // longest descent path, counted in twin symbols
    let mut depth: BTreeMap<GateId, usize> = BTreeMap::new();
    for g in 0..c.len() {
        let d = if let Some(t) = sb.factor_twin(g) {
            let TwinOrigin::Factor { descent, .. } = sb.twins()[t].origin else {
                unreachable!("factor twins record their descent")
            };
            depth.get(&descent).map(|d| d + 1)
        } else if sb.terminal_twin(g).is_some() {
            Some(1)
        } else if let Gate::Add(l, r) = c.gate(g) {
            match (depth.get(l), depth.get(r)) {
                (Some(a), Some(b)) => Some(*a.max(b)),
                (a, b) => a.or(b).copied(),
            }
        } else {
            None
        };
        if let Some(d) = d {
            depth.insert(g, d);
        }
    }
    let r = depth[&c.output()];
    let half = r + 1;
    let mut alphabet: Vec<String> = (0..r).map(|i| format!("y{i}")).collect();
    alphabet.extend(sb.twins().iter().map(|t| t.symbol.clone()));
    let source = Arc::new(VarTable::new(alphabet.iter().cloned())?);
    let y = |i: usize| Var(i as u32);
    let sym = |t: usize| Var((r + t) as u32);
    let len = 2 * half;
    let mut l = Layered::new(
        &source,
        c.table(),
        len,
        Key::Pad,
        Key::Mirror,
        limits.state_budget,
    );

    let mut frontier: BTreeSet<Key> = BTreeSet::from([Key::Pad]);
    for layer in 0..half {
        let mut next = BTreeSet::new();
        for key in &frontier {
            match key {
                Key::Pad => {
                    if layer + 1 < r {
                        l.edge(layer, key, y(layer + 1), &Key::Pad, Scalar::one(), Word::empty())?;
                        next.insert(Key::Pad);
                    }
                    let to = Key::Need(c.output());
                    l.edge(layer, key, y(0), &to, Scalar::one(), Word::empty())?;
                    next.insert(to);
                }
                Key::Need(h) => {
                    for (g, &k) in c.add_paths_from(*h).iter().enumerate() {
                        if k == 0 {
                            continue;
                        }
                        let w = Scalar::from(k as i64);
                        if let Some(t) = sb.factor_twin(g) {
                            let TwinOrigin::Factor { descent, .. } = sb.twins()[t].origin else {
                                unreachable!()
                            };
                            let (a, out) = sb.twin_output(t, true);
                            let to = Key::Need(descent);
                            l.edge(layer, key, sym(t), &to, &w * &a, out)?;
                            next.insert(to);
                        } else if let (Some(t), true) = (sb.terminal_twin(g), layer + 1 == half) {
                            if matches!(c.gate(g), Gate::Input(_) | Gate::Const(_)) {
                                let (a, out) = sb.twin_output(t, true);
                                l.edge(layer, key, sym(t), &Key::Mirror, &w * &a, out)?;
                                next.insert(Key::Mirror);
                            }
                        }
                    }
                }
                Key::Mirror => unreachable!("mirror states start at the middle"),
            }
        }
        frontier = next;
    }
    for layer in half..len {
        for v in source.vars() {
            let (a, out) = if v.index() < r {
                (Scalar::one(), Word::empty())
            } else {
                sb.twin_output(v.index() - r, false)
            };
            l.edge(layer, &Key::Mirror, v, &Key::Mirror, a, out)?;
        }
    }
    let target = FamilySpec::Pal { alphabet, n: half };
    Ok(AbpReduction::new(automaton_to_substitution(&l.finish())?).labelled("circuit", target))
}
