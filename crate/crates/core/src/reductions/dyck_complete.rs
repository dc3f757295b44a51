use std::collections::{BTreeMap, BTreeSet};

use super::abp_reduction::AbpReduction;
use super::layered::Layered;
use crate::algebra::{Scalar, Var, Word};
use crate::automata::automaton_to_substitution;
use crate::circuits::{to_bracketed, BracketRole, Circuit, Gate, GateId};
use crate::error::Result;
use crate::families::{pair_table, FamilySpec};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    /// Inside the padding prefix, before the next `{_a`.
    Pad,
    /// Read `{_a`, expecting `}_a`.
    PadOpen(usize),
    /// Must read one bracketed word of this gate.
    Need(GateId),
    /// Read `[_y`, expecting `]_y`.
    InLeaf(Var),
    /// Constant gate: read `(_c`, then `[_z`, then `]_z`.
    ConstOpen(GateId),
    ConstInner(GateId),
    ConstClosed(GateId),
    /// Finished a complete bracketed word.
    Done,
}

/// Bracket variables of each gate in the bracketed alphabet.
#[derive(Default)]
struct Brackets {
    gate: BTreeMap<GateId, (Var, Var)>,
    konst: BTreeMap<GateId, [Var; 4]>,
    var: BTreeMap<Var, (Var, Var)>,
}

/// `c ≤_abp D_{t, 2r+2}` where `2r` is the formal degree of the bracketed
/// circuit and `t` counts its bracket pairs plus `r + 1` padding pairs
/// `{_j }_j`. Monomials of length `2j` are prefixed by
/// `{_1 }_1 ... {_(r-j) }_(r-j) {_0 }_0`. After the padding the automaton
/// walks the circuit: an opening bracket is accepted when its gate is
/// reachable from the current gate through sums (weighted by the number of
/// such paths), a closing `)_g` resumes at the right child of `g`, and the
/// closing bracket of a variable or placeholder emits the variable or the
/// constant. Balance of the target words supplies the stack.
pub fn dyck_completeness_reduction(c: &Circuit, limits: &Limits) -> Result<AbpReduction> {
    let bc = to_bracketed(c)?;
    let btable = bc.table();
    let mut br = Brackets::default();
    for &(o, cl) in bc.pairs() {
        match bc.role(o) {
            BracketRole::GateOpen(g) => {
                br.gate.insert(*g, (o, cl));
            }
            BracketRole::ConstOpen(g) => {
                br.konst.entry(*g).or_insert([o, Var(0), Var(0), cl]);
            }
            BracketRole::PlaceholderOpen(g) => {
                let e = br
                    .konst
                    .get_mut(g)
                    .expect("constant pair precedes its placeholder");
                e[1] = o;
                e[2] = cl;
            }
            BracketRole::VarOpen(y) => {
                br.var.insert(*y, (o, cl));
            }
            _ => unreachable!("pairs list opening brackets first"),
        }
    }
    let r = bc.circuit.formal_degree() / 2;
    let mut pairs: Vec<(String, String)> = bc
        .pairs()
        .iter()
        .map(|&(o, cl)| (btable.name(o).to_string(), btable.name(cl).to_string()))
        .collect();
    let base = pairs.len();
    for j in 0..=r {
        pairs.push((format!("{{_{j}"), format!("}}_{j}")));
    }
    let source = pair_table(&pairs)?;
    let pad = |j: usize| (Var((2 * (base + j)) as u32), Var((2 * (base + j) + 1) as u32));
    let len = 2 * r + 2;
    let mut l = Layered::new(&source, c.table(), len, Key::Pad, Key::Done, limits.state_budget);

    let mut paths: BTreeMap<GateId, Vec<u64>> = BTreeMap::new();
    let one = Scalar::one();
    let empty = Word::empty();
    let mut frontier: BTreeSet<Key> = BTreeSet::from([Key::Pad]);
    for layer in 0..len {
        let mut next = BTreeSet::new();
        for key in &frontier {
            let mut edge = |v: Var, to: Key, coeff: Scalar, out: Word| -> Result<()> {
                l.edge(layer, key, v, &to, coeff, out)?;
                next.insert(to);
                Ok(())
            };
            match key {
                Key::Pad => {
                    let a = layer / 2 + 1;
                    if a <= r {
                        edge(pad(a).0, Key::PadOpen(a), one.clone(), empty.clone())?;
                    }
                    edge(pad(0).0, Key::PadOpen(0), one.clone(), empty.clone())?;
                }
                Key::PadOpen(a) => {
                    let to = if *a == 0 { Key::Need(c.output()) } else { Key::Pad };
                    edge(pad(*a).1, to, one.clone(), empty.clone())?;
                }
                Key::Need(h) => {
                    let counts = paths.entry(*h).or_insert_with(|| c.add_paths_from(*h));
                    let mut by_var: BTreeMap<Var, u64> = BTreeMap::new();
                    for (g, &k) in counts.iter().enumerate() {
                        if k == 0 {
                            continue;
                        }
                        let w = Scalar::from(k as i64);
                        match c.gate(g) {
                            Gate::Add(..) => {}
                            Gate::Mul(left, _) => edge(br.gate[&g].0, Key::Need(*left), w, empty.clone())?,
                            Gate::Const(_) => edge(br.konst[&g][0], Key::ConstOpen(g), w, empty.clone())?,
                            Gate::Input(y) => *by_var.entry(*y).or_default() += k,
                        }
                    }
                    for (y, k) in by_var {
                        edge(
                            br.var[&y].0,
                            Key::InLeaf(y),
                            Scalar::from(k as i64),
                            empty.clone(),
                        )?;
                    }
                }
                Key::InLeaf(y) => edge(br.var[y].1, Key::Done, one.clone(), Word::letter(*y))?,
                Key::ConstOpen(g) => edge(br.konst[g][1], Key::ConstInner(*g), one.clone(), empty.clone())?,
                Key::ConstInner(g) => {
                    let Gate::Const(a) = c.gate(*g) else {
                        unreachable!()
                    };
                    edge(br.konst[g][2], Key::ConstClosed(*g), a.clone(), empty.clone())?;
                }
                Key::ConstClosed(g) => edge(br.konst[g][3], Key::Done, one.clone(), empty.clone())?,
                Key::Done => {
                    for (g, &(_, close)) in &br.gate {
                        let Gate::Mul(_, right) = c.gate(*g) else {
                            unreachable!()
                        };
                        edge(close, Key::Need(*right), one.clone(), empty.clone())?;
                    }
                }
            }
        }
        frontier = next;
    }
    let target = FamilySpec::Dyck { pairs, d: len };
    Ok(AbpReduction::new(automaton_to_substitution(&l.finish())?).labelled("circuit", target))
}
