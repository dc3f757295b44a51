//! Small position-driven automata between the Dyck and palindrome families,
//! the Dyck type encoding, the nesting-depth filter and the separation
//! examples.

use std::sync::Arc;

use super::abp_reduction::AbpReduction;
use super::layered::Layered;
use super::maps::{IProjMap, Image};
use crate::algebra::{NCPoly, Scalar, TableRef, Var, VarTable, Word};
use crate::automata::automaton_to_substitution;
use crate::error::{Error, Result};
use crate::families::{binary_table, dyck_table, FamilySpec};

const OPEN_ROUND: Var = Var(0);
const CLOSE_ROUND: Var = Var(1);
const OPEN_SQUARE: Var = Var(2);
const CLOSE_SQUARE: Var = Var(3);

/// Reads `halves` consecutive copies of (opens of length n, closes of length
/// n); `(`/`)` become `x0`, `[`/`]` become `x1`.
fn half_chain(n: usize, halves: usize) -> Result<AbpReduction> {
    let source = dyck_table(2)?;
    let target = binary_table();
    let len = 2 * n * halves;
    let mut l = Layered::new(&source, &target, len, (), (), usize::MAX);
    let (x0, x1) = (Word::letter(Var(0)), Word::letter(Var(1)));
    for layer in 0..len {
        let (a, b) = if (layer / n).is_multiple_of(2) {
            (OPEN_ROUND, OPEN_SQUARE)
        } else {
            (CLOSE_ROUND, CLOSE_SQUARE)
        };
        l.edge(layer, &(), a, &(), Scalar::one(), x0.clone())?;
        l.edge(layer, &(), b, &(), Scalar::one(), x1.clone())?;
    }
    Ok(AbpReduction::new(automaton_to_substitution(&l.finish())?))
}

/// `PAL_n ≤_abp D_{2,2n}` with `2n + 1` states.
pub fn pal_to_d2_reduction(n: usize) -> Result<AbpReduction> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    Ok(half_chain(n, 1)?.labelled(FamilySpec::pal(n), FamilySpec::dyck(2, 2 * n)))
}

/// `PAL²_n ≤_abp D_{2,4n}` with `4n + 1` states.
pub fn palsq_to_d2_reduction(n: usize) -> Result<AbpReduction> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    Ok(half_chain(n, 2)?.labelled(FamilySpec::PalSq { n }, FamilySpec::dyck(2, 4 * n)))
}

/// Fixed-length codes of the `k` bracket types over `( ) [ ]`:
/// `(_i ↦ ( [^i (^(k-i)` and `)_i ↦ )^(k-i) ]^i )`, both of length `k + 1`.
pub fn dk_codes(k: usize) -> Vec<(String, String)> {
    (1..=k)
        .map(|i| {
            let open = format!("({}{}", "[".repeat(i), "(".repeat(k - i));
            let close = format!("{}{})", ")".repeat(k - i), "]".repeat(i));
            (open, close)
        })
        .collect()
}

/// Encodes a word over the `k`-type Dyck table into the two-type table.
pub fn encode_dk(k: usize, w: &Word) -> Result<Word> {
    let src = dyck_table(k)?;
    let two = dyck_table(2)?;
    let codes = dk_codes(k);
    let mut out = Vec::new();
    for v in w.letters() {
        if v.index() >= src.len() {
            return Err(Error::UnknownVar(format!("#{}", v.index())));
        }
        let (o, c) = &codes[v.index() / 2];
        let code = if v.index() % 2 == 0 { o } else { c };
        for ch in code.chars() {
            out.push(two.lookup(&ch.to_string())?);
        }
    }
    Ok(Word(out))
}

/// `D_{k,d} ≤_abp D_{2,d(k+1)}`: a trie automaton decoding each block of
/// `k + 1` letters back to one bracket; words that are not code sequences
/// have no run.
pub fn dk_to_d2_reduction(k: usize, d: usize) -> Result<AbpReduction> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    let source = dyck_table(2)?;
    let target = dyck_table(k)?;
    let block = k + 1;
    let codes: Vec<(String, Var)> = dk_codes(k)
        .into_iter()
        .enumerate()
        .flat_map(|(i, (o, c))| [(o, Var(2 * i as u32)), (c, Var(2 * i as u32 + 1))])
        .collect();
    let mut l = Layered::new(
        &source,
        &target,
        d * block,
        String::new(),
        String::new(),
        usize::MAX,
    );
    let mut prefixes: Vec<String> = codes
        .iter()
        .flat_map(|(c, _)| (0..block).map(move |j| c[..j].to_string()))
        .collect();
    prefixes.sort();
    prefixes.dedup();
    for b in 0..d {
        for p in &prefixes {
            let layer = b * block + p.len();
            for v in source.vars() {
                let next = format!("{p}{}", source.name(v));
                if let Some((_, out)) = codes.iter().find(|(c, _)| *c == next) {
                    l.edge(layer, p, v, &String::new(), Scalar::one(), Word::letter(*out))?;
                } else if codes.iter().any(|(c, _)| c.starts_with(&next)) {
                    l.edge(layer, p, v, &next, Scalar::one(), Word::empty())?;
                }
            }
        }
    }
    Ok(AbpReduction::new(automaton_to_substitution(&l.finish())?)
        .labelled(FamilySpec::dyck(k, d), FamilySpec::dyck(2, d * block)))
}

/// Automaton behind [`dyck_depth_reduction`]: states `(position, excess)`
/// with the excess capped at `k1`, copying every letter.
pub fn depth_filter_automaton(k1: usize, n: usize) -> Result<crate::automata::SubstAutomaton> {
    let t = dyck_table(2)?;
    let mut l = Layered::new(&t, &t, 2 * n, 0usize, 0usize, usize::MAX);
    for layer in 0..2 * n {
        for e in 0..=k1.min(layer) {
            for v in t.vars() {
                let next = if v.index() % 2 == 0 {
                    e + 1
                } else if e > 0 {
                    e - 1
                } else {
                    continue;
                };
                if next <= k1 {
                    l.edge(layer, &e, v, &next, Scalar::one(), Word::letter(v))?;
                }
            }
        }
    }
    Ok(l.finish())
}

/// `D^(k1)_{2,n} ≤_abp D^(k2)_{2,n}` for `k1 ≤ k2 ≤ n`.
pub fn dyck_depth_reduction(k1: usize, k2: usize, n: usize) -> Result<AbpReduction> {
    if !(k1 <= k2 && k2 <= n) {
        return Err(Error::Precondition("need k1 <= k2 <= n".into()));
    }
    let a = depth_filter_automaton(k1, n)?;
    Ok(AbpReduction::new(automaton_to_substitution(&a)?).labelled(
        FamilySpec::DyckDepth { k: k1, n },
        FamilySpec::DyckDepth { k: k2, n },
    ))
}

/// Variables `x1..xn y1..yn`.
pub fn separation_table(n: usize) -> TableRef {
    let names = (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")));
    Arc::new(VarTable::new(names).expect("distinct names"))
}

/// `Π_i (x_i + y_i)`.
pub fn product_of_sums(n: usize) -> NCPoly {
    let t = separation_table(n);
    let mut p = NCPoly::one(&t);
    for i in 0..n {
        let mut s = NCPoly::var(&t, Var(i as u32));
        s.add_term(Word::letter(Var((n + i) as u32)), Scalar::one());
        p = p.mul_unchecked(&s);
    }
    p
}

/// `x1⋯xn + y1⋯yn`.
pub fn two_monomials(n: usize) -> NCPoly {
    let t = separation_table(n);
    let xs = Word((0..n as u32).map(Var).collect());
    let ys = Word((n as u32..2 * n as u32).map(Var).collect());
    NCPoly::from_terms(&t, [(xs, Scalar::one()), (ys, Scalar::one())])
}

/// `(z0 + z1)^n` over `z0, z1`.
pub fn binary_power(n: usize) -> NCPoly {
    let t = VarTable::shared(["z0", "z1"]);
    let mut s = NCPoly::var(&t, Var(0));
    s.add_term(Word::letter(Var(1)), Scalar::one());
    let mut p = NCPoly::one(&t);
    for _ in 0..n {
        p = p.mul_unchecked(&s);
    }
    p
}

/// The `2n`-state automaton `x1⋯xn + y1⋯yn ≤_abp Π(x_i + y_i)`: the first
/// letter picks the x-chain or the y-chain, which then admits only its own
/// variables in order.
pub fn separation_reduction(n: usize) -> Result<AbpReduction> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let t = separation_table(n);
    let mut l = Layered::new(&t, &t, n, 'x', 'x', usize::MAX);
    for chain in ['x', 'y'] {
        let off = if chain == 'x' { 0 } else { n };
        for i in 0..n {
            let from = if i == 0 { 'x' } else { chain };
            let to = if i + 1 == n { 'x' } else { chain };
            let v = Var((off + i) as u32);
            l.edge(i, &from, v, &to, Scalar::one(), Word::letter(v))?;
        }
    }
    let label = |p: NCPoly, name: &str| FamilySpec::explicit(name, p);
    Ok(
        AbpReduction::new(automaton_to_substitution(&l.finish())?).labelled(
            label(two_monomials(n), "two-monomials"),
            label(product_of_sums(n), "product-of-sums"),
        ),
    )
}

/// `φ(i, z0) = x_i`, `φ(i, z1) = y_i`, sending `(z0 + z1)^n` to
/// `Π(x_i + y_i)`.
pub fn separation_iproj(n: usize) -> IProjMap {
    let z = binary_power(0).table().clone();
    let t = separation_table(n);
    let mut m = IProjMap::new(&z, &t, n);
    for i in 1..=n {
        m.set(i, Var(0), Image::Var(Var((i - 1) as u32)));
        m.set(i, Var(1), Image::Var(Var((n + i - 1) as u32)));
    }
    m
}
