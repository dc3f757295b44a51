use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::algebra::{lines, Field, NCPoly, Scalar, TableRef, Var, VarTable, Word};
use crate::error::{Error, Result};
use crate::Limits;

/// Variables `x{i},{j}` for `1 <= i, j <= n`, row-major.
pub fn matrix_table(n: usize) -> TableRef {
    VarTable::shared((1..=n).flat_map(|i| (1..=n).map(move |j| format!("x{i},{j}"))))
}

/// The variable `x_{i,j}` (1-based) in [`matrix_table`].
pub fn matrix_var(n: usize, i: usize, j: usize) -> Var {
    Var(((i - 1) * n + (j - 1)) as u32)
}

/// All permutations of `1..=n` in lexicographic order, one-line notation.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `x_{1,σ(1)} ... x_{n,σ(n)}`.
pub fn perm_word(n: usize, sigma: &[usize]) -> Word {
    Word(
        sigma
            .iter()
            .enumerate()
            .map(|(i, &s)| matrix_var(n, i + 1, s))
            .collect(),
    )
}

/// Explicit nonzero weight for every permutation of `1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiTable {
    n: usize,
    values: BTreeMap<Vec<usize>, Scalar>,
}

impl ChiTable {
    /// Default bound on the number of distinct values: `n^3`.
    pub fn default_bound(n: usize) -> usize {
        n.pow(3).max(1)
    }

    pub fn new(n: usize, values: BTreeMap<Vec<usize>, Scalar>, max_distinct: usize) -> Result<Self> {
        for sigma in permutations(n) {
            match values.get(&sigma) {
                None => return Err(Error::Chi(format!("no value for {}", show_perm(&sigma)))),
                Some(v) if v.is_zero() => {
                    return Err(Error::Chi(format!("zero value for {}", show_perm(&sigma))))
                }
                _ => {}
            }
        }
        if values.len() as u128 != factorial(n) {
            return Err(Error::Chi("entries that are not permutations".into()));
        }
        let distinct: BTreeSet<String> = values.values().map(|v| v.to_string()).collect();
        if distinct.len() > max_distinct {
            return Err(Error::Chi(format!(
                "{} distinct values exceed the bound {max_distinct}",
                distinct.len()
            )));
        }
        Ok(ChiTable { n, values })
    }

    pub fn constant(n: usize, c: Scalar) -> Result<Self> {
        let values = permutations(n).into_iter().map(|s| (s, c.clone())).collect();
        Self::new(n, values, 1)
    }

    /// Lines `2 1 -> 3/2`.
    pub fn parse(text: &str, n: usize, field: Field) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, toks) in lines(text) {
            let err = |m: String| Error::parse(lineno, m);
            let arrow = toks
                .iter()
                .position(|t| *t == "->")
                .ok_or_else(|| err("expected `perm -> value`".into()))?;
            if arrow + 2 != toks.len() {
                return Err(err("expected one value after `->`".into()));
            }
            let sigma = toks[..arrow]
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad entry `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            let mut sorted = sigma.clone();
            sorted.sort_unstable();
            if sorted != (1..=n).collect::<Vec<_>>() {
                return Err(err(format!("not a permutation of 1..{n}")));
            }
            let v = field
                .parse(toks[arrow + 1])
                .map_err(|_| err(format!("bad value `{}`", toks[arrow + 1])))?;
            if values.insert(sigma, v).is_some() {
                return Err(err("duplicate permutation".into()));
            }
        }
        Self::new(n, values, Self::default_bound(n))
    }

    pub fn format(&self) -> String {
        let mut out = String::new();
        for (s, v) in &self.values {
            let _ = writeln!(out, "{} -> {v}", show_perm(s));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, sigma: &[usize]) -> &Scalar {
        &self.values[sigma]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.values.iter()
    }

    pub fn in_field(&self, field: Field) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|(s, v)| Ok((s.clone(), field.convert(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::new(self.n, values, usize::MAX)
    }
}

fn show_perm(s: &[usize]) -> String {
    s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn check_budget(terms: u128, limits: &Limits) -> Result<()> {
    if terms > limits.term_budget as u128 {
        Err(Error::TermBudget(limits.term_budget))
    } else {
        Ok(())
    }
}

fn weighted_perm_family(n: usize, reps: usize, chi: Option<&ChiTable>, limits: &Limits) -> Result<NCPoly> {
    if n == 0 {
        return Err(Error::Family("need n >= 1".into()));
    }
    if let Some(c) = chi {
        if c.n() != n {
            return Err(Error::Chi(format!("table is for n = {}, expected {n}", c.n())));
        }
    }
    check_budget(factorial(n), limits)?;
    let t = matrix_table(n);
    let mut p = NCPoly::zero(&t);
    for sigma in permutations(n) {
        let w = perm_word(n, &sigma);
        let w = Word(w.letters().repeat(reps));
        let c = chi.map_or_else(Scalar::one, |c| c.get(&sigma).clone());
        p.add_term(w, c);
    }
    Ok(p)
}

/// `PER_n = Σ_σ x_{1,σ(1)} ... x_{n,σ(n)}`.
pub fn gen_per(n: usize, limits: &Limits) -> Result<NCPoly> {
    weighted_perm_family(n, 1, None, limits)
}

pub fn gen_per_chi(n: usize, chi: &ChiTable, limits: &Limits) -> Result<NCPoly> {
    weighted_perm_family(n, 1, Some(chi), limits)
}

/// Each permutation monomial repeated `n` times.
pub fn gen_per_star(n: usize, limits: &Limits) -> Result<NCPoly> {
    weighted_perm_family(n, n, None, limits)
}

pub fn gen_per_star_chi(n: usize, chi: &ChiTable, limits: &Limits) -> Result<NCPoly> {
    weighted_perm_family(n, n, Some(chi), limits)
}

/// `ID*_n`: every word `x_{1,i_1} ... x_{n,i_n}` (indices independent)
/// repeated `n^2` times.
pub fn gen_id_star(n: usize, limits: &Limits) -> Result<NCPoly> {
    if n == 0 {
        return Err(Error::Family("need n >= 1".into()));
    }
    check_budget((n as u128).checked_pow(n as u32).unwrap_or(u128::MAX), limits)?;
    let t = matrix_table(n);
    let mut p = NCPoly::zero(&t);
    let mut idx = vec![1usize; n];
    loop {
        let w = perm_word(n, &idx);
        p.add_term(Word(w.letters().repeat(n * n)), Scalar::one());
        let Some(k) = (0..n).rev().find(|&k| idx[k] < n) else {
            return Ok(p);
        };
        idx[k] += 1;
        for x in &mut idx[k + 1..] {
            *x = 1;
        }
    }
}
