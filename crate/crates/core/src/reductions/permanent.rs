use super::abp_reduction::AbpReduction;
use super::layered::Layered;
use super::maps::{IProjMap, Image};
use crate::algebra::{Field, Scalar, Word};
use crate::automata::automaton_to_substitution;
use crate::error::{Error, Result};
use crate::families::{matrix_table, matrix_var, ChiTable, FamilySpec};
use crate::Limits;

/// `PER_n ≤_abp ID*_n`.
pub fn per_to_idstar_reduction(n: usize, limits: &Limits) -> Result<AbpReduction> {
    per_to_idstar_with(n, true, limits)
}

/// Reads `n²` blocks of `n` letters. Block `(j, k)` remembers the column
/// read at position `min(j, k)` and, when `check_distinct` is set, has no
/// transition if the column at position `max(j, k)` repeats it. Letters of
/// the first block are copied, later blocks emit the empty word.
pub fn per_to_idstar_with(n: usize, check_distinct: bool, limits: &Limits) -> Result<AbpReduction> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let t = matrix_table(n);
    let len = n.pow(3);
    let mut l: Layered<Option<usize>> = Layered::new(&t, &t, len, None, None, limits.state_budget);
    for b in 0..n * n {
        let (j, k) = (b / n + 1, b % n + 1);
        let (lo, hi) = (j.min(k), j.max(k));
        for p in 1..=n {
            let layer = b * n + p - 1;
            let keys: Vec<Option<usize>> = if p > lo && p <= hi && lo != hi {
                (1..=n).map(Some).collect()
            } else {
                vec![None]
            };
            for key in keys {
                for c in 1..=n {
                    let next = if lo == hi {
                        None
                    } else if p == lo {
                        Some(c)
                    } else if p == hi {
                        if check_distinct && key == Some(c) {
                            continue;
                        }
                        None
                    } else {
                        key
                    };
                    let v = matrix_var(n, p, c);
                    let out = if b == 0 { Word::letter(v) } else { Word::empty() };
                    l.edge(layer, &key, v, &next, Scalar::one(), out)?;
                }
            }
        }
    }
    Ok(AbpReduction::new(automaton_to_substitution(&l.finish())?)
        .labelled(FamilySpec::Per { n }, FamilySpec::IdStar { n }))
}

/// `PER_n ≤_abp PER*^χ_n` over `field`. States in the first block hold the
/// permutation prefix, later states the whole permutation; the last letter
/// carries `1/χ(σ)`.
pub fn per_to_perstar_chi_reduction(
    n: usize,
    chi: &ChiTable,
    field: Field,
    limits: &Limits,
) -> Result<AbpReduction> {
    if n == 0 || chi.n() != n {
        return Err(Error::Precondition("χ table size must match n >= 1".into()));
    }
    let chi = chi.in_field(field)?;
    let t = matrix_table(n);
    let len = n * n;
    let mut l: Layered<Vec<usize>> = Layered::new(&t, &t, len, vec![], vec![], limits.state_budget);
    // first block: extend the prefix by an unused column
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for p in 1..=n {
        let mut next_frontier = Vec::new();
        for prefix in &frontier {
            for c in (1..=n).filter(|c| !prefix.contains(c)) {
                let mut next = prefix.clone();
                next.push(c);
                let v = matrix_var(n, p, c);
                let (coeff, key) = if len == p {
                    (inverse(&chi, &next)?, vec![])
                } else {
                    (Scalar::one(), next.clone())
                };
                l.edge(p - 1, prefix, v, &key, coeff, Word::letter(v))?;
                next_frontier.push(next);
            }
        }
        frontier = next_frontier;
    }
    // later blocks: replay σ, emitting nothing
    for sigma in &frontier {
        for layer in n..len {
            let p = layer % n + 1;
            let v = matrix_var(n, p, sigma[p - 1]);
            if layer + 1 == len {
                l.edge(layer, sigma, v, &vec![], inverse(&chi, sigma)?, Word::empty())?;
            } else {
                l.edge(layer, sigma, v, sigma, Scalar::one(), Word::empty())?;
            }
        }
    }
    let chi_label = FamilySpec::PerStarChi {
        n,
        chi: chi.clone(),
        source: "inline".into(),
    };
    Ok(AbpReduction::new(automaton_to_substitution(&l.finish())?).labelled(FamilySpec::Per { n }, chi_label))
}

fn inverse(chi: &ChiTable, sigma: &[usize]) -> Result<Scalar> {
    chi.get(sigma)
        .inverse()
        .map_err(|_| Error::NotInvertible(format!("χ{sigma:?} = {}", chi.get(sigma))))
}

/// `PER_n ≤_iproj PER*_n`: identity on the first `n` positions, `1`
/// afterwards.
pub fn per_to_perstar_iproj(n: usize) -> IProjMap {
    let t = matrix_table(n);
    let mut m = IProjMap::new(&t, &t, n * n);
    for pos in 1..=n * n {
        for v in t.vars() {
            let img = if pos <= n {
                Image::Var(v)
            } else {
                Image::Scalar(Scalar::one())
            };
            m.set(pos, v, img);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_id_star, gen_per, gen_per_star, gen_per_star_chi, permutations};
    use crate::reductions::apply_iproj;
    use std::collections::BTreeMap;

    #[test]
    fn idstar_blocks_keep_permutations() {
        let lim = Limits::default();
        let g = gen_id_star(2, &lim).unwrap();
        let r = per_to_idstar_reduction(2, &lim).unwrap();
        assert_eq!(r.apply(&g, &lim).unwrap(), gen_per(2, &lim).unwrap());
        let loose = per_to_idstar_with(2, false, &lim).unwrap();
        assert_eq!(loose.apply(&g, &lim).unwrap().len(), 4);
    }

    #[test]
    fn chi_weights_cancel() {
        let lim = Limits::default();
        let mut vals = BTreeMap::new();
        for (sigma, c) in permutations(2).into_iter().zip([2, 3]) {
            vals.insert(sigma, Scalar::from(c));
        }
        let chi = ChiTable::new(2, vals, 8).unwrap();
        let r = per_to_perstar_chi_reduction(2, &chi, Field::Rational, &lim).unwrap();
        let g = gen_per_star_chi(2, &chi, &lim).unwrap();
        assert_eq!(r.apply(&g, &lim).unwrap(), gen_per(2, &lim).unwrap());
    }

    #[test]
    fn chi_zero_in_small_field() {
        let lim = Limits::default();
        let chi = ChiTable::constant(2, Scalar::from(5)).unwrap();
        let f5 = Field::prime(5).unwrap();
        assert!(per_to_perstar_chi_reduction(2, &chi, f5, &lim).is_err());
    }

    #[test]
    fn perstar_projection() {
        let lim = Limits::default();
        let m = per_to_perstar_iproj(2);
        assert_eq!(
            apply_iproj(&m, &gen_per_star(2, &lim).unwrap()).unwrap(),
            gen_per(2, &lim).unwrap()
        );
    }
}
