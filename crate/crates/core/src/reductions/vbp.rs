use super::abp_reduction::AbpReduction;
use crate::abp::Abp;
use crate::algebra::{NCPoly, Word};
use crate::automata::MatrixSubstitution;
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::Limits;

/// Polynomials on the paths from each vertex of layer `lo` to each vertex
/// of layer `hi`.
fn layer_block(p: &Abp, lo: usize, hi: usize) -> Vec<Vec<NCPoly>> {
    let t = p.table();
    let layers = p.layers();
    (0..layers[lo])
        .map(|u| {
            let mut row = vec![NCPoly::zero(t); layers[lo]];
            row[u] = NCPoly::one(t);
            for gap in lo..hi {
                let mut next = vec![NCPoly::zero(t); layers[gap + 1]];
                for e in &p.edges()[gap] {
                    if !row[e.from].is_zero() {
                        next[e.to].add_assign_unchecked(&row[e.from].mul_unchecked(&e.label.to_poly(t)));
                    }
                }
                row = next;
            }
            row
        })
        .collect()
}

/// Any ABP-computable `f` reduces to a family `g` through one of its words:
/// the letters of `witness` carry consecutive slices of the ABP (its gaps
/// split as evenly as possible), every other word of `g` dies because
/// states are indexed by position in the witness.
pub fn vbp_trivial_reduction(
    f: &Abp,
    target: &FamilySpec,
    witness: &Word,
    limits: &Limits,
) -> Result<AbpReduction> {
    let m = witness.degree();
    if m == 0 {
        return Err(Error::Precondition("witness must have degree at least 1".into()));
    }
    let g = target.realize(limits)?;
    let c = g.coeff(witness);
    if !c.is_one() {
        return Err(Error::WitnessCoefficient(c.to_string()));
    }
    let depth = f.depth();
    let bound: Vec<usize> = (0..=m).map(|i| i * depth / m).collect();
    let layers = f.layers();
    let mut offset = vec![0usize; m + 2];
    for i in 0..=m {
        offset[i + 1] = offset[i] + layers[bound[i]];
    }
    if offset[m + 1] > limits.state_budget {
        return Err(Error::StateBudget(limits.state_budget));
    }
    let mut out = MatrixSubstitution::new(g.table(), f.table(), offset[m + 1])?;
    for (i, a) in witness.letters().iter().enumerate() {
        let block = layer_block(f, bound[i], bound[i + 1]);
        for (u, row) in block.iter().enumerate() {
            for (v, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    out.accumulate(*a, offset[i] + u, offset[i + 1] + v, p);
                }
            }
        }
    }
    Ok(AbpReduction::new(out).labelled("abp", target))
}
