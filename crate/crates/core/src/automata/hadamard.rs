use crate::abp::{transition_matrices, Abp};
use crate::algebra::{NCPoly, PolyMatrix, TableRef, Word};
use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::Limits;

/// Matrices `M'_x(i, j) = M_x(i, j) · x` over `table`, one per variable of
/// `table` (matched to the ABP's variables by name).
fn attached_matrices(table: &TableRef, g: &Abp) -> Result<Vec<PolyMatrix>> {
    if !g.is_homogeneous() {
        return Err(Error::AffineLabel);
    }
    let mats = transition_matrices(g)?;
    let q = g.size();
    Ok(table
        .vars()
        .map(|x| {
            let mut m = PolyMatrix::zero(q, table);
            if let Some(gx) = g.table().get(table.name(x)) {
                if let Some(sm) = mats.get(&gx) {
                    for i in 0..q {
                        for j in 0..q {
                            let c = sm.get(i, j);
                            if !c.is_zero() {
                                m.set(i, j, NCPoly::monomial(table, Word::letter(x), c.clone()));
                            }
                        }
                    }
                }
            }
            m
        })
        .collect())
}

/// `Σ_w f(w) g(w) w` with `f` given by a circuit, by evaluating the circuit
/// on the attached transition matrices of `g` and reading the
/// source-to-sink entry.
pub fn hadamard_circuit(f: &Circuit, g: &Abp, limits: &Limits) -> Result<NCPoly> {
    let t = f.table();
    let mats = attached_matrices(t, g)?;
    let q = g.size();
    let live = f.reachable();
    let mut vals: Vec<Option<PolyMatrix>> = vec![None; f.len()];
    for (id, gate) in f.gates().iter().enumerate() {
        if !live[id] {
            continue;
        }
        let get = |k: usize| vals[k].as_ref().expect("children first");
        let m = match gate {
            Gate::Input(x) => mats[x.index()].clone(),
            Gate::Const(a) => PolyMatrix::identity(q, t).scale(a),
            Gate::Add(l, r) => get(*l).add(get(*r))?,
            Gate::Mul(l, r) => get(*l).mul(get(*r))?,
        };
        if m.entries().any(|(_, _, p)| p.len() > limits.term_budget) {
            return Err(Error::TermBudget(limits.term_budget));
        }
        vals[id] = Some(m);
    }
    let out = vals[f.output()].take().expect("output evaluated");
    Ok(out.get(0, q - 1))
}

/// Same product with `f` given explicitly, evaluated term by term.
pub fn hadamard_poly(f: &NCPoly, g: &Abp) -> Result<NCPoly> {
    let t = f.table();
    let mats = attached_matrices(t, g)?;
    let q = g.size();
    let mut out = NCPoly::zero(t);
    for (w, c) in f.terms() {
        let mut row: Vec<NCPoly> = vec![NCPoly::zero(t); q];
        row[0] = NCPoly::constant(t, c.clone());
        for x in w.letters() {
            let m = &mats[x.index()];
            let mut next = vec![NCPoly::zero(t); q];
            for (i, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for (j, e) in m.row(i) {
                    next[j].add_assign_unchecked(&p.mul_unchecked(e));
                }
            }
            row = next;
        }
        out.add_assign_unchecked(&row[q - 1]);
    }
    Ok(out)
}

pub enum HadamardInput<'a> {
    Circuit(&'a Circuit),
    Poly(&'a NCPoly),
}

pub fn hadamard_via_matrices(f: HadamardInput<'_>, g: &Abp, limits: &Limits) -> Result<NCPoly> {
    match f {
        HadamardInput::Circuit(c) => hadamard_circuit(c, g, limits),
        HadamardInput::Poly(p) => hadamard_poly(p, g),
    }
}
