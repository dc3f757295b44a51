use std::collections::BTreeMap;

use crate::algebra::{NCPoly, Scalar, ScalarMatrix, TableRef, Var, Word};
use crate::error::{Error, Result};
use crate::Limits;

/// `Σ c_x · x + constant`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearForm {
    coeffs: BTreeMap<Var, Scalar>,
    constant: Scalar,
}

impl LinearForm {
    pub fn new() -> Self {
        LinearForm {
            coeffs: BTreeMap::new(),
            constant: Scalar::zero(),
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(v, Scalar::one())
    }

    pub fn term(v: Var, c: Scalar) -> Self {
        let mut f = Self::new();
        f.add_term(v, c);
        f
    }

    pub fn constant_form(c: Scalar) -> Self {
        LinearForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn add_term(&mut self, v: Var, c: Scalar) {
        let s = self.coeffs.get(&v).map_or(c.clone(), |old| old + &c);
        if s.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, s);
        }
    }

    pub fn add_constant(&mut self, c: &Scalar) {
        self.constant = &self.constant + c;
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (Var, &Scalar)> {
        self.coeffs.iter().map(|(v, c)| (*v, c))
    }

    pub fn coeff(&self, v: Var) -> Scalar {
        self.coeffs.get(&v).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant(&self) -> &Scalar {
        &self.constant
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn to_poly(&self, table: &TableRef) -> NCPoly {
        let mut p = NCPoly::constant(table, self.constant.clone());
        for (v, c) in &self.coeffs {
            p.add_term(Word::letter(*v), c.clone());
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbpEdge {
    pub from: usize,
    pub to: usize,
    pub label: LinearForm,
}

/// Layered branching program. Layer 0 holds the source, the last layer the
/// sink; `edges[i]` connects layer `i` to layer `i + 1`.
#[derive(Clone, Debug)]
pub struct Abp {
    table: TableRef,
    layers: Vec<usize>,
    edges: Vec<Vec<AbpEdge>>,
}

impl Abp {
    pub fn new(table: &TableRef, layers: Vec<usize>, edges: Vec<Vec<AbpEdge>>) -> Result<Self> {
        if layers.len() < 2 {
            return Err(Error::Precondition("an ABP needs at least two layers".into()));
        }
        if layers[0] != 1 || layers[layers.len() - 1] != 1 {
            return Err(Error::Precondition(
                "first and last layers must have exactly one vertex".into(),
            ));
        }
        if edges.len() != layers.len() - 1 {
            return Err(Error::Precondition(format!(
                "{} layers need {} edge gaps, found {}",
                layers.len(),
                layers.len() - 1,
                edges.len()
            )));
        }
        for (gap, es) in edges.iter().enumerate() {
            for e in es {
                if e.from >= layers[gap] || e.to >= layers[gap + 1] {
                    return Err(Error::Precondition(format!(
                        "edge {}->{} out of range in gap {gap}",
                        e.from, e.to
                    )));
                }
                if e.label.coeffs().any(|(v, _)| v.index() >= table.len()) {
                    return Err(Error::UnknownVar(format!("in gap {gap}")));
                }
            }
        }
        Ok(Abp {
            table: table.clone(),
            layers,
            edges,
        })
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn edges(&self) -> &[Vec<AbpEdge>] {
        &self.edges
    }

    /// Number of edge gaps; the degree of the computed polynomial when
    /// homogeneous.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    /// Total vertex count.
    pub fn size(&self) -> usize {
        self.layers.iter().sum()
    }

    /// Global index of vertex `v` in layer `layer`, layers in order.
    pub fn vertex_index(&self, layer: usize, v: usize) -> usize {
        self.layers[..layer].iter().sum::<usize>() + v
    }

    pub fn is_homogeneous(&self) -> bool {
        self.edges.iter().flatten().all(|e| e.label.is_homogeneous())
    }
}

/// Sum over source-to-sink paths of the ordered product of edge labels,
/// propagated layer by layer.
pub fn abp_eval(p: &Abp, limits: &Limits) -> Result<NCPoly> {
    let t = p.table();
    let mut cur = vec![NCPoly::one(t)];
    for (gap, es) in p.edges().iter().enumerate() {
        let mut next = vec![NCPoly::zero(t); p.layers()[gap + 1]];
        for e in es {
            if cur[e.from].is_zero() {
                continue;
            }
            let prod = cur[e.from].mul_unchecked(&e.label.to_poly(t));
            next[e.to].add_assign_unchecked(&prod);
            if next[e.to].len() > limits.term_budget {
                return Err(Error::TermBudget(limits.term_budget));
            }
        }
        cur = next;
    }
    Ok(cur.pop().expect("sink layer"))
}

/// `M_x(i, j)` = coefficient of `x` on edge `(i, j)` over the global vertex
/// numbering (source first, sink last).
pub fn transition_matrices(p: &Abp) -> Result<BTreeMap<Var, ScalarMatrix>> {
    if !p.is_homogeneous() {
        return Err(Error::AffineLabel);
    }
    let q = p.size();
    let mut out: BTreeMap<Var, ScalarMatrix> = BTreeMap::new();
    for (gap, es) in p.edges().iter().enumerate() {
        for e in es {
            let (i, j) = (p.vertex_index(gap, e.from), p.vertex_index(gap + 1, e.to));
            for (v, c) in e.label.coeffs() {
                let m = out.entry(v).or_insert_with(|| ScalarMatrix::zeros(q, q));
                let s = m.get(i, j) + c;
                m.set(i, j, s);
            }
        }
    }
    Ok(out)
}

/// `(M_w)(s, t)` for the matrices returned by [`transition_matrices`].
pub fn word_weight(p: &Abp, mats: &BTreeMap<Var, ScalarMatrix>, w: &Word) -> Scalar {
    let q = p.size();
    let mut row = vec![Scalar::zero(); q];
    row[0] = Scalar::one();
    for v in w.letters() {
        let Some(m) = mats.get(v) else {
            return Scalar::zero();
        };
        let mut next = vec![Scalar::zero(); q];
        for (i, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in next.iter_mut().enumerate() {
                let b = m.get(i, j);
                if !b.is_zero() {
                    *slot = &*slot + &(a * b);
                }
            }
        }
        row = next;
    }
    row.pop().expect("nonempty")
}
