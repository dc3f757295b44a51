use crate::algebra::{NCPoly, Scalar, TableRef, Var};
use crate::error::{Error, Result};
use crate::Limits;

pub type GateId = usize;

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Input(Var),
    Const(Scalar),
    Add(GateId, GateId),
    /// Ordered product: left child times right child.
    Mul(GateId, GateId),
}

impl Gate {
    pub fn is_leaf(&self) -> bool {
        matches!(self, Gate::Input(_) | Gate::Const(_))
    }

    pub fn children(&self) -> Option<(GateId, GateId)> {
        match *self {
            Gate::Add(l, r) | Gate::Mul(l, r) => Some((l, r)),
            _ => None,
        }
    }
}

/// Noncommutative arithmetic circuit with gates stored in topological order.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    table: TableRef,
    gates: Vec<Gate>,
    output: GateId,
}

impl Circuit {
    pub fn new(table: &TableRef, gates: Vec<Gate>, output: GateId) -> Result<Self> {
        if output >= gates.len() {
            return Err(Error::Precondition(format!("output g{output} does not exist")));
        }
        for (id, g) in gates.iter().enumerate() {
            if let Some((l, r)) = g.children() {
                if l >= id || r >= id {
                    return Err(Error::Precondition(format!(
                        "gate g{id} references a gate that does not precede it"
                    )));
                }
            }
            if let Gate::Input(v) = g {
                if v.index() >= table.len() {
                    return Err(Error::Precondition(format!(
                        "gate g{id} uses an unknown variable"
                    )));
                }
            }
        }
        Ok(Circuit {
            table: table.clone(),
            gates,
            output,
        })
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id]
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gates with a directed path to the output, as a mask.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.gates.len()];
        seen[self.output] = true;
        for id in (0..self.gates.len()).rev() {
            if seen[id] {
                if let Some((l, r)) = self.gates[id].children() {
                    seen[l] = true;
                    seen[r] = true;
                }
            }
        }
        seen
    }

    /// Syntactic degree of every gate (inputs 1, constants 0, sum takes the max,
    /// product adds).
    pub fn formal_degrees(&self) -> Vec<usize> {
        let mut deg: Vec<usize> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let d = match *g {
                Gate::Input(_) => 1,
                Gate::Const(_) => 0,
                Gate::Add(l, r) => deg[l].max(deg[r]),
                Gate::Mul(l, r) => usize::saturating_add(deg[l], deg[r]),
            };
            deg.push(d);
        }
        deg
    }

    pub fn formal_degree(&self) -> usize {
        self.formal_degrees()[self.output]
    }

    /// Number of distinct sum-only paths from gate `from` down to every gate.
    /// Entry `to` counts the ways of reaching `to` from `from` through add
    /// gates alone (a gate reaches itself once).
    pub fn add_paths_from(&self, from: GateId) -> Vec<u64> {
        let mut count = vec![0u64; self.gates.len()];
        count[from] = 1;
        for id in (0..=from).rev() {
            if count[id] == 0 {
                continue;
            }
            if let Gate::Add(l, r) = self.gates[id] {
                count[l] += count[id];
                count[r] += count[id];
            }
        }
        count
    }
}

/// Incremental construction of circuits, mainly for tests and generators.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    table: TableRef,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new(table: &TableRef) -> Self {
        CircuitBuilder {
            table: table.clone(),
            gates: Vec::new(),
        }
    }

    fn push(&mut self, g: Gate) -> GateId {
        self.gates.push(g);
        self.gates.len() - 1
    }

    pub fn input(&mut self, v: Var) -> GateId {
        self.push(Gate::Input(v))
    }

    pub fn input_named(&mut self, name: &str) -> Result<GateId> {
        let v = self.table.lookup(name)?;
        Ok(self.input(v))
    }

    pub fn constant(&mut self, c: Scalar) -> GateId {
        self.push(Gate::Const(c))
    }

    pub fn add(&mut self, l: GateId, r: GateId) -> GateId {
        self.push(Gate::Add(l, r))
    }

    pub fn mul(&mut self, l: GateId, r: GateId) -> GateId {
        self.push(Gate::Mul(l, r))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn finish(self, output: GateId) -> Result<Circuit> {
        Circuit::new(&self.table, self.gates, output)
    }
}

/// The polynomial computed by the circuit, discarding at every gate all terms
/// of degree above `degree_cap`.
pub fn expand(c: &Circuit, degree_cap: usize, limits: &Limits) -> Result<NCPoly> {
    let live = c.reachable();
    let mut vals: Vec<Option<NCPoly>> = vec![None; c.len()];
    let t = c.table();
    for (id, g) in c.gates().iter().enumerate() {
        if !live[id] {
            continue;
        }
        let get = |k: GateId| vals[k].as_ref().expect("children precede parents");
        let p = match g {
            Gate::Input(v) => NCPoly::var(t, *v).truncate(degree_cap),
            Gate::Const(a) => NCPoly::constant(t, a.clone()),
            Gate::Add(l, r) => {
                let mut p = get(*l).clone();
                p.add_assign_unchecked(get(*r));
                p
            }
            Gate::Mul(l, r) => get(*l).mul_capped(get(*r), degree_cap),
        };
        if p.len() > limits.term_budget {
            return Err(Error::TermBudget(limits.term_budget));
        }
        vals[id] = Some(p);
    }
    Ok(vals[c.output()].take().expect("output evaluated"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{VarTable, Word};

    fn table() -> TableRef {
        VarTable::shared(["x0", "x1", "x2", "x3"])
    }

    fn word(ids: &[u32]) -> Word {
        Word(ids.iter().map(|&i| Var(i)).collect())
    }

    #[test]
    fn distributivity_and_order() {
        let t = table();
        let mut b = CircuitBuilder::new(&t);
        let (x1, x2, x3) = (b.input(Var(1)), b.input(Var(2)), b.input(Var(3)));
        let s = b.add(x1, x2);
        let m = b.mul(s, x3);
        let p = expand(&b.finish(m).unwrap(), 10, &Limits::default()).unwrap();
        assert_eq!(p.support(), [word(&[1, 3]), word(&[2, 3])].into_iter().collect());

        let mut b = CircuitBuilder::new(&t);
        let (x1, x2) = (b.input(Var(1)), b.input(Var(2)));
        let m12 = b.mul(x1, x2);
        let m21 = b.mul(x2, x1);
        let c12 = b.clone().finish(m12).unwrap();
        let c21 = b.finish(m21).unwrap();
        let lim = Limits::default();
        assert_eq!(expand(&c12, 5, &lim).unwrap().support(), [word(&[1, 2])].into());
        assert_eq!(expand(&c21, 5, &lim).unwrap().support(), [word(&[2, 1])].into());
    }

    #[test]
    fn square_of_a_sum_matches_poly_mul() {
        let t = table();
        let mut b = CircuitBuilder::new(&t);
        let (x0, x1) = (b.input(Var(0)), b.input(Var(1)));
        let s = b.add(x0, x1);
        let sq = b.mul(s, s);
        let c = b.finish(sq).unwrap();
        let lim = Limits::default();
        let p = expand(&c, 4, &lim).unwrap();
        let sum = NCPoly::var(&t, Var(0)).add(&NCPoly::var(&t, Var(1))).unwrap();
        assert_eq!(p, sum.mul(&sum).unwrap());
        assert_eq!(p.len(), 4);
        assert_eq!(expand(&c, 1, &lim).unwrap().len(), 0);
    }

    #[test]
    fn forward_references_rejected() {
        let t = table();
        let gates = vec![Gate::Input(Var(0)), Gate::Mul(0, 2), Gate::Input(Var(1))];
        assert!(Circuit::new(&t, gates, 1).is_err());
    }

    #[test]
    fn term_budget_enforced() {
        let t = table();
        let mut b = CircuitBuilder::new(&t);
        let xs: Vec<_> = (0..4).map(|i| b.input(Var(i))).collect();
        let s01 = b.add(xs[0], xs[1]);
        let s23 = b.add(xs[2], xs[3]);
        let s = b.add(s01, s23);
        let mut acc = s;
        for _ in 0..5 {
            acc = b.mul(acc, s);
        }
        let c = b.finish(acc).unwrap();
        let lim = Limits {
            term_budget: 100,
            ..Limits::default()
        };
        assert_eq!(expand(&c, 10, &lim), Err(Error::TermBudget(100)));
    }

    #[test]
    fn add_path_counts() {
        let t = table();
        let mut b = CircuitBuilder::new(&t);
        let x = b.input(Var(0));
        let d = b.add(x, x);
        let q = b.add(d, d);
        let c = b.finish(q).unwrap();
        assert_eq!(c.add_paths_from(q)[x], 4);
        assert_eq!(
            expand(&c, 3, &Limits::default()).unwrap().coeff(&word(&[0])),
            Scalar::from(4)
        );
    }
}
