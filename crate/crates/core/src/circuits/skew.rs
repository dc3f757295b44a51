use super::circuit::{Circuit, Gate, GateId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewTag {
    /// `f = a * h` with `a` an input or constant gate.
    Left,
    /// `f = h * a` with `a` an input or constant gate.
    Right,
}

/// Per-gate skew tags; `None` for non-product gates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewWitness {
    tags: Vec<Option<SkewTag>>,
}

impl SkewWitness {
    pub fn tag(&self, g: GateId) -> Option<SkewTag> {
        self.tags[g]
    }

    pub fn tags(&self) -> &[Option<SkewTag>] {
        &self.tags
    }

    /// For a product gate: (leaf child, other child).
    pub fn split(&self, c: &Circuit, g: GateId) -> Option<(GateId, GateId)> {
        let Gate::Mul(l, r) = *c.gate(g) else {
            return None;
        };
        match self.tags[g]? {
            SkewTag::Left => Some((l, r)),
            SkewTag::Right => Some((r, l)),
        }
    }
}

/// Tags every product gate, preferring the left child as the leaf when both
/// qualify. Refuses with the first product gate that has no leaf child.
pub fn is_skew(c: &Circuit) -> Result<SkewWitness> {
    let mut tags = Vec::with_capacity(c.len());
    for (id, g) in c.gates().iter().enumerate() {
        let tag = match *g {
            Gate::Mul(l, r) => {
                if c.gate(l).is_leaf() {
                    Some(SkewTag::Left)
                } else if c.gate(r).is_leaf() {
                    Some(SkewTag::Right)
                } else {
                    return Err(Error::NotSkew(id));
                }
            }
            _ => None,
        };
        tags.push(tag);
    }
    Ok(SkewWitness { tags })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Var, VarTable};
    use crate::circuits::CircuitBuilder;

    #[test]
    fn left_skew_gate() {
        let t = VarTable::shared(["x1", "x2", "x3"]);
        let mut b = CircuitBuilder::new(&t);
        let (x1, x2, x3) = (b.input(Var(0)), b.input(Var(1)), b.input(Var(2)));
        let s = b.add(x2, x3);
        let m = b.mul(x1, s);
        let w = is_skew(&b.finish(m).unwrap()).unwrap();
        assert_eq!(w.tag(m), Some(SkewTag::Left));
    }

    #[test]
    fn refusal_names_the_gate() {
        let t = VarTable::shared(["x1", "x2", "x3"]);
        let mut b = CircuitBuilder::new(&t);
        let (x1, x2, x3) = (b.input(Var(0)), b.input(Var(1)), b.input(Var(2)));
        let s = b.add(x1, x2);
        let u = b.add(x2, x3);
        let m = b.mul(s, u);
        assert_eq!(is_skew(&b.finish(m).unwrap()), Err(Error::NotSkew(m)));
    }

    #[test]
    fn skew_chain_is_fully_tagged() {
        let t = VarTable::shared(["x1", "x2", "x3"]);
        let mut b = CircuitBuilder::new(&t);
        let (x1, x2, x3) = (b.input(Var(0)), b.input(Var(1)), b.input(Var(2)));
        let m23 = b.mul(x2, x3);
        let m = b.mul(x1, m23);
        let c = b.finish(m).unwrap();
        assert_eq!(c.len(), 5);
        let w = is_skew(&c).unwrap();
        assert_eq!(w.tag(m23), Some(SkewTag::Left));
        assert_eq!(w.tag(m), Some(SkewTag::Left));
        assert_eq!(w.split(&c, m), Some((x1, m23)));
    }
}
