//! Parsing-structure passes: rewrite a circuit so that every monomial it
//! computes records how it was derived.
//!
//! [`to_bracketed`] wraps each product gate's left factor in a gate-specific
//! bracket pair and turns every leaf into a short balanced word, so all
//! monomials become balanced bracket strings. [`to_skew_bracketed`] does the
//! mirror-image analogue for skew circuits: each multiplication by a leaf is
//! split into a left twin and a right twin that sit at mirrored positions.

use std::sync::Arc;

use super::circuit::{Circuit, Gate, GateId};
use super::skew::{SkewTag, SkewWitness};
use crate::algebra::{NCPoly, Scalar, TableRef, Var, VarTable, Word};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum BracketRole {
    GateOpen(GateId),
    GateClose(GateId),
    ConstOpen(GateId),
    ConstClose(GateId),
    PlaceholderOpen(GateId),
    PlaceholderClose(GateId, Scalar),
    VarOpen(Var),
    VarClose(Var),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Gate,
    Const,
    Placeholder,
    Var,
}

impl BracketRole {
    pub fn kind(&self) -> BracketKind {
        match self {
            BracketRole::GateOpen(_) | BracketRole::GateClose(_) => BracketKind::Gate,
            BracketRole::ConstOpen(_) | BracketRole::ConstClose(_) => BracketKind::Const,
            BracketRole::PlaceholderOpen(_) | BracketRole::PlaceholderClose(..) => BracketKind::Placeholder,
            BracketRole::VarOpen(_) | BracketRole::VarClose(_) => BracketKind::Var,
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(
            self,
            BracketRole::GateOpen(_)
                | BracketRole::ConstOpen(_)
                | BracketRole::PlaceholderOpen(_)
                | BracketRole::VarOpen(_)
        )
    }
}

/// A circuit over the bracket alphabet together with the origin of each
/// bracket variable.
#[derive(Clone, Debug)]
pub struct BracketedCircuit {
    pub circuit: Circuit,
    source: TableRef,
    roles: Vec<BracketRole>,
    pairs: Vec<(Var, Var)>,
}

impl BracketedCircuit {
    pub fn source_table(&self) -> &TableRef {
        &self.source
    }

    pub fn table(&self) -> &TableRef {
        self.circuit.table()
    }

    pub fn role(&self, v: Var) -> &BracketRole {
        &self.roles[v.index()]
    }

    /// Bracket pairs (open, close) in table order.
    pub fn pairs(&self) -> &[(Var, Var)] {
        &self.pairs
    }

    /// Image of a bracket under the recovery substitution: brackets go to 1,
    /// a variable's closing bracket to the variable, a placeholder's closing
    /// bracket to the constant.
    pub fn recovery_image(&self, v: Var) -> NCPoly {
        match self.role(v) {
            BracketRole::VarClose(x) => NCPoly::var(&self.source, *x),
            BracketRole::PlaceholderClose(_, a) => NCPoly::constant(&self.source, a.clone()),
            _ => NCPoly::one(&self.source),
        }
    }

    pub fn recover(&self, p: &NCPoly) -> Result<NCPoly> {
        p.substitute(&self.source, |v| Ok(self.recovery_image(v)))
    }

    /// Checks a word with a bracket stack.
    pub fn is_balanced(&self, w: &Word) -> bool {
        let mut stack: Vec<Var> = Vec::new();
        for &v in w.letters() {
            if self.role(v).is_open() {
                stack.push(v);
            } else {
                let Some(open) = stack.pop() else {
                    return false;
                };
                if !self.pairs.contains(&(open, v)) {
                    return false;
                }
            }
        }
        stack.is_empty()
    }
}

struct Alphabet {
    table: VarTable,
}

impl Alphabet {
    fn pair(&mut self, open: String, close: String) -> Result<(Var, Var)> {
        Ok((self.table.push(open)?, self.table.push(close)?))
    }
}

/// Rewrites `f = g * h` as `(_f g )_f h`, each constant `a` as
/// `(_a [_z ]_z )_a` and each variable `y` as `[_y ]_y`. Only gates that feed
/// the output are kept.
pub fn to_bracketed(c: &Circuit) -> Result<BracketedCircuit> {
    let live = c.reachable();
    let src = c.table();
    let mut alpha = Alphabet {
        table: VarTable::default(),
    };
    let mut roles = Vec::new();
    let mut pairs = Vec::new();
    let mut var_pair: Vec<Option<(Var, Var)>> = vec![None; src.len()];
    let mut gates: Vec<Gate> = Vec::new();
    let mut map = vec![usize::MAX; c.len()];
    let push = |gates: &mut Vec<Gate>, g: Gate| {
        gates.push(g);
        gates.len() - 1
    };

    for (id, g) in c.gates().iter().enumerate() {
        if !live[id] {
            continue;
        }
        map[id] = match g {
            Gate::Input(y) => {
                let (o, cl) = match var_pair[y.index()] {
                    Some(p) => p,
                    None => {
                        let name = src.name(*y);
                        let p = alpha.pair(format!("[_{name}"), format!("]_{name}"))?;
                        roles.push(BracketRole::VarOpen(*y));
                        roles.push(BracketRole::VarClose(*y));
                        pairs.push(p);
                        var_pair[y.index()] = Some(p);
                        p
                    }
                };
                let a = push(&mut gates, Gate::Input(o));
                let b = push(&mut gates, Gate::Input(cl));
                push(&mut gates, Gate::Mul(a, b))
            }
            Gate::Const(a) => {
                let (co, cc) = alpha.pair(format!("(_c{id}"), format!(")_c{id}"))?;
                roles.push(BracketRole::ConstOpen(id));
                roles.push(BracketRole::ConstClose(id));
                let (zo, zc) = alpha.pair(format!("[_z{id}"), format!("]_z{id}"))?;
                roles.push(BracketRole::PlaceholderOpen(id));
                roles.push(BracketRole::PlaceholderClose(id, a.clone()));
                pairs.push((co, cc));
                pairs.push((zo, zc));
                let g0 = push(&mut gates, Gate::Input(co));
                let g1 = push(&mut gates, Gate::Input(zo));
                let g2 = push(&mut gates, Gate::Input(zc));
                let g3 = push(&mut gates, Gate::Input(cc));
                let m = push(&mut gates, Gate::Mul(g0, g1));
                let m = push(&mut gates, Gate::Mul(m, g2));
                push(&mut gates, Gate::Mul(m, g3))
            }
            Gate::Add(l, r) => push(&mut gates, Gate::Add(map[*l], map[*r])),
            Gate::Mul(l, r) => {
                let (o, cl) = alpha.pair(format!("(_g{id}"), format!(")_g{id}"))?;
                roles.push(BracketRole::GateOpen(id));
                roles.push(BracketRole::GateClose(id));
                pairs.push((o, cl));
                let go = push(&mut gates, Gate::Input(o));
                let gc = push(&mut gates, Gate::Input(cl));
                let m = push(&mut gates, Gate::Mul(go, map[*l]));
                let m = push(&mut gates, Gate::Mul(m, gc));
                push(&mut gates, Gate::Mul(m, map[*r]))
            }
        };
    }
    let table = Arc::new(alpha.table);
    let circuit = Circuit::new(&table, gates, map[c.output()])?;
    Ok(BracketedCircuit {
        circuit,
        source: src.clone(),
        roles,
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Leaf {
    Var(Var),
    Const(Scalar),
}

impl Leaf {
    fn of(g: &Gate) -> Option<Leaf> {
        match g {
            Gate::Input(v) => Some(Leaf::Var(*v)),
            Gate::Const(a) => Some(Leaf::Const(a.clone())),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TwinOrigin {
    /// Multiplication of `descent` by the leaf on the given side at `gate`.
    Factor {
        gate: GateId,
        descent: GateId,
        leaf: Leaf,
        side: SkewTag,
    },
    /// A leaf gate reached as the innermost factor.
    Terminal { gate: GateId, leaf: Leaf },
}

/// A mirrored pair of fresh variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Twin {
    pub left: Var,
    pub right: Var,
    /// Name used for the pair as a single palindrome symbol.
    pub symbol: String,
    pub origin: TwinOrigin,
}

#[derive(Clone, Debug)]
pub struct SkewBracketedCircuit {
    pub circuit: Circuit,
    source: TableRef,
    twins: Vec<Twin>,
    /// For each new variable: (twin index, is the left twin).
    owner: Vec<(usize, bool)>,
    factor_twin: Vec<Option<usize>>,
    terminal_twin: Vec<Option<usize>>,
}

impl SkewBracketedCircuit {
    pub fn source_table(&self) -> &TableRef {
        &self.source
    }

    pub fn twins(&self) -> &[Twin] {
        &self.twins
    }

    pub fn twin_of(&self, v: Var) -> (&Twin, bool) {
        let (i, left) = self.owner[v.index()];
        (&self.twins[i], left)
    }

    /// Twin index for the product gate `g`, if it feeds the output.
    pub fn factor_twin(&self, g: GateId) -> Option<usize> {
        self.factor_twin[g]
    }

    /// Twin index for the leaf gate `g` reached as an innermost factor.
    pub fn terminal_twin(&self, g: GateId) -> Option<usize> {
        self.terminal_twin[g]
    }

    /// What the twin contributes when read in the left half (`left = true`)
    /// or the right half: the original symbol on the side where the leaf
    /// multiplied, 1 on the other. Scalars always ride on the left twin.
    pub fn twin_output(&self, twin: usize, left: bool) -> (Scalar, Word) {
        let t = &self.twins[twin];
        let (leaf, keep_left) = match &t.origin {
            TwinOrigin::Terminal { leaf, .. } => (leaf, true),
            TwinOrigin::Factor { leaf, side, .. } => (leaf, *side == SkewTag::Left),
        };
        match leaf {
            Leaf::Const(a) if left => (a.clone(), Word::empty()),
            Leaf::Var(x) if left == keep_left => (Scalar::one(), Word::letter(*x)),
            _ => (Scalar::one(), Word::empty()),
        }
    }

    pub fn recovery_image(&self, v: Var) -> NCPoly {
        let (i, left) = self.owner[v.index()];
        let (c, w) = self.twin_output(i, left);
        NCPoly::monomial(&self.source, w, c)
    }

    pub fn recover(&self, p: &NCPoly) -> Result<NCPoly> {
        p.substitute(&self.source, |v| Ok(self.recovery_image(v)))
    }

    /// Whether position i pairs with position 2d - i + 1 as left/right twins
    /// of the same pair, left twins filling the first half.
    pub fn has_twin_structure(&self, w: &Word) -> bool {
        let n = w.degree();
        if n % 2 == 1 {
            return false;
        }
        let l = w.letters();
        (0..n / 2).all(|i| {
            let (a, al) = self.owner[l[i].index()];
            let (b, bl) = self.owner[l[n - 1 - i].index()];
            a == b && al && !bl
        })
    }
}

#[derive(Default)]
struct TwinSet {
    table: VarTable,
    twins: Vec<Twin>,
    owner: Vec<(usize, bool)>,
}

impl TwinSet {
    fn add(&mut self, base: String, edge: String, origin: TwinOrigin) -> Result<usize> {
        let left = self.table.push(format!("{base}_({edge},L)"))?;
        let right = self.table.push(format!("{base}_({edge},R)"))?;
        let idx = self.twins.len();
        self.owner.push((idx, true));
        self.owner.push((idx, false));
        self.twins.push(Twin {
            left,
            right,
            symbol: format!("{base}.{}", edge.replace(',', ".")),
            origin,
        });
        Ok(idx)
    }

    /// Emits `t_L t_R` or `t_L (inner t_R)` and returns the top gate.
    fn gates(&self, gates: &mut Vec<Gate>, t: usize, inner: Option<GateId>) -> GateId {
        let l = gates.len();
        gates.push(Gate::Input(self.twins[t].left));
        gates.push(Gate::Input(self.twins[t].right));
        match inner {
            None => gates.push(Gate::Mul(l, l + 1)),
            Some(h) => {
                gates.push(Gate::Mul(h, l + 1));
                gates.push(Gate::Mul(l, l + 2));
            }
        }
        gates.len() - 1
    }
}

/// Splits every multiplication by a leaf into mirrored twins:
/// `f = a h` (or `h a`) becomes `a_L (h a_R)`, and every leaf reached as the
/// innermost factor becomes `x_L x_R`.
pub fn to_skew_bracketed(c: &Circuit, w: &SkewWitness) -> Result<SkewBracketedCircuit> {
    let n = c.len();
    let src = c.table();
    // Gates that occur in C' as gates: reached from the output along sum
    // edges and product descent edges.
    let mut occurs = vec![false; n];
    occurs[c.output()] = true;
    for id in (0..n).rev() {
        if !occurs[id] {
            continue;
        }
        match *c.gate(id) {
            Gate::Add(l, r) => {
                occurs[l] = true;
                occurs[r] = true;
            }
            Gate::Mul(..) => {
                let (_, descent) = w.split(c, id).ok_or(crate::Error::NotSkew(id))?;
                occurs[descent] = true;
            }
            _ => {}
        }
    }

    let leaf_sym = |g: GateId| match c.gate(g) {
        Gate::Input(v) => src.name(*v).to_string(),
        _ => format!("c{g}"),
    };
    let mut tw = TwinSet::default();
    let mut factor_twin = vec![None; n];
    let mut terminal_twin = vec![None; n];
    let mut gates: Vec<Gate> = Vec::new();
    let mut map = vec![usize::MAX; n];
    for id in 0..n {
        if !occurs[id] {
            continue;
        }
        map[id] = match c.gate(id) {
            Gate::Input(_) | Gate::Const(_) => {
                let leaf = Leaf::of(c.gate(id)).expect("leaf");
                let t = tw.add(
                    leaf_sym(id),
                    format!("g{id}"),
                    TwinOrigin::Terminal { gate: id, leaf },
                )?;
                terminal_twin[id] = Some(t);
                tw.gates(&mut gates, t, None)
            }
            Gate::Add(l, r) => {
                gates.push(Gate::Add(map[*l], map[*r]));
                gates.len() - 1
            }
            Gate::Mul(..) => {
                let (leaf_gate, descent) = w.split(c, id).expect("checked above");
                let leaf = Leaf::of(c.gate(leaf_gate)).expect("skew leaf");
                let side = w.tag(id).expect("product gate");
                let origin = TwinOrigin::Factor {
                    gate: id,
                    descent,
                    leaf,
                    side,
                };
                let t = tw.add(leaf_sym(leaf_gate), format!("e{id},g{descent}"), origin)?;
                factor_twin[id] = Some(t);
                tw.gates(&mut gates, t, Some(map[descent]))
            }
        };
    }
    let TwinSet { table, twins, owner } = tw;
    let table = Arc::new(table);
    let circuit = Circuit::new(&table, gates, map[c.output()])?;
    Ok(SkewBracketedCircuit {
        circuit,
        source: src.clone(),
        twins,
        owner,
        factor_twin,
        terminal_twin,
    })
}
