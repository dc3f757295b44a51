use std::collections::BTreeMap;
use std::fmt;

use super::abp_reduction::AbpReduction;
use crate::algebra::{same_table, NCPoly, Scalar, TableRef, Var, Word};
use crate::automata::{automaton_to_substitution, SubstAutomaton};
use crate::error::{Error, Result};

/// Image of a variable under a projection: a variable of the target table
/// or a scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Image {
    Var(Var),
    Scalar(Scalar),
}

impl Image {
    pub fn is_var(&self) -> bool {
        matches!(self, Image::Var(_))
    }
}

/// `φ: Y → X ∪ F`. `source` is the table of the polynomial being
/// substituted into, `target` the table of the result.
#[derive(Clone, Debug)]
pub struct ProjMap {
    source: TableRef,
    target: TableRef,
    map: Vec<Option<Image>>,
}

impl ProjMap {
    pub fn new(source: &TableRef, target: &TableRef) -> Self {
        ProjMap {
            source: source.clone(),
            target: target.clone(),
            map: vec![None; source.len()],
        }
    }

    /// Maps each variable to the target variable with the same name.
    pub fn identity(table: &TableRef) -> Self {
        let mut m = Self::new(table, table);
        for v in table.vars() {
            m.set(v, Image::Var(v));
        }
        m
    }

    pub fn source(&self) -> &TableRef {
        &self.source
    }

    pub fn target(&self) -> &TableRef {
        &self.target
    }

    pub fn set(&mut self, y: Var, img: Image) {
        self.map[y.index()] = Some(img);
    }

    pub fn get(&self, y: Var) -> Option<&Image> {
        self.map[y.index()].as_ref()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Var, &Image)> {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.as_ref().map(|m| (Var(i as u32), m)))
    }
}

/// Letter replacement with scalars folded into the coefficient.
fn substitute_letters(
    g: &NCPoly,
    target: &TableRef,
    mut image: impl FnMut(usize, Var) -> Result<Image>,
) -> Result<NCPoly> {
    let mut out = NCPoly::zero(target);
    for (w, c) in g.terms() {
        let mut coeff = c.clone();
        let mut word = Vec::with_capacity(w.degree());
        for (i, &y) in w.letters().iter().enumerate() {
            match image(i + 1, y)? {
                Image::Var(x) => word.push(x),
                Image::Scalar(a) => coeff = &coeff * &a,
            }
        }
        out.add_term(Word(word), coeff);
    }
    Ok(out)
}

pub fn apply_proj(m: &ProjMap, g: &NCPoly) -> Result<NCPoly> {
    let g = g.retable(&m.source)?;
    substitute_letters(&g, &m.target, |_, y| {
        m.get(y)
            .cloned()
            .ok_or_else(|| Error::Unmapped(m.source.name(y).to_string()))
    })
}

/// `φ: [d] × Y → X ∪ F`, positions 1-based.
#[derive(Clone, Debug)]
pub struct IProjMap {
    source: TableRef,
    target: TableRef,
    degree: usize,
    map: BTreeMap<(usize, Var), Image>,
}

impl IProjMap {
    pub fn new(source: &TableRef, target: &TableRef, degree: usize) -> Self {
        IProjMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            map: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &TableRef {
        &self.source
    }

    pub fn target(&self) -> &TableRef {
        &self.target
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set(&mut self, pos: usize, y: Var, img: Image) {
        assert!(pos >= 1 && pos <= self.degree, "position out of range");
        self.map.insert((pos, y), img);
    }

    pub fn get(&self, pos: usize, y: Var) -> Option<&Image> {
        self.map.get(&(pos, y))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, Var), &Image)> {
        self.map.iter().map(|(k, v)| (*k, v))
    }
}

pub fn apply_iproj(m: &IProjMap, g: &NCPoly) -> Result<NCPoly> {
    let g = g.retable(&m.source)?;
    substitute_letters(&g, &m.target, |pos, y| {
        m.get(pos, y)
            .cloned()
            .ok_or_else(|| Error::Unmapped(format!("{} at position {pos}", m.source.name(y))))
    })
}

/// The same map at every position `1..=d`.
pub fn proj_to_iproj(m: &ProjMap, d: usize) -> IProjMap {
    let mut out = IProjMap::new(&m.source, &m.target, d);
    for pos in 1..=d {
        for (y, img) in m.entries() {
            out.set(pos, y, img.clone());
        }
    }
    out
}

/// Position-counting automaton with `d + 1` states emitting `φ(i, y)` on
/// the `i`-th letter. Only degree-`d` words reach the accept state.
pub fn iproj_to_abp(m: &IProjMap, d: usize) -> Result<AbpReduction> {
    let mut a = SubstAutomaton::new(&m.source, &m.target, d == 0);
    let mut prev = a.start();
    for pos in 1..=d {
        let next = if pos == d {
            a.accept()
        } else {
            a.add_state(format!("p{pos}"))
        };
        for y in m.source.vars() {
            match m.get(pos, y) {
                Some(Image::Var(x)) => a.add_transition(prev, y, next, Scalar::one(), Word::letter(*x))?,
                Some(Image::Scalar(c)) => a.add_transition(prev, y, next, c.clone(), Word::empty())?,
                None => {}
            }
        }
        prev = next;
    }
    Ok(AbpReduction::new(automaton_to_substitution(&a)?))
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Var(v) => write!(f, "var #{}", v.index()),
            Image::Scalar(c) => write!(f, "scalar {c}"),
        }
    }
}

pub(crate) fn check_tables(a: &TableRef, b: &TableRef) -> Result<()> {
    if same_table(a, b) {
        Ok(())
    } else {
        Err(Error::TableMismatch)
    }
}
