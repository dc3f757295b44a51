use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a variable inside a [`VarTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The variable universe shared by a family of polynomials.
#[derive(Clone, Debug, Default)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

pub type TableRef = Arc<VarTable>;

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut t = VarTable::default();
        for n in names {
            t.push(n)?;
        }
        Ok(t)
    }

    /// Builds a table from names that are known to be distinct.
    pub fn shared<S: Into<String>>(names: impl IntoIterator<Item = S>) -> TableRef {
        Arc::new(VarTable::new(names).expect("distinct variable names"))
    }

    pub fn push(&mut self, name: impl Into<String>) -> Result<Var> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) || name == "1" {
            return Err(Error::Precondition(format!("invalid variable name `{name}`")));
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVar(name));
        }
        let v = Var(self.names.len() as u32);
        self.index.insert(name.clone(), v);
        self.names.push(name);
        Ok(v)
    }

    /// Returns the variable with this name, adding it if absent.
    pub fn intern(&mut self, name: &str) -> Result<Var> {
        match self.index.get(name) {
            Some(&v) => Ok(v),
            None => self.push(name),
        }
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<Var> {
        self.get(name).ok_or_else(|| Error::UnknownVar(name.to_string()))
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.names.len() as u32).map(Var)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarTable {}

pub fn same_table(a: &TableRef, b: &TableRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A monomial: an ordered sequence of variables. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Var>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(v: Var) -> Self {
        Word(vec![v])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Var] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn display<'a>(&'a self, table: &'a VarTable) -> WordDisplay<'a> {
        WordDisplay { word: self, table }
    }

    /// Parses whitespace-separated names; `1` alone denotes the empty word.
    pub fn parse(text: &str, table: &VarTable) -> Result<Word> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks == ["1"] || toks.is_empty() {
            return Ok(Word::empty());
        }
        toks.iter()
            .map(|t| table.lookup(t))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl From<Vec<Var>> for Word {
    fn from(v: Vec<Var>) -> Self {
        Word(v)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    table: &'a VarTable,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.0.is_empty() {
            return write!(f, "1");
        }
        for (i, v) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.table.name(*v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut t = VarTable::new(["x0", "x1"]).unwrap();
        assert_eq!(t.push("x0"), Err(Error::DuplicateVar("x0".into())));
        assert_eq!(t.intern("x1").unwrap(), Var(1));
        assert_eq!(t.intern("y").unwrap(), Var(2));
        assert!(t.push("1").is_err());
    }

    #[test]
    fn word_order_is_lexicographic_by_id() {
        let a = Word(vec![Var(0), Var(1)]);
        let b = Word(vec![Var(1)]);
        let c = Word(vec![Var(0)]);
        assert!(c < a && a < b);
        assert_eq!(a.concat(&b).degree(), 3);
    }
}
