use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::scalar::Scalar;
use super::var::{same_table, TableRef, Var, VarTable, Word};
use crate::error::{Error, Result};

/// Sparse polynomial in the free algebra: a finite map from words to nonzero
/// coefficients. Words multiply by concatenation, never by sorting.
#[derive(Clone, Debug)]
pub struct NCPoly {
    table: TableRef,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(table: &TableRef) -> Self {
        NCPoly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &TableRef) -> Self {
        Self::constant(table, Scalar::one())
    }

    pub fn constant(table: &TableRef, c: Scalar) -> Self {
        Self::monomial(table, Word::empty(), c)
    }

    pub fn var(table: &TableRef, v: Var) -> Self {
        Self::monomial(table, Word::letter(v), Scalar::one())
    }

    pub fn monomial(table: &TableRef, w: Word, c: Scalar) -> Self {
        let mut p = Self::zero(table);
        p.add_term(w, c);
        p
    }

    /// Collects terms, combining duplicates and dropping zeros.
    pub fn from_terms(table: &TableRef, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(table);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn support(&self) -> BTreeSet<Word> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Maximum word length, or -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|w| w.degree() as i64).max().unwrap_or(-1)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::degree);
        match lens.next() {
            None => true,
            Some(d) => lens.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &NCPoly) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.add(&other.neg())
    }

    /// Adds `other` in place; callers guarantee a shared table.
    pub(crate) fn add_assign_unchecked(&mut self, other: &NCPoly) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add_assign(&mut self, other: &NCPoly) -> Result<()> {
        self.check(other)?;
        self.add_assign_unchecked(other);
        Ok(())
    }

    pub fn mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(&self.table);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// Product with every term of degree above `cap` discarded.
    pub(crate) fn mul_capped(&self, other: &NCPoly, cap: usize) -> NCPoly {
        let mut out = NCPoly::zero(&self.table);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.degree() + v.degree() <= cap {
                    out.add_term(u.concat(v), a * b);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(&self.table);
        }
        NCPoly::from_terms(&self.table, self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&-Scalar::one())
    }

    /// Coefficientwise product `w -> a(w) b(w)`.
    pub fn hadamard(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check(other)?;
        let mut out = NCPoly::zero(&self.table);
        for (w, a) in &self.terms {
            if let Some(b) = other.terms.get(w) {
                out.add_term(w.clone(), a * b);
            }
        }
        Ok(out)
    }

    pub fn homogeneous_part(&self, d: usize) -> NCPoly {
        self.filter(|w| w.degree() == d)
    }

    pub fn truncate(&self, cap: usize) -> NCPoly {
        self.filter(|w| w.degree() <= cap)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> NCPoly {
        NCPoly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies the algebra homomorphism sending each variable to `image(v)`,
    /// a polynomial over `target`.
    pub fn substitute(
        &self,
        target: &TableRef,
        mut image: impl FnMut(Var) -> Result<NCPoly>,
    ) -> Result<NCPoly> {
        let mut cache: BTreeMap<Var, NCPoly> = BTreeMap::new();
        let mut out = NCPoly::zero(target);
        for (w, c) in &self.terms {
            let mut acc = NCPoly::constant(target, c.clone());
            for &v in w.letters() {
                let img = match cache.get(&v) {
                    Some(p) => p,
                    None => {
                        let p = image(v)?;
                        if !same_table(p.table(), target) {
                            return Err(Error::TableMismatch);
                        }
                        cache.entry(v).or_insert(p)
                    }
                };
                acc = acc.mul_unchecked(img);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign_unchecked(&acc);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over another table by variable name.
    /// Only variables that occur in some term need to exist in `target`.
    pub fn retable(&self, target: &TableRef) -> Result<NCPoly> {
        if same_table(&self.table, target) {
            return Ok(NCPoly {
                table: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<Var>> = self
            .table
            .vars()
            .map(|v| target.get(self.table.name(v)))
            .collect();
        let mut out = NCPoly::zero(target);
        for (w, c) in &self.terms {
            let letters = w
                .letters()
                .iter()
                .map(|v| map[v.index()].ok_or_else(|| Error::UnknownVar(self.table.name(*v).to_string())))
                .collect::<Result<_>>()?;
            out.add_term(Word(letters), c.clone());
        }
        Ok(out)
    }

    /// Moves every coefficient into the given field.
    pub fn in_field(&self, field: super::Field) -> Result<NCPoly> {
        let mut out = NCPoly::zero(&self.table);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), field.convert(c)?);
        }
        Ok(out)
    }

    /// The first word (lexicographically) on which `self` and `other` differ.
    pub fn first_difference(&self, other: &NCPoly) -> Option<Word> {
        let words: BTreeSet<&Word> = self.terms.keys().chain(other.terms.keys()).collect();
        words
            .into_iter()
            .find(|w| self.coeff(w) != other.coeff(w))
            .cloned()
    }

    pub fn display(&self) -> PolyDisplay<'_> {
        PolyDisplay(self)
    }

    pub fn vars_used(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for NCPoly {}

/// Infix rendering such as `2*x0*x1 + -1*x1`.
pub struct PolyDisplay<'a>(&'a NCPoly);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.0;
        if p.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in p.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write_term(f, &p.table, w, c)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &VarTable, w: &Word, c: &Scalar) -> fmt::Result {
    if w.degree() == 0 {
        return write!(f, "{c}");
    }
    if !c.is_one() {
        write!(f, "{c}*")?;
    }
    let names: Vec<&str> = w.letters().iter().map(|v| t.name(*v)).collect();
    write!(f, "{}", names.join("*"))
}

pub fn poly_add(a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
    a.add(b)
}

pub fn poly_mul(a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
    a.mul(b)
}

pub fn hadamard_bruteforce(a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
    a.hadamard(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn table() -> TableRef {
        VarTable::shared(["x0", "x1"])
    }

    #[test]
    fn retable_needs_only_used_variables() {
        let big = VarTable::shared(["x0", "x1", "x2"]);
        let small = table();
        let p = NCPoly::var(&big, Var(1));
        assert_eq!(p.retable(&small).unwrap(), NCPoly::var(&small, Var(1)));
        assert!(NCPoly::var(&big, Var(2)).retable(&small).is_err());
    }

    fn x(t: &TableRef, i: u32) -> NCPoly {
        NCPoly::var(t, Var(i))
    }

    fn pal1(t: &TableRef) -> NCPoly {
        let x0 = x(t, 0);
        let x1 = x(t, 1);
        x0.mul(&x0).unwrap().add(&x1.mul(&x1).unwrap()).unwrap()
    }

    fn w(ids: &[u32]) -> Word {
        Word(ids.iter().map(|&i| Var(i)).collect())
    }

    #[test]
    fn add_disjoint_and_cancelling() {
        let t = table();
        let s = x(&t, 0).add(&x(&t, 1)).unwrap();
        assert_eq!(s.len(), 2);
        let z = x(&t, 0).add(&x(&t, 0).neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), -1);
    }

    #[test]
    fn doubled_palindrome() {
        let t = table();
        let p = pal1(&t);
        let d = p.add(&p).unwrap();
        assert_eq!(d.coeff(&w(&[0, 0])), Scalar::from(2));
        assert_eq!(d.coeff(&w(&[1, 1])), Scalar::from(2));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn products_keep_argument_order() {
        let t = table();
        let p = x(&t, 0).mul(&x(&t, 1)).unwrap();
        assert_eq!(p.support().into_iter().collect::<Vec<_>>(), vec![w(&[0, 1])]);
        let s = x(&t, 0).add(&x(&t, 1)).unwrap();
        assert_eq!(s.mul(&s).unwrap().len(), 4);
    }

    #[test]
    fn palindrome_square_has_four_quartic_terms() {
        let t = table();
        let p = pal1(&t);
        let sq = p.mul(&p).unwrap();
        let expected: BTreeSet<Word> = [
            w(&[0, 0, 0, 0]),
            w(&[0, 0, 1, 1]),
            w(&[1, 1, 0, 0]),
            w(&[1, 1, 1, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(sq.support(), expected);
    }

    #[test]
    fn hadamard_examples() {
        let t = table();
        let a = NCPoly::monomial(&t, w(&[0, 1]), Scalar::from(2));
        let b = NCPoly::monomial(&t, w(&[0, 1]), Scalar::from(3));
        assert_eq!(a.hadamard(&b).unwrap().coeff(&w(&[0, 1])), Scalar::from(6));

        let s = x(&t, 0).add(&x(&t, 1)).unwrap();
        let sq = s.mul(&s).unwrap();
        let filt = NCPoly::monomial(&t, w(&[0, 1]), Scalar::one());
        assert_eq!(sq.hadamard(&filt).unwrap(), filt);

        // All degree-2 words: picks out the degree-2 part.
        let all2 = NCPoly::from_terms(
            &t,
            [w(&[0, 0]), w(&[0, 1]), w(&[1, 0]), w(&[1, 1])].map(|u| (u, Scalar::one())),
        );
        let mixed = sq.add(&x(&t, 0)).unwrap();
        assert_eq!(mixed.hadamard(&all2).unwrap(), sq);
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let a = x(&table(), 0);
        let other = Arc::new(VarTable::new(["y"]).unwrap());
        let b = NCPoly::var(&other, Var(0));
        assert_eq!(a.add(&b), Err(Error::TableMismatch));
        assert_eq!(a.mul(&b), Err(Error::TableMismatch));
    }

    #[test]
    fn noncommutativity_witness() {
        let t = table();
        let ab = x(&t, 0).mul(&x(&t, 1)).unwrap();
        let ba = x(&t, 1).mul(&x(&t, 0)).unwrap();
        assert_ne!(ab, ba);
    }

    #[test]
    fn substitution_and_retable() {
        let t = table();
        let p = pal1(&t);
        let u = VarTable::shared(["x1", "x0", "y"]);
        let q = p.retable(&u).unwrap();
        assert_eq!(q.coeff(&w(&[1, 1])), Scalar::one());
        let r = p
            .substitute(&t, |v| {
                Ok(if v == Var(0) {
                    NCPoly::constant(&t, Scalar::from(3))
                } else {
                    x(&t, 1)
                })
            })
            .unwrap();
        assert_eq!(r.coeff(&Word::empty()), Scalar::from(9));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
            prop::collection::vec((prop::collection::vec(0u32..2, 0..3), -3i64..4), 0..4)
        }

        fn build(t: &TableRef, spec: &[(Vec<u32>, i64)]) -> NCPoly {
            NCPoly::from_terms(t, spec.iter().map(|(ws, c)| (w(ws), Scalar::from(*c))))
        }

        proptest! {
            #[test]
            fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                let t = table();
                let (a, b, c) = (build(&t, &a), build(&t, &b), build(&t, &c));
                let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
                let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(ab_c, a_bc);
                let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
                let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn hadamard_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                let t = table();
                let (a, b, c) = (build(&t, &a), build(&t, &b), build(&t, &c));
                prop_assert_eq!(a.hadamard(&b).unwrap(), b.hadamard(&a).unwrap());
                prop_assert_eq!(
                    a.hadamard(&b).unwrap().hadamard(&c).unwrap(),
                    a.hadamard(&b.hadamard(&c).unwrap()).unwrap()
                );
                let ones = NCPoly::from_terms(&t, a.support().into_iter().map(|w| (w, Scalar::one())));
                prop_assert_eq!(ones.hadamard(&ones).unwrap(), ones);
            }

            #[test]
            fn support_of_product(a in arb_poly(), b in arb_poly()) {
                let t = table();
                let (a, b) = (build(&t, &a), build(&t, &b));
                let prod = a.mul(&b).unwrap();
                let concat: BTreeSet<Word> = a.support().iter()
                    .flat_map(|u| b.support().into_iter().map(move |v| u.concat(&v)))
                    .collect();
                prop_assert!(prod.support().is_subset(&concat));
                let pos = |p: &NCPoly| NCPoly::from_terms(&t, p.support().into_iter().map(|w| (w, Scalar::one())));
                prop_assert_eq!(pos(&a).mul(&pos(&b)).unwrap().support(), concat);
            }
        }
    }
}
