//! Line-oriented polynomial format: `<coeff> <var> <var> ...` per term, with
//! `1` standing for the empty word. Blank lines and `#` comments are skipped.

use std::fmt::Write as _;
use std::sync::Arc;

use super::poly::NCPoly;
use super::scalar::Field;
use super::var::{TableRef, VarTable, Word};
use crate::error::{Error, Result};

pub fn format_poly(p: &NCPoly) -> String {
    let mut out = String::new();
    for (w, c) in p.terms() {
        let _ = writeln!(out, "{c} {}", w.display(p.table()));
    }
    out
}

/// Parses against a fixed table; unknown names are an error.
pub fn parse_poly(text: &str, table: &TableRef, field: Field) -> Result<NCPoly> {
    let mut p = NCPoly::zero(table);
    for (lineno, toks) in lines(text) {
        let c = field
            .parse(toks[0])
            .map_err(|_| Error::parse(lineno, format!("bad coefficient `{}`", toks[0])))?;
        let w = word_of(&toks[1..], table).map_err(|e| Error::parse(lineno, e.to_string()))?;
        p.add_term(w, c);
    }
    Ok(p)
}

/// Parses and builds the table from variable names in order of first use.
pub fn parse_poly_new_table(text: &str, field: Field) -> Result<NCPoly> {
    let mut table = VarTable::default();
    for (lineno, toks) in lines(text) {
        for t in &toks[1..] {
            if *t != "1" {
                table.intern(t).map_err(|e| Error::parse(lineno, e.to_string()))?;
            }
        }
    }
    parse_poly(text, &Arc::new(table), field)
}

fn word_of(toks: &[&str], table: &VarTable) -> Result<Word> {
    match toks {
        [] | ["1"] => Ok(Word::empty()),
        _ => Word::parse(&toks.join(" "), table),
    }
}

pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    // a comment starts at a token beginning with `#`; names such as `(#1`
    // keep their inner `#`
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().take_while(|t| !t.starts_with('#')).collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    #[test]
    fn roundtrip_with_comments_and_constants() {
        let text = "# sample\n2/3 x1 x0\n\n-1 1\n1 x0 x0\n";
        let p = parse_poly_new_table(text, Field::Rational).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&Word::empty()), Scalar::from(-1));
        let out = format_poly(&p);
        // lexicographic by id sequence: empty word first, then x1 x0 (ids 0 1), then x0 x0 (ids 1 1)
        assert_eq!(out, "-1 1\n2/3 x1 x0\n1 x0 x0\n");
        let again = parse_poly(&out, p.table(), Field::Rational).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn rejects_bad_lines() {
        let t = VarTable::shared(["x"]);
        assert!(matches!(
            parse_poly("1 y\n", &t, Field::Rational),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_poly("a x\n", &t, Field::Rational).is_err());
    }
}
