//! Interchange formats.
//!
//! Automaton:
//! ```text
//! inputs x0 x1
//! outputs ( ) [ ]
//! state s start
//! state q1
//! state t accept
//! trans s x0 -> q1 | 1 (
//! ```
//! Substitution:
//! ```text
//! dim 3
//! inputs ( )
//! outputs x0
//! entry ( 0 1 | 1 x0 ; 2 1
//! ```
//! `inputs` are the variables that receive matrices, `outputs` the
//! variables occurring in entries; a term is `coeff word` with `1` for the
//! empty word, terms of one entry separated by `;`.

use std::fmt::Write as _;
use std::sync::Arc;

use super::automaton::SubstAutomaton;
use super::substitution::MatrixSubstitution;
use crate::algebra::{lines, Field, NCPoly, Scalar, TableRef, VarTable, Word};
use crate::error::{Error, Result};

fn write_names(out: &mut String, key: &str, t: &TableRef) {
    out.push_str(key);
    for n in t.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push('\n');
}

fn word_text(w: &Word, t: &TableRef) -> String {
    w.display(t).to_string()
}

pub fn format_automaton(a: &SubstAutomaton) -> String {
    let mut out = String::new();
    write_names(&mut out, "inputs", a.source());
    write_names(&mut out, "outputs", a.target());
    for s in 0..a.state_count() {
        let _ = write!(out, "state {}", a.state_name(s));
        if s == a.start() {
            out.push_str(" start");
        }
        if s == a.accept() {
            out.push_str(" accept");
        }
        out.push('\n');
    }
    for (from, v, t) in a.transitions() {
        let _ = writeln!(
            out,
            "trans {} {} -> {} | {} {}",
            a.state_name(from),
            a.source().name(v),
            a.state_name(t.to),
            t.coeff,
            word_text(&t.word, a.target())
        );
    }
    out
}

fn table_line(toks: &[&str]) -> Result<TableRef> {
    Ok(Arc::new(VarTable::new(toks.iter().map(|s| s.to_string()))?))
}

fn parse_term(toks: &[&str], t: &TableRef, field: Field, lineno: usize) -> Result<(Scalar, Word)> {
    let (c, w) = toks
        .split_first()
        .ok_or_else(|| Error::parse(lineno, "empty term"))?;
    let c = field
        .parse(c)
        .map_err(|_| Error::parse(lineno, format!("bad coefficient `{c}`")))?;
    let w = match w {
        [] | ["1"] => Word::empty(),
        _ => Word::parse(&w.join(" "), t).map_err(|e| Error::parse(lineno, e.to_string()))?,
    };
    Ok((c, w))
}

pub fn parse_automaton(text: &str, field: Field) -> Result<SubstAutomaton> {
    let mut source = None;
    let mut target = None;
    let mut states: Vec<String> = Vec::new();
    let mut start = None;
    let mut accept = None;
    let mut trans = Vec::new();
    for (lineno, toks) in lines(text) {
        let err = |m: &str| Error::parse(lineno, m.to_string());
        match toks[0] {
            "inputs" => source = Some(table_line(&toks[1..]).map_err(|e| err(&e.to_string()))?),
            "outputs" => target = Some(table_line(&toks[1..]).map_err(|e| err(&e.to_string()))?),
            "state" => {
                let name = toks.get(1).ok_or_else(|| err("state needs a name"))?;
                let id = states.len();
                states.push(name.to_string());
                for flag in &toks[2..] {
                    match *flag {
                        "start" if start.is_none() => start = Some(id),
                        "accept" if accept.is_none() => accept = Some(id),
                        _ => return Err(err(&format!("bad or repeated flag `{flag}`"))),
                    }
                }
            }
            "trans" => trans.push((lineno, toks)),
            other => return Err(err(&format!("unknown directive `{other}`"))),
        }
    }
    let source = source.ok_or_else(|| Error::parse(0, "missing inputs line"))?;
    let target = target.ok_or_else(|| Error::parse(0, "missing outputs line"))?;
    let start = start.ok_or_else(|| Error::parse(0, "no start state"))?;
    let accept = accept.ok_or_else(|| Error::parse(0, "no accept state"))?;
    let state_of = |name: &str, lineno: usize| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::parse(lineno, format!("unknown state `{name}`")))
    };
    let mut a = SubstAutomaton::with_states(&source, &target, states.clone(), start, accept)?;
    for (lineno, toks) in trans {
        // trans FROM VAR -> TO | COEFF WORD...
        if toks.len() < 7 || toks[3] != "->" || toks[5] != "|" {
            return Err(Error::parse(
                lineno,
                "expected `trans from var -> to | coeff word`",
            ));
        }
        let from = state_of(toks[1], lineno)?;
        let to = state_of(toks[4], lineno)?;
        let v = source
            .lookup(toks[2])
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
        let (c, w) = parse_term(&toks[6..], &target, field, lineno)?;
        a.add_transition(from, v, to, c, w)?;
    }
    Ok(a)
}

pub fn format_substitution(m: &MatrixSubstitution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", m.dim());
    write_names(&mut out, "inputs", m.source());
    write_names(&mut out, "outputs", m.target());
    for (v, mat) in m.matrices() {
        for (i, j, p) in mat.entries() {
            let terms: Vec<String> = p
                .terms()
                .map(|(w, c)| format!("{c} {}", word_text(w, m.target())))
                .collect();
            let _ = writeln!(
                out,
                "entry {} {i} {j} | {}",
                m.source().name(v),
                terms.join(" ; ")
            );
        }
    }
    out
}

pub fn parse_substitution(text: &str, field: Field) -> Result<MatrixSubstitution> {
    let mut dim = None;
    let mut source = None;
    let mut target: Option<TableRef> = None;
    let mut entries = Vec::new();
    for (lineno, toks) in lines(text) {
        let err = |m: String| Error::parse(lineno, m);
        match toks[0] {
            "dim" => {
                let d = toks.get(1).and_then(|d| d.parse::<usize>().ok());
                dim = Some(d.filter(|&d| d > 0).ok_or_else(|| err("bad dimension".into()))?);
            }
            "inputs" => source = Some(table_line(&toks[1..]).map_err(|e| err(e.to_string()))?),
            "outputs" => target = Some(table_line(&toks[1..]).map_err(|e| err(e.to_string()))?),
            "entry" => entries.push((lineno, toks)),
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let dim = dim.ok_or_else(|| Error::parse(0, "missing dim line"))?;
    let source = source.ok_or_else(|| Error::parse(0, "missing inputs line"))?;
    let target = target.ok_or_else(|| Error::parse(0, "missing outputs line"))?;
    let mut m = MatrixSubstitution::new(&source, &target, dim)?;
    for (lineno, toks) in entries {
        if toks.len() < 7 || toks[4] != "|" {
            return Err(Error::parse(lineno, "expected `entry var row col | terms`"));
        }
        let v = source
            .lookup(toks[1])
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
        let idx = |s: &str| {
            s.parse::<usize>()
                .ok()
                .filter(|&i| i < dim)
                .ok_or_else(|| Error::parse(lineno, format!("bad index `{s}`")))
        };
        let (i, j) = (idx(toks[2])?, idx(toks[3])?);
        let mut p = NCPoly::zero(&target);
        for term in toks[5..].split(|t| *t == ";") {
            let (c, w) = parse_term(term, &target, field, lineno)?;
            p.add_term(w, c);
        }
        m.accumulate(v, i, j, &p);
    }
    Ok(m)
}
