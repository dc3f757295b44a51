//! Circuit text format, one gate per line with dense ids:
//! `g0 input x1`, `g1 const 5/3`, `g2 add g0 g1`, `g3 mul g2 g0`, and a final
//! `output g3`.

use std::fmt::Write as _;
use std::sync::Arc;

use super::circuit::{Circuit, Gate, GateId};
use crate::algebra::{lines, Field, TableRef, VarTable};
use crate::error::{Error, Result};

pub fn format_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    let t = c.table();
    for (id, g) in c.gates().iter().enumerate() {
        let _ = match g {
            Gate::Input(v) => writeln!(out, "g{id} input {}", t.name(*v)),
            Gate::Const(a) => writeln!(out, "g{id} const {a}"),
            Gate::Add(l, r) => writeln!(out, "g{id} add g{l} g{r}"),
            Gate::Mul(l, r) => writeln!(out, "g{id} mul g{l} g{r}"),
        };
    }
    let _ = writeln!(out, "output g{}", c.output());
    out
}

/// Parses a circuit, building the variable table from input gates in order
/// of appearance.
pub fn parse_circuit(text: &str, field: Field) -> Result<Circuit> {
    let mut table = VarTable::default();
    for (_, toks) in lines(text) {
        if toks.len() == 3 && toks[1] == "input" {
            table.intern(toks[2])?;
        }
    }
    parse_circuit_with(text, &Arc::new(table), field)
}

/// Parses against a fixed table.
pub fn parse_circuit_with(text: &str, table: &TableRef, field: Field) -> Result<Circuit> {
    let mut gates = Vec::new();
    let mut output = None;
    for (lineno, toks) in lines(text) {
        let err = |msg: String| Error::parse(lineno, msg);
        if toks[0] == "output" {
            if toks.len() != 2 {
                return Err(err("expected `output g<k>`".into()));
            }
            output = Some(gate_ref(toks[1]).ok_or_else(|| err(format!("bad gate `{}`", toks[1])))?);
            continue;
        }
        if output.is_some() {
            return Err(err("gate after output line".into()));
        }
        let id = gate_ref(toks[0]).ok_or_else(|| err(format!("bad gate id `{}`", toks[0])))?;
        if id != gates.len() {
            return Err(err(format!("expected gate g{}, found g{id}", gates.len())));
        }
        let kind = toks.get(1).copied().unwrap_or("");
        let args = &toks[2.min(toks.len())..];
        let child = |s: &str| -> Result<GateId> {
            let c = gate_ref(s).ok_or_else(|| err(format!("bad gate reference `{s}`")))?;
            if c >= id {
                return Err(err(format!("g{id} refers forward to g{c}")));
            }
            Ok(c)
        };
        let g = match (kind, args) {
            ("input", [name]) => Gate::Input(table.lookup(name).map_err(|e| err(e.to_string()))?),
            ("const", [value]) => Gate::Const(
                field
                    .parse(value)
                    .map_err(|_| err(format!("bad constant `{value}`")))?,
            ),
            ("add", [l, r]) => Gate::Add(child(l)?, child(r)?),
            ("mul", [l, r]) => Gate::Mul(child(l)?, child(r)?),
            ("add" | "mul", _) => {
                return Err(err(format!("{kind} gate needs exactly two children")));
            }
            _ => return Err(err(format!("cannot parse gate `{}`", toks.join(" ")))),
        };
        gates.push(g);
    }
    let output = output.ok_or_else(|| Error::parse(0, "missing output line"))?;
    if output >= gates.len() {
        return Err(Error::parse(0, format!("output g{output} does not exist")));
    }
    Circuit::new(table, gates, output)
}

fn gate_ref(s: &str) -> Option<GateId> {
    s.strip_prefix('g')?.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    #[test]
    fn roundtrip() {
        let text = "g0 input x1\ng1 const 5/3\ng2 add g0 g1\ng3 mul g2 g0\noutput g3\n";
        let c = parse_circuit(text, Field::Rational).unwrap();
        assert_eq!(c.gate(1), &Gate::Const(Scalar::ratio(5, 3)));
        assert_eq!(format_circuit(&c), text);
    }

    #[test]
    fn rejects_forward_refs_and_bad_fanin() {
        let f = Field::Rational;
        assert!(parse_circuit("g0 input x\ng1 mul g0 g2\ng2 input y\noutput g1\n", f).is_err());
        assert!(parse_circuit("g0 input x\ng1 add g0\noutput g1\n", f).is_err());
        assert!(parse_circuit("g0 input x\ng1 add g0 g0 g0\noutput g1\n", f).is_err());
        assert!(parse_circuit("g0 input x\n", f).is_err());
    }
}
