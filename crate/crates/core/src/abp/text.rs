//! ABP text format:
//!
//! ```text
//! # homogeneous
//! layers 0:1 1:2 2:1
//! edge 0 0 0 1 x0
//! edge 0 0 1 1 x1 2/3 x0
//! ```
//!
//! An edge line names the layer gap, the two vertices, then `coeff var`
//! pairs; the name `1` stands for the constant term.

use std::fmt::Write as _;
use std::sync::Arc;

use super::program::{Abp, AbpEdge, LinearForm};
use crate::algebra::{lines, Field, TableRef, VarTable};
use crate::error::{Error, Result};

pub fn format_abp(p: &Abp) -> String {
    let mut out = String::new();
    if p.is_homogeneous() {
        out.push_str("# homogeneous\n");
    }
    out.push_str("layers");
    for (i, n) in p.layers().iter().enumerate() {
        let _ = write!(out, " {i}:{n}");
    }
    out.push('\n');
    let t = p.table();
    for (gap, es) in p.edges().iter().enumerate() {
        for e in es {
            let _ = write!(out, "edge {gap} {} {}", e.from, e.to);
            if !e.label.constant().is_zero() {
                let _ = write!(out, " {} 1", e.label.constant());
            }
            for (v, c) in e.label.coeffs() {
                let _ = write!(out, " {c} {}", t.name(v));
            }
            out.push('\n');
        }
    }
    out
}

pub fn parse_abp(text: &str, field: Field) -> Result<Abp> {
    let mut table = VarTable::default();
    for (_, toks) in lines(text) {
        if toks[0] == "edge" {
            for name in toks.iter().skip(5).step_by(2) {
                if *name != "1" {
                    table.intern(name)?;
                }
            }
        }
    }
    parse_abp_with(text, &Arc::new(table), field)
}

pub fn parse_abp_with(text: &str, table: &TableRef, field: Field) -> Result<Abp> {
    let homogeneous_flag = text.lines().any(|l| l.trim() == "# homogeneous");
    let mut layers: Option<Vec<usize>> = None;
    let mut edges: Vec<Vec<AbpEdge>> = Vec::new();
    for (lineno, toks) in lines(text) {
        let err = |m: String| Error::parse(lineno, m);
        match toks[0] {
            "layers" => {
                let mut ls = Vec::new();
                for (i, tok) in toks[1..].iter().enumerate() {
                    let (idx, n) = tok
                        .split_once(':')
                        .ok_or_else(|| err(format!("bad layer `{tok}`")))?;
                    if idx.parse::<usize>().ok() != Some(i) {
                        return Err(err(format!("layers must be listed in order, found `{tok}`")));
                    }
                    ls.push(n.parse().map_err(|_| err(format!("bad layer size `{n}`")))?);
                }
                edges = vec![Vec::new(); ls.len().saturating_sub(1)];
                layers = Some(ls);
            }
            "edge" => {
                if layers.is_none() {
                    return Err(err("edge before layers line".into()));
                }
                if toks.len() < 4 || toks.len() % 2 != 0 {
                    return Err(err("expected `edge gap u v (coeff var)*`".into()));
                }
                let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad index `{s}`")));
                let (gap, from, to) = (num(toks[1])?, num(toks[2])?, num(toks[3])?);
                if gap >= edges.len() {
                    return Err(err(format!("gap {gap} out of range")));
                }
                let mut label = LinearForm::new();
                for pair in toks[4..].chunks(2) {
                    let c = field
                        .parse(pair[0])
                        .map_err(|_| err(format!("bad coefficient `{}`", pair[0])))?;
                    if pair[1] == "1" {
                        label.add_constant(&c);
                    } else {
                        let v = table.lookup(pair[1]).map_err(|e| err(e.to_string()))?;
                        label.add_term(v, c);
                    }
                }
                if homogeneous_flag && !label.is_homogeneous() {
                    return Err(Error::AffineLabel);
                }
                edges[gap].push(AbpEdge { from, to, label });
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let layers = layers.ok_or_else(|| Error::parse(0, "missing layers line"))?;
    Abp::new(table, layers, edges)
}
