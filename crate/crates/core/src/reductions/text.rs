//! Reduction files: a header naming the kind and the two families, then
//! the body.
//!
//! ```text
//! reduction abp
//! source-family pal:n=1
//! target-family dyck:k=2,d=2
//! dim 3
//! inputs ( ) [ ]
//! outputs x0 x1
//! entry ( 0 1 | 1 x0
//! ```
//! Projection bodies list `inputs`, `outputs` and one `map` line per
//! assignment: `map x0 -> var y1` or `map 3 x0 -> scalar 1/2`, the position
//! present only for indexed projections, which also carry `degree d`.

use std::fmt::Write as _;
use std::sync::Arc;

use super::abp_reduction::{AbpReduction, Reduction};
use super::maps::{IProjMap, Image, ProjMap};
use crate::algebra::{lines, Field, TableRef, VarTable};
use crate::automata::{format_substitution, parse_substitution};
use crate::error::{Error, Result};

/// A reduction together with its family labels.
#[derive(Clone, Debug)]
pub struct ReductionFile {
    pub reduction: Reduction,
    pub source: String,
    pub target: String,
}

impl ReductionFile {
    pub fn abp(r: AbpReduction) -> Self {
        ReductionFile {
            source: r.source.clone(),
            target: r.target.clone(),
            reduction: Reduction::Abp(r),
        }
    }
}

fn names(out: &mut String, key: &str, t: &TableRef) {
    let _ = writeln!(out, "{key} {}", t.names().join(" "));
}

fn image_text(img: &Image, t: &TableRef) -> String {
    match img {
        Image::Var(x) => format!("var {}", t.name(*x)),
        Image::Scalar(c) => format!("scalar {c}"),
    }
}

pub fn format_reduction(f: &ReductionFile) -> String {
    let kind = match &f.reduction {
        Reduction::Proj(_) => "proj",
        Reduction::IProj(_) => "iproj",
        Reduction::Abp(_) => "abp",
    };
    let mut out = format!("reduction {kind}\n");
    let _ = writeln!(out, "source-family {}", f.source);
    let _ = writeln!(out, "target-family {}", f.target);
    match &f.reduction {
        Reduction::Abp(r) => out.push_str(&format_substitution(&r.substitution)),
        Reduction::Proj(m) => {
            names(&mut out, "inputs", m.source());
            names(&mut out, "outputs", m.target());
            for (y, img) in m.entries() {
                let _ = writeln!(
                    out,
                    "map {} -> {}",
                    m.source().name(y),
                    image_text(img, m.target())
                );
            }
        }
        Reduction::IProj(m) => {
            let _ = writeln!(out, "degree {}", m.degree());
            names(&mut out, "inputs", m.source());
            names(&mut out, "outputs", m.target());
            for ((pos, y), img) in m.entries() {
                let _ = writeln!(
                    out,
                    "map {pos} {} -> {}",
                    m.source().name(y),
                    image_text(img, m.target())
                );
            }
        }
    }
    out
}

fn table(toks: &[&str], lineno: usize) -> Result<TableRef> {
    VarTable::new(toks.iter().map(|s| s.to_string()))
        .map(Arc::new)
        .map_err(|e| Error::parse(lineno, e.to_string()))
}

pub fn parse_reduction(text: &str, field: Field) -> Result<ReductionFile> {
    let mut kind = None;
    let mut source = String::new();
    let mut target = String::new();
    let mut body = Vec::new();
    for line in text.lines() {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("reduction") => kind = toks.next().map(str::to_string),
            Some("source-family") => source = toks.collect::<Vec<_>>().join(" "),
            Some("target-family") => target = toks.collect::<Vec<_>>().join(" "),
            _ => {
                body.push(line);
                continue;
            }
        }
        // blank stand-in keeps body line numbers aligned with the file
        body.push("");
    }
    let body = body.join("\n");
    let reduction = match kind.as_deref() {
        Some("abp") => {
            let mut r = AbpReduction::new(parse_substitution(&body, field)?);
            r.source = source.clone();
            r.target = target.clone();
            Reduction::Abp(r)
        }
        Some(k @ ("proj" | "iproj")) => parse_map(&body, k == "iproj", field)?,
        Some(other) => return Err(Error::parse(1, format!("unknown reduction kind `{other}`"))),
        None => return Err(Error::parse(0, "missing `reduction <kind>` line")),
    };
    Ok(ReductionFile {
        reduction,
        source,
        target,
    })
}

fn parse_map(body: &str, indexed: bool, field: Field) -> Result<Reduction> {
    let mut degree = None;
    let mut src = None;
    let mut dst = None;
    let mut maps = Vec::new();
    for (lineno, toks) in lines(body) {
        match toks[0] {
            "degree" if indexed => {
                degree = Some(
                    toks.get(1)
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(|| Error::parse(lineno, "bad degree"))?,
                )
            }
            "inputs" => src = Some(table(&toks[1..], lineno)?),
            "outputs" => dst = Some(table(&toks[1..], lineno)?),
            "map" => maps.push((lineno, toks)),
            other => return Err(Error::parse(lineno, format!("unknown directive `{other}`"))),
        }
    }
    let src = src.ok_or_else(|| Error::parse(0, "missing inputs line"))?;
    let dst = dst.ok_or_else(|| Error::parse(0, "missing outputs line"))?;
    let image = |toks: &[&str], lineno: usize| -> Result<Image> {
        match toks {
            ["var", x] => Ok(Image::Var(
                dst.lookup(x).map_err(|e| Error::parse(lineno, e.to_string()))?,
            )),
            ["scalar", c] => Ok(Image::Scalar(
                field.parse(c).map_err(|e| Error::parse(lineno, e.to_string()))?,
            )),
            _ => Err(Error::parse(lineno, "expected `var NAME` or `scalar VALUE`")),
        }
    };
    let lookup = |y: &str, lineno: usize| src.lookup(y).map_err(|e| Error::parse(lineno, e.to_string()));
    if indexed {
        let d = degree.ok_or_else(|| Error::parse(0, "missing degree line"))?;
        let mut m = IProjMap::new(&src, &dst, d);
        for (lineno, toks) in maps {
            if toks.len() < 5 || toks[3] != "->" {
                return Err(Error::parse(lineno, "expected `map pos var -> image`"));
            }
            let pos = toks[1]
                .parse::<usize>()
                .ok()
                .filter(|p| (1..=d).contains(p))
                .ok_or_else(|| Error::parse(lineno, format!("bad position `{}`", toks[1])))?;
            m.set(pos, lookup(toks[2], lineno)?, image(&toks[4..], lineno)?);
        }
        Ok(Reduction::IProj(m))
    } else {
        let mut m = ProjMap::new(&src, &dst);
        for (lineno, toks) in maps {
            if toks.len() < 4 || toks[2] != "->" {
                return Err(Error::parse(lineno, "expected `map var -> image`"));
            }
            m.set(lookup(toks[1], lineno)?, image(&toks[3..], lineno)?);
        }
        Ok(Reduction::Proj(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{hierarchy_iproj, pal_to_d2_reduction, ProjMap};

    #[test]
    fn roundtrips() {
        let f = ReductionFile::abp(pal_to_d2_reduction(1).unwrap());
        let text = format_reduction(&f);
        assert!(text.starts_with("reduction abp\nsource-family pal:n=1\ntarget-family dyck:k=2,d=2\n"));
        let back = parse_reduction(&text, Field::Rational).unwrap();
        assert_eq!(format_reduction(&back), text);

        let m = hierarchy_iproj(1, 1).unwrap();
        let f = ReductionFile {
            reduction: Reduction::IProj(m),
            source: "hier:i=1,n=1".into(),
            target: "hier:i=2,n=1".into(),
        };
        let text = format_reduction(&f);
        assert_eq!(
            format_reduction(&parse_reduction(&text, Field::Rational).unwrap()),
            text
        );

        let t = VarTable::shared(["a", "b"]);
        let f = ReductionFile {
            reduction: Reduction::Proj(ProjMap::identity(&t)),
            source: "x".into(),
            target: "y".into(),
        };
        let text = format_reduction(&f);
        assert!(text.contains("map b -> var b"));
        assert_eq!(
            format_reduction(&parse_reduction(&text, Field::Rational).unwrap()),
            text
        );
        assert!(parse_reduction("reduction nope\n", Field::Rational).is_err());
    }
}
