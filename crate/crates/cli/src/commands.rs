use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use ncreduce::abp::{abp_eval, format_abp, hankel_rank, parse_abp, parse_abp_with, Abp};
use ncreduce::algebra::{format_poly, parse_poly_new_table};
use ncreduce::automata::{hadamard_via_matrices, HadamardInput};
use ncreduce::circuits::{self, format_circuit, parse_circuit, Circuit};
use ncreduce::families::{ChiTable, FamilySpec};
use ncreduce::random::{random_abp, random_circuit, random_skew_circuit, rng};
use ncreduce::reductions::{
    compose_abp, dk_to_d2_reduction, dyck_completeness_reduction, dyck_depth_reduction, format_reduction,
    hierarchy_iproj, iproj_to_abp, pal_to_d2_reduction, pal_vsk_reduction, palsq_to_d2_reduction,
    parse_reduction, per_to_idstar_reduction, per_to_perstar_chi_reduction, proj_to_iproj,
    vbp_trivial_reduction, verify_reduction, AbpReduction, ProjMap, Reduction, ReductionFile,
};
use ncreduce::{Error, VarTable, Word};

use crate::Global;

/// 2 for unreadable or malformed input, 1 for everything else.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<std::io::Error>() || cause.is::<Usage>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::Parse { .. }
                | Error::Family(_)
                | Error::Chi(_)
                | Error::UnknownVar(_)
                | Error::DuplicateVar(_) => 2,
                _ => 1,
            };
        }
    }
    1
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes to `--out` through a temporary file and a rename, or to stdout.
fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.out {
        Some(path) => {
            let tmp = path.with_extension("tmp~");
            fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
            fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Family specs, extended with `circuit:PATH`, `abp:PATH` and `poly:PATH`
/// for explicit polynomials read from files.
pub fn load_family(g: &Global, spec: &str) -> Result<FamilySpec> {
    let cfg = g.config();
    let explicit = |poly| Ok(FamilySpec::explicit(spec, poly));
    if let Some(path) = spec.strip_prefix("circuit:") {
        let c = parse_circuit(&read(Path::new(path))?, cfg.field)?;
        return explicit(circuits::expand(&c, c.formal_degree(), &cfg.limits)?);
    }
    if let Some(path) = spec.strip_prefix("abp:") {
        let a = parse_abp(&read(Path::new(path))?, cfg.field)?;
        return explicit(abp_eval(&a, &cfg.limits)?);
    }
    if let Some(path) = spec.strip_prefix("poly:") {
        return explicit(parse_poly_new_table(&read(Path::new(path))?, cfg.field)?);
    }
    Ok(FamilySpec::parse(spec, cfg.field)?)
}

pub fn family(g: &Global, spec: &str) -> Result<u8> {
    let f = load_family(g, spec)?;
    emit(g, &format_poly(&f.realize(&g.config().limits)?))?;
    Ok(0)
}

struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    fn parse(raw: &[String]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for kv in raw {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| usage(format!("expected key=value, found `{kv}`")))?;
            values.insert(k.to_string(), v.to_string());
        }
        Ok(Params { values })
    }

    fn str(&mut self, key: &str) -> Result<String> {
        self.values
            .remove(key)
            .ok_or_else(|| usage(format!("missing parameter `{key}=`")))
    }

    fn num(&mut self, key: &str) -> Result<usize> {
        let v = self.str(key)?;
        v.parse()
            .map_err(|_| usage(format!("`{key}` must be a nonnegative integer, found `{v}`")))
    }

    fn done(self) -> Result<()> {
        match self.values.keys().next() {
            Some(k) => Err(usage(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }
}

pub fn reduce(g: &Global, kind: &str, raw: &[String]) -> Result<u8> {
    let cfg = g.config();
    let lim = &cfg.limits;
    let mut p = Params::parse(raw)?;
    let file = match kind {
        "dyck-complete" | "pal-vsk" => {
            let path = p.str("circuit")?;
            let c: Circuit = parse_circuit(&read(Path::new(&path))?, cfg.field)?;
            let r = if kind == "dyck-complete" {
                dyck_completeness_reduction(&c, lim)?
            } else {
                pal_vsk_reduction(&c, lim)?
            };
            let target = r.target.clone();
            ReductionFile::abp(r.labelled(format!("circuit:{path}"), target))
        }
        "pal-d2" => ReductionFile::abp(pal_to_d2_reduction(p.num("n")?)?),
        "palsq-d2" => ReductionFile::abp(palsq_to_d2_reduction(p.num("n")?)?),
        "dk-d2" => ReductionFile::abp(dk_to_d2_reduction(p.num("k")?, p.num("d")?)?),
        "depth" => ReductionFile::abp(dyck_depth_reduction(p.num("k1")?, p.num("k2")?, p.num("n")?)?),
        "per-idstar" => ReductionFile::abp(per_to_idstar_reduction(p.num("n")?, lim)?),
        "per-chi" => {
            let n = p.num("n")?;
            let path = p.str("chi")?;
            let chi = ChiTable::parse(&read(Path::new(&path))?, n, cfg.field)?;
            let r = per_to_perstar_chi_reduction(n, &chi, cfg.field, lim)?;
            let source = r.source.clone();
            ReductionFile::abp(r.labelled(source, format!("perstarchi:n={n},chi={path}")))
        }
        "hier-iproj" => {
            let (i, n) = (p.num("i")?, p.num("n")?);
            ReductionFile {
                reduction: Reduction::IProj(hierarchy_iproj(i, n)?),
                source: FamilySpec::Hier { i, n }.to_string(),
                target: FamilySpec::Hier { i: i + 1, n }.to_string(),
            }
        }
        "vbp-trivial" => {
            let path = p.str("abp")?;
            let target = load_family(g, &p.str("target")?)?;
            let a = parse_abp(&read(Path::new(&path))?, cfg.field)?;
            let table = target.table()?;
            let witness = p.str("witness")?;
            let w = Word(
                witness
                    .split(',')
                    .map(|x| table.lookup(x))
                    .collect::<ncreduce::Result<_>>()?,
            );
            let r = vbp_trivial_reduction(&a, &target, &w, lim)?;
            ReductionFile::abp(r.labelled(format!("abp:{path}"), target))
        }
        "identity" => {
            let spec = p.str("family")?;
            let f = load_family(g, &spec)?;
            ReductionFile {
                reduction: Reduction::Proj(ProjMap::identity(&f.table()?)),
                source: spec.clone(),
                target: spec,
            }
        }
        other => return Err(usage(format!("unknown reduction kind `{other}`"))),
    };
    p.done()?;
    emit(g, &format_reduction(&file))?;
    Ok(0)
}

pub fn verify(g: &Global, path: &Path, source: Option<&str>, target: Option<&str>) -> Result<u8> {
    let cfg = g.config();
    let file = parse_reduction(&read(path)?, cfg.field)?;
    let source = load_family(g, source.unwrap_or(&file.source)).context("source family")?;
    let target = load_family(g, target.unwrap_or(&file.target)).context("target family")?;
    let start = Instant::now();
    let verdict = verify_reduction(&file.reduction, &source, &target, &cfg.limits)?;
    let report = format!("{verdict}time-ms {}\n", start.elapsed().as_millis());
    emit(g, &report)?;
    Ok(if verdict.pass { 0 } else { 1 })
}

pub fn rank(g: &Global, spec: &str, cuts: &[usize]) -> Result<u8> {
    let f = load_family(g, spec)?.realize(&g.config().limits)?;
    let mut cuts = cuts.to_vec();
    cuts.sort_unstable();
    cuts.dedup();
    let mut out = String::from("cut rank\n");
    for cut in cuts {
        out.push_str(&format!("{cut} {}\n", hankel_rank(&f, cut)?));
    }
    emit(g, &out)?;
    Ok(0)
}

pub fn hadamard(g: &Global, f: &Path, abp: &Path) -> Result<u8> {
    let cfg = g.config();
    let ftext = read(f)?;
    let gtext = read(abp)?;
    let out = match parse_circuit(&ftext, cfg.field) {
        Ok(c) => {
            let a = parse_abp_with(&gtext, c.table(), cfg.field).or_else(|_| parse_abp(&gtext, cfg.field))?;
            hadamard_via_matrices(HadamardInput::Circuit(&c), &a, &cfg.limits)?
        }
        Err(circuit_err) => {
            let p = parse_poly_new_table(&ftext, cfg.field)
                .map_err(|_| anyhow!(circuit_err))
                .context("first operand is neither a circuit nor a polynomial")?;
            let a = parse_abp(&gtext, cfg.field)?;
            hadamard_via_matrices(HadamardInput::Poly(&p), &a, &cfg.limits)?
        }
    };
    emit(g, &format_poly(&out))?;
    Ok(0)
}

pub fn expand(g: &Global, path: &Path, cap: Option<usize>) -> Result<u8> {
    let cfg = g.config();
    let c = parse_circuit(&read(path)?, cfg.field)?;
    let p = circuits::expand(&c, cap.unwrap_or_else(|| c.formal_degree()), &cfg.limits)?;
    emit(g, &format_poly(&p))?;
    Ok(0)
}

/// Projections become ABP reductions at the degree of their target family.
fn as_abp(g: &Global, file: &ReductionFile) -> Result<AbpReduction> {
    let r = match &file.reduction {
        Reduction::Abp(r) => r.clone(),
        Reduction::IProj(m) => iproj_to_abp(m, m.degree())?,
        Reduction::Proj(m) => {
            let d = load_family(g, &file.target)
                .context("a projection needs a target family to fix its degree")?
                .degree();
            iproj_to_abp(&proj_to_iproj(m, d), d)?
        }
    };
    Ok(r.labelled(&file.source, &file.target))
}

pub fn compose(g: &Global, first: &Path, second: &Path) -> Result<u8> {
    let field = g.config().field;
    let f1 = parse_reduction(&read(first)?, field)?;
    let f2 = parse_reduction(&read(second)?, field)?;
    let r = compose_abp(&as_abp(g, &f1)?, &as_abp(g, &f2)?)?;
    emit(
        g,
        &format_reduction(&ReductionFile::abp(r.labelled(&f1.source, &f2.target))),
    )?;
    Ok(0)
}

pub fn random(g: &Global, kind: &str, vars: &str, size: usize, bound: usize) -> Result<u8> {
    let field = g.config().field;
    let table = std::sync::Arc::new(VarTable::new(vars.split(',').map(String::from))?);
    let mut r = rng(g.seed);
    let text = match kind {
        "circuit" => format_circuit(&random_circuit(&mut r, &table, size, bound, field)),
        "skew-circuit" => format_circuit(&random_skew_circuit(&mut r, &table, size, bound, field)),
        "abp" => {
            if size == 0 {
                bail!(usage("an ABP needs depth at least 1"));
            }
            let a: Abp = random_abp(&mut r, &table, size, bound, true, field);
            format_abp(&a)
        }
        other => return Err(usage(format!("unknown random kind `{other}`"))),
    };
    emit(g, &text)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_reject_leftovers_and_bad_numbers() {
        let mut p = Params::parse(&["n=2".into(), "x=1".into()]).unwrap();
        assert_eq!(p.num("n").unwrap(), 2);
        assert!(p.done().is_err());
        let mut p = Params::parse(&["n=two".into()]).unwrap();
        assert!(p.num("n").is_err());
        assert!(Params::parse(&["n".into()]).is_err());
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(exit_code(&usage("x")), 2);
        assert_eq!(exit_code(&anyhow::Error::new(Error::Family("x".into()))), 2);
        assert_eq!(
            exit_code(&anyhow::Error::new(Error::TermBudget(3)).context("while expanding")),
            1
        );
        let io = std::io::Error::new(std::io::ErrorKind::NotFound, "gone");
        assert_eq!(exit_code(&anyhow::Error::new(io).context("reading")), 2);
    }
}
