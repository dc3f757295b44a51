use std::fmt;

use super::maps::{apply_iproj, apply_proj, check_tables, IProjMap, ProjMap};
use crate::algebra::{NCPoly, PolyMatrix, Scalar, Word};
use crate::automata::MatrixSubstitution;
use crate::error::Result;
use crate::families::FamilySpec;
use crate::Limits;

/// `f ≤_abp g`: `f` is entry `(0, q-1)` of `g` evaluated on the matrices.
/// `source` and `target` are family labels (`f` and `g`), informational
/// except when a target is resolved through [`AbpReduction::target_family`].
#[derive(Clone, Debug)]
pub struct AbpReduction {
    pub substitution: MatrixSubstitution,
    pub source: String,
    pub target: String,
}

impl AbpReduction {
    pub fn new(substitution: MatrixSubstitution) -> Self {
        AbpReduction {
            substitution,
            source: String::new(),
            target: String::new(),
        }
    }

    pub fn labelled(mut self, source: impl fmt::Display, target: impl fmt::Display) -> Self {
        self.source = source.to_string();
        self.target = target.to_string();
        self
    }

    pub fn dim(&self) -> usize {
        self.substitution.dim()
    }

    pub fn target_family(&self, field: crate::Field) -> Result<FamilySpec> {
        FamilySpec::parse(&self.target, field)
    }

    pub fn apply(&self, g: &NCPoly, limits: &Limits) -> Result<NCPoly> {
        self.substitution.evaluate(g, limits)
    }

    /// Evaluates on a family without realizing it, pruning dead prefixes.
    pub fn apply_family(&self, g: &FamilySpec, limits: &Limits) -> Result<NCPoly> {
        self.substitution.evaluate_tree(g.tree(limits)?.as_ref(), limits)
    }
}

pub fn apply_abp_reduction(r: &AbpReduction, g: &NCPoly, limits: &Limits) -> Result<NCPoly> {
    r.apply(g, limits)
}

/// `p(M)` for a polynomial over the source table of `m`.
fn poly_at(p: &NCPoly, m: &MatrixSubstitution) -> Result<PolyMatrix> {
    let q = m.dim();
    let mut acc = PolyMatrix::zero(q, m.target());
    for (w, c) in p.terms() {
        let mut prod = PolyMatrix::identity(q, m.target()).scale(c);
        for v in w.letters() {
            prod = prod.mul(&m.matrix_or_zero(*v))?;
            if prod.is_zero() {
                break;
            }
        }
        acc = acc.add(&prod)?;
    }
    Ok(acc)
}

/// Given `r1: f ≤ g` and `r2: g ≤ h`, builds `f ≤ h` of dimension
/// `q1·q2`. Block index `(a, b)` with `a < q2`, `b < q1` sits at `a·q1 + b`.
pub fn compose_abp(r1: &AbpReduction, r2: &AbpReduction) -> Result<AbpReduction> {
    let (m1, m2) = (&r1.substitution, &r2.substitution);
    check_tables(m1.source(), m2.target())?;
    let (q1, q2) = (m1.dim(), m2.dim());
    let mut out = MatrixSubstitution::new(m2.source(), m1.target(), q1 * q2)?;
    for (z, mz) in m2.matrices() {
        for (a, a2, p) in mz.entries() {
            let p = p.retable(m1.source())?;
            let block = poly_at(&p, m1)?;
            for (b, b2, e) in block.entries() {
                out.accumulate(z, a * q1 + b, a2 * q1 + b2, e);
            }
        }
    }
    Ok(AbpReduction::new(out).labelled(&r1.source, &r2.target))
}

/// Any of the three reducibility objects.
#[derive(Clone, Debug)]
pub enum Reduction {
    Proj(ProjMap),
    IProj(IProjMap),
    Abp(AbpReduction),
}

impl Reduction {
    pub fn apply(&self, g: &NCPoly, limits: &Limits) -> Result<NCPoly> {
        match self {
            Reduction::Proj(m) => apply_proj(m, g),
            Reduction::IProj(m) => apply_iproj(m, g),
            Reduction::Abp(r) => r.apply(g, limits),
        }
    }

    pub fn apply_family(&self, g: &FamilySpec, limits: &Limits) -> Result<NCPoly> {
        match self {
            Reduction::Abp(r) => r.apply_family(g, limits),
            _ => self.apply(&g.realize(limits)?, limits),
        }
    }
}

/// First disagreement between expected and computed polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub word: String,
    pub expected: Scalar,
    pub actual: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    pub expected_terms: usize,
    pub actual_terms: usize,
    pub mismatch: Option<Mismatch>,
}

impl Verdict {
    /// Compares by variable name: `actual` must use only variables of
    /// `expected`'s table.
    pub fn compare(expected: &NCPoly, actual: &NCPoly) -> Verdict {
        let mut v = Verdict {
            pass: true,
            expected_terms: expected.len(),
            actual_terms: actual.len(),
            mismatch: None,
        };
        let actual_named = match actual.retable(expected.table()) {
            Ok(a) => a,
            Err(_) => {
                let (w, c) = actual
                    .terms()
                    .find(|(w, _)| {
                        w.letters()
                            .iter()
                            .any(|x| expected.table().get(actual.table().name(*x)).is_none())
                    })
                    .expect("retable fails only on foreign variables");
                v.pass = false;
                v.mismatch = Some(Mismatch {
                    word: w.display(actual.table()).to_string(),
                    expected: Scalar::zero(),
                    actual: c.clone(),
                });
                return v;
            }
        };
        if let Some(w) = expected.first_difference(&actual_named) {
            v.pass = false;
            v.mismatch = Some(Mismatch {
                word: word_text(&w, expected),
                expected: expected.coeff(&w),
                actual: actual_named.coeff(&w),
            });
        }
        v
    }
}

fn word_text(w: &Word, p: &NCPoly) -> String {
    if w.degree() == 0 {
        "1".into()
    } else {
        w.display(p.table()).to_string()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict {}", if self.pass { "pass" } else { "fail" })?;
        writeln!(f, "expected-terms {}", self.expected_terms)?;
        writeln!(f, "actual-terms {}", self.actual_terms)?;
        if let Some(m) = &self.mismatch {
            writeln!(
                f,
                "witness {} expected {} actual {}",
                m.word, m.expected, m.actual
            )?;
        }
        Ok(())
    }
}

/// Applies `r` to the target family and compares with the source family.
pub fn verify_reduction(
    r: &Reduction,
    source: &FamilySpec,
    target: &FamilySpec,
    limits: &Limits,
) -> Result<Verdict> {
    let expected = source.realize(limits)?;
    let actual = r.apply_family(target, limits)?;
    Ok(Verdict::compare(&expected, &actual))
}
