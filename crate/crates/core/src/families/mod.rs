//! Generators for the named polynomial families, the commutative-version
//! transform and nesting depth.
//!
//! Families are described by a [`FamilySpec`], which can be realized as an
//! explicit polynomial or walked lazily as a [`WordTree`].

mod commutative;
mod dyck;
mod hierarchy;
mod pal;
mod per;
mod tree;

use std::fmt;
use std::sync::Arc;

pub use commutative::{commutative_version, CommutativePoly, TaggedTable};
pub use dyck::{
    catalan, dyck_pairs, dyck_table, gen_dyck, gen_dyck_depth, nesting_depth, pair_table, DyckTree,
};
pub use hierarchy::{factor_offsets, gen_hierarchy, hierarchy_factors, hierarchy_table, FactorKind};
pub use pal::{
    binary_table, gen_id, gen_id_prime, gen_pal, gen_pal_over, gen_pal_sq, id_prime_table, SquareTree,
};
pub use per::{
    gen_id_star, gen_per, gen_per_chi, gen_per_star, gen_per_star_chi, matrix_table, matrix_var, perm_word,
    permutations, ChiTable,
};
pub use tree::{collect, Cursor, TrieTree, WordTree};

use crate::algebra::{Field, NCPoly, TableRef, VarTable};
use crate::error::{Error, Result};
use crate::Limits;

/// A named family member, or an explicit polynomial.
#[derive(Clone, Debug)]
pub enum FamilySpec {
    /// Balanced words of length `d` over the given (open, close) pairs.
    Dyck {
        pairs: Vec<(String, String)>,
        d: usize,
    },
    DyckDepth {
        k: usize,
        n: usize,
    },
    Pal {
        alphabet: Vec<String>,
        n: usize,
    },
    PalSq {
        n: usize,
    },
    Id {
        n: usize,
    },
    IdPrime {
        n: usize,
    },
    IdStar {
        n: usize,
    },
    Per {
        n: usize,
    },
    PerChi {
        n: usize,
        chi: ChiTable,
        source: String,
    },
    PerStar {
        n: usize,
    },
    PerStarChi {
        n: usize,
        chi: ChiTable,
        source: String,
    },
    Hier {
        i: usize,
        n: usize,
    },
    Explicit {
        label: String,
        poly: NCPoly,
    },
}

fn default_alphabet() -> Vec<String> {
    vec!["x0".into(), "x1".into()]
}

impl FamilySpec {
    pub fn dyck(k: usize, d: usize) -> Self {
        FamilySpec::Dyck {
            pairs: dyck_pairs(k),
            d,
        }
    }

    pub fn pal(n: usize) -> Self {
        FamilySpec::Pal {
            alphabet: default_alphabet(),
            n,
        }
    }

    pub fn explicit(label: impl Into<String>, poly: NCPoly) -> Self {
        FamilySpec::Explicit {
            label: label.into(),
            poly,
        }
    }

    /// Parses `name:key=value,...`. `chi=<file>` is resolved through `load`.
    pub fn parse_with(
        s: &str,
        field: Field,
        load: &mut dyn FnMut(&str) -> std::io::Result<String>,
    ) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params: Vec<(&str, &str)> = Vec::new();
        for kv in rest.split(',').filter(|x| !x.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Family(format!("expected key=value, found `{kv}`")))?;
            params.push((k, v));
        }
        let used: Vec<std::cell::Cell<bool>> = params.iter().map(|_| Default::default()).collect();
        let get = |key: &str| -> Option<&str> {
            let i = params.iter().position(|(k, _)| *k == key)?;
            used[i].set(true);
            Some(params[i].1)
        };
        let num = |key: &str| -> Result<usize> {
            let v = get(key).ok_or_else(|| Error::Family(format!("`{name}` needs `{key}=`")))?;
            v.parse()
                .map_err(|_| Error::Family(format!("`{key}` must be a nonnegative integer, found `{v}`")))
        };
        let spec = match name {
            "dyck" => {
                let d = num("d")?;
                let pairs = match get("pairs") {
                    Some(list) => list
                        .split('|')
                        .map(|p| {
                            p.split_once('/')
                                .map(|(o, c)| (o.to_string(), c.to_string()))
                                .ok_or_else(|| Error::Family(format!("bad pair `{p}`")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    None => dyck_pairs(num("k")?),
                };
                if pairs.is_empty() {
                    return Err(Error::Family("need at least one bracket pair".into()));
                }
                FamilySpec::Dyck { pairs, d }
            }
            "dyckdepth" => FamilySpec::DyckDepth {
                k: num("k")?,
                n: num("n")?,
            },
            "pal" => {
                let n = num("n")?;
                let alphabet = match get("alphabet") {
                    Some(list) => list.split('|').map(String::from).collect(),
                    None => default_alphabet(),
                };
                FamilySpec::Pal { alphabet, n }
            }
            "palsq" => FamilySpec::PalSq { n: num("n")? },
            "id" => FamilySpec::Id { n: num("n")? },
            "idprime" => FamilySpec::IdPrime { n: num("n")? },
            "idstar" => FamilySpec::IdStar { n: num("n")? },
            "per" => FamilySpec::Per { n: num("n")? },
            "perstar" => FamilySpec::PerStar { n: num("n")? },
            "perchi" | "perstarchi" => {
                let n = num("n")?;
                let source = get("chi")
                    .ok_or_else(|| Error::Family(format!("`{name}` needs `chi=<file>`")))?
                    .to_string();
                let text = load(&source).map_err(|e| Error::Chi(format!("{source}: {e}")))?;
                let chi = ChiTable::parse(&text, n, field)?;
                if name == "perchi" {
                    FamilySpec::PerChi { n, chi, source }
                } else {
                    FamilySpec::PerStarChi { n, chi, source }
                }
            }
            "hier" => FamilySpec::Hier {
                i: num("i")?,
                n: num("n")?,
            },
            _ => return Err(Error::Family(format!("unknown family `{name}`"))),
        };
        if let Some(i) = used.iter().position(|u| !u.get()) {
            return Err(Error::Family(format!("unknown parameter `{}`", params[i].0)));
        }
        Ok(spec)
    }

    /// [`FamilySpec::parse_with`] reading χ tables from the file system.
    pub fn parse(s: &str, field: Field) -> Result<Self> {
        Self::parse_with(s, field, &mut |p| std::fs::read_to_string(p))
    }

    pub fn table(&self) -> Result<TableRef> {
        Ok(match self {
            FamilySpec::Dyck { pairs, .. } => pair_table(pairs)?,
            FamilySpec::DyckDepth { .. } => dyck_table(2)?,
            FamilySpec::Pal { alphabet, .. } => Arc::new(VarTable::new(alphabet.iter().cloned())?),
            FamilySpec::PalSq { .. } | FamilySpec::Id { .. } => binary_table(),
            FamilySpec::IdPrime { n } => id_prime_table(*n),
            FamilySpec::IdStar { n }
            | FamilySpec::Per { n }
            | FamilySpec::PerChi { n, .. }
            | FamilySpec::PerStar { n }
            | FamilySpec::PerStarChi { n, .. } => matrix_table(*n),
            FamilySpec::Hier { i, .. } => hierarchy_table(*i),
            FamilySpec::Explicit { poly, .. } => poly.table().clone(),
        })
    }

    /// Degree of every term (or the maximum for explicit polynomials).
    pub fn degree(&self) -> usize {
        match self {
            FamilySpec::Dyck { d, .. } => *d,
            FamilySpec::DyckDepth { n, .. }
            | FamilySpec::Pal { n, .. }
            | FamilySpec::Id { n }
            | FamilySpec::IdPrime { n } => 2 * n,
            FamilySpec::PalSq { n } => 4 * n,
            FamilySpec::IdStar { n } => n.pow(3),
            FamilySpec::Per { n } | FamilySpec::PerChi { n, .. } => *n,
            FamilySpec::PerStar { n } | FamilySpec::PerStarChi { n, .. } => n * n,
            FamilySpec::Hier { i, n } => {
                if *i <= 1 {
                    2 * n
                } else {
                    4 * n * (i - 1)
                }
            }
            FamilySpec::Explicit { poly, .. } => poly.degree().max(0) as usize,
        }
    }

    pub fn realize(&self, limits: &Limits) -> Result<NCPoly> {
        match self {
            FamilySpec::Dyck { .. } | FamilySpec::DyckDepth { .. } | FamilySpec::Pal { .. } => {
                collect(self.tree(limits)?.as_ref(), limits)
            }
            FamilySpec::PalSq { n } => gen_pal_sq(*n, limits),
            FamilySpec::Id { n } => gen_id(*n, limits),
            FamilySpec::IdPrime { n } => gen_id_prime(*n, limits),
            FamilySpec::IdStar { n } => gen_id_star(*n, limits),
            FamilySpec::Per { n } => gen_per(*n, limits),
            FamilySpec::PerChi { n, chi, .. } => gen_per_chi(*n, chi, limits),
            FamilySpec::PerStar { n } => gen_per_star(*n, limits),
            FamilySpec::PerStarChi { n, chi, .. } => gen_per_star_chi(*n, chi, limits),
            FamilySpec::Hier { i, n } => gen_hierarchy(*i, *n, limits),
            FamilySpec::Explicit { poly, .. } => Ok(poly.clone()),
        }
    }

    /// Lazy view of the support; structured for Dyck and palindrome
    /// families, a trie over the realized polynomial otherwise.
    pub fn tree(&self, limits: &Limits) -> Result<Box<dyn WordTree>> {
        Ok(match self {
            FamilySpec::Dyck { d, .. } => Box::new(DyckTree::new(&self.table()?, *d, None)?),
            FamilySpec::DyckDepth { k, n } => Box::new(DyckTree::new(&self.table()?, 2 * n, Some(*k))?),
            FamilySpec::Pal { n, .. } => Box::new(SquareTree::palindromes(&self.table()?, *n, 1)),
            FamilySpec::PalSq { n } => Box::new(SquareTree::palindromes(&binary_table(), *n, 2)),
            FamilySpec::Id { n } => Box::new(SquareTree::repeats(&binary_table(), *n)),
            _ => Box::new(TrieTree::new(&self.realize(limits)?)),
        })
    }

    pub fn instantiate(&self, limits: &Limits) -> Result<FamilyInstance> {
        Ok(FamilyInstance {
            spec: self.clone(),
            poly: self.realize(limits)?,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Dyck { pairs, d } => {
                if *pairs == dyck_pairs(pairs.len()) {
                    write!(f, "dyck:k={},d={d}", pairs.len())
                } else {
                    let list: Vec<String> = pairs.iter().map(|(o, c)| format!("{o}/{c}")).collect();
                    write!(f, "dyck:d={d},pairs={}", list.join("|"))
                }
            }
            FamilySpec::DyckDepth { k, n } => write!(f, "dyckdepth:k={k},n={n}"),
            FamilySpec::Pal { alphabet, n } => {
                if *alphabet == default_alphabet() {
                    write!(f, "pal:n={n}")
                } else {
                    write!(f, "pal:n={n},alphabet={}", alphabet.join("|"))
                }
            }
            FamilySpec::PalSq { n } => write!(f, "palsq:n={n}"),
            FamilySpec::Id { n } => write!(f, "id:n={n}"),
            FamilySpec::IdPrime { n } => write!(f, "idprime:n={n}"),
            FamilySpec::IdStar { n } => write!(f, "idstar:n={n}"),
            FamilySpec::Per { n } => write!(f, "per:n={n}"),
            FamilySpec::PerChi { n, source, .. } => write!(f, "perchi:n={n},chi={source}"),
            FamilySpec::PerStar { n } => write!(f, "perstar:n={n}"),
            FamilySpec::PerStarChi { n, source, .. } => write!(f, "perstarchi:n={n},chi={source}"),
            FamilySpec::Hier { i, n } => write!(f, "hier:i={i},n={n}"),
            FamilySpec::Explicit { label, .. } => f.write_str(label),
        }
    }
}

/// A realized family member.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub poly: NCPoly,
}
