use super::maps::{IProjMap, Image};
use crate::algebra::{Scalar, Var};
use crate::error::{Error, Result};
use crate::families::{factor_offsets, hierarchy_factors, hierarchy_table, FactorKind, FamilySpec};

/// `f^(i) ≤_iproj f^(i+1)`. The leading Dyck factor of `f^(i+1)` is reduced
/// to its monomial `(^n )^n`; for `i ≥ 2` the following identity factor is
/// reduced to `x0^(2n)`. The remaining factors are renamed onto `f^(i)`.
pub fn hierarchy_iproj(i: usize, n: usize) -> Result<IProjMap> {
    if i == 0 || n == 0 {
        return Err(Error::Precondition("need i >= 1 and n >= 1".into()));
    }
    let src = hierarchy_table(i + 1);
    let dst = hierarchy_table(i);
    let degree = FamilySpec::Hier { i: i + 1, n }.degree();
    let mut m = IProjMap::new(&src, &dst, degree);
    let src_factors = hierarchy_factors(i + 1);
    let src_off = factor_offsets(i + 1);
    let dst_off = factor_offsets(i);
    let dropped = if i == 1 { 1 } else { 2 };
    let mut pos = 1;
    for (p, (kind, off)) in src_factors.iter().zip(&src_off).enumerate() {
        let width = match kind {
            FactorKind::Dyck => 4,
            FactorKind::Id => 2,
        };
        for q in 0..2 * n {
            for local in 0..width {
                let y = Var((off + local) as u32);
                let img = if p < dropped {
                    let keep = match kind {
                        // `(` in the first half, `)` in the second
                        FactorKind::Dyck => local == if q < n { 0 } else { 1 },
                        FactorKind::Id => local == 0,
                    };
                    Image::Scalar(if keep { Scalar::one() } else { Scalar::zero() })
                } else {
                    Image::Var(Var((dst_off[p - dropped] + local) as u32))
                };
                m.set(pos + q, y, img);
            }
        }
        pos += 2 * n;
    }
    Ok(m)
}
