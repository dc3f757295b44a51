//! Seeded generators for polynomials, circuits, ABPs and projection maps,
//! shared by tests, benchmarks and the command line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abp::{Abp, AbpEdge, LinearForm};
use crate::algebra::{Field, NCPoly, Scalar, TableRef, Var, Word};
use crate::circuits::{Circuit, CircuitBuilder, GateId};
use crate::reductions::{IProjMap, Image, ProjMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero integer in `[-bound, bound]`.
pub fn small_scalar(rng: &mut impl Rng, bound: i64, field: Field) -> Scalar {
    loop {
        let v = rng.random_range(-bound..=bound);
        let s = field.from_int(v);
        if !s.is_zero() {
            return s;
        }
    }
}

fn word(rng: &mut impl Rng, table: &TableRef, degree: usize) -> Word {
    Word(
        (0..degree)
            .map(|_| Var(rng.random_range(0..table.len()) as u32))
            .collect(),
    )
}

/// Up to `terms` random words of degree at most `max_degree`.
pub fn random_poly(
    rng: &mut impl Rng,
    table: &TableRef,
    max_degree: usize,
    terms: usize,
    field: Field,
) -> NCPoly {
    let mut p = NCPoly::zero(table);
    for _ in 0..terms {
        let d = rng.random_range(0..=max_degree);
        p.add_term(word(rng, table, d), small_scalar(rng, 5, field));
    }
    p
}

/// Up to `terms` random words of degree exactly `degree`.
pub fn random_homogeneous_poly(
    rng: &mut impl Rng,
    table: &TableRef,
    degree: usize,
    terms: usize,
    field: Field,
) -> NCPoly {
    let mut p = NCPoly::zero(table);
    for _ in 0..terms {
        p.add_term(word(rng, table, degree), small_scalar(rng, 5, field));
    }
    p
}

/// Circuit with one input gate per variable, a constant, and `extra`
/// random sum and product gates; products that would exceed `max_degree`
/// become sums. The last gate is the output.
pub fn random_circuit(
    rng: &mut impl Rng,
    table: &TableRef,
    extra: usize,
    max_degree: usize,
    field: Field,
) -> Circuit {
    let mut b = CircuitBuilder::new(table);
    let mut deg: Vec<usize> = Vec::new();
    for v in table.vars() {
        b.input(v);
        deg.push(1);
    }
    b.constant(small_scalar(rng, 3, field));
    deg.push(0);
    for _ in 0..extra {
        let n = deg.len();
        // bias towards recent gates so the output uses most of the circuit
        let l = rng.random_range(n / 2..n);
        let r = rng.random_range(0..n);
        let (l, r) = if rng.random_bool(0.5) { (l, r) } else { (r, l) };
        if rng.random_bool(0.5) && deg[l] + deg[r] <= max_degree {
            b.mul(l, r);
            deg.push(deg[l] + deg[r]);
        } else {
            b.add(l, r);
            deg.push(deg[l].max(deg[r]));
        }
    }
    let out = deg.len() - 1;
    b.finish(out).expect("gates reference earlier gates")
}

/// Skew circuit: every product has a leaf on one side.
pub fn random_skew_circuit(
    rng: &mut impl Rng,
    table: &TableRef,
    extra: usize,
    max_degree: usize,
    field: Field,
) -> Circuit {
    let mut b = CircuitBuilder::new(table);
    let mut deg: Vec<usize> = Vec::new();
    let mut leaves: Vec<GateId> = Vec::new();
    for v in table.vars() {
        leaves.push(b.input(v));
        deg.push(1);
    }
    leaves.push(b.constant(small_scalar(rng, 3, field)));
    deg.push(0);
    for _ in 0..extra {
        let n = deg.len();
        let g = rng.random_range(n / 2..n);
        let leaf = leaves[rng.random_range(0..leaves.len())];
        if rng.random_bool(0.6) && deg[g] + deg[leaf] <= max_degree {
            if rng.random_bool(0.5) {
                b.mul(leaf, g);
            } else {
                b.mul(g, leaf);
            }
            deg.push(deg[g] + deg[leaf]);
        } else {
            let h = rng.random_range(0..n);
            b.add(g, h);
            deg.push(deg[g].max(deg[h]));
        }
    }
    let out = deg.len() - 1;
    b.finish(out).expect("gates reference earlier gates")
}

/// Layered ABP of the given depth with inner layers of width up to
/// `width`; each possible edge is present with probability one half and
/// carries a random linear form (homogeneous when asked).
pub fn random_abp(
    rng: &mut impl Rng,
    table: &TableRef,
    depth: usize,
    width: usize,
    homogeneous: bool,
    field: Field,
) -> Abp {
    let mut layers = vec![1];
    for _ in 1..depth {
        layers.push(rng.random_range(1..=width.max(1)));
    }
    layers.push(1);
    let mut edges = Vec::new();
    for gap in 0..depth {
        let mut es = Vec::new();
        for from in 0..layers[gap] {
            for to in 0..layers[gap + 1] {
                if !rng.random_bool(0.5) {
                    continue;
                }
                let mut label = LinearForm::new();
                for _ in 0..rng.random_range(1..=2) {
                    label.add_term(
                        Var(rng.random_range(0..table.len()) as u32),
                        small_scalar(rng, 3, field),
                    );
                }
                if !homogeneous && rng.random_bool(0.3) {
                    label.add_constant(&small_scalar(rng, 3, field));
                }
                es.push(AbpEdge { from, to, label });
            }
        }
        edges.push(es);
    }
    Abp::new(table, layers, edges).expect("edges within layer bounds")
}

fn random_image(rng: &mut impl Rng, target: &TableRef, field: Field) -> Image {
    if rng.random_bool(0.75) {
        Image::Var(Var(rng.random_range(0..target.len()) as u32))
    } else {
        Image::Scalar(field.from_int(rng.random_range(-2..=2)))
    }
}

/// Total projection with random variable or small scalar images.
pub fn random_proj(rng: &mut impl Rng, source: &TableRef, target: &TableRef, field: Field) -> ProjMap {
    let mut m = ProjMap::new(source, target);
    for y in source.vars() {
        m.set(y, random_image(rng, target, field));
    }
    m
}

/// Total indexed projection on positions `1..=d`.
pub fn random_iproj(
    rng: &mut impl Rng,
    source: &TableRef,
    target: &TableRef,
    d: usize,
    field: Field,
) -> IProjMap {
    let mut m = IProjMap::new(source, target, d);
    for pos in 1..=d {
        for y in source.vars() {
            m.set(pos, y, random_image(rng, target, field));
        }
    }
    m
}
