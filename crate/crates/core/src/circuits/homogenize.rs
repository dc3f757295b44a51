use super::circuit::{Circuit, Gate, GateId};
use crate::algebra::Scalar;
use crate::error::Result;

/// Degree slicing: a circuit computing the degree-`d` homogeneous part of
/// `c`. Every gate is split into its components of degree 0..=d and
/// components that are identically zero are never materialized, so a skew
/// input stays skew.
pub fn homogenize(c: &Circuit, d: usize) -> Result<Circuit> {
    let live = c.reachable();
    let mut gates: Vec<Gate> = Vec::new();
    let mut slice: Vec<Vec<Option<GateId>>> = vec![Vec::new(); c.len()];
    let push = |gates: &mut Vec<Gate>, g: Gate| {
        gates.push(g);
        Some(gates.len() - 1)
    };
    for (id, g) in c.gates().iter().enumerate() {
        if !live[id] {
            continue;
        }
        let mut s = vec![None; d + 1];
        match g {
            Gate::Input(v) => {
                if d >= 1 {
                    s[1] = push(&mut gates, Gate::Input(*v));
                }
            }
            Gate::Const(a) => s[0] = push(&mut gates, Gate::Const(a.clone())),
            Gate::Add(l, r) => {
                for k in 0..=d {
                    s[k] = match (slice[*l][k], slice[*r][k]) {
                        (Some(a), Some(b)) => push(&mut gates, Gate::Add(a, b)),
                        (a, None) => a,
                        (None, b) => b,
                    };
                }
            }
            Gate::Mul(l, r) => {
                for k in 0..=d {
                    let mut acc = None;
                    for i in 0..=k {
                        if let (Some(a), Some(b)) = (slice[*l][i], slice[*r][k - i]) {
                            let m = push(&mut gates, Gate::Mul(a, b));
                            acc = match acc {
                                None => m,
                                Some(p) => push(&mut gates, Gate::Add(p, m.unwrap())),
                            };
                        }
                    }
                    s[k] = acc;
                }
            }
        }
        slice[id] = s;
    }
    let out = match slice[c.output()][d] {
        Some(o) => o,
        None => {
            gates.push(Gate::Const(Scalar::zero()));
            gates.len() - 1
        }
    };
    Circuit::new(c.table(), gates, out)
}
