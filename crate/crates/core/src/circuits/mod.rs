//! Noncommutative arithmetic circuits: the gate IR, brute-force expansion,
//! skewness checking and the bracketing passes.

mod bracket;
mod circuit;
mod homogenize;
mod skew;
mod text;

pub use bracket::{
    to_bracketed, to_skew_bracketed, BracketKind, BracketRole, BracketedCircuit, Leaf, SkewBracketedCircuit,
    Twin, TwinOrigin,
};
pub use circuit::{expand, Circuit, CircuitBuilder, Gate, GateId};
pub use homogenize::homogenize;
pub use skew::{is_skew, SkewTag, SkewWitness};
pub use text::{format_circuit, parse_circuit, parse_circuit_with};
