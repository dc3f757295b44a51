//! Deterministic substitution automata, the matrix substitutions they
//! compile to, automaton filtering and the matrix-based Hadamard product.

mod automaton;
mod hadamard;
mod substitution;
mod text;

pub use automaton::{
    automaton_to_substitution, compile_unbounded, filter_by_automaton, SubstAutomaton, Transition,
};
pub use hadamard::{hadamard_circuit, hadamard_poly, hadamard_via_matrices, HadamardInput};
pub use substitution::{MatrixSubstitution, RowVec};
pub use text::{format_automaton, format_substitution, parse_automaton, parse_substitution};
