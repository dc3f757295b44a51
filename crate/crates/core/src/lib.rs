//! Exact symbolic workbench for noncommutative polynomial families.
//!
//! The crate provides sparse polynomials over the free algebra, arithmetic
//! circuits and algebraic branching programs that compute them, substitution
//! automata compiled into matrix substitutions, generators for the classical
//! families (Dyck, palindrome, identity, permanent variants), and executable
//! reductions between those families together with brute-force verifiers.

pub mod abp;
pub mod algebra;
pub mod automata;
pub mod circuits;
mod config;
mod error;
pub mod families;
pub mod random;
pub mod reductions;

pub use algebra::{Field, NCPoly, PolyMatrix, Scalar, TableRef, Var, VarTable, Word};
pub use config::{Limits, OutputFormat, WorkspaceConfig};
pub use error::{Error, Result};
