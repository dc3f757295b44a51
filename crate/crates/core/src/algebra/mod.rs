//! Exact scalars, words, sparse noncommutative polynomials and polynomial
//! matrices.

mod matrix;
mod poly;
mod scalar;
mod text;
mod var;

pub use matrix::{exact_rank, mat_add, mat_mul, mat_scale, PolyMatrix, ScalarMatrix};
pub use poly::{hadamard_bruteforce, poly_add, poly_mul, NCPoly, PolyDisplay};
pub use scalar::{is_prime, parse_rational, Field, ModInt, Scalar, DEFAULT_PRIME};
pub(crate) use text::lines;
pub use text::{format_poly, parse_poly, parse_poly_new_table};
pub use var::{same_table, TableRef, Var, VarTable, Word, WordDisplay};
