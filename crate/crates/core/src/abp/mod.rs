//! Layered algebraic branching programs, their transition matrices and
//! Hankel-rank witnesses.

mod dyck;
mod hankel;
mod program;
mod text;

pub use dyck::{bounded_depth_dyck_abp, dyck_abp};
pub use hankel::{hankel_block, hankel_rank, HankelBlock};
pub use program::{abp_eval, transition_matrices, word_weight, Abp, AbpEdge, LinearForm};
pub use text::{format_abp, parse_abp, parse_abp_with};
