//! The three reducibilities (projection, indexed projection, ABP
//! reduction) with application, conversion, composition and verification,
//! and every concrete reduction construction.

mod abp_reduction;
mod chains;
mod dyck_complete;
mod hierarchy;
mod layered;
mod maps;
mod pal_vsk;
mod permanent;
mod text;
mod transfer;
mod vbp;

pub use abp_reduction::{
    apply_abp_reduction, compose_abp, verify_reduction, AbpReduction, Mismatch, Reduction, Verdict,
};
pub use chains::{
    binary_power, depth_filter_automaton, dk_codes, dk_to_d2_reduction, dyck_depth_reduction, encode_dk,
    pal_to_d2_reduction, palsq_to_d2_reduction, product_of_sums, separation_iproj, separation_reduction,
    separation_table, two_monomials,
};
pub use dyck_complete::dyck_completeness_reduction;
pub use hierarchy::hierarchy_iproj;
pub use maps::{apply_iproj, apply_proj, iproj_to_abp, proj_to_iproj, IProjMap, Image, ProjMap};
pub use pal_vsk::pal_vsk_reduction;
pub use permanent::{
    per_to_idstar_reduction, per_to_idstar_with, per_to_perstar_chi_reduction, per_to_perstar_iproj,
};
pub use text::{format_reduction, parse_reduction, ReductionFile};
pub use transfer::{set_multilinear_rank1_split, transfer, SplitVerdict};
pub use vbp::vbp_trivial_reduction;
