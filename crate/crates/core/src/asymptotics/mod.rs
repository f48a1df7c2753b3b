//! Law-of-large-numbers and central-limit experiment drivers.
//!
//! Sequence builders turn boundary parameters into concrete signatures, families attach an
//! eigenvalue `f_i(N)` and a limit `ℓ_i` to each member, and the report functions evaluate
//! a family over a grid of `N` (or `L`) values in exact arithmetic.

mod clt;
mod families;
mod report;
mod sequences;

pub use clt::{
    clt_limit, family_block_moment, limit_covariance, scaled_clt_moment, wick_limit,
    Normalization, MAX_CLT_FACTORS,
};
pub use families::{
    family_eigenvalue, family_limit, family_normalizer, EigenvalueFamily, MAX_SYMMETRIC_N,
};
pub use report::{
    clt_report, clt_report_with, lln_report, moment_report, ConvergenceReport, ReportKind,
    THREADS_ENV,
};
pub use sequences::{build_stabilizing_sequence, build_thoma_sequence, build_vk_sequence};
