//! Constant-term identity families: parameter matrices, closed forms,
//! brute-force expansion and interpolation pipelines.

mod brute;
mod family;
mod interp;
mod matrix;
mod probes;
mod rhs;
mod sweep;
mod verify;

pub use brute::{
    aomoto_literal, complete_homogeneous, ct_brute, monomial_dyson_ct, monomial_q_dyson_ct, plain_matrix_ct,
    q_matrix_ct, subsets,
};
pub use family::{CtValue, Family, IdentityCase, Method, Params, ScalarParams};
pub use interp::{
    ct_interp, drop_silent_variables, dyson_nodes, overlay_nodes, plain_pipeline, q_pipeline, xin_pipeline,
    xin_polynomial, ExponentNodes,
};
pub use matrix::ParamMatrix;
pub use rhs::{
    aomoto_forrester_at_one, forrester, kadell_corollary, kadell_main, kadell_sum, q_aomoto_forrester, q_aomoto_forrester_value, rhs, sills,
};
pub use sweep::{run_cases, Span, SweepConfig, SweepSummary};
pub use verify::{is_conjecture, verify, Status, VerifyReport};
pub use probes::{
    cyclic_permutation, inclusion_exclusion, invariance_check, kadell_hypothesis_matrix, kadell_hypothesis_probe,
    kadell_hypothesis_rhs, nullspace, q_morris_forms, rationality_probe, xin_hr_check, InclusionExclusion,
    KadellProbeRecord, QMorrisForms, RationalityReport, ZFraction,
};
