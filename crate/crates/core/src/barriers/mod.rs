//! Piecewise barrier candidates for the leaf equations and their exact certificates.

pub mod branch;
pub mod certify;
pub mod piece;
pub mod sqrt_ineq;

pub use branch::{certify_branch_rule, Branch, BranchEvidence, BranchSegment};
pub use certify::{
    certify_barrier, certify_piece, sampled_margin, BarrierCertificate, JumpRecord, Limit,
    NearZeroMode, NearZeroRecord, PieceEvidence, PieceRecord,
};
pub use piece::{
    compute_f, compute_f_tilde, f_tilde_of, to_tau, Barrier, BarrierKind, BarrierPiece, FParts,
    FTilde, FTildeClaim,
};
pub use sqrt_ineq::{
    certify_for_large_s, certify_sqrt_inequality, sqrt_diff_negative_form, sqrt_lower_form,
    sqrt_two_sided_lower_form, sqrt_upper_form, sup_bound_form, sup_is_limit, taylor_bound_form,
    Relation, SqrtEvidence, SqrtForm,
};
